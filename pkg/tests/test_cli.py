import json

import pytest

from isoposet import (
    Abelian, Alternating, Cyclic, Dihedral, InvalidSpec, Metacyclic, Product, Symmetric,
)
from isoposet.catalog import CatalogIncomplete
from isoposet.cli import (
    CorruptEntry, GroupSyntaxError, cache_key, cache_load, cache_store, export_dot, format_spec,
    parse_group_expr,
)
from isoposet.cli.cache import poset_digest
from isoposet.cli.main import main
from isoposet.cli.suites import Caps, UnknownSuite, Workbench, run_suite
from isoposet.group_core import CatalogRef, modular_group
from isoposet.poset import chain

from conftest import iso_of, lattice_of


# --- expressions -----------------------------------------------------------

@pytest.mark.parametrize("text, spec", [
    ("Z2 x Z6 x Z18", Abelian((2, 6, 18))),
    ("ZM(7,3,2)", Metacyclic(7, 3, 2)),
    ("D8×Z4", Product((Dihedral(8), Cyclic(4)))),
    ("  S4 ", Symmetric(4)),
    ("(A4)", Alternating(4)),
    ("M27", modular_group(27)),
    ("G(12, 3)", CatalogRef(12, 3)),
])
def test_parse(text, spec):
    assert parse_group_expr(text) == spec


@pytest.mark.parametrize("text", ["D7", "ZM(7,3,3)", "Q6", "SD24"])
def test_parse_invalid_spec(text):
    with pytest.raises(InvalidSpec) as exc:
        parse_group_expr(text)
    assert exc.value.position == 0


@pytest.mark.parametrize("text, position", [("Z4 x", 4), ("Z", 1), ("Z4 + Z2", 3), ("(Z4", 3), ("", 0)])
def test_parse_syntax_errors(text, position):
    with pytest.raises(GroupSyntaxError) as exc:
        parse_group_expr(text)
    assert exc.value.position == position


@pytest.mark.parametrize("text", ["Z2 x Z6 x Z18", "D8 x Z4", "ZM(7,3,2)", "M16", "Heis(3)", "SD32 x S3"])
def test_format_round_trip(text):
    spec = parse_group_expr(text)
    assert parse_group_expr(format_spec(spec)) == spec


# --- DOT ---------------------------------------------------------------------

def _edges(dot):
    return [line for line in dot.splitlines() if "->" in line]


def _nodes(dot):
    return [line for line in dot.splitlines() if "[label=" in line]


def test_dot_two_chain():
    dot = export_dot(chain(2))
    assert dot.startswith("digraph") and "rankdir=BT" in dot
    assert len(_edges(dot)) == 1


def test_dot_a4_pentagon():
    dot = export_dot(iso_of(Alternating(4)).poset)
    assert len(_nodes(dot)) == 5 and len(_edges(dot)) == 5


def test_dot_d12():
    dot = export_dot(iso_of(Dihedral(12)).poset, name="Iso(D12)")
    assert len(_nodes(dot)) == 7
    assert export_dot(iso_of(Dihedral(12)).poset, name="Iso(D12)") == dot


# --- cache -------------------------------------------------------------------

def _d12():
    lat = lattice_of(Dihedral(12))
    from isoposet import build_iso_poset
    return lat, build_iso_poset(lat)


def test_cache_round_trip(tmp_path):
    lat, ip = _d12()
    key = cache_key("D12", Caps().as_dict())
    cache_store(tmp_path, key, lat, ip)
    lat2, ip2 = cache_load(tmp_path, key, lat.parent)
    assert poset_digest(ip2.poset) == poset_digest(ip.poset)
    assert [s.members for s in lat2.subgroups] == [s.members for s in lat.subgroups]
    assert ip2.classes == ip.classes
    assert not list(tmp_path.glob(".tmp-*"))


def test_cache_version_bump_misses(tmp_path):
    lat, ip = _d12()
    key = cache_key("D12", {})
    cache_store(tmp_path, key, lat, ip)
    assert cache_load(tmp_path, key, lat.parent, version=2) is None
    assert cache_load(tmp_path, "absent", lat.parent) is None


def test_cache_truncated_entry(tmp_path):
    lat, ip = _d12()
    key = cache_key("D12", {})
    path = cache_store(tmp_path, key, lat, ip)
    path.write_text(path.read_text()[:100])
    with pytest.raises(CorruptEntry):
        cache_load(tmp_path, key, lat.parent)


def test_cache_tampered_entry(tmp_path):
    lat, ip = _d12()
    key = cache_key("D12", {})
    path = cache_store(tmp_path, key, lat, ip)
    doc = json.loads(path.read_text())
    doc["payload"]["iso"]["labels"][1] = "Z9"
    path.write_text(json.dumps(doc))
    with pytest.raises(CorruptEntry):
        cache_load(tmp_path, key, lat.parent)


def test_workbench_recomputes_after_corruption(tmp_path, caplog):
    first = Workbench(cache_dir=tmp_path).spec(Dihedral(12))
    entries = list(tmp_path.glob("*.json"))
    assert len(entries) == 1
    entries[0].write_text("{ truncated")
    again = Workbench(cache_dir=tmp_path).spec(Dihedral(12))
    assert poset_digest(again.poset) == poset_digest(first.poset)
    assert "recomputing" in caplog.text
    warm = Workbench(cache_dir=tmp_path)
    warm.spec(Dihedral(12))
    assert warm.cache_hits == 1


# --- suites and commands --------------------------------------------------------

def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_suite("nope")


def test_conjecture_beyond_completeness():
    with pytest.raises(CatalogIncomplete):
        run_suite("conjecture", caps=Caps(max_order=32))


def test_cli_iso_json(capsys):
    assert main(["iso", "A4", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["subgroups"] == 10 and doc["properties"]["elements"] == 5
    assert doc["properties"]["lattice"] and not doc["properties"]["modular"]


def test_cli_iso_dot(tmp_path, capsys):
    out = tmp_path / "d12.dot"
    assert main(["iso", "D12", "--dot", str(out)]) == 0
    assert "not lattice" in capsys.readouterr().out
    assert len(_nodes(out.read_text())) == 7


def test_cli_lattice(capsys):
    assert main(["lattice", "D8", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["subgroups"] == 10 and doc["complemented"] is False and doc["frattini_order"] == 2


def test_cli_compare(capsys):
    assert main(["compare", "Z2 x Z4", "D8", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert not doc["groups_isomorphic"] and doc["iso_posets_isomorphic"]


def test_cli_twin(capsys):
    assert main(["twin", "27"]) == 0
    assert main(["twin", "30"]) == 2
    assert "square-free" in capsys.readouterr().err


def test_cli_parse_error_exit(capsys):
    assert main(["iso", "D7"]) == 2
    assert "error:" in capsys.readouterr().err


def test_cli_catalog(capsys):
    assert main(["catalog", "--order", "8"]) == 0
    assert capsys.readouterr().out.count("G(8,") == 5


def test_cli_verify_byte_identical(capsys):
    outputs = []
    for _ in range(2):
        assert main(["verify", "examples", "--json"]) == 0
        outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[1]
    doc = json.loads(outputs[0])
    assert doc["suite"] == "examples" and all(c["millis"] is None for c in doc["cases"])


def test_cli_verify_timings(capsys):
    assert main(["verify", "examples", "--json", "--timings"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert all(isinstance(c["millis"], (int, float)) for c in doc["cases"])


def test_cli_verify_dot_dir(tmp_path, capsys):
    assert main(["verify", "examples", "--dot", str(tmp_path)]) == 0
    assert list(tmp_path.glob("*.dot"))


def test_cli_replay(capsys):
    assert main(["replay", "12", "3"]) == 0
    doc = json.loads(capsys.readouterr().out)
    # A4 has no same-order partner with an isomorphic Iso poset
    assert doc == {"flagged": True, "group": "G(12,3)", "partners": []}
