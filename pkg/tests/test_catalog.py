from collections import Counter

import pytest

from isoposet import Dicyclic, construct, load_catalog
from isoposet.catalog import OrderMismatch, ParseError, parse_catalog
from isoposet.grpiso import is_isomorphic

Q16_LINE = ("16:9:Q16:16:(1 2 3 4 5 6 7 8)(9 16 15 14 13 12 11 10);"
            "(1 9 5 13)(2 10 6 14)(3 11 7 15)(4 12 8 16)")

# number of groups of each order 1..24
GROUP_COUNTS = [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14, 1, 5, 1, 5, 2, 2, 1, 15]


def test_q16_entry():
    cat = parse_catalog(Q16_LINE)
    g = cat.get(16, 9).group()
    assert g.order == 16
    assert is_isomorphic(g, construct(Dicyclic(16)))


def test_empty_file(tmp_path):
    path = tmp_path / "empty.txt"
    path.write_text("")
    cat = load_catalog(path)
    assert len(cat) == 0 and cat.complete_through == 0


def test_order_mismatch():
    with pytest.raises(OrderMismatch):
        parse_catalog("16:1:fake:4:(1 2 3 4);(2 4)")


@pytest.mark.parametrize("text, line", [
    ("4:1:Z4:4", 1),
    ("# comment\n\n4:x:Z4:4:(1 2 3 4)", 3),
    ("4:1:Z4:4:(1 2 3 9)", 1),
    ("2:1:Z2:2:(1 2)\n2:1:again:2:(1 2)", 2),
])
def test_parse_errors(text, line):
    with pytest.raises(ParseError) as exc:
        parse_catalog(text)
    assert exc.value.line == line


def test_round_trip_line(catalog):
    for e in list(catalog)[:30]:
        again = parse_catalog(e.to_line()).get(*e.key)
        assert (again.name, again.degree, again.generators) == (e.name, e.degree, e.generators)


def test_shipped_catalog_complete(catalog):
    assert catalog.complete_through == 24
    counts = Counter(e.order for e in catalog if e.order <= 24)
    assert [counts[n] for n in range(1, 25)] == GROUP_COUNTS


def test_shipped_catalog_orders(catalog):
    for e in catalog:
        assert e.group().order == e.order
