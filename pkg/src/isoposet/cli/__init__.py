"""Command-line front end and verification harness."""
from ..catalog import CatalogEntry, CatalogIncomplete, OrderMismatch, ParseError, load_catalog
from .cache import CorruptEntry, cache_key, cache_load, cache_store
from .dot import export_dot
from .expr import GroupSyntaxError, format_spec, parse_group_expr
from .suites import (
    SUITE_ORDER, Case, Caps, UnknownSuite, VerificationReport, Workbench, replay_conjecture, run_suite,
)
