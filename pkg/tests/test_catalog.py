"""Catalog of known values and the general path-family bounds."""

import pytest

from onlineramsey.catalog import (
    CatalogEntry,
    bounds_line,
    entries,
    known_value,
    proposition_bounds,
)
from onlineramsey.graphs import TargetGraph

P = TargetGraph.parse


def test_edge_versus_clique_formula():
    assert known_value(P("K2"), P("K2")).value == 1
    assert known_value(P("K2"), P("K3")).value == 3
    assert known_value(P("K2"), P("K4")).value == 6
    assert known_value(P("K2"), P("K7")).value == 21
    assert known_value(P("K5"), P("K2")).value == 10
    assert known_value(P("K2"), P("K3")).source == "formula"


def test_catalog_rows_resolve_in_either_order():
    e = known_value(P("C4"), P("P6"))
    assert e is not None and e.value == 11 and e.source == "certified"
    assert known_value(P("P6"), P("C4")).value == 11
    assert known_value(P("P6"), P("P6")).value == 10
    assert known_value(P("K3"), P("K4")).value == 17


def test_unknown_pairs_return_none():
    assert known_value(P("C4"), P("P7")) is None
    assert known_value(P("C5"), P("P3")) is None
    assert known_value(P("K4"), P("K4")) is None


def test_all_rows_are_well_formed():
    rows = entries()
    assert len(rows) >= 10
    seen = set()
    for e in rows:
        assert isinstance(e, CatalogEntry)
        r, b = P(e.red), P(e.blue)
        assert e.value >= max(r.n_edges, b.n_edges)
        key = frozenset((e.red, e.blue))
        assert key not in seen
        seen.add(key)


def test_general_bounds_for_small_paths():
    assert proposition_bounds(6) == (11, 13)
    assert proposition_bounds(7) == (13, 16)
    assert proposition_bounds(8) == (14, 19)
    assert proposition_bounds(9) == (16, 22)
    assert bounds_line(6) == "11 <= r(C4,P6) <= 13"


def test_general_bounds_reject_short_paths():
    for k in (0, 3, 5):
        with pytest.raises(ValueError):
            proposition_bounds(k)


def test_exact_values_sit_inside_the_general_bounds():
    for e in entries():
        if e.red == "C4" and e.blue.startswith("P"):
            k = int(e.blue[1:])
            if k >= 6:
                lower, upper = proposition_bounds(k)
                assert lower <= e.value <= upper


def test_fast_rows_match_the_solver():
    from onlineramsey.solver import online_size_ramsey

    for e in entries():
        if e.checkable == "fast":
            out = online_size_ramsey(P(e.red), P(e.blue), e.value + 1)
            assert out.win and out.rounds == e.value, (e.red, e.blue)


@pytest.mark.slow
def test_slow_rows_match_the_solver():
    from onlineramsey.solver import online_size_ramsey

    for e in entries():
        if e.checkable == "slow" and e.source == "solver":
            out = online_size_ramsey(P(e.red), P(e.blue), e.value + 1)
            assert out.win and out.rounds == e.value, (e.red, e.blue)


@pytest.mark.slow
def test_certified_row_is_confirmed_both_ways():
    """The headline value: the bundled plan gives the upper bound and a
    survival search the matching lower bound."""
    from onlineramsey.solver import painter_survival
    from onlineramsey.strategy import load_bundled, verify

    e = known_value(P("C4"), P("P6"))
    rep = verify(load_bundled())
    assert rep.ok and rep.max_rounds <= e.value
    survives, _ = painter_survival(P("C4"), P("P6"), e.value - 1)
    assert survives
