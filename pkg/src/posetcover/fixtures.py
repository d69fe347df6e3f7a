"""Bundled fixture catalog.

Each fixture is a small branched-cover instance used throughout the test
suite and exposed to the CLI by name.  Greek letters in the original
labels are transliterated (alpha1, beta2, ...) and the twiddled O becomes
tO.  Index-map fixtures carry the -M suffix.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .covers import IndexMap
from .metric import MetricGraph, MetricGraphMorphism, Point
from .morphisms import PosetMorphism
from .posets import Poset


def _drop_subscripts(source: Poset, target: Poset) -> PosetMorphism:
    mapping = {}
    for e in source.elements:
        base = e.rstrip("0123456789")
        mapping[e] = base if base in target else e
    return PosetMorphism(source, target, mapping)


@lru_cache(maxsize=None)
def fix_trop() -> PosetMorphism:
    """Degree-3 branched covering of posets: two segments glued over a
    path, subscripted elements over unsubscripted ones."""
    gamma = Poset(
        ["A1", "B1", "C1", "C2", "s1", "s2", "t1", "t2"],
        [("A1", "s1"), ("A1", "s2"), ("B1", "s1"), ("B1", "s2"),
         ("B1", "t1"), ("B1", "t2"), ("C1", "t1"), ("C2", "t2")],
    )
    delta = Poset(
        ["A", "B", "C", "s", "t"],
        [("A", "s"), ("B", "s"), ("B", "t"), ("C", "t")],
    )
    return _drop_subscripts(gamma, delta)


@lru_cache(maxsize=None)
def fix_trop_m() -> IndexMap:
    return IndexMap.total(fix_trop().source, {
        "A1": 3, "B1": 3, "C1": 1, "C2": 2,
        "s1": 2, "s2": 1, "t1": 1, "t2": 2,
    })


@lru_cache(maxsize=None)
def fix_ce1() -> PosetMorphism:
    """Balanced but not an indexed branched cover (two points folding onto
    a segment); the morphism is not combinatorial."""
    sigma = Poset(["A1", "A2", "B1"], [("A1", "B1"), ("A2", "B1")])
    delta = Poset(["A", "B"], [("A", "B")])
    return _drop_subscripts(sigma, delta)


@lru_cache(maxsize=None)
def fix_ce1_m() -> IndexMap:
    return IndexMap.constant(fix_ce1().source, 1)


@lru_cache(maxsize=None)
def fix_ce2() -> PosetMorphism:
    """An indexed branched cover that is not balanced; also not
    combinatorial."""
    sigma = Poset(
        ["A1", "A2", "B1", "B2", "B3"],
        [("A1", "B1"), ("A1", "B2"), ("A2", "B2"), ("A2", "B3")],
    )
    delta = Poset(["A", "B"], [("A", "B")])
    return _drop_subscripts(sigma, delta)


@lru_cache(maxsize=None)
def fix_ce2_m() -> IndexMap:
    return IndexMap.total(fix_ce2().source, {"A1": 2, "A2": 2, "B1": 1, "B2": 2, "B3": 1})


@lru_cache(maxsize=None)
def fix_idread() -> PosetMorphism:
    """Connected domain where a balanced map extends over one bottom
    element but conflicts over the other two."""
    sigma = Poset(
        ["O1", "tO1", "tO2", "A1", "B1", "B2", "C1", "C2",
         "beta1", "beta2", "gamma1", "gamma2"],
        [("O1", "A1"), ("O1", "B1"), ("O1", "B2"),
         ("tO1", "B1"), ("tO1", "C1"), ("tO2", "B2"), ("tO2", "C2"),
         ("A1", "beta1"), ("A1", "beta2"), ("A1", "gamma1"), ("A1", "gamma2"),
         ("B1", "beta1"), ("B2", "beta2"), ("C1", "gamma1"), ("C2", "gamma2")],
    )
    delta = Poset(
        ["O", "tO", "A", "B", "C", "beta", "gamma"],
        [("O", "A"), ("O", "B"), ("tO", "B"), ("tO", "C"),
         ("A", "beta"), ("A", "gamma"), ("B", "beta"), ("C", "gamma")],
    )
    return _drop_subscripts(sigma, delta)


@lru_cache(maxsize=None)
def fix_idread_m() -> IndexMap:
    return IndexMap(fix_idread().source, {
        "A1": 3, "B1": 2, "B2": 1, "C1": 1, "C2": 2,
        "beta1": 2, "beta2": 1, "gamma1": 1, "gamma2": 2,
    })


@lru_cache(maxsize=None)
def fix_simple_ext() -> PosetMorphism:
    """Identity morphism on a disconnected-domain extension example: the
    balanced map on the two arms disagrees at the bottom."""
    p = Poset(["O", "A", "B", "alpha", "beta"],
              [("O", "A"), ("A", "alpha"), ("O", "B"), ("B", "beta")])
    return PosetMorphism.identity(p)


@lru_cache(maxsize=None)
def fix_simple_ext_m() -> IndexMap:
    return IndexMap(fix_simple_ext().source, {"alpha": 2, "A": 2, "beta": 1, "B": 1})


@lru_cache(maxsize=None)
def fix_open() -> PosetMorphism:
    """A combinatorial morphism that is not an open map, so no balanced
    map exists for it."""
    sigma = Poset(
        ["O1", "A1", "B1", "B2", "C1", "alpha1", "beta1", "beta2"],
        [("O1", "A1"), ("O1", "B1"), ("O1", "B2"), ("O1", "C1"),
         ("A1", "alpha1"), ("B1", "alpha1"),
         ("B1", "beta1"), ("C1", "beta1"), ("B2", "beta2"), ("C1", "beta2")],
    )
    delta = Poset(
        ["O", "A", "B", "C", "alpha", "beta"],
        [("O", "A"), ("O", "B"), ("O", "C"),
         ("A", "alpha"), ("B", "alpha"), ("B", "beta"), ("C", "beta")],
    )
    return _drop_subscripts(sigma, delta)


@lru_cache(maxsize=None)
def fix_lift() -> PosetMorphism:
    """A combinatorial morphism with an up-set whose restricted morphism is
    not combinatorial, so a downward path fails to lift."""
    sigma = Poset(
        ["O1", "A1", "A2", "B1", "B2", "C1", "alpha1", "alpha2", "beta1", "beta2"],
        [("O1", "A1"), ("O1", "A2"), ("O1", "B1"), ("O1", "B2"), ("O1", "C1"),
         ("A1", "alpha1"), ("B1", "alpha1"), ("A2", "alpha2"), ("B2", "alpha2"),
         ("B1", "beta1"), ("C1", "beta1"), ("B2", "beta2"), ("C1", "beta2")],
    )
    delta = Poset(
        ["O", "A", "B", "C", "alpha", "beta"],
        [("O", "A"), ("O", "B"), ("O", "C"),
         ("A", "alpha"), ("B", "alpha"), ("B", "beta"), ("C", "beta")],
    )
    return _drop_subscripts(sigma, delta)


FIX_LIFT_UPSET = frozenset({"B2", "C1", "alpha2", "beta1", "beta2"})


@lru_cache(maxsize=None)
def fix_lift_m() -> IndexMap:
    values = {x: 1 for x in FIX_LIFT_UPSET}
    values["C1"] = 2
    return IndexMap(fix_lift().source, values)


@lru_cache(maxsize=None)
def fix_graph() -> MetricGraphMorphism:
    """Degree-mixing map of metric graphs whose face-poset morphism is not
    combinatorial before refinement: one source vertex sits over an
    interior point of the target edge.  The concrete lengths are a
    modelling choice; the combinatorics and the fibre counts are what
    matter."""
    target = MetricGraph(["u", "v"], [("t", "u", "v", Fraction(3))])
    source = MetricGraph(["A", "B", "C"],
                         [("e", "A", "B", Fraction(2)), ("f", "A", "C", Fraction(3))])
    return MetricGraphMorphism(
        source, target,
        vertex_images={
            "A": Point.at_vertex("u"),
            "B": Point.interior("t", Fraction(2)),
            "C": Point.at_vertex("v"),
        },
        edge_images={
            "e": ("t", Fraction(0), Fraction(2), 1),
            "f": ("t", Fraction(0), Fraction(3), 1),
        },
    )


FIXTURES = {
    "FIX-TROP": fix_trop,
    "FIX-TROP-M": fix_trop_m,
    "FIX-CE1": fix_ce1,
    "FIX-CE1-M": fix_ce1_m,
    "FIX-CE2": fix_ce2,
    "FIX-CE2-M": fix_ce2_m,
    "FIX-IDREAD": fix_idread,
    "FIX-IDREAD-M": fix_idread_m,
    "FIX-SIMPLE-EXT": fix_simple_ext,
    "FIX-SIMPLE-EXT-M": fix_simple_ext_m,
    "FIX-OPEN": fix_open,
    "FIX-LIFT": fix_lift,
    "FIX-LIFT-M": fix_lift_m,
    "FIX-GRAPH": fix_graph,
}


def load_fixture(name: str):
    if name not in FIXTURES:
        raise KeyError(name)
    return FIXTURES[name]()
