"""Chain posets, induced barycentric morphisms, stellar subdivision."""

import pytest
from random import Random

from posetcover.errors import (
    FaceNotInComplex,
    NotCombinatorial,
    OracleSizeExceeded,
    VertexClash,
)
from posetcover.fixtures import fix_ce1, fix_trop
from posetcover.generators import random_sheaf_morphism
from posetcover.morphisms import PosetMorphism
from posetcover.posets import Poset, rank_check
from posetcover.subdivision import (
    SimplicialComplex,
    bcs_morphism,
    chain_poset,
    simplicial_face_poset,
    stellar_subdivide,
)

from oracles import brute_chains, brute_closure_faces


def three_simplex():
    return SimplicialComplex.full_simplex(["1", "2", "3", "4"])


class TestChainPoset:
    def test_two_chain(self):
        p = Poset(["A", "B"], [("A", "B")])
        chains = chain_poset(p)
        assert sorted(chains.poset.elements) == ["A", "A<B", "B"]
        assert chains.poset.covers == {("A", "A<B"), ("B", "A<B")}
        assert chains.top_of["A<B"] == "B"

    def test_antichain(self):
        p = Poset(["a", "b", "c"], [])
        chains = chain_poset(p)
        assert len(chains.poset.elements) == 3
        assert not chains.poset.covers

    def test_three_simplex_count(self):
        poset = simplicial_face_poset(three_simplex())
        chains = chain_poset(poset)
        assert len(chains.poset.elements) == 149
        assert len(chains.poset.elements) == len(brute_chains(poset.elements, poset.covers))

    def test_rank_is_chain_length(self):
        poset = simplicial_face_poset(three_simplex())
        chains = chain_poset(poset)
        report = rank_check(chains.poset)
        for label, content in chains.chain_of.items():
            assert report.rank[label] == len(content) - 1
        assert report.pure and report.dim == 3

    def test_size_guard(self):
        poset = simplicial_face_poset(three_simplex())
        with pytest.raises(OracleSizeExceeded):
            chain_poset(poset, limit=10)


class TestBcsMorphism:
    def test_trop_chain_image(self):
        bcs = bcs_morphism(fix_trop())
        assert bcs("C1<t1") == "C<t"

    def test_identity(self):
        p = fix_trop().target
        bcs = bcs_morphism(PosetMorphism.identity(p))
        assert all(bcs(x) == x for x in bcs.source.elements)

    def test_output_is_combinatorial(self):
        assert bcs_morphism(fix_trop()).is_combinatorial()

    def test_requires_combinatorial(self):
        with pytest.raises(NotCombinatorial):
            bcs_morphism(fix_ce1())

    def test_random_instances(self):
        rng = Random(51)
        for _ in range(15):
            phi = random_sheaf_morphism(rng)
            assert bcs_morphism(phi).is_combinatorial()


class TestStellar:
    def test_three_simplex_at_triangle(self):
        before = three_simplex()
        after = stellar_subdivide(before, {"1", "2", "3"}, "p")
        assert len(after) == 27
        added = after.faces - before.faces
        removed = before.faces - after.faces
        assert removed == {frozenset("123"), frozenset("1234")}
        by_dim = {}
        for f in added:
            by_dim[len(f) - 1] = by_dim.get(len(f) - 1, 0) + 1
        assert by_dim == {0: 1, 1: 4, 2: 6, 3: 3}

    def test_edge_bisection(self):
        edge = SimplicialComplex.from_maximal(["1", "2"], [["1", "2"]])
        after = stellar_subdivide(edge, {"1", "2"}, "p")
        assert after.faces == {
            frozenset("1"), frozenset("2"), frozenset("p"),
            frozenset(("1", "p")), frozenset(("2", "p")),
        }

    def test_vertex_subdivision_is_relabelling(self):
        k = SimplicialComplex.from_maximal(["1", "2", "3"], [["1", "2", "3"]])
        after = stellar_subdivide(k, {"1"}, "p")
        relabel = {frozenset("p" if v == "1" else v for v in f) for f in k.faces}
        assert after.faces == relabel

    def test_errors(self):
        k = three_simplex()
        with pytest.raises(FaceNotInComplex):
            stellar_subdivide(k, {"1", "9"}, "p")
        with pytest.raises(VertexClash):
            stellar_subdivide(k, {"1", "2"}, "4")

    def test_face_count_formula_against_closure_oracle(self):
        rng = Random(52)
        for _ in range(15):
            vertices = [str(i) for i in range(rng.randint(3, 7))]
            maximal = [rng.sample(vertices, rng.randint(2, len(vertices)))
                       for _ in range(rng.randint(1, 3))]
            k = SimplicialComplex.from_maximal(vertices, maximal)
            face = rng.choice(sorted(k.faces, key=sorted))
            after = stellar_subdivide(k, face, "new")
            star = k.star(face)
            cone_base = {t for t in k.faces
                         if not face <= t and any(t <= f for f in star)}
            assert len(after) == len(k) - len(star) + len(cone_base) + 1
            # independent reconstruction by closure of the expected maximal sets
            expected = (k.faces - star) | brute_closure_faces(
                [t | {"new"} for t in cone_base] + [["new"]])
            assert after.faces == expected


class TestFacePoset:
    def test_tiny(self):
        k = SimplicialComplex.from_maximal(["1", "2"], [["1", "2"]])
        p = simplicial_face_poset(k)
        assert p.covers == {("1", "1,2"), ("2", "1,2")}

    def test_three_simplex(self):
        p = simplicial_face_poset(three_simplex())
        assert len(p.elements) == 15
        report = rank_check(p)
        assert report.pure and report.dim == 3

    def test_subdivided_count(self):
        after = stellar_subdivide(three_simplex(), {"1", "2", "3"}, "p")
        assert len(simplicial_face_poset(after).elements) == 27

    def test_chain_poset_graded_when_base_is(self):
        rng = Random(53)
        from posetcover.generators import random_graded_poset

        for _ in range(10):
            base = random_graded_poset(rng, max_elements=6)
            base_report = rank_check(base)
            chains = chain_poset(base)
            report = rank_check(chains.poset)
            if base_report.pure:
                assert report.pure
                assert report.dim == base_report.dim
