"""Order-preserving maps between finite posets.

The central test is `is_combinatorial`: a morphism is combinatorial when
it maps every principal down-set isomorphically onto the down-set of the
image.  A monotone bijection between posets need not be an isomorphism,
so the check verifies bijectivity and inverse monotonicity explicitly.
"""

from __future__ import annotations

from collections import namedtuple

from .checks import Check
from .errors import NotMonotone, UnknownElement
from .posets import Poset

CombinatorialDefect = namedtuple("CombinatorialDefect", "alpha reason detail")
OpennessDefect = namedtuple("OpennessDefect", "alpha base missing")


class PosetMorphism:
    """A validated order-preserving map between two posets."""

    def __init__(self, source: Poset, target: Poset, mapping: dict):
        for e in source.elements:
            if e not in mapping:
                raise UnknownElement(e)
            if mapping[e] not in target:
                raise UnknownElement(mapping[e])
        for e in mapping:
            if e not in source:
                raise UnknownElement(e)
        # monotone on covers implies monotone everywhere
        for a, b in sorted(source.covers):
            if not target.leq(mapping[a], mapping[b]):
                raise NotMonotone((a, b))
        self.source = source
        self.target = target
        self.mapping = dict(mapping)

    @classmethod
    def identity(cls, p: Poset) -> "PosetMorphism":
        return cls(p, p, {e: e for e in p.elements})

    def __call__(self, x: str) -> str:
        if x not in self.mapping:
            raise UnknownElement(x)
        return self.mapping[x]

    def __repr__(self):
        return f"PosetMorphism({self.source!r} -> {self.target!r})"

    def image(self, subset=None) -> frozenset:
        if subset is None:
            subset = self.source.elements
        return frozenset(self.mapping[x] for x in subset)

    def fibre(self, beta: str) -> frozenset:
        if beta not in self.target:
            raise UnknownElement(beta)
        return frozenset(x for x in self.source.elements if self.mapping[x] == beta)

    def preimage(self, subset) -> frozenset:
        s = frozenset(subset)
        return frozenset(x for x in self.source.elements if self.mapping[x] in s)

    def is_combinatorial(self) -> Check:
        """Does the map send every principal down-set isomorphically onto
        the down-set of its image?  Witnesses carry the offending element
        and whether the restriction fails to inject, to surject, or to have
        a monotone inverse."""
        witnesses = []
        for alpha in sorted(self.source.elements):
            down = self.source.down_set([alpha])
            image_down = self.target.down_set([self.mapping[alpha]])
            images = {self.mapping[x] for x in down}
            if len(images) < len(down):
                witnesses.append(CombinatorialDefect(
                    alpha, "not injective",
                    f"|down({alpha})|={len(down)} maps to {len(images)} elements"))
                continue
            if images != image_down:
                witnesses.append(CombinatorialDefect(
                    alpha, "not surjective",
                    f"|down({alpha})|={len(down)} != |down({self.mapping[alpha]})|={len(image_down)}"))
                continue
            bad = None
            for x in down:
                for y in down:
                    if self.target.leq(self.mapping[x], self.mapping[y]) and not self.source.leq(x, y):
                        bad = (x, y)
                        break
                if bad:
                    break
            if bad:
                witnesses.append(CombinatorialDefect(
                    alpha, "inverse not monotone",
                    f"{self.mapping[bad[0]]} <= {self.mapping[bad[1]]} but {bad[0]} !<= {bad[1]}"))
        if witnesses:
            return Check.failed(witnesses)
        return Check.passed()

    def preimage_components(self, beta: str) -> list[frozenset]:
        """Connected components of the preimage of the principal up-set at
        beta, sorted by least member."""
        if beta not in self.target:
            raise UnknownElement(beta)
        up = self.target.up_set([beta])
        return self.source.components(self.preimage(up))

    def is_open(self) -> Check:
        """A morphism of posets is open iff the image of every principal
        up-set is an up-set; images distribute over unions, so checking
        principal up-sets suffices."""
        witnesses = []
        for alpha in sorted(self.source.elements):
            img = self.image(self.source.up_set([alpha]))
            for x in sorted(img):
                missing = [c for c in self.target.covers_of(x) if c not in img]
                if missing:
                    witnesses.append(OpennessDefect(alpha, x, missing[0]))
                    break
        if witnesses:
            return Check.failed(witnesses)
        return Check.passed()

    def restrict_corestrict(self, upset) -> "PosetMorphism":
        """Restrict to an up-set of the source and corestrict to its image,
        both taken with their induced orders."""
        v = self.source.require_up_set(upset)
        sub_source = self.source.induced(v)
        sub_target = self.target.induced(self.image(v))
        return PosetMorphism(sub_source, sub_target, {x: self.mapping[x] for x in v})
