"""Extension of balanced maps and path lifting.

Extension walks the missing elements in decreasing rank order so every
element covering the current one already has a value; each candidate value
comes from one cover of the image, and the extension succeeds at an element
exactly when all candidates agree.  When the hypotheses of the extension
theorem hold at every step the result is marked ``guaranteed``; otherwise
extension is attempted anyway and the report says ``opportunistic``.
"""

from __future__ import annotations

from collections import namedtuple
from dataclasses import dataclass, field

from .covers import IndexMap, is_balanced
from .errors import (
    CorestrictionNotCombinatorial,
    MaxElementsUncovered,
    NoLiftExists,
    NotBalancedInput,
    NotCombinatorial,
    NotInDomain,
    PartialIndexMap,
    PathNotFromImage,
    PathNotIncreasing,
    TheoremViolation,
    UnknownElement,
)
from .morphisms import PosetMorphism
from .posets import Poset, connectivity, rank_check

ExtensionConflict = namedtuple("ExtensionConflict", "alpha beta1 beta2 sum1 sum2")


@dataclass
class ExtensionReport:
    extended: IndexMap
    mode: str  # "guaranteed" | "opportunistic"
    conflicts: list = field(default_factory=list)
    unconstrained: list = field(default_factory=list)

    def __bool__(self):
        return not self.conflicts


@dataclass
class Path:
    """A walk in the comparability graph; every step is tagged with its
    direction relative to the order."""

    steps: tuple
    directions: tuple  # "up" | "down" per consecutive pair

    @classmethod
    def through(cls, poset: Poset, steps) -> "Path":
        steps = tuple(steps)
        directions = []
        for a, b in zip(steps, steps[1:]):
            if poset.lt(a, b):
                directions.append("up")
            elif poset.lt(b, a):
                directions.append("down")
            else:
                raise PathNotIncreasing((a, b))
        return cls(steps, tuple(directions))

    def __len__(self):
        return len(self.steps)


def _height_order(p: Poset):
    """Elements sorted so that anything above a given element comes first;
    equals decreasing rank on graded posets."""
    height = {}
    for e in p._topological_order():
        height[e] = 1 + max((height[c] for c in p.cocovers_of(e)), default=-1)
    return sorted(p.elements, key=lambda x: (-height[x], x))


def extend_balanced(phi: PosetMorphism, m: IndexMap, target_upset) -> ExtensionReport:
    """Extend a balanced map from its domain to the larger up-set.

    Every new value is the multiplicity sum over one cover direction of the
    image; a conflict is recorded when two cover directions disagree (or the
    agreed value is not positive), and such elements stay unvalued.
    """
    combinatorial = phi.is_combinatorial()
    if not combinatorial:
        raise NotCombinatorial(combinatorial.witnesses[0].alpha)
    w = phi.source.require_up_set(target_upset)
    if not m.domain <= w:
        raise ValueError("the target up-set must contain the index map domain")
    balanced = is_balanced(phi, m)
    if not balanced:
        raise NotBalancedInput(balanced.witnesses[0])
    uncovered = [x for x in phi.source.max_elements() if x not in m.domain]
    if uncovered:
        raise MaxElementsUncovered(uncovered)

    values = dict(m.values)
    conflicts = []
    unconstrained = []
    guaranteed = True
    todo = [x for x in _height_order(phi.source) if x in w and x not in m.domain]
    for alpha in todo:
        image_covers = phi.target.covers_of(phi(alpha))
        if not image_covers:
            unconstrained.append(alpha)
            continue
        theorem_upset = phi.target.up_set([phi(alpha)]) - {phi(alpha)}
        if not phi.target.is_connected(theorem_upset) or not all(
            g in values for g in phi.preimage(theorem_upset)
        ):
            guaranteed = False
        candidates = []
        for beta in image_covers:
            above = [g for g in phi.source.covers_of(alpha) if phi(g) == beta]
            if any(g not in values for g in above):
                candidates.append((beta, None))
            else:
                candidates.append((beta, sum(values[g] for g in above)))
        known = [(b, c) for b, c in candidates if c is not None]
        distinct = sorted({c for _, c in known})
        if len(known) == len(candidates) and len(distinct) == 1 and distinct[0] >= 1:
            values[alpha] = distinct[0]
            continue
        if len(distinct) >= 2:
            (b1, c1) = next(x for x in known if x[1] == distinct[0])
            (b2, c2) = next(x for x in known if x[1] == distinct[-1])
            first, second = sorted([(b1, c1), (b2, c2)])
            conflicts.append(ExtensionConflict(alpha, first[0], second[0], first[1], second[1]))
        else:
            # a candidate was unavailable or the agreed sum was zero
            b, c = candidates[0]
            conflicts.append(ExtensionConflict(alpha, b, b, c, c))

    extended = IndexMap(phi.source, values)
    if not conflicts:
        image = phi.image(extended.domain)
        if not phi.target.is_up_set(image):
            raise TheoremViolation(
                "image of the extended domain is not an up-set; this contradicts "
                "the openness corollary for balanced maps"
            )
    mode = "guaranteed" if guaranteed else "opportunistic"
    return ExtensionReport(extended, mode, conflicts, unconstrained)


def _saturated_chain(p: Poset, lo: str, hi: str):
    """A deterministic cover chain from lo up to hi (least cover at every
    step)."""
    chain = [lo]
    current = lo
    while current != hi:
        step = min(c for c in p.covers_of(current) if p.leq(c, hi))
        chain.append(step)
        current = step
    return chain


def lift_upward_path(phi: PosetMorphism, m: IndexMap, alpha: str, target_path) -> Path:
    """Lift a strictly increasing target path starting at the image of
    alpha; strict steps are refined to saturated cover chains and lifted
    cover by cover, choosing the least valued preimage."""
    steps = list(target_path)
    for b in steps:
        if b not in phi.target:
            raise UnknownElement(b)
    if alpha not in m.domain:
        raise NotInDomain(alpha)
    if not steps or steps[0] != phi(alpha):
        raise PathNotFromImage(phi(alpha), steps[0] if steps else None)
    for a, b in zip(steps, steps[1:]):
        if not phi.target.lt(a, b):
            raise PathNotIncreasing((a, b))
    balanced = is_balanced(phi, m)
    if not balanced:
        raise NotBalancedInput(balanced.witnesses[0])

    lift = [alpha]
    current = alpha
    for a, b in zip(steps, steps[1:]):
        chain = _saturated_chain(phi.target, a, b)
        for nu in chain[1:]:
            options = sorted(
                g for g in phi.source.covers_of(current)
                if phi(g) == nu and g in m.domain
            )
            if not options:
                raise NoLiftExists(f"no valued preimage of {nu!r} covers {current!r}")
            current = options[0]
            lift.append(current)
    return Path.through(phi.source, lift)


def lift_path(phi: PosetMorphism, m: IndexMap, alpha: str, target_path) -> Path:
    """Lift a general path inside the image of the index-map domain.

    Up-steps use the balancing condition; down-steps use the down-set
    isomorphism of the restricted-corestricted morphism, which must be
    combinatorial or the operation refuses with the witness.
    """
    v = m.domain
    psi = phi.restrict_corestrict(v)
    combinatorial = psi.is_combinatorial()
    if not combinatorial:
        raise CorestrictionNotCombinatorial(combinatorial.witnesses[0].alpha)
    if alpha not in v:
        raise NotInDomain(alpha)
    steps = list(target_path)
    if not steps or steps[0] != phi(alpha):
        raise PathNotFromImage(phi(alpha), steps[0] if steps else None)
    image = phi.image(v)
    for b in steps:
        if b not in phi.target:
            raise UnknownElement(b)
        if b not in image:
            raise NoLiftExists(f"path element {b!r} lies outside the image of the domain")
    balanced = is_balanced(phi, m)
    if not balanced:
        raise NotBalancedInput(balanced.witnesses[0])

    lift = [alpha]
    current = alpha
    for a, b in zip(steps, steps[1:]):
        if phi.target.lt(a, b):
            partial = lift_upward_path(phi, m, current, [a, b])
            lift.extend(partial.steps[1:])
            current = lift[-1]
        elif phi.target.lt(b, a):
            options = [g for g in psi.source.down_set([current]) if phi(g) == b]
            if not options:
                raise NoLiftExists(f"no preimage of {b!r} below {current!r} in the domain")
            current = min(options)
            lift.append(current)
        else:
            raise PathNotIncreasing((a, b))
    return Path.through(phi.source, lift)


@dataclass
class LiftingReport:
    mode: str
    hypotheses: dict
    conclusion_holds: bool
    witness_fibre: str | None = None

    @property
    def hypotheses_hold(self):
        return all(self.hypotheses.values())


def check_connectivity_lifting(phi: PosetMorphism, m: IndexMap, mode: str, k: int | None = None) -> LiftingReport:
    """Verify the hypotheses of a connectivity-lifting statement, then
    independently verify its conclusion, and fail loudly if the hypotheses
    hold while the conclusion does not.

    mode="one-fibre": the domain of m is an up-set with combinatorial
    restricted morphism; connected image plus one connected fibre forces the
    domain connected.  mode="codim": graded posets, total balanced map;
    codimension-k connectivity of the target plus one connected fibre at
    that level forces the source connected in codimension k.
    """
    balanced = is_balanced(phi, m)
    if not balanced:
        raise NotBalancedInput(balanced.witnesses[0])

    if mode == "one-fibre":
        v = m.domain
        psi = phi.restrict_corestrict(v)
        combinatorial = psi.is_combinatorial()
        if not combinatorial:
            raise CorestrictionNotCombinatorial(combinatorial.witnesses[0].alpha)
        image = phi.image(v)
        hyp = {"image connected": phi.target.is_connected(image)}
        witness = None
        for beta in sorted(image):
            fibre = phi.fibre(beta) & v
            if fibre and len(phi.source.components(fibre)) == 1:
                witness = beta
                break
        hyp["some fibre connected"] = witness is not None
        conclusion = phi.source.is_connected(v)
        report = LiftingReport(mode, hyp, conclusion, witness)
    elif mode == "codim":
        if k is None:
            raise ValueError("codim mode needs k")
        combinatorial = phi.is_combinatorial()
        if not combinatorial:
            raise NotCombinatorial(combinatorial.witnesses[0].alpha)
        if not m.is_total():
            raise PartialIndexMap(frozenset(phi.source.elements) - m.domain)
        source_rank = rank_check(phi.source)
        target_rank = rank_check(phi.target)
        hyp = {
            "target codim-k connected": connectivity(phi.target, "codim", k).connected,
        }
        level = phi.source.up_set(source_rank.level(source_rank.dim - k))
        witness = None
        for beta in sorted(phi.target.up_set(target_rank.level(target_rank.dim - k))):
            fibre = phi.fibre(beta) & level
            if fibre and len(phi.source.components(fibre)) == 1:
                witness = beta
                break
        hyp["some fibre connected at level"] = witness is not None
        conclusion = connectivity(phi.source, "codim", k).connected
        report = LiftingReport(mode, hyp, conclusion, witness)
    else:
        raise ValueError(f"unknown lifting mode {mode!r}")

    if report.hypotheses_hold and not report.conclusion_holds:
        raise TheoremViolation(
            f"connectivity-lifting hypotheses hold in mode {mode!r} but the "
            "conclusion fails; this is a bug, not a bad input"
        )
    return report
