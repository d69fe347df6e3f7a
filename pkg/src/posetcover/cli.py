"""Command-line interface.

Exit codes: 0 when the checked property holds, 1 when it fails (witnesses
are emitted), 2 for input or usage errors.  ``--format machine`` prints a
canonical JSON report; identical inputs give byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from random import Random

from . import covers, dot, extend, fileio, fixtures, metric, posets, subdivision
from .errors import (
    CorestrictionNotCombinatorial,
    FormatError,
    NoLiftExists,
    NotMonotone,
    ToolError,
)
from .metric import MetricGraph, MetricGraphMorphism, Point
from .morphisms import PosetMorphism
from .posets import Poset


@dataclass
class RunReport:
    command: str
    verdict: str  # pass | fail | error
    witnesses: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def exit_code(self) -> int:
        return {"pass": 0, "fail": 1}.get(self.verdict, 2)


def _plain(value):
    """Make report values JSON-friendly and deterministic."""
    if hasattr(value, "_asdict"):
        out = {"kind": type(value).__name__}
        out.update({k: _plain(v) for k, v in value._asdict().items()})
        return out
    if isinstance(value, frozenset):
        return sorted(_plain(v) for v in value)
    if isinstance(value, (set, tuple, list)):
        return [_plain(v) for v in value]
    if isinstance(value, Fraction):
        return fileio.format_rational(value)
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in sorted(value.items(), key=lambda kv: str(kv[0]))}
    return value


def emit(report: RunReport, fmt: str, out=None):
    out = out or sys.stdout
    payload = {
        "command": report.command,
        "verdict": report.verdict,
        "witnesses": _plain(report.witnesses),
        "data": _plain(report.data),
    }
    if fmt == "machine":
        out.write(fileio.dumps(payload))
        return
    out.write(f"command: {report.command}\n")
    out.write(f"verdict: {report.verdict}\n")
    for key, value in payload["data"].items():
        out.write(f"{key}: {json.dumps(value, sort_keys=True, ensure_ascii=False)}\n")
    for w in payload["witnesses"]:
        out.write(f"witness: {json.dumps(w, sort_keys=True, ensure_ascii=False)}\n")


# ----- input resolution -------------------------------------------------------


def _load(name: str):
    try:
        return fileio.load_named(name, Path.cwd())
    except KeyError:
        raise FormatError(f"not a fixture or readable file: {name!r}") from None


def resolve_poset(name: str) -> Poset:
    obj = _load(name)
    got = fileio.as_poset(obj, name)
    if got is None:
        raise FormatError(f"{name!r} does not describe a poset")
    return got


def resolve_morphism(name: str) -> PosetMorphism:
    obj = _load(name)
    if isinstance(obj, PosetMorphism):
        return obj
    if isinstance(obj, MetricGraphMorphism):
        return metric.morphism_face_poset(obj)
    raise FormatError(f"{name!r} does not describe a morphism")


def resolve_metric_morphism(name: str) -> MetricGraphMorphism:
    obj = _load(name)
    if isinstance(obj, MetricGraphMorphism):
        return obj
    raise FormatError(f"{name!r} does not describe a metric graph morphism")


def resolve_index(name: str, carrier: Poset) -> covers.IndexMap:
    obj = _load(name)
    if isinstance(obj, covers.IndexMap):
        if obj.poset != carrier:
            raise FormatError(f"index map {name!r} lives on a different poset")
        return obj
    if isinstance(obj, dict):
        return fileio.index_map_from_doc(obj, carrier)
    raise FormatError(f"{name!r} does not describe an index map")


def _csv(text: str) -> list[str]:
    return [part for part in (text or "").split(",") if part]


def _need(args, *names):
    for name in names:
        if getattr(args, name.replace("-", "_"), None) is None:
            raise FormatError(f"this action needs --{name}")


def _parse_point(text: str, graph: MetricGraph) -> Point:
    if ":" in text:
        edge, _, pos = text.rpartition(":")
        return Point.interior(edge, fileio.parse_rational(pos))
    return Point.at_vertex(text)


# ----- handlers ---------------------------------------------------------------


def cmd_poset(args) -> RunReport:
    command = f"poset {args.action}"
    if args.action == "validate":
        try:
            p = resolve_poset(args.poset)
        except FormatError:
            raise
        except ToolError as exc:
            return RunReport(command, "fail", witnesses=[{"error": type(exc).__name__,
                                                          "detail": str(exc)}])
        return RunReport(command, "pass", data={
            "elements": len(p.elements), "covers": len(p.covers)})
    p = resolve_poset(args.poset)
    if args.action == "stats":
        data = {
            "elements": sorted(p.elements),
            "covers": sorted(list(c) for c in p.covers),
            "max": p.max_elements(),
            "min": p.min_elements(),
            "connected": p.is_connected(),
        }
        try:
            rank = posets.rank_check(p)
            data.update(graded=True, dim=rank.dim, pure=rank.pure,
                        rank=dict(sorted(rank.rank.items())))
            data["strongly_connected"] = posets.connectivity(p, "strong").connected
        except ToolError as exc:
            data.update(graded=False, not_graded_witness=list(getattr(exc, "pair", ())))
        return RunReport(command, "pass", data=data)
    if args.action == "upsets":
        ups = list(posets.enumerate_up_sets(p, connected_only=args.connected,
                                            limit=args.oracle_limit))
        return RunReport(command, "pass", data={
            "count": len(ups),
            "up_sets": sorted([sorted(u) for u in ups]),
        })
    raise FormatError(f"unknown poset action {args.action!r}")


def cmd_morphism(args) -> RunReport:
    command = "morphism check"
    try:
        phi = resolve_morphism(args.morphism)
    except NotMonotone as exc:
        return RunReport(command, "fail",
                         witnesses=[{"error": "NotMonotone", "pair": list(exc.pair)}],
                         data={"monotone": False})
    comb = phi.is_combinatorial()
    opened = phi.is_open()
    witnesses = list(comb.witnesses) + list(opened.witnesses)
    verdict = "pass" if comb and opened else "fail"
    return RunReport(command, verdict, witnesses=witnesses, data={
        "monotone": True,
        "combinatorial": bool(comb),
        "open": bool(opened),
    })


def cmd_cover(args) -> RunReport:
    command = f"cover {args.action}"
    phi = resolve_morphism(args.morphism)
    if args.action != "search":
        _need(args, "index")
    if args.action == "search":
        found = covers.search_balanced(phi, bound=args.bound)
        if found is None:
            return RunReport(command, "fail",
                             witnesses=[{"result": "NoneFound", "bound": args.bound}])
        return RunReport(command, "pass", data={"values": dict(sorted(found.values.items()))})
    m = resolve_index(args.index, phi.source)
    if args.action == "balanced":
        check = covers.is_balanced(phi, m)
        return RunReport(command, "pass" if check else "fail",
                         witnesses=list(check.witnesses))
    if args.action == "ibc":
        check = covers.is_ibc(phi, m)
        return RunReport(command, "pass" if check else "fail",
                         witnesses=list(check.witnesses))
    if args.action == "ibc-oracle":
        check = covers.is_ibc_oracle(phi, m, limit=args.oracle_limit)
        return RunReport(command, "pass" if check else "fail",
                         witnesses=list(check.witnesses))
    if args.action == "degree":
        report = covers.global_degree(phi, m)
        data = {"per_target": dict(sorted(report.per_target_value.items())),
                "constant": report.constant}
        if report.constant:
            data["degree"] = report.degree
            return RunReport(command, "pass", data=data)
        return RunReport(command, "fail", data=data,
                         witnesses=[{"per_target": data["per_target"]}])
    raise FormatError(f"unknown cover action {args.action!r}")


def cmd_extend(args) -> RunReport:
    command = "extend"
    phi = resolve_morphism(args.morphism)
    m = resolve_index(args.index, phi.source)
    target_upset = (phi.source.up_set(_csv(args.upset))
                    if args.upset else frozenset(phi.source.elements))
    report = extend.extend_balanced(phi, m, target_upset)
    assigned = {k: v for k, v in report.extended.values.items() if k not in m.domain}
    data = {"mode": report.mode,
            "assigned": dict(sorted(assigned.items())),
            "unconstrained": sorted(report.unconstrained)}
    if report.conflicts:
        return RunReport(command, "fail", witnesses=list(report.conflicts), data=data)
    return RunReport(command, "pass", data=data)


def cmd_lift(args) -> RunReport:
    command = f"lift {args.action}"
    phi = resolve_morphism(args.morphism)
    m = resolve_index(args.index, phi.source)
    path = _csv(args.path)
    try:
        if args.action == "up":
            lifted = extend.lift_upward_path(phi, m, args.start, path)
        else:
            lifted = extend.lift_path(phi, m, args.start, path)
    except (CorestrictionNotCombinatorial, NoLiftExists) as exc:
        return RunReport(command, "fail", witnesses=[{
            "error": type(exc).__name__,
            "detail": getattr(exc, "witness", None) or str(exc),
        }])
    return RunReport(command, "pass", data={
        "steps": list(lifted.steps), "directions": list(lifted.directions)})


def cmd_connect(args) -> RunReport:
    command = f"connect {args.action}"
    if args.action == "codimk":
        _need(args, "poset", "k")
        p = resolve_poset(args.poset)
        report = posets.connectivity(p, "codim", args.k)
        if report.connected:
            return RunReport(command, "pass", data={"k": args.k})
        return RunReport(command, "fail", data={"k": args.k},
                         witnesses=[{"components": [sorted(c) for c in report.components]}])
    if args.action == "strong":
        _need(args, "poset")
        p = resolve_poset(args.poset)
        report = posets.connectivity(p, "strong")
        if report.connected:
            return RunReport(command, "pass")
        return RunReport(command, "fail", witnesses=[{
            "witness": report.witness,
            "components": [sorted(c) for c in report.components]}])
    if args.action == "lifting":
        _need(args, "morphism", "index")
        if args.mode == "codim":
            _need(args, "k")
        phi = resolve_morphism(args.morphism)
        m = resolve_index(args.index, phi.source)
        mode = {"one-fibre": "one-fibre", "codim": "codim"}[args.mode]
        report = extend.check_connectivity_lifting(phi, m, mode, k=args.k)
        data = {"hypotheses": report.hypotheses,
                "conclusion": report.conclusion_holds,
                "fibre_witness": report.witness_fibre}
        if report.hypotheses_hold and report.conclusion_holds:
            return RunReport(command, "pass", data=data)
        return RunReport(command, "fail", data=data,
                         witnesses=[{"hypotheses": report.hypotheses}])
    raise FormatError(f"unknown connect action {args.action!r}")


def cmd_subdivide(args) -> RunReport:
    command = f"subdivide {args.action}"
    if args.action == "bcs":
        if args.poset is None and args.morphism is None:
            raise FormatError("this action needs --poset or --morphism")
        if args.morphism:
            phi = resolve_morphism(args.morphism)
            bcs = subdivision.bcs_morphism(phi)
            return RunReport(command, "pass", data={
                "source_chains": len(bcs.source.elements),
                "target_chains": len(bcs.target.elements),
                "combinatorial": bool(bcs.is_combinatorial()),
                "morphism": fileio.morphism_to_doc(bcs),
            })
        p = resolve_poset(args.poset)
        chains = subdivision.chain_poset(p)
        return RunReport(command, "pass", data={
            "chains": len(chains.poset.elements),
            "poset": fileio.poset_to_doc(chains.poset),
        })
    if args.action == "stellar":
        _need(args, "complex", "face", "vertex")
        obj = _load(args.complex)
        if not isinstance(obj, subdivision.SimplicialComplex):
            raise FormatError(f"{args.complex!r} does not describe a simplicial complex")
        face = frozenset(_csv(args.face))
        result = subdivision.stellar_subdivide(obj, face, args.vertex)
        return RunReport(command, "pass", data={
            "faces_before": len(obj),
            "faces_after": len(result),
            "complex": fileio.complex_to_doc(result),
        })
    raise FormatError(f"unknown subdivide action {args.action!r}")


def cmd_graph(args) -> RunReport:
    command = f"graph {args.action}"
    if args.action == "refine":
        _need(args, "morphism")
        phi = resolve_metric_morphism(args.morphism)
        ref = metric.refine_to_combinatorial(phi)
        return RunReport(command, "pass", data={
            "new_target_vertices": {k: [v[0], fileio.format_rational(v[1])]
                                    for k, v in sorted(ref.new_target_vertices.items())},
            "new_source_vertices": {k: [v[0], fileio.format_rational(v[1])]
                                    for k, v in sorted(ref.new_source_vertices.items())},
            "target_pieces": {k: list(v) for k, v in sorted(ref.target_pieces.items())},
            "source_pieces": {k: list(v) for k, v in sorted(ref.source_pieces.items())},
            "combinatorial": True,
            "morphism": fileio.metric_morphism_to_doc(ref.morphism),
        })
    if args.action == "sample":
        _need(args, "morphism")
        phi = resolve_metric_morphism(args.morphism)
        results = []
        mismatch = []
        if args.point:
            points = [_parse_point(args.point, phi.target)]
        else:
            points = _random_points(phi.target, args.random, args.seed)
        for y in points:
            sample = metric.sample_fibre(phi, y)
            entry = {"point": repr(y), "geometric": sample.geometric,
                     "poset": sample.poset, "match": sample.match}
            results.append(entry)
            if not sample.match:
                mismatch.append(entry)
        verdict = "pass" if not mismatch else "fail"
        return RunReport(command, verdict, witnesses=mismatch, data={"samples": results})
    if args.action == "poset":
        if args.graph is None and args.morphism is None:
            raise FormatError("this action needs --graph or --morphism")
        if args.morphism:
            phi = resolve_metric_morphism(args.morphism)
            pm = metric.morphism_face_poset(phi)
            return RunReport(command, "pass", data={"morphism": fileio.morphism_to_doc(pm)})
        obj = _load(args.graph)
        if isinstance(obj, MetricGraphMorphism):
            obj = obj.source
        if not isinstance(obj, MetricGraph):
            raise FormatError(f"{args.graph!r} does not describe a metric graph")
        return RunReport(command, "pass", data={
            "poset": fileio.poset_to_doc(metric.graph_face_poset(obj), with_rank=True)})
    raise FormatError(f"unknown graph action {args.action!r}")


def _random_points(graph: MetricGraph, count: int, seed: int) -> list[Point]:
    rng = Random(seed)
    edges = sorted(graph.edges)
    points = []
    for _ in range(count):
        eid = rng.choice(edges)
        length = graph.edges[eid].length
        denominator = rng.randint(2, 40)
        numerator = rng.randint(1, denominator - 1)
        points.append(Point.interior(eid, Fraction(numerator, denominator) * length))
    return points


def cmd_export(args) -> RunReport:
    if args.poset is None and args.morphism is None:
        raise FormatError("this action needs --poset or --morphism")
    name = args.morphism or args.poset
    obj = resolve_morphism(name) if args.morphism else resolve_poset(name)
    text = dot.export_dot(obj, args.kind)
    return RunReport("export dot", "pass", data={"dot": text})


def cmd_fixtures(args) -> RunReport:
    command = f"fixtures {args.action}"
    if args.action == "list":
        listing = {name: type(fixtures.load_fixture(name)).__name__
                   for name in sorted(fixtures.FIXTURES)}
        return RunReport(command, "pass", data={"fixtures": listing})
    names = args.names or sorted(FIXTURE_CHECKS)
    unknown = [n for n in names if n not in FIXTURE_CHECKS]
    if unknown:
        raise FormatError(f"no checks for {unknown!r}; available: {sorted(FIXTURE_CHECKS)}")
    with ThreadPoolExecutor(max_workers=4) as pool:
        futures = {name: pool.submit(FIXTURE_CHECKS[name]) for name in names}
        outcomes = {name: futures[name].result() for name in names}
    failures = [{"fixture": name, "failed": problems}
                for name, problems in sorted(outcomes.items()) if problems]
    data = {"results": {name: ("ok" if not problems else "failed")
                        for name, problems in sorted(outcomes.items())}}
    if failures:
        return RunReport(command, "fail", witnesses=failures, data=data)
    return RunReport(command, "pass", data=data)


# ----- fixture self-checks ----------------------------------------------------


def _check(problems, label, condition):
    if not condition:
        problems.append(label)


def check_fix_trop():
    problems = []
    phi, m = fixtures.fix_trop(), fixtures.fix_trop_m()
    _check(problems, "balanced", covers.is_balanced(phi, m).ok)
    _check(problems, "ibc", covers.is_ibc(phi, m).ok)
    _check(problems, "ibc-oracle", covers.is_ibc_oracle(phi, m).ok)
    degree = covers.global_degree(phi, m)
    _check(problems, "degree 3", degree.constant and degree.degree == 3)
    _check(problems, "branch locus", covers.branch_locus_check(phi).ok)
    return problems


def check_fix_ce1():
    problems = []
    phi, m = fixtures.fix_ce1(), fixtures.fix_ce1_m()
    comb = phi.is_combinatorial()
    _check(problems, "not combinatorial at B1",
           not comb.ok and comb.witnesses[0].alpha == "B1")
    _check(problems, "balanced", covers.is_balanced(phi, m).ok)
    _check(problems, "not ibc", not covers.is_ibc_oracle(phi, m).ok)
    return problems


def check_fix_ce2():
    problems = []
    phi, m = fixtures.fix_ce2(), fixtures.fix_ce2_m()
    balance = covers.is_balanced(phi, m)
    _check(problems, "unbalanced with witness (A1,B,2,3)",
           not balance.ok and ("A1", "B", 2, 3) in balance.witnesses)
    ibc = covers.is_ibc(phi, m)
    degree = covers.global_degree(phi, m)
    _check(problems, "ibc of degree 4", ibc.ok and degree.degree == 4)
    return problems


def check_fix_idread():
    problems = []
    phi, m = fixtures.fix_idread(), fixtures.fix_idread_m()
    report = extend.extend_balanced(phi, m, phi.source.elements)
    _check(problems, "O1 gets 3", report.extended.values.get("O1") == 3)
    conflicts = {(c.alpha, c.beta1, c.beta2, c.sum1, c.sum2) for c in report.conflicts}
    _check(problems, "tO1 conflict", ("tO1", "B", "C", 2, 1) in conflicts)
    _check(problems, "tO2 conflict", ("tO2", "B", "C", 1, 2) in conflicts)
    strong = posets.connectivity(phi.target, "strong")
    _check(problems, "target not strongly connected at tO",
           not strong.connected and strong.witness == "tO")
    return problems


def check_fix_simple_ext():
    problems = []
    phi, m = fixtures.fix_simple_ext(), fixtures.fix_simple_ext_m()
    report = extend.extend_balanced(phi, m, phi.source.elements)
    conflicts = {(c.alpha, c.sum1, c.sum2) for c in report.conflicts}
    _check(problems, "conflict at O with sums 2,1", ("O", 2, 1) in conflicts)
    return problems


def check_fix_open():
    problems = []
    phi = fixtures.fix_open()
    opened = phi.is_open()
    _check(problems, "not open at B2",
           not opened.ok and any(w.alpha == "B2" for w in opened.witnesses))
    _check(problems, "no balanced map below bound 4",
           covers.search_balanced(phi, bound=4) is None)
    return problems


def check_fix_lift():
    problems = []
    phi, m = fixtures.fix_lift(), fixtures.fix_lift_m()
    _check(problems, "balanced on the up-set", covers.is_balanced(phi, m).ok)
    psi = phi.restrict_corestrict(fixtures.FIX_LIFT_UPSET)
    comb = psi.is_combinatorial()
    _check(problems, "psi not combinatorial at beta1",
           not comb.ok and comb.witnesses[0].alpha == "beta1")
    try:
        extend.lift_path(phi, m, "beta1", ["beta", "B"])
        problems.append("lift unexpectedly succeeded")
    except CorestrictionNotCombinatorial:
        pass
    return problems


def check_fix_graph():
    problems = []
    phi = fixtures.fix_graph()
    pre = metric.sample_fibre(phi, Point.interior("t", Fraction(1)))
    _check(problems, "mismatch 2 vs 3 at 1",
           (pre.geometric, pre.poset, pre.match) == (2, 3, False))
    ref = metric.refine_to_combinatorial(phi)
    _check(problems, "one new target vertex at t@2",
           list(ref.new_target_vertices.values()) == [("t", Fraction(2))])
    _check(problems, "one new source vertex on f",
           list(ref.new_source_vertices.values()) == [("f", Fraction(2))])
    post = metric.sample_fibre(ref.morphism, Point.interior("t.1", Fraction(1)))
    _check(problems, "match after refinement", post.match)
    return problems


FIXTURE_CHECKS = {
    "FIX-TROP": check_fix_trop,
    "FIX-CE1": check_fix_ce1,
    "FIX-CE2": check_fix_ce2,
    "FIX-IDREAD": check_fix_idread,
    "FIX-SIMPLE-EXT": check_fix_simple_ext,
    "FIX-OPEN": check_fix_open,
    "FIX-LIFT": check_fix_lift,
    "FIX-GRAPH": check_fix_graph,
}


# ----- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="posetcover",
        description="Indexed branched covers of finite posets: checks, "
                    "extension, lifting, subdivision, refinement.",
    )
    parser.add_argument("--format", choices=["human", "machine"], default="human")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poset", help="validate, inspect, or enumerate up-sets")
    p.add_argument("action", choices=["validate", "stats", "upsets"])
    p.add_argument("poset")
    p.add_argument("--connected", action="store_true")
    p.add_argument("--oracle-limit", type=int, default=posets.DEFAULT_ORACLE_LIMIT)
    p.set_defaults(handler=cmd_poset)

    p = sub.add_parser("morphism", help="check monotone, combinatorial, open")
    p.add_argument("action", choices=["check"])
    p.add_argument("--morphism", required=True)
    p.set_defaults(handler=cmd_morphism)

    p = sub.add_parser("cover", help="balancing and branched-cover decisions")
    p.add_argument("action", choices=["balanced", "ibc", "ibc-oracle", "degree", "search"])
    p.add_argument("--morphism", required=True)
    p.add_argument("--index")
    p.add_argument("--bound", type=int, default=covers.DEFAULT_SEARCH_BOUND)
    p.add_argument("--oracle-limit", type=int, default=posets.DEFAULT_ORACLE_LIMIT)
    p.set_defaults(handler=cmd_cover)

    p = sub.add_parser("extend", help="extend a balanced map over a larger up-set")
    p.add_argument("--morphism", required=True)
    p.add_argument("--index", required=True)
    p.add_argument("--upset", help="comma-separated generators; default whole source")
    p.set_defaults(handler=cmd_extend)

    p = sub.add_parser("lift", help="lift paths along a balanced map")
    p.add_argument("action", choices=["up", "path"])
    p.add_argument("--morphism", required=True)
    p.add_argument("--index", required=True)
    p.add_argument("--start", required=True)
    p.add_argument("--path", required=True, help="comma-separated target elements")
    p.set_defaults(handler=cmd_lift)

    p = sub.add_parser("connect", help="connectivity checks and lifting")
    p.add_argument("action", choices=["codimk", "strong", "lifting"])
    p.add_argument("--poset")
    p.add_argument("--morphism")
    p.add_argument("--index")
    p.add_argument("--k", type=int)
    p.add_argument("--mode", choices=["one-fibre", "codim"], default="one-fibre")
    p.set_defaults(handler=cmd_connect)

    p = sub.add_parser("subdivide", help="barycentric and stellar subdivision")
    p.add_argument("action", choices=["bcs", "stellar"])
    p.add_argument("--poset")
    p.add_argument("--morphism")
    p.add_argument("--complex")
    p.add_argument("--face", help="comma-separated vertices of the subdivided face")
    p.add_argument("--vertex", help="name of the new vertex")
    p.set_defaults(handler=cmd_subdivide)

    p = sub.add_parser("graph", help="metric graph refinement and sampling")
    p.add_argument("action", choices=["refine", "sample", "poset"])
    p.add_argument("--morphism")
    p.add_argument("--graph")
    p.add_argument("--point", help="vertex name or edge:pos with pos rational")
    p.add_argument("--random", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=cmd_graph)

    p = sub.add_parser("export", help="emit DOT text")
    p.add_argument("action", choices=["dot"])
    p.add_argument("--poset")
    p.add_argument("--morphism")
    p.add_argument("--kind", choices=list(dot.KINDS), default="hasse")
    p.set_defaults(handler=cmd_export)

    p = sub.add_parser("fixtures", help="list or re-verify the bundled fixtures")
    p.add_argument("action", choices=["list", "run"])
    p.add_argument("names", nargs="*")
    p.set_defaults(handler=cmd_fixtures)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    label = f"{args.command} {getattr(args, 'action', '')}".strip()
    try:
        report = args.handler(args)
    except ToolError as exc:
        report = RunReport(label, "error",
                           witnesses=[{"error": type(exc).__name__, "detail": str(exc)}])
    except (OSError, ValueError) as exc:
        report = RunReport(label, "error",
                           witnesses=[{"error": type(exc).__name__, "detail": str(exc)}])
    if args.command == "export" and report.verdict == "pass":
        sys.stdout.write(report.data["dot"])
        return 0
    emit(report, args.format)
    return report.exit_code()


if __name__ == "__main__":
    sys.exit(main())
