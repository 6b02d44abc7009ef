"""Runner for the packaged verification manifest.

The manifest (data/verification_suite.json) pins, for a fixed catalogue of
small graphs, the verdicts this package must reproduce: positionality
regions, taxonomy classes, state cop numbers, and the classic-vs-state cop
number cross-check. Each case records a `basis` tag for where its expected
value comes from: "external" (pinned from outside sources), "derived"
(computed by an independent oracle and frozen), or "trivial".

`run_suite` executes every case (optionally filtered by id substring) and
returns structured results; the CLI renders them as PASS/FAIL lines.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .arena import GameParams, State, all_cops_one_side, build_arena, parse_state
from .classify import classify
from .crsolver import classic_cop_number
from .errors import ValidationError
from .graphs import Graph, attach_leaf, bridge, builtin, graph_from_edges
from .positionality import check_positionality_many
from .rationals import parse_rational
from .statecop import crosscheck_theorem, state_cop_report


@dataclass(frozen=True)
class CaseResult:
    case_id: str
    passed: bool
    detail: str


def load_manifest() -> list[dict]:
    text = (
        resources.files("scar").joinpath("data/verification_suite.json").read_text()
    )
    cases = json.loads(text)
    seen = set()
    for case in cases:
        for field in ("id", "kind", "basis"):
            if field not in case:
                raise ValidationError(f"manifest case missing {field!r}: {case}")
        if case["basis"] not in ("external", "derived", "trivial"):
            raise ValidationError(f"unknown basis tag in case {case['id']}")
        if case["id"] in seen:
            raise ValidationError(f"duplicate case id {case['id']}")
        seen.add(case["id"])
    return cases


def build_recipe(recipe: dict) -> Graph:
    """Graph recipes: {"builtin": name, "k": int?} | {"edges": [[u,v],...]}
    | {"leaf_on": recipe, "at": v} | {"bridge": [recipe, u, recipe, w]}."""
    if "builtin" in recipe:
        return builtin(recipe["builtin"], recipe.get("k"))
    if "edges" in recipe:
        edges = [tuple(e) for e in recipe["edges"]]
        n = 1 + max(max(e) for e in edges)
        return graph_from_edges(n, edges)
    if "leaf_on" in recipe:
        return attach_leaf(build_recipe(recipe["leaf_on"]), recipe["at"])
    if "bridge" in recipe:
        ra, u, rb, w = recipe["bridge"]
        return bridge(build_recipe(ra), u, build_recipe(rb), w)
    raise ValidationError(f"unrecognized graph recipe {recipe}")


def _starts(case: dict, g: Graph, arena) -> list[State]:
    sel = case.get("s0", "canonical")
    if sel == "canonical":
        cops = tuple([0] * (case["n"] - 1))
        return [State(cops, g.vertex_count - 1, 1)]
    if sel == "all-noncapture":
        return [arena.state_of(int(i)) for i in arena.noncapture_indices()]
    return [parse_state(sel, case["n"], g.vertex_count)]


def _expected(form: dict, g: Graph, s0: State, gamma: Fraction, eps: Fraction) -> bool:
    """Closed-form expectations a case can pin a verdict against."""
    if "const" in form:
        return bool(form["const"])
    if "two_cop_window" in form:
        # the exact window for two cops on one edge: eps < 1/2, gamma^2 >=
        # eps/(1-eps), gamma <= 1/(2-2*eps); boundaries exact, no radicals
        return (
            eps < Fraction(1, 2)
            and gamma * gamma >= eps / (1 - eps)
            and gamma <= 1 / (2 - 2 * eps)
        )
    if "gamma_at_most" in form:
        return gamma <= parse_rational(form["gamma_at_most"])
    if "one_side_and_gamma_at_most" in form:
        cap = parse_rational(form["one_side_and_gamma_at_most"])
        return all_cops_one_side(g, s0) and gamma <= cap
    raise ValidationError(f"unrecognized expectation form {form}")


def _grid(case: dict, key: str) -> list[Fraction]:
    return [parse_rational(x) for x in case[key]]


def _run_poscheck(case: dict) -> CaseResult:
    g = build_recipe(case["graph"])
    n = case["n"]
    arena = build_arena(g, n)
    starts = _starts(case, g, arena)
    expect = case["expect"]
    bad: list[str] = []
    points = 0
    for eps in _grid(case, "epsilon_grid"):
        for gamma in _grid(case, "gamma_grid"):
            params = GameParams(n, gamma, eps, case.get("allow_wide_epsilon", False))
            for verdict in check_positionality_many(arena, params, starts):
                points += 1
                if "positional" in expect:
                    want = _expected(expect["positional"], g, verdict.s0, gamma, eps)
                    if verdict.positional_exists != want:
                        bad.append(
                            f"positional_exists={verdict.positional_exists} "
                            f"(expected {want}) at s0={verdict.s0.literal()} "
                            f"gamma={gamma} epsilon={eps}"
                        )
                if "nonpositional" in expect:
                    want = _expected(expect["nonpositional"], g, verdict.s0, gamma, eps)
                    if verdict.nonpositional_exists != want:
                        bad.append(
                            f"nonpositional_exists={verdict.nonpositional_exists} "
                            f"(expected {want}) at s0={verdict.s0.literal()} "
                            f"gamma={gamma} epsilon={eps}"
                        )
    if bad:
        return CaseResult(case["id"], False, f"{len(bad)}/{points} points off; first: {bad[0]}")
    return CaseResult(case["id"], True, f"{points} grid points match")


def _run_classify(case: dict) -> CaseResult:
    g = build_recipe(case["graph"])
    n = case["n"]
    if "require_sweep_value" in case:
        report = state_cop_report(build_arena(g, n))
        wanted = case["require_sweep_value"]
        nc = report.arena.noncapture_indices()
        if not (report.values[nc] == wanted).any():
            return CaseResult(
                case["id"],
                False,
                f"specimen lacks a state with cop number {wanted}; pick another graph",
            )
    got = classify(g, n)
    if got.klass != case["expect"]:
        return CaseResult(
            case["id"], False, f"class={got.klass} (expected {case['expect']}); "
            f"evidence={got.evidence}"
        )
    return CaseResult(case["id"], True, f"class={got.klass}")


def _run_scn(case: dict) -> CaseResult:
    g = build_recipe(case["graph"])
    arena = build_arena(g, case["n"])
    s = parse_state(case["state"], case["n"], g.vertex_count)
    report = state_cop_report(arena)
    got = report.value(s)
    want = float("inf") if case["expect"] == "inf" else case["expect"]
    if got != want:
        return CaseResult(case["id"], False, f"c(G|{s.literal()})={got} (expected {want})")
    return CaseResult(case["id"], True, f"c(G|{s.literal()})={got}")


def _run_classic(case: dict) -> CaseResult:
    g = build_recipe(case["graph"])
    got = classic_cop_number(g, case["k_max"])
    want = float("inf") if case["expect"] == "inf" else case["expect"]
    if got != want:
        return CaseResult(case["id"], False, f"classic cop number {got} (expected {want})")
    return CaseResult(case["id"], True, f"classic cop number {got}")


def _run_crosscheck(case: dict) -> CaseResult:
    bad = []
    for entry in case["pairs"]:
        g = build_recipe(entry["graph"])
        n = entry["n"]
        rep = crosscheck_theorem(g, n)
        if not rep.agree:
            bad.append(
                f"{entry.get('label', '?')} n={n}: classic={rep.classic_cop_number} "
                f"max_state={rep.max_state_cop_number} witness={rep.witness}"
            )
    if bad:
        return CaseResult(case["id"], False, "; ".join(bad))
    return CaseResult(case["id"], True, f"{len(case['pairs'])} graph/N pairs agree")


_RUNNERS = {
    "poscheck": _run_poscheck,
    "classify": _run_classify,
    "scn": _run_scn,
    "classic-copnumber": _run_classic,
    "crosscheck": _run_crosscheck,
}


def run_case(case: dict) -> CaseResult:
    kind = case["kind"]
    if kind not in _RUNNERS:
        raise ValidationError(f"unknown case kind {kind!r} in case {case['id']}")
    return _RUNNERS[kind](case)


def run_suite(patterns: list[str] | None = None) -> list[CaseResult]:
    cases = load_manifest()
    if patterns:
        cases = [c for c in cases if any(p in c["id"] for p in patterns)]
    return [run_case(c) for c in cases]
