"""Run each separation case and collect pass/fail evidence."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from ..games.menus import build_menu
from ..games.solver import duplicator_wins, replay, ReplayError
from ..logic import ast
from ..logic.analysis import classify_formula, freeze_variables, modal_depth, tptl_fragment
from ..logic.syntax import TPTL
from ..sampling import random_mtl, random_tptl, random_ttl
from ..semantics.evaluate import FreezeEvaluator, MTLEvaluator, lang_member_mtl, lang_member_tptl
from ..semantics.reductions import reduce_instantaneous, reduce_unitary
from ..ttl2mitl.parsing import reach_set
from .families import (
    CASE_IDS,
    SeparationCase,
    gen_case,
    gen_instantaneous,
    gen_unitary,
    thm5_audit,
    ttl_i_band,
)

EDGES = {
    "thm2": "MITL[F,P] not contained in BMTL[U,S]",
    "thm3": "BMTL[F,P] not contained in MITL[U,S]",
    "thm5": "TPTL[F] not contained in MTL[U,S]",
    "ttl_i": "BMTL[F,P] not contained in TTL[X,Y]",
    "ttl_ii": "MITL[F,P] not contained in TTL[X,Y]",
    "instantaneous": "BMTL[U,S] not contained in MTL[F,P] or TPTL[F,P] (weakly monotonic)",
    "unitary": "BMTL[U,S] not contained in MTL[F,P] (strictly monotonic)",
}

SMALL = {
    "thm2": {"m": 1, "k": 1},
    "thm3": {"r": 1},
    "thm5": {"n": 1, "k": 1},
    "ttl_i": {"n": 1},
    "ttl_ii": {"m": 1},
    "instantaneous": {"length": 4},
    "unitary": {"length": 4},
}

FULL = {
    "thm2": {"m": 2, "k": 2},
    "thm3": {"r": 2},
    "thm5": {"n": 1, "k": 2},
    "ttl_i": {"n": 2},
    "ttl_ii": {"m": 2},
    "instantaneous": {"length": 6},
    "unitary": {"length": 6},
}


@dataclass
class Check:
    name: str
    passed: bool
    detail: str


@dataclass
class SeparationReport:
    case: SeparationCase
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks)

    @property
    def edge(self) -> str:
        return EDGES[self.case.id]

    def add(self, name: str, passed: bool, detail: str) -> None:
        self.checks.append(Check(name, bool(passed), detail))

    def lines(self) -> list[str]:
        out = [f"case {self.case.label()}"]
        out.extend(f"  note: {n}" for n in self.case.notes)
        for c in self.checks:
            out.append(f"  {'PASS' if c.passed else 'FAIL'} {c.name}: {c.detail}")
        status = "supported" if self.passed else "NOT supported"
        out.append(f"  edge: {self.edge}: {status}")
        out.append(f"RESULT {'PASS' if self.passed else 'FAIL'}")
        return out

    def porcelain(self) -> list[str]:
        rows = [f"check\t{self.case.id}\t{c.name}\t{'PASS' if c.passed else 'FAIL'}\t{c.detail}" for c in self.checks]
        rows.append(f"result\t{self.case.id}\t{'PASS' if self.passed else 'FAIL'}\t{self.edge}")
        return rows


# -- individual checks -------------------------------------------------------------

def _eval_split(report: SeparationReport) -> None:
    case = report.case
    member = lang_member_tptl if case.logic == TPTL else lang_member_mtl
    got = tuple(member(w, case.formula) for w in case.words)
    names = ["A", "B"] if len(case.words) == 2 else ["w"] + [f"v{j}" for j in range(1, len(case.words))]
    detail = ", ".join(f"{n} {'in' if g else 'not in'} L" for n, g in zip(names, got))
    report.add("eval", got == case.expected, detail)


def _game(report: SeparationReport) -> None:
    case = report.case
    g = case.game
    menu = build_menu(g.menu_kind, g.k)
    out = duplicator_wins(case.words[0], case.words[1], 1, 1, g.rounds, menu, g.variant, warn_cap=False)
    detail = f"{out.winner} wins {g.rounds}-round {menu.describe()} {g.variant} game ({out.states} states)"
    try:
        replay(out, case.words[0], case.words[1])
    except ReplayError as exc:
        report.add("game", False, f"{detail}; trace replay failed: {exc}")
        return
    report.add("game", out.duplicator_wins, detail)


def _fragment(report: SeparationReport, want: str) -> None:
    f = report.case.formula
    if report.case.logic == TPTL:
        info = tptl_fragment(f)
        ok = info["future_only"] and len(freeze_variables(f)) == 1
        report.add("fragment", ok, f"TPTL modalities={','.join(info['modalities'])} "
                   f"freeze variables={','.join(info['freeze_variables'])}")
        return
    frag = classify_formula(f)
    report.add("fragment", frag.name() == want, f"{frag.name()} ({frag})")


def _reach(report: SeparationReport, samples: int, rng: random.Random) -> None:
    n = report.case.params["n"]
    hits = 0
    total = 0
    for depth in range(n + 1):
        a_band, c_band = ttl_i_band(n, depth)
        band = set(a_band) | set(c_band)
        for _ in range(samples):
            f = random_ttl(rng, depth, ("a", "c"))
            for w in report.case.words:
                total += 1
                if reach_set(w, f, require_anchor=False) & band:
                    hits += 1
    report.add("reach", hits == 0,
               f"{total} (formula, word) runs over depths 0..{n}, {samples} formulas each; {hits} touched the middle band")


def _ttl_ii_exists(report: SeparationReport, samples: int, rng: random.Random) -> None:
    m = report.case.params["m"]
    w, *family = report.case.words
    variables = tuple(f"x{i}" for i in range(m + 1))
    failures = 0
    for _ in range(samples):
        psi = random_ttl(rng, m + 1, ("a", "c"), variables, relative_only=True, no_reuse=True, max_modal_count=m)
        base = FreezeEvaluator(w).holds(1, {}, psi)
        if not any(FreezeEvaluator(v).holds(1, {}, psi) == base for v in family):
            failures += 1
    report.add("exists-j", failures == 0,
               f"{samples} formulas with at most {m} modalities; {failures} separated w from every v_j")


def _audit(report: SeparationReport) -> None:
    k = report.case.params["k"]
    problems = [p for w in report.case.words for p in thm5_audit(w, k)]
    report.add("audit", not problems, "no integral distances" if not problems else "; ".join(problems[:3]))


def _reduction(report: SeparationReport, samples: int, rng: random.Random) -> None:
    kind = report.case.id
    length = report.case.params.get("length", 4)
    gen = gen_instantaneous if kind == "instantaneous" else gen_unitary
    reduce = reduce_instantaneous if kind == "instantaneous" else reduce_unitary
    bad = depth_bad = 0
    for s in range(samples):
        if kind == "instantaneous" and s % 2:
            f = random_tptl(rng, 3, ("a", "b"))
        else:
            f = random_mtl(rng, 3, ("a", "b"))
        g = reduce(f)
        depth_bad += modal_depth(f) != modal_depth(g)
        w = gen(rng.randint(1, length), ("a", "b"), rng)
        if _is_freeze(f):
            ev = FreezeEvaluator(w)
            same = all(ev.holds(i, {}, f) == MTLEvaluator(w).holds(i, g) for i in w.positions())
        else:
            ev = MTLEvaluator(w)
            same = all(ev.holds(i, f) == ev.holds(i, g) for i in w.positions())
        bad += not same
    report.add("reduction", bad == 0, f"{samples} formulas on {kind} words; {bad} disagreements")
    report.add("depth", depth_bad == 0, f"modal depth preserved on {samples - depth_bad}/{samples}")


def _is_freeze(f: ast.Formula) -> bool:
    return any(isinstance(g, (ast.Freeze, ast.Constraint)) or
               (isinstance(g, ast.TIMED_MODAL) and g.interval is None) for g in ast.walk(f))


# -- entry points --------------------------------------------------------------------

def run_separation(case: SeparationCase, samples: int = 200, seed: int = 0) -> SeparationReport:
    """Evaluate, play and classify; every sub-check lands in the report."""
    rng = random.Random(seed)
    report = SeparationReport(case)
    cid = case.id
    if cid in ("instantaneous", "unitary"):
        _reduction(report, samples, rng)
        return report
    _eval_split(report)
    if cid == "thm2":
        _game(report)
        _fragment(report, "MITL[F,P]")
    elif cid == "thm3":
        _game(report)
        _fragment(report, "BMTL[F,P]")
    elif cid == "thm5":
        _audit(report)
        _game(report)
        _fragment(report, "")
    elif cid == "ttl_i":
        _fragment(report, "BMTL[F,P]")
        _reach(report, samples, rng)
    elif cid == "ttl_ii":
        _fragment(report, "MITL[F,P]")
        _ttl_ii_exists(report, samples, rng)
    return report


def run_case(case_id: str, samples: int = 200, seed: int = 0, **params) -> SeparationReport:
    return run_separation(gen_case(case_id, **params), samples, seed)


def run_all(small: bool = True, samples: int = 200, seed: int = 0,
            params: Optional[dict] = None) -> list[SeparationReport]:
    """Every case in id order, at the smallest parameters unless overridden."""
    params = params or {}
    base = SMALL if small else FULL
    return [run_case(cid, samples, seed, **(params.get(cid) or base[cid])) for cid in CASE_IDS]


def edge_summary(reports: list[SeparationReport]) -> list[str]:
    out = ["expressiveness edges (witness case: status)"]
    for r in reports:
        out.append(f"  {r.edge}  [{r.case.id}: {'PASS' if r.passed else 'FAIL'}]")
    return out
