"""Bound extraction, rule-orientation checks and the bound-vs-measured harness."""

from __future__ import annotations

import itertools
import json
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional, Sequence

from .engine import Fuel, derivation_height
from .errors import FuelExhausted, GridTooLarge, ShapeError
from .pretty import format_rule, format_term
from .semantics.compare import GridSpec, compare, library_function, sample_count, samples
from .semantics.interpret import CSTuple, Interpretation, interpret_term
from .semantics.monoexpr import U
from .semantics.shapes import costf_shape, size_shape
from .stypes import Base
from .terms import TRS, free_vars, typecheck


def extract_bound(t, interp: Interpretation) -> int:
    """Cost number of a closed term's interpretation: an upper bound on its dh."""
    if free_vars(t):
        raise ValueError("bounds are only extracted for closed terms")
    n = interpret_term(t, interp).number
    if not isinstance(n, int):
        raise ShapeError(f"cost number {n!r} is not a natural")
    return n


@dataclass
class RuleCheck:
    index: int
    rule: str
    holds: bool
    samples: int
    valuations: int
    witness: Optional[Dict[str, str]] = None
    detail: str = ""


@dataclass
class TermCheck:
    index: int
    term: str
    dh: Optional[int]
    bound: Optional[int]
    ok: Optional[bool]
    error: str = ""

    @property
    def gap(self):
        if self.dh is None or self.bound is None:
            return None
        return self.bound - self.dh


@dataclass
class VerificationReport:
    rules: List[RuleCheck] = field(default_factory=list)
    terms: List[TermCheck] = field(default_factory=list)
    grid: str = ""

    @property
    def violations(self) -> List[TermCheck]:
        return [t for t in self.terms if t.ok is False]

    @property
    def unresolved(self) -> List[TermCheck]:
        return [t for t in self.terms if t.ok is None]

    @property
    def passed(self) -> bool:
        return all(r.holds for r in self.rules) and all(t.ok for t in self.terms)

    def to_table(self) -> str:
        """Tab-separated lines; one per rule and one per term."""
        lines = []
        if self.rules:
            lines.append("kind\tindex\tverdict\tvaluations\tsamples\twitness\trule")
            for r in self.rules:
                witness = ",".join(f"{k}={v}" for k, v in (r.witness or {}).items()) or "-"
                verdict = "holds-on-samples" if r.holds else "fails"
                lines.append(f"rule\t{r.index}\t{verdict}\t{r.valuations}\t{r.samples}\t"
                             f"{witness}\t{r.rule}")
        if self.terms:
            lines.append("kind\tindex\tdh\tbound\tgap\tok\tterm")
            for t in self.terms:
                dh = "-" if t.dh is None else t.dh
                bound = "-" if t.bound is None else t.bound
                gap = "-" if t.gap is None else t.gap
                ok = {True: "ok", False: "VIOLATION", None: "error"}[t.ok]
                lines.append(f"term\t{t.index}\t{dh}\t{bound}\t{gap}\t{ok}\t{t.term}")
        lines.append(self.summary())
        return "\n".join(lines) + "\n"

    def summary(self) -> str:
        parts = []
        if self.rules:
            bad = sum(not r.holds for r in self.rules)
            parts.append(f"rules={len(self.rules)} failing={bad}")
        if self.terms:
            parts.append(f"terms={len(self.terms)} violations={len(self.violations)} "
                         f"errors={len(self.unresolved)} "
                         f"tight={sum(1 for t in self.terms if t.gap == 0)}")
        parts.append("PASS" if self.passed else "FAIL")
        return "# " + " ".join(parts)

    def to_json(self) -> str:
        data = {
            "grid": self.grid,
            "passed": self.passed,
            "rules": [asdict(r) for r in self.rules],
            "terms": [{**asdict(t), "gap": t.gap} for t in self.terms],
        }
        return json.dumps(data, indent=2, sort_keys=True) + "\n"


def _candidates(var, key, grid: GridSpec):
    """``(CSTuple, description)`` for every sampled value of ``var``."""
    size_s = size_shape(var.type, key)
    if isinstance(var.type, Base):
        return [(CSTuple((0, U), v), d) for v, d in samples(size_s, grid)]
    cost_s = costf_shape(var.type, key)
    out = []
    for c, s in itertools.product(grid.library, grid.library):
        out.append((CSTuple((0, library_function(c, cost_s)), library_function(s, size_s)),
                    f"<{c},{s}>"))
    return out


def verify_rules(trs: TRS, interp: Interpretation, grid: GridSpec = GridSpec()):
    """Check ``[[l]] > [[r]]`` (strict in the cost number) for every rule on the grid."""
    report = VerificationReport(grid=str(grid))
    for i, rule in enumerate(trs.rules):
        variables = sorted(free_vars(rule.lhs), key=lambda v: v.name)
        st = interp.semtype(typecheck(rule.lhs, trs.signature))
        count = 1
        for v in variables:
            count *= _candidate_count(v, interp.key, grid)
        if count > grid.budget:
            raise GridTooLarge(
                f"rule {i} needs {count} valuations, over the budget of {grid.budget}")
        pools = [_candidates(v, interp.key, grid) for v in variables]
        total, entry = 0, None
        for combo in itertools.product(*pools):
            alpha = {v: c for v, (c, _) in zip(variables, combo)}
            left = interpret_term(rule.lhs, interp, alpha)
            right = interpret_term(rule.rhs, interp, alpha)
            verdict = compare(left, right, st.shape, "gt", grid)
            total += verdict.samples
            if not verdict.holds:
                witness = {v.name: d for v, (_, d) in zip(variables, combo)}
                entry = RuleCheck(i, format_rule(rule), False, total, count, witness,
                                  verdict.describe())
                break
        report.rules.append(entry or RuleCheck(i, format_rule(rule), True, total, count))
    return report


def _candidate_count(var, key, grid):
    if isinstance(var.type, Base):
        return sample_count(size_shape(var.type, key), grid)
    return len(grid.library) ** 2


def bound_vs_actual(trs: TRS, interp: Interpretation, terms: Sequence, fuel: Fuel = Fuel()):
    """Measure dh and extract the bound for each ground term."""
    report = VerificationReport()
    for i, t in enumerate(terms):
        text = format_term(t, sugar=True)
        try:
            bound = extract_bound(t, interp)
        except (ShapeError, ValueError) as e:
            report.terms.append(TermCheck(i, text, None, None, None, str(e)))
            continue
        try:
            dh = derivation_height(t, trs, fuel)
        except FuelExhausted as e:
            report.terms.append(TermCheck(i, text, None, bound, None, str(e)))
            continue
        report.terms.append(TermCheck(i, text, dh, bound, dh <= bound))
    return report
