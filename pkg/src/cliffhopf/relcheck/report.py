"""Run a relation suite row by row and collect residuals."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone

from .. import __version__
from ..kappagen import RelationSuite
from ..mvcore import AlgebraError
from .evaluate import EvalEnv, evaluate, max_coeff, residual
from .parser import ExprSyntaxError, parse

STATUSES = ("pass", "fail", "diagnostic")


@dataclass(frozen=True)
class Row:
    name: str
    assignment: dict
    residual: float | None
    max_coeff_lhs: float | None
    max_coeff_rhs: float | None
    status: str
    holds: bool
    note: str = ""

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class Report:
    suite: str
    rows: tuple[Row, ...]
    environment: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        """True when no must_pass row failed."""
        return all(r.status != "fail" for r in self.rows)

    def counts(self) -> dict[str, int]:
        out = dict.fromkeys(STATUSES, 0)
        for r in self.rows:
            out[r.status] += 1
        out["holds"] = sum(r.holds for r in self.rows)
        out["errors"] = sum(r.residual is None for r in self.rows)
        return out

    def max_residual(self) -> float:
        vals = [r.residual for r in self.rows if r.residual is not None]
        return max(vals, default=0.0)

    def to_json(self, timestamp: bool = False) -> dict:
        out = {"tool": "cliffhopf", "version": __version__, "suite": self.suite,
               "environment": self.environment, "summary": self.counts(),
               "max_residual": self.max_residual(), "rows": [r.as_dict() for r in self.rows]}
        if timestamp:
            out["timestamp"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
        return out

    def dumps(self, timestamp: bool = False) -> str:
        return json.dumps(self.to_json(timestamp), indent=2, sort_keys=False)

    def to_text(self) -> str:
        lines = [f"suite {self.suite}: {len(self.rows)} rows"]
        width = max((len(r.name) for r in self.rows), default=4)
        for r in self.rows:
            idx = ",".join(f"{k}={v}" for k, v in r.assignment.items())
            res = "error" if r.residual is None else f"{r.residual:.3e}"
            line = f"{r.name:<{width}}  {idx:<24} {res:>10}  {r.status}"
            if r.note:
                line += f"  ({r.note})"
            lines.append(line)
        c = self.counts()
        lines.append(f"pass={c['pass']} fail={c['fail']} diagnostic={c['diagnostic']} "
                     f"holds={c['holds']} errors={c['errors']} max_residual={self.max_residual():.3e}")
        return "\n".join(lines)


def evaluate_row(lhs: str, rhs: str, env: EvalEnv) -> tuple[float, float, float]:
    a = evaluate(parse(lhs), env)
    b = evaluate(parse(rhs), env)
    return residual(a, b), max_coeff(a), max_coeff(b)


def run(suite: RelationSuite, env: EvalEnv) -> Report:
    """Evaluate every relation at every index assignment, in suite order.

    Evaluation errors are recorded on the row and do not stop the run.
    """
    rows = []
    for rel in suite.relations:
        for asg in rel.assignments():
            note = ""
            try:
                lhs, rhs = rel.instantiate(asg)
                res, ml, mr = evaluate_row(lhs, rhs, env)
                if not math.isfinite(res):
                    raise ArithmeticError("non-finite residual")
            except (AlgebraError, ExprSyntaxError, ArithmeticError, ValueError) as exc:
                res = ml = mr = None
                note = f"{type(exc).__name__}: {exc}"
            holds = res is not None and res <= env.tol
            if rel.expect == "must_pass":
                status = "pass" if holds else "fail"
            else:
                status = "diagnostic"
            rows.append(Row(rel.name, dict(asg), res, ml, mr, status, holds, note))
    environment = env.fingerprint()
    environment["parameters"] = dict(suite.parameters)
    return Report(suite.name, tuple(rows), environment)
