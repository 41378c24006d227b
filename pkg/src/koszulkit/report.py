"""JSON and text renderings of results.

Every JSON report has the same top level: command, parameters, verdicts,
certificates, bounds, characteristic and toolkitVersion.  Integers that come
out of arithmetic (series coefficients, multiplicities, h-coefficients) are
written as decimal strings since they routinely exceed 2**53.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Optional

from . import __version__
from .hilbert import AlgebraNumerics
from .monomial import BRCertificate, ChordalityResult, MonomialIdeal, UKDerivation
from .obstruction import FailAt, ObstructionReport


def bigint(x: int) -> str:
    return str(int(x))


@dataclass
class Report:
    command: str
    parameters: dict = field(default_factory=dict)
    verdicts: list = field(default_factory=list)
    certificates: list = field(default_factory=list)
    bounds: dict = field(default_factory=dict)
    characteristic: int = 0
    text: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "parameters": self.parameters,
            "verdicts": self.verdicts,
            "certificates": self.certificates,
            "bounds": self.bounds,
            "characteristic": self.characteristic,
            "toolkitVersion": __version__,
        }


def emit_report(report: Report, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(report.to_json(), indent=2, sort_keys=True) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    head = f"# {report.command}"
    if report.parameters:
        head += " " + " ".join(f"{k}={_plain(v)}" for k, v in sorted(report.parameters.items()))
    lines = [head]
    lines.extend(report.text)
    return "\n".join(lines) + "\n"


def _plain(v: Any) -> str:
    if isinstance(v, (list, tuple)):
        return ",".join(str(x) for x in v)
    return str(v)


def numerics_json(a: AlgebraNumerics) -> dict:
    return {
        "label": a.label,
        "hPoly": [bigint(c) for c in a.h_poly],
        "dim": a.dim,
        "embdim": a.embdim,
        "codim": a.codim,
        "multiplicity": bigint(a.multiplicity),
        "isCompleteIntersection": a.is_complete_intersection,
    }


def numerics_text(a: AlgebraNumerics) -> list[str]:
    ci = {True: "yes", False: "no", None: "unknown"}[a.is_complete_intersection]
    return [
        f"label         {a.label}",
        f"h(z)          {a.h_poly}",
        f"dim           {a.dim}",
        f"embdim        {a.embdim}",
        f"codim         {a.codim}",
        f"multiplicity  {a.multiplicity}",
        f"complete int. {ci}",
    ]


def obstruction_json(r: ObstructionReport, show: Optional[list[int]] = None) -> dict:
    out = {
        "label": r.label,
        "verdict": str(r.verdict),
        "passed": r.passed,
        "firstNegativeIndex": r.first_negative_index,
        "firstNegativeCoefficient": bigint(r.verdict.coefficient) if isinstance(r.verdict, FailAt) else None,
        "gAtMinusOne": bigint(r.g_at_minus_one),
        "vanishOrder": r.vanish_order,
        "codimUsed": r.codim_used,
        "scanOrder": r.scan_order,
        "asymptoticVerdict": r.asymptotic_verdict.value,
        "multiplicityBoundOk": r.multiplicity_bound_ok,
        "tailVerified": r.tail_verified,
    }
    if show:
        out["coefficients"] = {str(k): bigint(r.series[k]) for k in show if 0 <= k <= r.scan_order}
    return out


def _short(x: int) -> str:
    s = str(x)
    if len(s) <= 24:
        return s
    sign = "-" if x < 0 else ""
    digits = s.lstrip("-")
    return f"{sign}{digits[0]}.{digits[1:4]}e{len(digits) - 1}"


def obstruction_text(r: ObstructionReport, show: Optional[list[int]] = None) -> list[str]:
    lines = [
        f"{r.label}: {r.verdict}"
        + (f" coefficient {_short(r.verdict.coefficient)}" if isinstance(r.verdict, FailAt) else ""),
        f"  codim {r.codim_used}, scan order {r.scan_order}",
        f"  h = (1+z)^{r.vanish_order} g, g(-1) = {r.g_at_minus_one}, tail {r.asymptotic_verdict.value}",
        f"  e <= 2^c bound {'ok' if r.multiplicity_bound_ok else 'violated'}, tail verified {r.tail_verified}",
    ]
    for k in show or ():
        if 0 <= k <= r.scan_order:
            lines.append(f"  [z^{k}] = {r.series[k]}")
    return lines


def scan_row(r: ObstructionReport) -> str:
    idx = r.first_negative_index
    return (
        f"{r.label:<16} {str(r.verdict):<14} g(-1)={r.g_at_minus_one:<8} a={r.vanish_order} "
        f"{r.asymptotic_verdict.value:<22} {'e-ok' if r.multiplicity_bound_ok else 'e-bad'}"
        + ("" if idx is not None else f" tail-verified={r.tail_verified}")
    )


def ideal_json(I: MonomialIdeal) -> dict:
    return {"variables": list(I.variables), "generators": I.generator_strings()}


def chordality_json(ch: ChordalityResult) -> dict:
    if ch.chordal:
        return {"chordal": True, "perfectEliminationOrder": list(ch.elimination_order)}
    return {"chordal": False, "chordlessCycle": list(ch.chordless_cycle)}


def certificate_json(c: BRCertificate) -> dict:
    lq = None
    if c.linear_quotients is not None:
        lq = [c.linear_part.monomial_str(m) for m in c.linear_quotients]
    return {
        "type": "ciPlusTwoLinear",
        "ciPart": c.ci_part.generator_strings(),
        "linearPart": c.linear_part.generator_strings(),
        "linearQuotientsOrder": lq,
        "chordality": chordality_json(c.chordality),
        "note": c.note,
    }


def derivation_json(d: UKDerivation) -> dict:
    return {"type": "universallyKoszulDerivation", "tree": d.root.to_dict(), "notes": list(d.notes)}


def betti_text(table) -> list[str]:
    return table.render().splitlines()
