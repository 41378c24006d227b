"""Pinned reference values for Veronese and Segre numerics, obstructions and
the quadratic Veronese Groebner basis.  ``run_all`` evaluates every check."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Callable

from .gb import is_groebner, veronese2_kernel_gens, veronese2_names, veronese2_order
from .hilbert import segre_numerics, veronese_numerics
from .monomial import MonomialIdeal, is_chordal, nonedge_graph
from .obstruction import FailAt, br_obstruction, family_scan
from .series import eval_int


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str


def _h(n, c):
    return list(veronese_numerics(n, c).h_poly.coefficients)


def _h_polys() -> Check:
    want = {
        (7, 2): [1, 21, 35, 7],
        (5, 4): [1, 65, 155, 35],
        (5, 3): [1, 30, 45, 5],
        (6, 7): [1, 786, 6891, 7872, 1251, 6],
    }
    bad = [k for k, v in want.items() if _h(*k) != v]
    return Check("Veronese h-polynomials (7,2) (5,4) (5,3) (6,7)", not bad, f"mismatch at {bad}" if bad else "exact")


def _h67_at_minus_one() -> Check:
    v = eval_int(veronese_numerics(6, 7).h_poly, -1)
    return Check("h_{6,7}(-1) = -521", v == -521, f"got {v}")


def _h4c_formula() -> Check:
    bad = []
    for c in range(5, 51):
        lhs = 3 * eval_int(veronese_numerics(4, c).h_poly, -1)
        if lhs != (c - 4) * (c * c + 4 * c - 6):
            bad.append(c)
    return Check("h_{4,c}(-1) = (c-4)(c^2+4c-6)/3 for c in 5..50", not bad, f"fails at {bad}" if bad else "46 values exact")


def _series_67() -> Check:
    r = br_obstruction(veronese_numerics(6, 7), 130)
    s = r.series
    ok2, ok3 = s[2] == 301614, s[3] == 156453836
    a = s[121]
    ok121 = a < 0 and 10**152 <= -a <= 2 * 10**152
    detail = f"z^2={s[2]} z^3={s[3]} z^121={float(a):.3e}; first negative {r.verdict}"
    return Check("Veronese (6,7) series: z^2, z^3 and index 121", ok2 and ok3 and ok121, detail)


def _multiplicities() -> Check:
    bad = [(n, c) for n in range(1, 8) for c in range(2, 8) if veronese_numerics(n, c).multiplicity != c ** (n - 1)]
    bad += [(m, n) for m in range(1, 7) for n in range(m, 8) if segre_numerics(m, n).multiplicity != comb(m + n - 2, m - 1)]
    return Check("multiplicities c^(n-1) and binom(m+n-2, m-1)", not bad, f"mismatch at {bad}" if bad else "exact")


def _e_codim_44_62() -> Check:
    a, b = veronese_numerics(4, 4), veronese_numerics(6, 2)
    ok = (a.multiplicity, a.codim, b.multiplicity, b.codim) == (64, 31, 32, 15)
    return Check(
        "e and codim: (4,4) -> 64, 31 and (6,2) -> 32, 15",
        ok,
        f"(4,4): e={a.multiplicity} codim={a.codim}; (6,2): e={b.multiplicity} codim={b.codim}",
    )


OBSTRUCTED = {(7, 2), (5, 3), (5, 4), (4, 5), (4, 6), (4, 7)}


def _grid_scan():
    return family_scan("veronese", (range(2, 8), range(2, 8)), 200)


def _grid_listed_fail(reports) -> Check:
    by = {_params(r.label): r for r in reports}
    bad = [k for k in sorted(OBSTRUCTED) if not (by[k].g_at_minus_one > 0 and isinstance(by[k].verdict, FailAt))]
    return Check("grid 2..7: the six listed pairs have h(-1) > 0 and fail", not bad, f"not failing: {bad}" if bad else "all six fail")


def _grid_exact_set(reports) -> Check:
    positive = {_params(r.label) for r in reports if r.vanish_order == 0 and r.g_at_minus_one > 0}
    extra = sorted(positive - OBSTRUCTED)
    missing = sorted(OBSTRUCTED - positive)
    ok = not extra and not missing
    detail = "exact match" if ok else f"also positive: {extra}; missing: {missing}"
    return Check("grid 2..7: h(-1) > 0 exactly at the six listed pairs", ok, detail)


def _grid_pass_candidates(reports) -> Check:
    by = {_params(r.label): r for r in reports}
    cands = [k for k in by if k[0] <= 3 or (k[0] == 4 and k[1] <= 4) or (k[0] <= 6 and k[1] == 2)]
    bad = [k for k in sorted(cands) if not (by[k].passed and by[k].asymptotic_verdict.value == "EventuallyNonnegative")]
    return Check("grid 2..7: n<=3, (4, c<=4), (n<=6, 2) pass", not bad, f"failing: {bad}" if bad else f"{len(cands)} pass")


def _segre_36() -> Check:
    r = br_obstruction(segre_numerics(3, 6))
    ok = r.g_at_minus_one == 1 and r.asymptotic_verdict.value == "EventuallyNegative"
    return Check("Segre (3,6): g(-1) = 1, eventually negative", ok, f"g(-1)={r.g_at_minus_one}, {r.verdict}")


def _veronese2_gb() -> Check:
    bad = []
    for n in range(3, 7):
        o = veronese2_order(n)
        if not is_groebner(veronese2_kernel_gens(n, o), o, 6):
            bad.append(n)
    return Check("quadratic Veronese binomials are a Groebner basis, n = 3..6", not bad, f"fails for {bad}" if bad else "n=3..6")


def _veronese2_graph() -> Check:
    n = 6
    o = veronese2_order(n)
    lms = [g.leading_monomial(o) for g in veronese2_kernel_gens(n, o)]
    squares = [m for m in lms if max(m) == 2]
    L = MonomialIdeal(tuple(veronese2_names(n)), tuple(m for m in lms if max(m) == 1))
    used = sorted({i for m in L.generators for i, e in enumerate(m) if e})
    g = nonedge_graph(L.restrict(used))
    ch = is_chordal(g)
    ok = len(squares) == 15 and len(g.vertices) == 15 and len(g.edges) == 15 and ch.chordal
    return Check(
        "n = 6 initial ideal: squares + L, graph of L has 15 vertices, 15 edges, chordal",
        ok,
        f"{len(squares)} squares, {len(g.vertices)} vertices, {len(g.edges)} edges, chordal={ch.chordal}",
    )


def _params(label: str) -> tuple[int, int]:
    inner = label[label.index("(") + 1 : label.index(")")]
    a, b = inner.split(",")
    return int(a), int(b)


def run_all() -> list[Check]:
    checks: list[Callable[[], Check]] = [
        _h_polys,
        _h67_at_minus_one,
        _h4c_formula,
        _series_67,
        _multiplicities,
        _e_codim_44_62,
        _segre_36,
        _veronese2_gb,
        _veronese2_graph,
    ]
    out = [c() for c in checks]
    reports = _grid_scan()
    out += [_grid_listed_fail(reports), _grid_pass_candidates(reports), _grid_exact_set(reports)]
    return out
