"""Command-line front end.

Exit codes: 0 when a verdict was computed (whatever it says), 1 usage
error, 2 parse error, 3 degree bound exceeded, 4 internal cross-check
failure.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import __version__
from .errors import InternalCheckError, KoszulkitError, UsageError
from .gb import MonomialOrder, buchberger, is_groebner, veronese2_kernel_gens, veronese2_names, veronese2_order
from .hilbert import segre_numerics, user_numerics, veronese_numerics
from .linalg import Field
from .monomial import ci_plus_two_linear, has_two_linear_resolution, linear_quotients_order, uk_recognize
from .obstruction import br_obstruction, family_scan
from .parsing import format_polynomial, read_input_file
from .report import (
    Report,
    betti_text,
    certificate_json,
    chordality_json,
    derivation_json,
    emit_report,
    ideal_json,
    numerics_json,
    numerics_text,
    obstruction_json,
    obstruction_text,
    scan_row,
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _int_range(text: str) -> list[int]:
    """'2..7' or '2,3,5'."""
    try:
        if ".." in text:
            lo, hi = text.split("..")
            return list(range(int(lo), int(hi) + 1))
        return _int_list(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a range like 2..7, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--char", type=int, default=0, metavar="p", help="field characteristic (0 or a prime)")

    p = _Parser(prog="koszulkit", description="Obstructions, certificates and resolutions for graded algebras.")
    p.add_argument("--version", action="version", version=f"koszulkit {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, a, b in (("veronese", "n", "c"), ("segre", "m", "n")):
        s = sub.add_parser(name, parents=[common], help=f"numerics of the {name} algebra")
        s.add_argument(a, type=int)
        s.add_argument(b, type=int)

    s = sub.add_parser("obstruction", parents=[common], help="coefficient scan of 1 - h(-z)/(1-z)^c")
    src = s.add_mutually_exclusive_group(required=True)
    src.add_argument("--veronese", nargs=2, type=int, metavar=("N", "C"))
    src.add_argument("--segre", nargs=2, type=int, metavar=("M", "N"))
    src.add_argument("--hpoly", type=_int_list, metavar="h0,h1,...")
    s.add_argument("--dim", type=int)
    s.add_argument("--embdim", type=int)
    s.add_argument("--ci", choices=["yes", "no"], help="assert (non-)complete intersection for user input")
    s.add_argument("--order", type=int, metavar="N", help="scan order (default max(200, 2 codim))")
    s.add_argument("--show", type=_int_list, metavar="k1,k2", help="print these coefficients")

    s = sub.add_parser("scan", parents=[common], help="obstruction scan over a parameter grid")
    s.add_argument("--family", choices=["veronese", "segre"], default="veronese")
    s.add_argument("--range1", type=_int_range, default=list(range(2, 8)), metavar="A..B")
    s.add_argument("--range2", type=_int_range, default=list(range(2, 8)), metavar="A..B")
    s.add_argument("--order", type=int, metavar="N", default=200)

    for name, help_text in (
        ("monomial", "complete intersection + 2-linear certificate"),
        ("uk", "universally Koszul derivation"),
    ):
        s = sub.add_parser(name, parents=[common], help=help_text)
        s.add_argument("--input", required=True, metavar="FILE")
        if name == "monomial":
            s.add_argument("--cap", type=int, default=24, help="maximal number of generators to search")

    s = sub.add_parser("gb", parents=[common], help="Groebner basis or Groebner check")
    gsrc = s.add_mutually_exclusive_group(required=True)
    gsrc.add_argument("--input", metavar="FILE")
    gsrc.add_argument("--veronese2", type=int, metavar="N", help="check the quadratic Veronese binomials")
    s.add_argument("--cap", type=int, metavar="d", help="degree cap (default 2 * max generator degree)")
    s.add_argument("--check", action="store_true", help="only check whether the input is already a basis")

    for name, help_text, h_default in (
        ("resolve", "truncated minimal free resolution", 5),
        ("lind", "linearity defect within the truncation", 5),
        ("golod", "Golod test for Q -> Q/(extra)", 4),
        ("koszul", "Koszul test of the ring", 5),
    ):
        s = sub.add_parser(name, parents=[common], help=help_text)
        s.add_argument("--input", required=True, metavar="FILE")
        s.add_argument("--hbound", type=int, default=h_default, metavar="h")
        s.add_argument("--dbound", type=int, metavar="D")

    sub.add_parser("reproduce-paper", parents=[common], help="evaluate all pinned reference values")
    return p


def _field(args) -> Field:
    try:
        return Field(args.char)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _numerics(args):
    if args.veronese:
        return veronese_numerics(*args.veronese)
    if args.segre:
        return segre_numerics(*args.segre)
    if args.dim is None or args.embdim is None:
        raise UsageError("--hpoly needs --dim and --embdim")
    ci = {"yes": True, "no": False, None: None}[args.ci]
    return user_numerics(args.hpoly, args.dim, args.embdim, ci)


def cmd_numerics(args) -> Report:
    a = veronese_numerics(args.n, args.c) if args.command == "veronese" else segre_numerics(args.m, args.n)
    params = {"n": args.n, "c": args.c} if args.command == "veronese" else {"m": args.m, "n": args.n}
    return Report(args.command, params, verdicts=[numerics_json(a)], text=numerics_text(a))


def cmd_obstruction(args) -> Report:
    a = _numerics(args)
    r = br_obstruction(a, args.order)
    params = {"algebra": a.label, "order": r.scan_order}
    return Report(
        "obstruction",
        params,
        verdicts=[obstruction_json(r, args.show)],
        bounds={"scanOrder": r.scan_order},
        text=numerics_text(a) + obstruction_text(r, args.show),
    )


def cmd_scan(args) -> Report:
    reports = family_scan(args.family, (args.range1, args.range2), args.order)
    return Report(
        "scan",
        {"family": args.family, "range1": args.range1, "range2": args.range2, "order": args.order},
        verdicts=[obstruction_json(r) for r in reports],
        bounds={"scanOrder": args.order},
        text=[scan_row(r) for r in reports],
    )


def cmd_monomial(args) -> Report:
    I = read_input_file(args.input).monomial_ideal()
    lin = has_two_linear_resolution(I)
    lq = linear_quotients_order(I)
    cert = ci_plus_two_linear(I, args.cap)
    verdict = {
        "ideal": ideal_json(I),
        "twoLinear": lin.linear,
        "linearQuotientsOrder": None if lq is None else [I.monomial_str(m) for m in lq],
        "certificateFound": cert is not None,
    }
    text = [f"ideal {I}", f"2-linear resolution: {'yes' if lin.linear else 'no'}"]
    if not lin.linear:
        text.append(f"  chordless cycle in the polarized non-edge graph: {' - '.join(lin.chordality.chordless_cycle)}")
    if cert is None:
        text.append("no complete intersection + 2-linear split of the minimal generators")
        certs = [{"type": "twoLinearWitness", "chordality": chordality_json(lin.chordality)}]
    else:
        text.append(f"U (complete intersection) = {cert.ci_part}")
        text.append(f"V (2-linear)              = {cert.linear_part}")
        if cert.linear_quotients is not None:
            text.append("V linear quotients order  = " + ", ".join(cert.linear_part.monomial_str(m) for m in cert.linear_quotients))
        text.append(f"note: {cert.note}")
        certs = [certificate_json(cert)]
    return Report("monomial", {"input": args.input}, verdicts=[verdict], certificates=certs, text=text)


def cmd_uk(args) -> Report:
    I = read_input_file(args.input).monomial_ideal()
    d = uk_recognize(I)
    verdict = {"ideal": ideal_json(I), "recognized": d is not None}
    text = [f"ideal {I}"]
    if d is None:
        text.append("not recognized (this does not prove the algebra is not universally Koszul)")
        certs = []
    else:
        text.append(d.root.describe())
        text.extend(f"note: {n}" for n in d.notes)
        certs = [derivation_json(d)]
    return Report("uk", {"input": args.input}, verdicts=[verdict], certificates=certs, text=text)


def cmd_gb(args) -> Report:
    K = _field(args)
    if args.veronese2 is not None:
        n = args.veronese2
        order = veronese2_order(n)
        gens = veronese2_kernel_gens(n, order, K)
        names = veronese2_names(n)
        cap = args.cap or 6
        chk = is_groebner(gens, order, cap)
        params = {"veronese2": n, "cap": cap}
        verdict = {"isGroebner": chk.is_basis, "generators": len(gens), "pairsChecked": chk.pairs_checked}
        text = [
            f"{len(gens)} binomials in {len(names)} variables",
            "order: degrevlex with " + " < ".join(names[i] for i in order.priority),
            f"Groebner basis up to degree {cap}: {'yes' if chk.is_basis else 'no'} ({chk.pairs_checked} S-pairs reduced)",
        ]
        if not chk.is_basis:
            i, j, r = chk.witness
            verdict["witness"] = {"pair": [i, j], "remainder": r.to_string(names, order)}
            text.append(f"S-pair ({i},{j}) leaves {r.to_string(names, order)}")
        return Report("gb", params, verdicts=[verdict], bounds={"degreeCap": cap}, characteristic=K.characteristic, text=text)
    parsed = read_input_file(args.input)
    R = parsed.quotient_ring(K)
    order = MonomialOrder(parsed.nvars)
    names = parsed.variables
    gens = R.relations
    if args.check:
        cap = args.cap or 2 * max((g.degree for g in gens), default=1)
        chk = is_groebner(gens, order, cap)
        verdict = {"isGroebner": chk.is_basis, "pairsChecked": chk.pairs_checked}
        text = [f"Groebner basis up to degree {cap}: {'yes' if chk.is_basis else 'no'}"]
        if not chk.is_basis:
            i, j, r = chk.witness
            verdict["witness"] = {"pair": [i, j], "remainder": format_polynomial(r, names)}
            text.append(f"S-pair ({i},{j}) leaves {format_polynomial(r, names)}")
        return Report("gb", {"input": args.input, "cap": cap}, verdicts=[verdict], bounds={"degreeCap": cap},
                      characteristic=K.characteristic, text=text)
    G = buchberger(gens, order, args.cap)
    elems = [g.to_string(names, order) for g in G.elements]
    verdict = {"basis": elems, "complete": G.complete, "order": {"kind": "degrevlex", "priority": [names[i] for i in order.priority]}}
    text = [f"degrevlex, degree cap {G.degree_cap}, complete: {G.complete}"] + [f"  {e}" for e in elems]
    return Report("gb", {"input": args.input, "cap": G.degree_cap}, verdicts=[verdict], bounds={"degreeCap": G.degree_cap},
                  characteristic=K.characteristic, text=text)


def _resolution_setup(args):
    K = _field(args)
    parsed = read_input_file(args.input)
    R = parsed.quotient_ring(K)
    return parsed, R, K


def _betti_json(table) -> dict:
    return table.to_json()


def cmd_resolve(args) -> Report:
    from .resolution import minimal_resolution

    parsed, R, K = _resolution_setup(args)
    M = parsed.module(R)
    res, table = minimal_resolution(M, args.hbound, args.dbound)
    checks = {
        "dSquaredZero": res.check_d_squared(),
        "minimal": res.check_minimal(),
        "eulerCharacteristic": all(res.euler_characteristic_ok().values()),
    }
    if not all(checks.values()):
        raise InternalCheckError(f"resolution failed its self-checks: {checks}")
    verdict = {"betti": _betti_json(table), "checks": checks}
    text = [f"ring {R}", f"bounds h={table.computed_h} D={table.D} (cells marked ? are outside them)"] + betti_text(table)
    for i in range(1, len(res.differentials)):
        if res.differentials[i] and len(res.differentials[i]) <= 8:
            text.append(f"d_{i}:")
            text.extend("  [" + ", ".join(row) + "]" for row in res.matrix_strings(i))
    return Report("resolve", {"input": args.input}, verdicts=[verdict],
                  bounds={"homological": table.computed_h, "internalDegree": table.D}, characteristic=K.characteristic, text=text)


def cmd_lind(args) -> Report:
    from .resolution import linearity_defect

    parsed, R, K = _resolution_setup(args)
    rep = linearity_defect(parsed.module(R), args.hbound, args.dbound)
    verdict = {
        "lindLowerBound": rep.lind_lower_bound,
        "stableUpToBounds": rep.stable_up_to_bounds,
        "homologyWitness": list(rep.homology_witness) if rep.homology_witness else None,
        "linearPartHomology": [[i, j, d] for (i, j), d in sorted(rep.homology.items())],
    }
    text = [
        f"lind >= {rep.lind_lower_bound}" + ("" if rep.stable_up_to_bounds else " (homology reaches the last computed degree)"),
        f"witness (i, j): {rep.homology_witness}",
    ] + betti_text(rep.betti)
    return Report("lind", {"input": args.input}, verdicts=[verdict],
                  bounds={"homological": rep.betti.computed_h, "internalDegree": rep.betti.D}, characteristic=K.characteristic, text=text)


def cmd_golod(args) -> Report:
    from .resolution import golod_map_check

    parsed, Q, K = _resolution_setup(args)
    if not parsed.extra:
        raise UsageError("golod needs an 'extra' statement listing the generators of the target ring")
    g = golod_map_check(Q, parsed.extra_polynomials(K), args.hbound, args.dbound)
    verdict = {
        "golod": g.golod,
        "sourceKoszul": g.source_koszul.koszul,
        "violation": list(g.violation) if g.violation else None,
        "t": {str(i): g.betti.t(i) for i in range(g.betti.computed_h + 1)},
        "betti": _betti_json(g.betti),
    }
    text = [
        f"Q = {Q}",
        f"source Koszul within bounds: {g.source_koszul.koszul}",
        f"Golod (t_i <= i+1 for i <= {g.betti.computed_h}, j <= {g.betti.D}): {g.golod}",
    ]
    if g.violation:
        text.append(f"t_{g.violation[0]} = {g.violation[1]}")
    text += betti_text(g.betti)
    return Report("golod", {"input": args.input}, verdicts=[verdict],
                  bounds={"homological": g.betti.computed_h, "internalDegree": g.betti.D}, characteristic=K.characteristic, text=text)


def cmd_koszul(args) -> Report:
    from .resolution import koszul_check

    parsed, R, K = _resolution_setup(args)
    D = args.dbound if args.dbound is not None else args.hbound + 2
    kz = koszul_check(R, args.hbound, D)
    verdict = {
        "koszul": kz.koszul,
        "offendingCell": list(kz.offending_cell) if kz.offending_cell else None,
        "betti": _betti_json(kz.betti),
    }
    text = [f"R = {R}", f"Koszul within h={args.hbound}, D={D}: {kz.koszul}"]
    if kz.offending_cell:
        text.append(f"first nonlinear Betti number at (i, j) = {kz.offending_cell}")
    text += betti_text(kz.betti)
    return Report("koszul", {"input": args.input}, verdicts=[verdict],
                  bounds={"homological": args.hbound, "internalDegree": D}, characteristic=K.characteristic, text=text)


def cmd_reproduce(args) -> Report:
    from .reference_values import run_all

    checks = run_all()
    verdicts = [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in checks]
    width = max(len(c.name) for c in checks)
    text = [f"{'PASS' if c.passed else 'FAIL'}  {c.name.ljust(width)}  {c.detail}" for c in checks]
    text.append(f"{sum(c.passed for c in checks)}/{len(checks)} passed")
    return Report("reproduce-paper", {}, verdicts=verdicts, text=text)


COMMANDS = {
    "veronese": cmd_numerics,
    "segre": cmd_numerics,
    "obstruction": cmd_obstruction,
    "scan": cmd_scan,
    "monomial": cmd_monomial,
    "uk": cmd_uk,
    "gb": cmd_gb,
    "resolve": cmd_resolve,
    "lind": cmd_lind,
    "golod": cmd_golod,
    "koszul": cmd_koszul,
    "reproduce-paper": cmd_reproduce,
}


def run_command(argv: Sequence[str]) -> tuple[Report, str]:
    args = build_parser().parse_args(list(argv))
    report = COMMANDS[args.command](args)
    report.characteristic = args.char
    return report, ("json" if args.json else "text")


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        report, fmt = run_command(argv)
    except KoszulkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    sys.stdout.write(emit_report(report, fmt))
    return 0


if __name__ == "__main__":
    sys.exit(main())
