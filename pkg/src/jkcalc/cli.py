"""Command line entry point: parse a config, run the pipeline, emit results.

Exit codes: 0 success, 2 validation failure, 3 parse error, 4 internal
assertion failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import invariants
from .arrangement import PerturbationError
from .config import ConfigError, parse_config
from .engine import NonGenericResidueError
from .invariants import (InvariantResult, PipelineError, ValidationError,
                         fractional_reduction_check, integrality_scale, specialize)
from .polyarith import MultiPoly, QSeries, RatFunc

_KIND_BY_INVARIANT = {"dt": "additive", "chi-y": "sine", "ell": "theta", "all": "all"}


def _fmt_y_power(exp: int, D: int) -> str:
    p = Fraction(exp, 2 * D)
    if p == 0:
        return ""
    if p == 1:
        return "y"
    if p.denominator == 1:
        return f"y^{p.numerator}"
    return f"y^({p})"


def _fmt_laurent(laurent: dict, D: int) -> str:
    if not laurent:
        return "0"
    parts = []
    for exp in sorted(laurent):
        c = laurent[exp]
        mono = _fmt_y_power(exp, D)
        if not mono:
            body = str(c)
        elif c == 1:
            body = mono
        elif c == -1:
            body = f"-{mono}"
        else:
            body = f"{c}*{mono}"
        if not parts:
            parts.append(body)
        elif body.startswith("-"):
            parts.append("- " + body[1:])
        else:
            parts.append("+ " + body)
    return " ".join(parts)


def _fmt_chi(chi) -> str:
    if chi.laurent is not None:
        return _fmt_laurent(chi.laurent, chi.denom_scale)
    return chi.ratfunc.to_string(names=["w"]) + f"   (w = y^(1/{2 * chi.denom_scale}), not a Laurent polynomial)"


def emit_text(result: InvariantResult, out) -> None:
    """Human-readable exact values."""
    if result.label:
        out.write(f"# {result.label}\n")
    if result.dt is not None:
        out.write(f"DT = {result.dt}\n")
        if not result.dt_is_integer():
            out.write("  (non-integral: the critical locus is not a finite reduced set)\n")
    if result.chi_y is not None:
        out.write(f"chi_y = {_fmt_chi(result.chi_y)}\n")
    if result.ell is not None:
        ell = result.ell
        out.write(f"Ell (q-expansion to order {ell.q_order}):\n")
        for i, coeff in enumerate(ell.series.coeffs):
            laur = invariants.laurent_form(coeff)
            if laur is not None:
                body = _fmt_laurent(laur, ell.denom_scale)
            else:
                body = coeff.to_string(names=["w"])
            out.write(f"  q^{i}: {body}\n")


def _poly_pairs(poly: MultiPoly):
    return [[k[0], c.numerator, c.denominator] for k, c in sorted(poly.terms.items())]


def _poly_from_pairs(pairs) -> MultiPoly:
    return MultiPoly(1, {(int(e),): Fraction(int(n), int(d)) for e, n, d in pairs})


def _ratfunc_json(rf: RatFunc, D: int):
    laur = invariants.laurent_form(rf)
    if laur is not None:
        return {"laurent": [[e, laur[e].numerator, laur[e].denominator]
                            for e in sorted(laur)]}
    return {"ratfunc": {"num": _poly_pairs(rf.num), "den": _poly_pairs(rf.den)}}


def emit_json(result: InvariantResult, out, diagnostics: bool = True) -> None:
    doc = {"label": result.label, "degree": result.degree}
    doc["dt"] = None if result.dt is None else \
        {"num": result.dt.numerator, "den": result.dt.denominator}
    if result.chi_y is None:
        doc["chi_y"] = None
    else:
        doc["chi_y"] = {"denom_scale": result.chi_y.denom_scale}
        doc["chi_y"].update(_ratfunc_json(result.chi_y.ratfunc, result.chi_y.denom_scale))
    if result.ell is None:
        doc["ell"] = None
    else:
        ell = result.ell
        doc["ell"] = {
            "denom_scale": ell.denom_scale,
            "q_order": ell.q_order,
            "coefficients": [_ratfunc_json(c, ell.denom_scale) for c in ell.series.coeffs],
        }
    if diagnostics:
        diag = result.diagnostics
        doc["diagnostics"] = {
            "weyl_order": diag.weyl_order,
            "denom_scale": diag.denom_scale,
            "seed": diag.seed,
            "retries": diag.retries,
            "stable_points": [[str(x) for x in p.point] for p in diag.points],
            "flags_per_point": [len(p.flags) for p in diag.points],
            "perturbation": None if diag.perturbation is None else
                [str(x) for x in diag.perturbation.xi_tilde],
            "properness": None if diag.hypothesis is None else diag.hypothesis.properness,
        }
    json.dump(doc, out, indent=2)
    out.write("\n")


def _ratfunc_from_json(doc) -> RatFunc:
    if "laurent" in doc:
        num = {}
        shift = 0
        entries = doc["laurent"]
        if entries:
            shift = -min(int(e) for e, _, _ in entries)
            shift = max(shift, 0)
        for e, n, d in entries:
            num[(int(e) + shift,)] = Fraction(int(n), int(d))
        return RatFunc(MultiPoly(1, num), MultiPoly.monomial(1, (shift,)))
    rf = doc["ratfunc"]
    return RatFunc(_poly_from_pairs(rf["num"]), _poly_from_pairs(rf["den"]))


def result_from_json(doc: dict) -> InvariantResult:
    """Rebuild exact values from an emitted JSON document (bit-exact)."""
    if isinstance(doc, str):
        doc = json.loads(doc)
    result = InvariantResult(label=doc.get("label", ""), degree=doc.get("degree", 1))
    if doc.get("dt") is not None:
        result.dt = Fraction(int(doc["dt"]["num"]), int(doc["dt"]["den"]))
    if doc.get("chi_y") is not None:
        result.chi_y = invariants.ChiYResult(
            ratfunc=_ratfunc_from_json(doc["chi_y"]),
            denom_scale=int(doc["chi_y"]["denom_scale"]))
        result.chi_y.laurent = invariants.laurent_form(result.chi_y.ratfunc)
    if doc.get("ell") is not None:
        ell = doc["ell"]
        coeffs = [_ratfunc_from_json(c) for c in ell["coefficients"]]
        result.ell = invariants.EllResult(
            series=QSeries(int(ell["q_order"]), coeffs),
            denom_scale=int(ell["denom_scale"]),
            q_order=int(ell["q_order"]))
    return result


def _print_intersections(problem, result_diag, out):
    report = result_diag.hypothesis
    out.write(f"isolated intersections: {len(report.all_points)}\n")
    stable_keys = {p.point for p in report.stable_points}
    for pt in report.all_points:
        mark = "stable" if pt.point in stable_keys else "unstable"
        out.write(f"  P = {pt}  [{mark}]  active weights: "
                  + ", ".join(str(tuple(map(str, w))) for w in pt.active_weights) + "\n")
    out.write(f"stable intersections: {len(report.stable_points)}\n")
    for pdiag in result_diag.points:
        out.write(f"  P = ({', '.join(str(x) for x in pdiag.point)}): "
                  f"{len(pdiag.flags)} contributing flag(s)\n")
        for fl in pdiag.flags:
            kap = "; ".join("(" + ", ".join(str(x) for x in ka) + ")" for ka in fl.kappa)
            out.write(f"    kappa = {kap}   lattice factor = {fl.lattice_factor}\n")


def build_arg_parser():
    ap = argparse.ArgumentParser(
        prog="jkcalc",
        description="Exact Jeffrey-Kirwan residue calculator for virtual invariants "
                    "(DT, chi_y, elliptic genus) of critical loci on GIT quotients.")
    ap.add_argument("config", help="problem configuration file ('-' for stdin)")
    ap.add_argument("--invariant", choices=sorted(_KIND_BY_INVARIANT),
                    help="which invariant(s) to compute (overrides the config)")
    ap.add_argument("--q-order", type=int, help="elliptic genus truncation order")
    ap.add_argument("--seed", type=int, help="perturbation seed")
    ap.add_argument("--degree", type=int, help="override the potential degree")
    ap.add_argument("--emit", choices=("text", "json"), default="text")
    ap.add_argument("--output", "-o", help="write the result document to a file")
    ap.add_argument("--check-only", action="store_true",
                    help="validate the hypotheses and exit")
    ap.add_argument("--cross-check", action="store_true",
                    help="also verify specialization identities, s- and seed-independence")
    ap.add_argument("--list-intersections", action="store_true",
                    help="print isolated/stable intersections and contributing flags")
    return ap


def run(argv=None) -> int:
    args = build_arg_parser().parse_args(argv)
    try:
        if args.config == "-":
            text = sys.stdin.read()
        else:
            with open(args.config, "r", encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return 3
    try:
        cfg = parse_config(text)
        if args.degree is not None:
            cfg.degree = args.degree
        if args.q_order is not None:
            cfg.q_order = args.q_order
        if args.seed is not None:
            cfg.seed = args.seed
        if args.invariant is not None:
            cfg.invariant = args.invariant
        problem = cfg.build_problem()
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 3
    except (ValidationError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 3

    try:
        if args.check_only:
            report = invariants.validate(problem)
            print("stability: regular")
            print(f"root condition: {report.root_condition}")
            print(f"properness: {report.properness} ({report.properness_note})")
            print(f"isolated intersections: {len(report.all_points)}, "
                  f"stable: {len(report.stable_points)}")
            return 0 if report.ok() else 2
        kind = _KIND_BY_INVARIANT[cfg.invariant]
        result = invariants.compute(problem, kind=kind, q_order=cfg.q_order,
                                    seed=cfg.seed)
        if args.cross_check:
            _run_cross_checks(problem, cfg, result)
    except ValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return 2
    except PerturbationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return 2
    except (PipelineError, NonGenericResidueError, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 4

    out = sys.stdout
    if args.output:
        out = open(args.output, "w", encoding="utf-8")
    try:
        if args.list_intersections:
            _print_intersections(problem, result.diagnostics, out)
        if args.emit == "json":
            emit_json(result, out)
        else:
            emit_text(result, out)
    finally:
        if args.output:
            out.close()
    return 0


def _run_cross_checks(problem, cfg, result):
    if result.dt is not None and result.chi_y is not None:
        specialize(result)
    if result.dt is not None:
        alt = invariants.compute(problem, kind="additive", seed=cfg.seed, s=2)
        if alt.dt != result.dt:
            raise PipelineError("DT changed between s=1 and s=2")
        reseeded = invariants.compute(problem, kind="additive", seed=cfg.seed + 1000)
        if reseeded.dt != result.dt:
            raise PipelineError("DT changed under an independent perturbation seed")
    if integrality_scale(problem) > 1:
        fractional_reduction_check(problem, q_order=min(cfg.q_order, 2), seed=cfg.seed)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
