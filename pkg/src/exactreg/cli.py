"""Command-line entry point: ``exactreg {analyze,regularity,matrix,convergence}``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path
from typing import Sequence

from . import report as rp
from .analysis import IllegalPatchError, Workbench
from .cohomology import CohomologyError
from .exactalg import IntPoly, Matrix, NotCoprimeError, NumberField, parse_poly, reduced_resultant, resultant
from .exactalg.matrix import charpoly, field_nullspace, is_primitive_matrix
from .exactalg.spectral import dominant_root_is_strict, second_modulus_interval
from .frequency import FrequencyError, convergence_experiment, default_scales, theoretical_gamma
from .language import factors, forces_border
from .regularity import (
    CertificateError,
    RegularityError,
    SampleConfig,
    Verifier,
    exact_on_supertiles,
    letter_contexts,
    return_word_contexts,
)
from .substitution import (
    NotPrimitiveError,
    SubstitutionError,
    SubstitutionSyntaxError,
    pf_root,
    is_primitive,
    is_proper,
    parse_substitution,
    periodicity_screen,
)

EXIT_OK, EXIT_USAGE, EXIT_NOT_PRIMITIVE, EXIT_INTERNAL, EXIT_ILLEGAL_PATCH = 0, 2, 3, 4, 5
DEFAULT_SEED = 20240601
VERSION = "0.1.0"


class UsageError(Exception):
    pass


def _load(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_substitution(text)


def _poly_arg(text: str) -> IntPoly:
    try:
        return parse_poly(text, "L")
    except ValueError as exc:
        raise UsageError(f"bad polynomial {text!r}: {exc}") from None


def _workbench(args) -> Workbench:
    s = _load(args.spec)
    ok, _ = is_primitive(s)
    if not ok:
        raise NotPrimitiveError("substitution is not primitive")
    lengths = [_poly_arg(t) for t in args.lengths] if getattr(args, "lengths", None) else None
    ret = _poly_arg(args.return_length) if getattr(args, "return_length", None) else None
    return Workbench(s, collar_radius=args.collar_radius, return_length=ret, lengths=lengths)


def _patch(wb: Workbench, text: str):
    try:
        p = wb.word(text)
    except SubstitutionError as exc:
        raise IllegalPatchError(str(exc)) from None
    return wb.require_legal(p)


def _header(command: str, args) -> dict:
    return {"tool": "exactreg", "version": VERSION, "command": command}


def _controls(wb: Workbench, args):
    if not args.controls:
        return wb.controls(None, args.max_patch_len)
    user = [_patch(wb, t) for t in args.controls]
    try:
        return wb.controls(user)
    except RegularityError as exc:
        # a bad user-supplied basis is an input problem, not an internal one
        raise UsageError(str(exc)) from None


# analyze ------------------------------------------------------------------

def _substitution_block(s) -> dict:
    ok, power = is_primitive(s)
    border = forces_border(s)
    return {
        "alphabet": list(s.alphabet),
        "rules": {a: [s.alphabet[i] for i in img] for a, img in zip(s.alphabet, s.images)},
        "matrix": rp.matrix(Matrix([[s.images[j].count(i) for j in range(s.size)] for i in range(s.size)])),
        "primitive": ok,
        "primitivity_power": power,
        "proper": is_proper(s),
        "periodicity": periodicity_screen(s),
        "border_forcing": {"forces": border.forces, "depth": border.depth},
    }


def _perron_block(wb: Workbench) -> dict:
    pd = wb.perron
    lo, hi = pd.lambda2_modulus_interval
    return {
        "lambda": rp.algebraic(pd.lam),
        "q": rp.poly(pd.q),
        "charpoly": rp.poly(pd.charpoly),
        "lengths": [rp.algebraic(x) for x in pd.lengths],
        "letter_freqs": [rp.algebraic(x) for x in pd.letter_freqs],
        "lambda2_modulus": {"interval": [rp.frac(lo), rp.frac(hi)], "decimal": f"{float((lo + hi) / 2):.15g}"},
        "gamma": theoretical_gamma(pd),
    }


def _cohomology_block(wb: Workbench) -> dict:
    pres = wb.presentation
    g = pres.graph
    w = pres.witness
    return {
        "collar_radius": pres.block_system.radius,
        "collared_letters": pres.block_system.size,
        "graph": {"vertices": g.num_vertices, "edges": g.num_edges, "h1_dim": g.h1_dim},
        "k": pres.k,
        "A0": rp.matrix(pres.A0),
        "A": rp.matrix(pres.A),
        "eigenvalues": rp.eigen_split(charpoly(pres.A)),
        "p": rp.poly(pres.p),
        "q": rp.poly(pres.q),
        "r": rp.poly(pres.r),
        "D": w.D,
        "Q": rp.poly(w.Q),
        "R": rp.poly(w.R),
        "resultant": pres.resultant,
    }


def _patch_entry(wb: Workbench, p, controls) -> dict:
    t4 = wb.theorem4(p)
    return {
        "patch": wb.substitution.format_word(p),
        "frequency": rp.algebraic(wb.frequency(p)),
        "coefficients": [rp.frac(c) for c in wb.coefficients(p, controls)],
        "theorem4": {
            "u": rp.poly(t4.u),
            "n": t4.n,
            "L": rp.algebraic(t4.L),
            "D": t4.D,
            "qprime_at_lambda": rp.algebraic(t4.qprime_at_lambda),
            "q0": t4.q0,
        },
    }


def cmd_analyze(args) -> dict:
    wb = _workbench(args)
    s = wb.substitution
    out = _header("analyze", args)
    out["substitution"] = _substitution_block(s)
    out["perron"] = _perron_block(wb)
    out["cohomology"] = _cohomology_block(wb)
    controls = _controls(wb, args)
    out["regularity"] = {
        "controls": [s.format_word(p) for p in controls.patches],
        "provenance": controls.provenance,
        "classes": rp.matrix(controls.classes),
        "return_length": rp.algebraic(wb.return_length),
    }
    patches = []
    for n in range(1, args.max_patch_len + 1):
        patches.extend(sorted(factors(s, n)))
    for p in controls.patches:
        if p not in patches:
            patches.append(p)
    out["frequency"] = {"patches": [_patch_entry(wb, p, controls) for p in patches]}
    out["seed"] = args.seed
    return out


# regularity ---------------------------------------------------------------

def cmd_regularity(args) -> dict:
    wb = _workbench(args)
    s = wb.substitution
    patch = _patch(wb, args.patch)
    controls = _controls(wb, args)
    coeffs = wb.coefficients(patch, controls)
    cfg = SampleConfig(samples=args.samples, seed=args.seed, min_word=args.word_length)
    cert = Verifier(s, cfg).certify(patch, coeffs, controls.patches)
    if is_proper(s):
        mode, contexts = "letters", letter_contexts(s)
    else:
        mode, contexts = "return-words", return_word_contexts(s, 8)
    orders = list(range(0, args.supertile_orders + 1))
    st = exact_on_supertiles(patch, coeffs, controls, s, orders, contexts)
    vanishing = [n for n in orders if any(r.n == n for r in st.rows)
                 and all(r.error == 0 for r in st.rows if r.n == n)]
    first = next((n for n in vanishing if all(m in vanishing for m in range(n, orders[-1] + 1))), None)
    return {
        **_header("regularity", args),
        "patch": s.format_word(patch),
        "controls": [s.format_word(p) for p in controls.patches],
        "coefficients": [rp.frac(c) for c in coeffs],
        "certificate": {
            "collar_radius": cert.collar_radius,
            "error_bound": rp.frac(cert.error_bound),
            "derived_bound": rp.frac(cert.derived_bound),
            "max_error_short_windows": rp.frac(cert.max_error_short),
            "max_error_long_windows": rp.frac(cert.max_error_long),
            "boundary_map_checked": cert.boundary_map_checked,
            "windows": cert.windows,
            "distinct_collar_pairs": cert.distinct_collar_pairs,
            "word_length": cert.word_length,
        },
        "supertiles": {
            "contexts": mode,
            "orders": orders,
            "vanishing_orders": vanishing,
            "vanishing_from": first,
        },
        "seed": args.seed,
    }


# matrix mode --------------------------------------------------------------

def cmd_matrix(args) -> dict:
    try:
        data = json.loads(Path(args.matrix).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read matrix JSON: {exc}") from None
    rows = data.get("matrix") if isinstance(data, dict) else None
    if (not isinstance(rows, list) or not rows or any(not isinstance(r, list) for r in rows)
            or any(len(r) != len(rows) for r in rows)):
        raise UsageError("matrix must be a non-empty square list of lists")
    if any(not isinstance(v, int) or isinstance(v, bool) or v < 0 for r in rows for v in r):
        raise UsageError("matrix entries must be nonnegative integers")
    dim = args.dim if args.dim is not None else int(data.get("dim", 1))
    if dim < 1:
        raise UsageError("dim must be >= 1")
    m = Matrix(rows)
    ok, power = is_primitive_matrix(m)
    f = charpoly(m)
    out = {**_header("matrix", args), "matrix": rp.matrix(m), "dim": dim, "primitive": ok,
           "primitivity_power": power, "charpoly": rp.poly(f), "eigenvalues": rp.eigen_split(f)}
    if ok:
        q, iv = pf_root(f)
        field = NumberField(q, iv)
        lam = field.gen
        if not dominant_root_is_strict(m, lam):
            raise AssertionError("Perron-Frobenius root is not strictly dominant")
        n = m.nrows
        zero, one = field.zero(), field.one()
        shifted = lambda mat: [[field(mat[i, j]) - (lam if i == j else zero) for j in range(n)]
                               for i in range(n)]
        right = field_nullspace(shifted(m), zero, one)[0]
        left = field_nullspace(shifted(m.T), zero, one)[0]
        rs = sum(right, zero)
        ls = sum(left, zero)
        lo, hi = second_modulus_interval(m, lam)
        l2 = float((lo + hi) / 2)
        l1 = float(lam)
        gamma = 1.0 / dim if l2 <= 0 else min(1.0 / dim, 1.0 - math.log(l2) / math.log(l1))
        out.update({
            "lambda": rp.algebraic(lam),
            "q": rp.poly(q),
            "lambda2_modulus": {"interval": [rp.frac(lo), rp.frac(hi)], "decimal": f"{l2:.15g}"},
            "gamma": gamma,
            "right_eigenvector": [rp.algebraic(v / rs) for v in right],
            "left_eigenvector": [rp.algebraic(v / ls) for v in left],
        })
    pairs = []
    for pair in data.get("pairs", []) if isinstance(data, dict) else []:
        try:
            q = IntPoly(int(c) for c in pair["q"])
            r = IntPoly(int(c) for c in pair["r"])
        except (KeyError, TypeError, ValueError):
            raise UsageError("pairs entries need integer coefficient lists 'q' and 'r'") from None
        entry = {"q": rp.poly(q), "r": rp.poly(r), "resultant": resultant(q, r)}
        try:
            w = reduced_resultant(q, r)
            entry.update({"D": w.D, "Q": rp.poly(w.Q), "R": rp.poly(w.R)})
        except NotCoprimeError:
            entry.update({"D": None})
        pairs.append(entry)
    out["pairs"] = pairs
    return out


# convergence --------------------------------------------------------------

def cmd_convergence(args) -> dict:
    scales = args.scales if args.scales else default_scales()
    if len(scales) < 8:
        raise UsageError(f"need at least 8 scales, got {len(scales)}")
    if any(v <= 0 for v in scales):
        raise UsageError("scales must be positive")
    wb = _workbench(args)
    s = wb.substitution
    patch = _patch(wb, args.patch)
    screen = periodicity_screen(s)
    f = wb.frequency(patch)
    rep = convergence_experiment(patch, s, wb.perron, f, scales, samples=args.samples, seed=args.seed)
    out = {
        **_header("convergence", args),
        "patch": s.format_word(patch),
        "periodicity": screen,
        "frequency": rp.algebraic(f),
        "theoretical_gamma": rep.theoretical_gamma,
        "fitted_exponent": rep.fitted_exponent,
        "envelope_constant": rep.envelope_constant,
        "table": [{"V": v, "sup_deviation": d} for v, d in zip(rep.window_sizes, rep.deviations)],
        "samples_per_scale": rep.samples_per_scale,
        "word_length": rep.word_length,
        "seed": rep.seed,
    }
    if args.csv:
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["V", "sup_deviation"])
        for v, d in zip(rep.window_sizes, rep.deviations):
            wr.writerow([repr(v), repr(d)])
        Path(args.csv).write_text(buf.getvalue(), encoding="utf-8")
    return out


# plumbing -----------------------------------------------------------------

def _scale(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="exactreg", description="Exact regularity analysis of substitution tilings.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, spec=True):
        if spec:
            p.add_argument("spec", help="substitution rule file")
        p.add_argument("--out", help="write JSON here instead of stdout")
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)

    def analysis_opts(p):
        p.add_argument("--collar-radius", type=int, default=1)
        p.add_argument("--max-patch-len", type=int, default=3)
        p.add_argument("--return-length", help="return length L as a polynomial in L (the stretching factor)")
        p.add_argument("--lengths", nargs="+", help="tile lengths as polynomials in L")
        p.add_argument("--controls", nargs="+", help="control patches (default: greedy search)")

    p = sub.add_parser("analyze", help="full exact analysis")
    common(p)
    analysis_opts(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("regularity", help="coefficients and certificate for one patch")
    common(p)
    analysis_opts(p)
    p.add_argument("--patch", required=True)
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--word-length", type=int, default=10**6)
    p.add_argument("--supertile-orders", type=int, default=6)
    p.set_defaults(func=cmd_regularity)

    p = sub.add_parser("matrix", help="Perron-Frobenius analysis of a raw integer matrix")
    p.add_argument("matrix", help='JSON file {"matrix": [[...]], "dim": 1, "pairs": [{"q": [...], "r": [...]}]}')
    p.add_argument("--dim", type=int)
    common(p, spec=False)
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("convergence", help="empirical frequency convergence rate")
    common(p)
    analysis_opts(p)
    p.add_argument("--patch", required=True)
    p.add_argument("--scales", nargs="+", type=_scale)
    p.add_argument("--samples", type=int, default=2000)
    p.add_argument("--csv", help="also write the (V, deviation) table as CSV")
    p.set_defaults(func=cmd_convergence)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result = args.func(args)
    except SubstitutionSyntaxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NotPrimitiveError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_PRIMITIVE
    except IllegalPatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ILLEGAL_PATCH
    except SubstitutionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (AssertionError, CohomologyError, NotCoprimeError, FrequencyError,
            CertificateError, RegularityError) as exc:
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    text = rp.dumps(result)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
