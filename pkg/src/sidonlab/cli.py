"""Command-line surface.

Subcommands: construct, energy, count, spectrum, bohr, model, verify,
report, bench.  Rationals cross the boundary as "p/q" strings; counts are
emitted as numerator/denominator pairs; floating-point diagnostics are
serialized with 17 significant digits.  Every JSON document carries
"schema": 1 and echoes the resolved run configuration, so identical
configurations (including seeds) produce byte-identical output.

Exit status: 0 all verdicts hold, 1 verdict failure, 2 usage or validation
error, 3 resource budget exceeded.  The SIDONLAB_BUDGET environment
variable overrides the brute-force tuple budget.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from .counting import (
    EquationCoeffs,
    ScaledFunction,
    brute_force_count,
    count_distinct_solutions,
    count_solutions,
)
from .errors import BudgetExceededError, ValidationError
from .sets import (
    IntegerSet,
    almost_sidon_params,
    erdos_turan,
    is_sidon,
    mian_chowla,
    perturb_almost_sidon,
    read_set_file,
    representation_profile,
    write_set_file,
)
from .spectral import Frequency, large_sieve_diagnostic, large_spectrum
from .suites import run_suites
from .transference import bohr_set, dense_model, transference_report

EXIT_OK = 0
EXIT_VERDICT_FAILURE = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _float17(x: float) -> float:
    return float(f"{x:.17g}")


def _frac(x) -> dict:
    f = Fraction(x)
    return {"numerator": f.numerator, "denominator": f.denominator}


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"cannot parse rational {text!r}: {exc}") from exc


def _parse_coeffs(text: str) -> EquationCoeffs:
    try:
        coeffs = tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise ValidationError(f"cannot parse coefficients {text!r}") from exc
    return EquationCoeffs(coeffs)


def _parse_frequency(text: str) -> Frequency:
    f = _parse_fraction(text)
    if not 0 <= f < 1:
        raise ValidationError(f"frequency must lie in [0, 1), got {text}")
    return Frequency(f.numerator, f.denominator)


def _emit_json(doc: dict) -> None:
    print(json.dumps(doc, sort_keys=True))


def _config(args, keys) -> dict:
    out = {}
    for key in keys:
        val = getattr(args, key.replace("-", "_"))
        out[key] = str(val) if isinstance(val, Fraction) else val
    return out


def _set_summary(s: IntegerSet) -> dict:
    params = almost_sidon_params(s)
    return {
        "size": s.size,
        "ambient_n": s.ambient_n,
        "energy": representation_profile(s).energy,
        "eta": _frac(params.eta),
        "delta": _frac(params.delta),
        "is_sidon": is_sidon(s),
    }


def _cmd_construct(args) -> int:
    if args.kind == "erdos-turan":
        if args.p is None:
            raise ValidationError("construct erdos-turan requires --p")
        s = erdos_turan(args.p)
    elif args.kind == "mian-chowla":
        if args.k is None:
            raise ValidationError("construct mian-chowla requires --k")
        s = mian_chowla(args.k)
    else:
        if args.infile is None or args.extra is None:
            raise ValidationError("construct perturb requires --in and --extra")
        s = perturb_almost_sidon(read_set_file(args.infile), args.extra, args.seed)
    doc = {
        "schema": 1,
        "config": _config(args, ["kind", "p", "k", "extra", "seed", "out"]),
        **_set_summary(s),
    }
    if args.out:
        write_set_file(s, args.out)
        _emit_json(doc)
    else:
        write_set_file(s, sys.stdout)
        print(json.dumps(doc, sort_keys=True), file=sys.stderr)
    return EXIT_OK


def _cmd_energy(args) -> int:
    s = read_set_file(args.set)
    doc = {
        "schema": 1,
        "config": _config(args, ["set"]),
        **_set_summary(s),
    }
    _emit_json(doc)
    return EXIT_OK


def _count_functions(args, s: int) -> list[ScaledFunction]:
    if args.interval is not None:
        return [ScaledFunction.from_interval(1, args.interval, args.interval)] * s
    if not args.sets:
        raise ValidationError("count requires --sets or --interval")
    if len(args.sets) not in (1, s):
        raise ValidationError(
            f"give one set file or exactly {s}, got {len(args.sets)}"
        )
    sets = [read_set_file(path) for path in args.sets]
    if len(sets) == 1:
        sets = sets * s
    return [ScaledFunction.from_set(x) for x in sets]


def _cmd_count(args) -> int:
    eq = _parse_coeffs(args.coeffs)
    doc = {
        "schema": 1,
        "config": _config(args, ["coeffs", "sets", "interval", "distinct", "oracle"]),
    }
    if args.distinct:
        if args.interval is not None or (args.sets and len(args.sets) != 1):
            raise ValidationError("--distinct needs exactly one set file")
        s_set = read_set_file(args.sets[0])
        result = count_distinct_solutions(eq, s_set)
        oracle = (
            brute_force_count(
                eq, [ScaledFunction.from_set(s_set)] * eq.s, distinct_only=True
            )
            if args.oracle
            else None
        )
    else:
        fns = _count_functions(args, eq.s)
        result = count_solutions(eq, fns)
        oracle = brute_force_count(eq, fns) if args.oracle else None
    doc["value_numerator"] = result.value.numerator
    doc["value_denominator"] = result.value.denominator
    doc["half_power"] = result.half_power
    if oracle is not None:
        agrees = oracle.value == result.value
        doc["oracle_agrees"] = agrees
        _emit_json(doc)
        return EXIT_OK if agrees else EXIT_VERDICT_FAILURE
    _emit_json(doc)
    return EXIT_OK


def _cmd_spectrum(args) -> int:
    s = read_set_file(args.set)
    eps = _parse_fraction(args.eps)
    spectrum = large_spectrum(s, eps, args.m)
    selected = set(spectrum.separated)
    cfg = _config(args, ["set", "eps", "m"])
    print(f"# schema=1 config={json.dumps(cfg, sort_keys=True)}")
    print(f"# grid_m={spectrum.grid_m} entries={len(spectrum.entries)} "
          f"r_count={spectrum.r_count}")
    print("k\tm\talpha\tmagnitude\tselected")
    for freq, mag in spectrum.entries:
        sel = 1 if freq in selected else 0
        print(f"{freq.k}\t{freq.m}\t{_float17(freq.k / freq.m)}\t"
              f"{_float17(mag)}\t{sel}")
    return EXIT_OK


def _cmd_bohr(args) -> int:
    eps = _parse_fraction(args.eps)
    freqs = [_parse_frequency(t) for t in (args.freq or [])]
    b = bohr_set(freqs, eps, args.n)
    from .transference import bohr_size_bound

    verdict = bohr_size_bound(b.size, eps, len(freqs), args.n)
    doc = {
        "schema": 1,
        "config": _config(args, ["freq", "eps", "n"]),
        "width": b.width,
        "size": b.size,
        "elements": list(b.elements),
        "size_bound": {
            "lhs": int(verdict.lhs),
            "rhs": int(verdict.rhs),
            "holds": verdict.holds,
        },
    }
    _emit_json(doc)
    return EXIT_OK


def _cmd_model(args) -> int:
    s = read_set_file(args.set)
    eps = _parse_fraction(args.eps)
    model = dense_model(s, eps, args.m)
    d = model.diagnostics
    doc = {
        "schema": 1,
        "config": _config(args, ["set", "eps", "m"]),
        "n_padded": model.n_padded,
        "grid_m": model.spectrum.grid_m,
        "bohr_size": model.bohr.size,
        "bohr_width": model.bohr.width,
        "r_count": model.spectrum.r_count,
        "mass": d.mass,
        "mass_identity_holds": d.mass_identity_holds,
        "l2_value": _frac(d.l2_value),
        "fourier_distance": _float17(d.fourier_distance),
        "containment_holds": model.containment_holds,
        "size_bound": {
            "lhs": int(model.size_bound.lhs),
            "rhs": int(model.size_bound.rhs),
            "holds": model.size_bound.holds,
        },
    }
    _emit_json(doc)
    return EXIT_OK if d.mass_identity_holds else EXIT_VERDICT_FAILURE


def _cmd_verify(args) -> int:
    results = run_suites(args.suite, args.seed, args.trials)
    doc = {
        "schema": 1,
        "config": _config(args, ["suite", "seed", "trials"]),
        "suites": [r.summary() for r in results],
        "all_ok": all(r.ok for r in results),
    }
    _emit_json(doc)
    return EXIT_OK if doc["all_ok"] else EXIT_VERDICT_FAILURE


def _verdict_dict(v) -> dict:
    return {
        "name": v.name,
        "lhs": _frac(v.lhs),
        "rhs": _frac(v.rhs),
        "holds": v.holds,
        "applicable": v.applicable,
    }


def _cmd_report(args) -> int:
    s = read_set_file(args.set)
    eq = _parse_coeffs(args.coeffs)
    eps = _parse_fraction(args.eps)
    rep = transference_report(s, eq, eps, args.m, args.fourier_c)
    model = rep.model
    doc = {
        "schema": 1,
        "config": _config(args, ["set", "coeffs", "eps", "m", "fourier_c"]),
        "params": {
            "n_original": rep.n_original,
            "n_padded": rep.n_padded,
            "sqrt_n": rep.sqrt_n,
            "size": rep.size,
            "delta": _frac(rep.delta),
            "eta": _frac(rep.eta),
            "eps": _frac(rep.eps),
            "coeffs": list(eq.coeffs),
        },
        "model": {
            "bohr_size": model.bohr.size,
            "bohr_width": model.bohr.width,
            "r_count": model.spectrum.r_count,
            "selected_frequencies": [
                [f.k, f.m] for f in model.spectrum.separated
            ],
            "mass": model.diagnostics.mass,
            "mass_identity_holds": model.diagnostics.mass_identity_holds,
            "l2_value": _frac(model.diagnostics.l2_value),
            "fourier_distance": _float17(model.diagnostics.fourier_distance),
            "fourier_bound_holds": rep.fourier_bound_holds,
            "containment_holds": model.containment_holds,
            "size_bound": _verdict_dict(model.size_bound),
        },
        "majorant": {
            "mass": _frac(rep.nu_mass),
            "energy": _frac(rep.nu_energy),
            "mass_bound_holds": rep.nu_mass_bound_holds,
            "energy_bound_holds": rep.nu_energy_bound_holds,
        },
        "counts": {
            "model_count": _frac(rep.model_count),
            "set_count_raw": rep.set_count_raw,
            "set_count": _frac(rep.set_count),
            "difference": _frac(rep.difference),
            "counting_comparison": _float17(rep.counting_comparison),
            "c_s": _float17(rep.c_s),
            "eps_n_power": _float17(rep.eps_n_power),
        },
        "verdicts": {
            "repeated_difference": _verdict_dict(rep.repeated_difference),
            "size_bound": _verdict_dict(rep.size_bound),
            "model_l2": {
                "lhs": rep.model_l2.lhs,
                "rhs": rep.model_l2.rhs,
                "holds": rep.model_l2.holds,
                "l2_over_n": _frac(rep.model_l2.l2_over_n),
            },
            "level_set": {
                "size": len(rep.level_set.level_set),
                "hyp_mass_ok": rep.level_set.hyp_mass_ok,
                "hyp_l2_ok": rep.level_set.hyp_l2_ok,
                "lhs": rep.level_set.lhs,
                "rhs": _frac(rep.level_set.rhs),
                "holds": rep.level_set.holds,
            },
        },
        "theorem_verdicts_hold": rep.theorem_verdicts_hold,
    }
    _emit_json(doc)
    return EXIT_OK if rep.theorem_verdicts_hold else EXIT_VERDICT_FAILURE


def _cmd_bench(args) -> int:
    eq = _parse_coeffs(args.coeffs)
    sizes = [int(t) for t in args.sizes.split(",")]
    if any(n <= 0 for n in sizes):
        raise ValidationError("sizes must be positive")
    cfg = _config(args, ["sizes", "coeffs"])
    print(f"# schema=1 config={json.dumps(cfg, sort_keys=True)}")
    print("N\tfast_ms\tbrute_ms\tspeedup")
    for n in sizes:
        fns = [ScaledFunction.from_interval(1, n, n)] * eq.s
        t0 = time.perf_counter()
        fast = count_solutions(eq, fns)
        fast_ms = (time.perf_counter() - t0) * 1e3
        try:
            t0 = time.perf_counter()
            slow = brute_force_count(eq, fns)
            brute_ms = (time.perf_counter() - t0) * 1e3
            if slow.value != fast.value:
                print(f"# MISMATCH at N={n}", file=sys.stderr)
                return EXIT_VERDICT_FAILURE
            speed = brute_ms / fast_ms if fast_ms > 0 else float("inf")
            print(f"{n}\t{fast_ms:.3f}\t{brute_ms:.3f}\t{speed:.2f}")
        except BudgetExceededError:
            print(f"{n}\t{fast_ms:.3f}\tskipped\tskipped")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="sidonlab",
        description="Exact arithmetic for Sidon sets, solution counting, "
        "spectra, and Bohr-set dense models.",
    )
    p.add_argument(
        "--threads", type=int, default=1,
        help="cap internal parallelism (engines are sequential; outputs "
        "never depend on this value)",
    )
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a set and write a set file")
    c.add_argument("kind", choices=["erdos-turan", "mian-chowla", "perturb"])
    c.add_argument("--p", type=int, default=None, help="prime for erdos-turan")
    c.add_argument("--k", type=int, default=None, help="length for mian-chowla")
    c.add_argument("--in", dest="infile", default=None, help="input set file")
    c.add_argument("--extra", type=int, default=None, help="points to add")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--out", default=None, help="output set file (default stdout)")
    c.set_defaults(func=_cmd_construct)

    e = sub.add_parser("energy", help="profile statistics of a set file")
    e.add_argument("--set", required=True)
    e.set_defaults(func=_cmd_energy)

    ct = sub.add_parser("count", help="exact solution count of sum a_i x_i = 0")
    ct.add_argument("--coeffs", required=True, help="e.g. 1,1,1,1,-4")
    ct.add_argument("--sets", nargs="+", default=None,
                    help="one set file, or one per variable")
    ct.add_argument("--interval", type=int, default=None,
                    help="use the full interval [1, N] for every variable")
    ct.add_argument("--distinct", action="store_true",
                    help="count only all-distinct solutions")
    ct.add_argument("--oracle", action="store_true",
                    help="cross-check against brute force, exit 1 on mismatch")
    ct.set_defaults(func=_cmd_count)

    sp = sub.add_parser("spectrum", help="large spectrum as TSV")
    sp.add_argument("--set", required=True)
    sp.add_argument("--eps", required=True, help='threshold, e.g. "1/5"')
    sp.add_argument("--m", type=int, default=None, help="grid size")
    sp.set_defaults(func=_cmd_spectrum)

    bo = sub.add_parser("bohr", help="enumerate a Bohr set")
    bo.add_argument("--freq", action="append", default=None,
                    help='frequency "k/m", repeatable')
    bo.add_argument("--eps", required=True)
    bo.add_argument("--n", type=int, required=True)
    bo.set_defaults(func=_cmd_bohr)

    mo = sub.add_parser("model", help="Bohr-set dense model diagnostics")
    mo.add_argument("--set", required=True)
    mo.add_argument("--eps", required=True)
    mo.add_argument("--m", type=int, default=None)
    mo.set_defaults(func=_cmd_model)

    ve = sub.add_parser("verify", help="run seeded verification suites")
    ve.add_argument("suite", choices=["lemmas", "counting", "model", "all"])
    ve.add_argument("--seed", type=int, default=0)
    ve.add_argument("--trials", type=int, default=50)
    ve.set_defaults(func=_cmd_verify)

    re = sub.add_parser("report", help="full transference report as JSON")
    re.add_argument("--set", required=True)
    re.add_argument("--coeffs", required=True)
    re.add_argument("--eps", required=True)
    re.add_argument("--m", type=int, default=None)
    re.add_argument("--fourier-c", type=int, default=16)
    re.set_defaults(func=_cmd_report)

    be = sub.add_parser("bench", help="time the fast path against brute force")
    be.add_argument("--sizes", required=True, help="e.g. 16,32,64")
    be.add_argument("--coeffs", default="1,1,-2")
    be.set_defaults(func=_cmd_bench)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
