"""Command-line frontend.

Subcommands map one-to-one onto library entry points; every subcommand can
write a canonical JSON report whose shape is pinned by a schema shipped in
parmirror.schemas. Exit codes separate mathematical outcomes from plumbing:
0 means success (and, for identity checks, equality), 1 means the run
finished but an expected identity or check failed, 2 means the invocation
or configuration was unusable. Rationals on the command line are "num/den"
strings; nothing in the input path goes through floating point.
"""

from __future__ import annotations

import argparse
import csv
import sys
from fractions import Fraction
from itertools import permutations

from .chambers import (
    SamplingExhaustedError,
    WeightSystem,
    enumerate_walls,
    is_generic,
    sample_generic_weights,
    small_weight_margin,
    walls_to_jsonable,
)
from .cstar_fixed import (
    PermWord,
    components_to_csv,
    count_S,
    enumerate_components,
    insertion_bijection_check,
    variant_closed_form,
    variant_total_bruteforce,
    variant_total_cyclotomic,
)
from .exactpoly import parse_rat
from .moduli import ModuliParams, hitchin_section_check
from .pgl_fixed import fixed_locus_invariants, prym_epoly, stringy_gamma_sum
from .tms import (
    SweepConfig,
    dumps_canonical,
    load_weights_json,
    params_to_jsonable,
    report_to_jsonable,
    sweep,
    sweep_all_equal,
    sweep_to_csv_rows,
    sweep_to_jsonable,
    verify_identity,
)
from .torsion import (
    NormFiberModel,
    SymplecticForm,
    TorsionVector,
    check_component_action,
    galois_orbit_size,
    invariant_fiber_count,
    kernel_component_count,
)


def _write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _emit(args, payload: dict) -> None:
    if getattr(args, "out", None):
        _write_text(args.out, dumps_canonical(payload))


def _rat(text: str) -> Fraction:
    return parse_rat(text)


def _coords(text: str) -> tuple[int, ...]:
    return tuple(int(tok) for tok in text.split(","))


def _params(args) -> ModuliParams:
    return ModuliParams(n=args.n, g=args.g, k=args.marked, d=args.deg)


def _resolve_weights(args, p: ModuliParams) -> WeightSystem:
    """Exactly one weights source: an explicit file, or the seeded sampler."""
    if args.weights is not None:
        if args.seed is not None or args.scale is not None:
            raise ValueError("--weights conflicts with --seed/--scale; pick one source")
        return load_weights_json(args.weights)
    seed = 1 if args.seed is None else args.seed
    if args.scale is not None:
        scale = args.scale
    elif p.n <= 3:
        scale = Fraction(1)
    else:
        scale = small_weight_margin(p)
    return sample_generic_weights(p, seed=seed, scale=scale)


def _add_params_flags(sub, with_deg=True):
    sub.add_argument("--n", type=int, required=True, help="rank (prime)")
    sub.add_argument("--g", type=int, required=True, help="genus (>= 2)")
    sub.add_argument("--marked", type=int, required=True, help="number of marked points (>= 1)")
    if with_deg:
        sub.add_argument("--deg", type=int, default=0, help="underlying bundle degree")


def _add_weights_flags(sub):
    sub.add_argument("--weights", default=None, help="weights JSON file (conflicts with sampler flags)")
    sub.add_argument("--seed", type=int, default=None, help="sampler seed (default 1)")
    sub.add_argument("--scale", type=_rat, default=None,
                     help='sampler scale as "num/den" (default: 1 for n<=3, certified margin above)')


def _cmd_tms(args) -> int:
    p = _params(args)
    w = _resolve_weights(args, p)
    report = verify_identity(p, w, threads=args.threads)
    _emit(args, report_to_jsonable(report, include_timings=args.timings))
    print(f"n={p.n} g={p.g} k={p.k} d={p.d}: "
          f"components={report.component_count} walls={report.wall_count} "
          f"equal={str(report.equal).lower()}")
    if report.equal:
        print(f"common value: {report.lhs_closed}")
        return 0
    print("identity FAILED: the four totals disagree", file=sys.stderr)
    return 1


def _cmd_sweep(args) -> int:
    config = SweepConfig.default() if args.config is None else SweepConfig.from_file(args.config)
    results = sweep(config, threads=args.threads)
    payload = sweep_to_jsonable(results, include_timings=args.timings)
    _emit(args, payload)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            for row in sweep_to_csv_rows(results, include_timings=args.timings):
                writer.writerow(row)
    summary = payload["summary"]
    print(f"instances={summary['instances']} equal={summary['equal']} "
          f"failed={summary['failed']} all_equal={str(summary['all_equal']).lower()}")
    return 0 if sweep_all_equal(results) and results else 1


def _cmd_variant(args) -> int:
    p = _params(args)
    w = _resolve_weights(args, p)
    components = enumerate_components(p, w, threads=args.threads)
    brute = variant_total_bruteforce(p, w, threads=args.threads, components=components)
    closed = variant_closed_form(p)
    cyclotomic = variant_total_cyclotomic(p, threads=args.threads)
    equal = brute == closed == cyclotomic
    _emit(args, {
        "params": params_to_jsonable(p),
        "weights": w.to_jsonable(),
        "component_count": len(components),
        "bruteforce": brute.to_triples(),
        "closed": closed.to_triples(),
        "cyclotomic": cyclotomic.to_triples(),
        "equal": equal,
    })
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            components_to_csv(components, fh)
    print(f"components={len(components)} equal={str(equal).lower()}")
    print(f"closed form: {closed}")
    return 0 if equal else 1


def _cmd_stringy(args) -> int:
    p = _params(args)
    inv = fixed_locus_invariants(p)
    total = stringy_gamma_sum(p)
    _emit(args, {
        "params": params_to_jsonable(p),
        "fixed_locus_dim": inv.dim,
        "fermionic_shift": inv.fermionic_shift,
        "orbit_count": inv.orbit_count,
        "prym_epoly": prym_epoly(p.n, p.g).to_triples(),
        "invariant_epoly": inv.invariant_epoly.to_triples(),
        "stringy_sum": total.to_triples(),
    })
    print(f"fixed locus dim={inv.dim} shift={inv.fermionic_shift} orbits={inv.orbit_count}")
    print(f"stringy sum: {total}")
    return 0


def _cmd_walls(args) -> int:
    p = _params(args)
    walls = enumerate_walls(p)
    payload = {
        "params": params_to_jsonable(p),
        "walls": walls_to_jsonable(walls),
        "count": len(walls),
    }
    line = f"n={p.n} g={p.g} k={p.k} d={p.d}: {len(walls)} wall(s)"
    if args.weights is not None or args.seed is not None or args.scale is not None:
        w = _resolve_weights(args, p)
        generic = is_generic(w, p)
        payload["weights"] = w.to_jsonable()
        payload["generic"] = generic
        line += f", weights generic={str(generic).lower()}"
    _emit(args, payload)
    print(line)
    return 0


def _cmd_lemma(args) -> int:
    n = args.n
    counts = [count_S(n, residue) for residue in range(n)]
    expected = 1
    for i in range(2, n):
        expected *= i
    uniform = all(c == expected for c in counts)
    if n <= 1:
        prevs = []
    else:
        prevs = [PermWord(word) for word in permutations(range(1, n))]
    ok = all(insertion_bijection_check(prev) for prev in prevs)
    _emit(args, {
        "n": n,
        "residue_counts": counts,
        "expected": expected,
        "uniform": uniform,
        "insertions_checked": len(prevs),
        "insertions_ok": ok,
    })
    print(counts[0])
    print(f"residue counts uniform={str(uniform).lower()} "
          f"insertions checked={len(prevs)} ok={str(ok).lower()}")
    return 0 if uniform and ok else 1


def _cmd_orbits(args) -> int:
    form = SymplecticForm.standard(args.n, args.g)
    if args.gamma is None:
        coords = tuple(1 if i == 0 else 0 for i in range(2 * args.g))
    else:
        coords = args.gamma
    gamma = TorsionVector(n=args.n, coords=coords)
    if gamma.is_zero():
        raise ValueError("gamma must be nonzero")
    model = NormFiberModel(n=args.n, d=args.deg, gamma=gamma, l_gamma=args.l_gamma)
    action_ok = check_component_action(model, form)
    payload = {
        "n": args.n,
        "g": args.g,
        "d": args.deg,
        "gamma": list(gamma.coords),
        "l_gamma": args.l_gamma,
        "orbit_size": galois_orbit_size(args.n, args.deg),
        "invariant_count": invariant_fiber_count(args.n, args.g, args.deg),
        "kernel_components": kernel_component_count(args.n),
        "action_ok": action_ok,
    }
    _emit(args, payload)
    print(f"orbit size={payload['orbit_size']} invariant fibres={payload['invariant_count']} "
          f"kernel components={payload['kernel_components']} action_ok={str(action_ok).lower()}")
    return 0 if action_ok else 1


def _cmd_section(args) -> int:
    p = ModuliParams(n=args.n, g=args.g, k=args.marked, d=0)
    check = hitchin_section_check(p)
    reversed_control = hitchin_section_check(p, reverse_flags=True)
    _emit(args, {
        "n": p.n,
        "g": p.g,
        "k": p.k,
        "check": check,
        "reversed_control": reversed_control,
    })
    print(f"section check={str(check).lower()} reversed control={str(reversed_control).lower()}")
    return 0 if check and not reversed_control else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="parmirror",
        description="Exact mirror-identity checks for parabolic Higgs moduli.",
    )
    parser.add_argument("--threads", type=int, default=1,
                        help="worker thread cap for parallel stages")
    subs = parser.add_subparsers(dest="subcommand", required=True)

    tms = subs.add_parser("tms", help="verify the four-way identity for one instance")
    _add_params_flags(tms)
    _add_weights_flags(tms)
    tms.add_argument("--out", default=None, help="write canonical JSON report here")
    tms.add_argument("--timings", action="store_true", help="include timings in the report")
    tms.set_defaults(func=_cmd_tms)

    sw = subs.add_parser("sweep", help="run the identity over a parameter grid")
    sw.add_argument("--config", default=None, help="INI grid file (default: built-in grid)")
    sw.add_argument("--out", default=None, help="write canonical JSON report here")
    sw.add_argument("--csv", default=None, help="write summary CSV here")
    sw.add_argument("--timings", action="store_true", help="include timings in outputs")
    sw.set_defaults(func=_cmd_sweep)

    var = subs.add_parser("variant", help="variant totals only (census, closed, filtered)")
    _add_params_flags(var)
    _add_weights_flags(var)
    var.add_argument("--out", default=None, help="write canonical JSON report here")
    var.add_argument("--csv", default=None, help="write the component census CSV here")
    var.set_defaults(func=_cmd_variant)

    st = subs.add_parser("stringy", help="quotient-side invariants and total")
    _add_params_flags(st)
    st.add_argument("--out", default=None, help="write canonical JSON report here")
    st.set_defaults(func=_cmd_stringy)

    wa = subs.add_parser("walls", help="enumerate walls; optionally test weight genericity")
    _add_params_flags(wa)
    _add_weights_flags(wa)
    wa.add_argument("--out", default=None, help="write canonical JSON report here")
    wa.set_defaults(func=_cmd_walls)

    le = subs.add_parser("lemma", help="shift-residue census and insertion check")
    le.add_argument("--n", type=int, required=True, help="word length (1..10)")
    le.add_argument("--out", default=None, help="write canonical JSON report here")
    le.set_defaults(func=_cmd_lemma)

    orb = subs.add_parser("orbits", help="torsion-point action on norm-fibre components")
    orb.add_argument("--n", type=int, required=True, help="rank (prime)")
    orb.add_argument("--g", type=int, required=True, help="genus (>= 2)")
    orb.add_argument("--deg", type=int, default=0, help="degree driving the Galois shift")
    orb.add_argument("--gamma", type=_coords, default=None,
                     help="comma-separated 2g coordinates (default: first basis vector)")
    orb.add_argument("--l-gamma", dest="l_gamma", type=int, default=1,
                     help="pairing value against the distinguished partner")
    orb.add_argument("--out", default=None, help="write canonical JSON report here")
    orb.set_defaults(func=_cmd_orbits)

    se = subs.add_parser("section", help="degree bookkeeping for the distinguished section")
    _add_params_flags(se, with_deg=False)
    se.add_argument("--out", default=None, help="write canonical JSON report here")
    se.set_defaults(func=_cmd_section)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, SamplingExhaustedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
