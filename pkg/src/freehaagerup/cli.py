"""
Command-line front end. Every subcommand prints one JSON document (or CSV
with ``--csv`` where a table makes sense) and exits with 0 on success or
pass, 1 on an inequality failure or oracle mismatch, 2 on usage or
size-guard errors.
"""

import argparse
import csv
import io
import json
import os
import random
import sys

from .cumulants import (
    CumulantSpec,
    FreeFamily,
    cumulant_from_moments,
    moment,
    parse_word,
    word_from_json,
)
from .errors import (
    GramSingularError,
    InconsistencyError,
    PreconditionError,
    SizeGuardError,
    TruncationError,
    UndecidedError,
)
from .freegroup import GroupFunction, haagerup_check, haar_oracle_check, words_of_length
from .haagerup import (
    ArrayPolynomial,
    HomPolynomial,
    NormLimits,
    abc_estimates,
    array_family,
    character_norm_check,
    chebyshev_u,
    random_hom_polynomial,
    shi_certify,
)
from .partitions import (
    ALL,
    EPS,
    EVEN,
    NC_EPS,
    NC_EVEN,
    NC_PAIRING,
    NONCROSSING,
    PAIRING,
    Partition,
    enumerate_partitions,
    moebius_nc,
)
from .scalars import format_rational, scalar_to_json
from .weingarten import gram, haar_moment, weingarten

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

CLASSES = {
    "all": lambda eps: ALL,
    "nc": lambda eps: NONCROSSING,
    "pairing": lambda eps: PAIRING,
    "nc-pairing": lambda eps: NC_PAIRING,
    "even": lambda eps: EVEN,
    "nc-even": lambda eps: NC_EVEN,
    "eps": EPS,
    "nc-eps": NC_EPS,
}


class UsageError(Exception):
    pass


def _payload(text):
    """Inline JSON, or the path of a file holding JSON."""
    if text is None:
        return None
    if os.path.isfile(text):
        with open(text) as fh:
            return json.load(fh)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"not valid JSON and not a file: {text!r} ({exc})")


def _ints(text):
    return tuple(int(v) for v in text.replace(" ", "").split(",") if v)


def _word(text):
    data = _payload(text) if text.lstrip().startswith("[") else None
    return word_from_json(data) if data is not None else parse_word(text)


def _family(args, labels=()):
    if getattr(args, "family", None):
        data = _payload(args.family)
        return FreeFamily({lab: CumulantSpec.from_json(s) for lab, s in data.items()})
    spec = CumulantSpec.from_json(args.spec)
    labels = sorted(set(labels), key=repr) or ["x"]
    return FreeFamily.iid(labels, spec)


def _emit(obj):
    print(json.dumps(obj))


def _emit_csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    sys.stdout.write(buf.getvalue())


def _cap(value, args):
    return 10 ** 9 if args.unsafe_large else value


def cmd_partitions(args):
    if args.cls in ("eps", "nc-eps") and not args.eps:
        raise UsageError("--eps is required for eps classes")
    cls = CLASSES[args.cls](args.eps)
    parts = enumerate_partitions(args.k, cls, cap=_cap(args.cap, args))
    if args.count:
        _emit({"count": len(parts)})
    elif args.csv:
        _emit_csv(["index", "blocks"], [[n, json.dumps(p.to_json())] for n, p in enumerate(parts)])
    else:
        _emit({"count": len(parts), "partitions": [p.to_json() for p in parts]})
    return EXIT_OK


def cmd_moebius(args):
    if args.s is None and args.p is None:
        if args.k is None:
            raise UsageError("give --k, or --s and --p")
        s, p = Partition.zero(args.k), Partition.one(args.k)
    else:
        s = Partition.from_json(_payload(args.s))
        p = Partition.from_json(_payload(args.p))
    _emit({"s": s.to_json(), "p": p.to_json(), "mu": moebius_nc(s, p)})
    return EXIT_OK


def cmd_moments(args):
    w = _word(args.word)
    fam = _family(args, [x.label for x in w])
    value = moment(fam, w, cap=_cap(args.cap, args), method=args.method)
    _emit({"moment": scalar_to_json(value)})
    return EXIT_OK


def cmd_cumulants(args):
    w = _word(args.word)
    fam = _family(args, [x.label for x in w])
    cap = _cap(args.cap, args)
    value = cumulant_from_moments(lambda sub: moment(fam, sub, cap=cap), w, cap=cap)
    _emit({"cumulant": scalar_to_json(value)})
    return EXIT_OK


def cmd_weingarten(args):
    cap = _cap(args.cap, args)
    mat = gram(args.n, args.k, cap) if args.gram else weingarten(args.n, args.k, cap)
    data = mat.to_json()
    if args.csv:
        key = "G" if args.gram else "W"
        _emit_csv(["basis"] + [json.dumps(b) for b in data["basis"]],
                  [[json.dumps(b)] + row for b, row in zip(data["basis"], data[key])])
    else:
        _emit(data)
    return EXIT_OK


def cmd_haar_moment(args):
    value = haar_moment(args.n, _ints(args.i), _ints(args.j), cap=_cap(args.cap, args))
    _emit({"value": format_rational(value)})
    return EXIT_OK


def _limits(args):
    return NormLimits(unsafe=args.unsafe_large)


def _polynomial(args, array):
    if args.random:
        rng = random.Random(args.seed)
        if array:
            n = args.n or 2
            pairs = [(r, s) for r in range(1, n + 1) for s in range(1, n + 1)]
            H = random_hom_polynomial(rng, pairs, args.d, args.support, args.complex)
            coeffs = {(tuple(r for r, _ in key), tuple(s for _, s in key)): a for key, a in H.coeffs.items()}
            return ArrayPolynomial(args.d, n, coeffs)
        labels = [f"x{r}" for r in range(1, args.labels + 1)]
        return random_hom_polynomial(rng, labels, args.d, args.support, args.complex)
    if args.poly is None:
        raise UsageError("give --poly or --random")
    data = _payload(args.poly)
    return ArrayPolynomial.from_json(data) if array else HomPolynomial.from_json(data)


def _poly_family(args, T):
    if isinstance(T, ArrayPolynomial):
        return array_family(T.n, CumulantSpec.from_json(args.spec))
    return _family(args, T.labels)


def cmd_shi_certify(args):
    array = args.mode == "array"
    T = _polynomial(args, array)
    fam = _poly_family(args, T)
    try:
        cert = shi_certify(T, fam, args.m, mode=args.mode, limits=_limits(args))
    except UndecidedError as exc:
        _emit(exc.report.to_json())
        return EXIT_FAIL
    _emit(cert.to_json())
    return EXIT_OK if cert.verdict == "pass" else EXIT_FAIL


def cmd_abc(args):
    array = args.mode == "array"
    T = _polynomial(args, array)
    fam = _poly_family(args, T)
    report = abc_estimates(args.d, args.m, T, fam, limits=_limits(args))
    _emit(report.to_json())
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_chebyshev(args):
    p = chebyshev_u(args.d)
    if args.csv:
        _emit_csv(["power", "coeff"], list(enumerate(p.coeffs)))
    else:
        _emit({"d": args.d, "coeffs": p.to_json(), "value_at_2": p(2)})
    return EXIT_OK


def cmd_character_check(args):
    report = character_norm_check(args.d, args.m_max, cap=_cap(args.cap, args))
    if args.csv:
        rows = [[m, v, c, b] for m, (v, c, b) in
                enumerate(zip(report["values"], report["fuss_catalan"], report["bound_pow"]), 1)]
        _emit_csv(["m", "norm_pow", "fuss_catalan", "bound_pow"], rows)
    else:
        _emit(report)
    return EXIT_OK if report["passed"] else EXIT_FAIL


def cmd_freegroup_check(args):
    if args.random:
        rng = random.Random(args.seed)
        pool = words_of_length(args.d, args.gens, args.semigroup)
        words = rng.sample(pool, min(args.support, len(pool)))
        f = GroupFunction({w: rng.choice([-3, -2, -1, 1, 2, 3]) for w in words})
    elif args.f is not None:
        f = GroupFunction.from_json(_payload(args.f))
    else:
        raise UsageError("give --f or --random")
    report = haagerup_check(f, args.d, args.m, args.semigroup)
    _emit(report.to_json())
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_oracle_check(args):
    report = haar_oracle_check(args.cap, limit=_cap(8, args))
    out = {"checked": report["checked"], "mismatches": report["mismatches"]}
    if report["first_mismatch"] is not None:
        out["first_mismatch"] = report["first_mismatch"]
    _emit(out)
    return EXIT_OK if report["mismatches"] == 0 else EXIT_FAIL


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--csv", action="store_true", help="CSV output for tables and matrices")
    common.add_argument("--seed", type=int, default=0, help="seed for --random inputs")
    common.add_argument("--unsafe-large", action="store_true", help="lift all size caps")

    parser = argparse.ArgumentParser(prog="freehaagerup", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("partitions", parents=[common], help="enumerate a partition class")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--class", dest="cls", choices=sorted(CLASSES), default="nc")
    p.add_argument("--eps", help="pattern over {1,*} for eps classes")
    p.add_argument("--count", action="store_true")
    p.add_argument("--cap", type=int, default=14)
    p.set_defaults(func=cmd_partitions)

    p = sub.add_parser("moebius", parents=[common], help="Moebius function of NC(k)")
    p.add_argument("--k", type=int)
    p.add_argument("--s", help="lower partition as JSON")
    p.add_argument("--p", help="upper partition as JSON")
    p.set_defaults(func=cmd_moebius)

    for name, func, helptext in (("moments", cmd_moments, "moment of a *-word"),
                                 ("cumulants", cmd_cumulants, "free cumulant of a *-word by Moebius inversion")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--word", required=True, help='e.g. "c c* c c*" or a JSON letter list')
        p.add_argument("--spec", default="circular", help="distribution shared by every label")
        p.add_argument("--family", help='JSON map label -> spec, e.g. {"z1": "haar"}')
        p.add_argument("--cap", type=int, default=12)
        if name == "moments":
            p.add_argument("--method", choices=("recursive", "partitions"), default="recursive")
        p.set_defaults(func=func)

    p = sub.add_parser("weingarten", parents=[common], help="Weingarten matrix of H_n^+")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--gram", action="store_true", help="dump the Gram matrix instead")
    p.add_argument("--cap", type=int, default=10)
    p.set_defaults(func=cmd_weingarten)

    p = sub.add_parser("haar-moment", parents=[common], help="Haar state of u_{i1 j1} ... u_{ik jk}")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--i", required=True, help="comma separated row indices")
    p.add_argument("--j", required=True, help="comma separated column indices")
    p.add_argument("--cap", type=int, default=10)
    p.set_defaults(func=cmd_haar_moment)

    for name, func, helptext in (("shi-certify", cmd_shi_certify, "certify the strong Haagerup inequality"),
                                 ("abc", cmd_abc, "(A)/(B)/(C) estimates")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--poly", help="polynomial as JSON (inline or file)")
        p.add_argument("--random", action="store_true", help="draw a random polynomial")
        p.add_argument("--d", type=int, default=2)
        p.add_argument("--m", type=int, default=2)
        p.add_argument("--support", type=int, default=3)
        p.add_argument("--labels", type=int, default=2, help="alphabet size for --random")
        p.add_argument("--n", type=int, help="array dimension for --random in array mode")
        p.add_argument("--complex", action="store_true", help="complex random coefficients")
        p.add_argument("--mode", choices=("tuple", "array"), default="tuple")
        p.add_argument("--spec", default="circular")
        p.add_argument("--family", help="JSON map label -> spec")
        p.set_defaults(func=func)

    p = sub.add_parser("chebyshev", parents=[common], help="Chebyshev-II polynomial T_d")
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_chebyshev)

    p = sub.add_parser("character-check", parents=[common], help="norm ladder of c^d for circular c")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--m-max", type=int, default=2)
    p.add_argument("--cap", type=int, default=12)
    p.set_defaults(func=cmd_character_check)

    p = sub.add_parser("freegroup-check", parents=[common], help="Haagerup inequalities on F_n")
    p.add_argument("--f", help="group function as JSON list of {word, coeff}")
    p.add_argument("--random", action="store_true")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--gens", type=int, default=2)
    p.add_argument("--support", type=int, default=4)
    p.add_argument("--semigroup", action="store_true")
    p.set_defaults(func=cmd_freegroup_check)

    p = sub.add_parser("oracle-check", parents=[common], help="Haar unitary moments vs free-group reduction")
    p.add_argument("--cap", type=int, default=8)
    p.set_defaults(func=cmd_oracle_check)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SizeGuardError as exc:
        print(f"error: {exc}; pass --unsafe-large to lift the cap", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, PreconditionError, TruncationError,
            GramSingularError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InconsistencyError as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
