"""Command line front end: ``wallcross <subcommand> ...``.

Exit codes: 0 success, 1 failed check, 2 malformed input.
"""
from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence

from .decomposition import all_dec_sets, dec_sets
from .engine import (
    GammaSeries,
    binomial_question_experiment,
    gamma_consistency,
    group_by_k,
    one_arrow_recursion,
    proper_subset_vanishing,
    s_partition_vanishing,
    wall_cross_terms,
)
from .errors import InputError, MissingGammaError, ParameterSearchError
from .localization import (
    ab_integrate,
    adjoint_experiment,
    integrand_from_text,
    model_from_text,
)
from .quiver.builders import builtin_from_spec
from .quiver.structures import DimVector, FramedQuiver, validate
from .quiver.walls import StabilityParam, Wall, WallCrossingContext, classify_parameter, enumerate_walls
from .stability import (
    EnhancedDim,
    ParameterTriple,
    certify,
    context_from_parameters,
    default_zeta_bar,
    find_parameters,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT = 2

BUILTIN_PREFIX = "builtin:"


# ====== argument helpers ======

def load_quiver(text: str) -> FramedQuiver:
    """A JSON path or ``builtin:<spec>``."""
    if text.startswith(BUILTIN_PREFIX):
        return builtin_from_spec(text[len(BUILTIN_PREFIX):])
    try:
        return FramedQuiver.load(text)
    except OSError as exc:
        raise InputError(f"Cannot read quiver file {text}: {exc}") from None


def _ints(text: str) -> List[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise InputError(f"Expected comma separated integers, got {text!r}") from None


def _dims(text: str, quiver: FramedQuiver) -> DimVector:
    return DimVector.parse(text, quiver.internal_vertices)


def load_gamma(text: str, quiver: Optional[FramedQuiver] = None, zero: Optional[str] = None, max_d: int = 1) -> GammaSeries:
    """``handsaw``, ``symbolic``, ``table:FILE`` or ``localization``."""
    if text == "handsaw":
        return GammaSeries.handsaw()
    if text == "symbolic":
        return GammaSeries.symbolic()
    if text.startswith("table:"):
        return GammaSeries.from_table(text[len("table:"):])
    if text == "localization":
        if quiver is None or zero is None:
            raise InputError("gamma 'localization' needs a quiver and a zero vertex")
        return GammaSeries.localization(quiver, zero, max(max_d, 1))
    raise InputError(f"Unknown gamma series {text!r}; use handsaw, symbolic, table:FILE or localization")


def _flag(args: argparse.Namespace, alpha: DimVector, zero: str) -> EnhancedDim:
    if args.index_set is not None:
        length = args.length if args.length is not None else max(_ints(args.index_set), default=0)
        return EnhancedDim.from_index_set(alpha, zero, length, _ints(args.index_set))
    return EnhancedDim.full(alpha, zero)


def _zero(args: argparse.Namespace, quiver: FramedQuiver, beta: DimVector) -> str:
    if args.zero is not None:
        return args.zero
    for v in quiver.internal_vertices:
        if beta[v] != 0:
            return v
    raise InputError(f"beta {beta} has no nonzero entry")


# ====== subcommands ======

def cmd_validate(args: argparse.Namespace) -> int:
    problems = validate(load_quiver(args.quiver))
    for problem in problems:
        print(problem)
    if problems:
        return EXIT_CHECK_FAILED
    print("ok")
    return EXIT_OK


def cmd_walls(args: argparse.Namespace) -> int:
    quiver = load_quiver(args.quiver)
    alpha = _dims(args.alpha, quiver)
    for wall in enumerate_walls(alpha):
        print(wall.beta.to_text())
    if args.zeta is not None:
        result = classify_parameter(StabilityParam.parse(args.zeta, alpha), alpha)
        walls = " ".join(w.beta.to_text() for w in result.walls)
        print(f"# {result.kind} {walls}".rstrip())
    return EXIT_OK


def cmd_params_find(args: argparse.Namespace) -> int:
    quiver = load_quiver(args.quiver)
    alpha = _dims(args.alpha, quiver)
    wall = Wall(_dims(args.wall, quiver))
    zero = _zero(args, quiver, wall.beta)
    flag = _flag(args, alpha, zero)
    zeta_bar = StabilityParam.parse(args.zeta_bar, alpha) if args.zeta_bar else None
    triple = find_parameters(wall, args.ell, flag, zeta_bar, args.max_denominator)
    ctx = context_from_parameters(quiver, flag, wall, triple)
    print(triple.to_text())
    print("theta+ " + ",".join(f"{v}={t}" for v, t in ctx.theta_plus))
    print("theta- " + ",".join(f"{v}={t}" for v, t in ctx.theta_minus))
    print(f"D {ctx.D}")
    return EXIT_OK


def cmd_params_check(args: argparse.Namespace) -> int:
    quiver = load_quiver(args.quiver)
    alpha = _dims(args.alpha, quiver)
    wall = Wall(_dims(args.wall, quiver))
    zero = _zero(args, quiver, wall.beta)
    flag = _flag(args, alpha, zero)
    zeta_bar = StabilityParam.parse(args.zeta_bar, alpha) if args.zeta_bar else default_zeta_bar(wall, alpha)
    try:
        eta = tuple(Fraction(p) for p in args.eta.split(",") if p.strip())
    except (ValueError, ZeroDivisionError):
        raise InputError(f"Cannot parse eta {args.eta!r}") from None
    triple = ParameterTriple(
        StabilityParam.parse(args.zeta_plus, alpha), StabilityParam.parse(args.zeta_minus, alpha), eta
    )
    report = certify(triple, wall, args.ell, flag, zeta_bar)
    for name in ("cond_a_plus", "cond_a_minus", "cond_b", "two_stability", "cond_c"):
        print(f"{name}\t{'ok' if getattr(report, name) else 'FAIL'}")
    return EXIT_OK if report.ok else EXIT_CHECK_FAILED


def cmd_dec_enum(args: argparse.Namespace) -> int:
    data = dec_sets(args.alpha0, args.beta0, args.j) if args.j is not None else all_dec_sets(args.alpha0, args.beta0)
    for datum in data:
        print(f"{datum.to_text()}\t{datum.k}")
    print(f"# {len(data)} data")
    return EXIT_OK


def cmd_wc_coeffs(args: argparse.Namespace) -> int:
    quiver = load_quiver(args.quiver)
    alpha = _dims(args.alpha, quiver)
    wall = Wall(_dims(args.beta, quiver))
    ctx = WallCrossingContext.build(quiver, alpha, wall, args.zero)
    gamma = load_gamma(args.gamma, quiver, ctx.zero, ctx.alpha0 // ctx.beta0)
    terms = wall_cross_terms(ctx, gamma, symbolic_bbar=args.symbolic_bbar)
    for term in terms:
        print(term.to_text())
    print("# k\tcoefficient")
    for k, value in group_by_k(terms).items():
        print(f"# {k}\t{value.to_text()}")
    return EXIT_OK


def cmd_gamma_check(args: argparse.Namespace) -> int:
    gamma = load_gamma(args.gamma)
    failed = False
    for d in range(1, args.d + 1):
        value = gamma_consistency(gamma, d, args.beta0)
        print(f"{d}\t{value.to_text()}")
        failed = failed or not value.is_zero()
    return EXIT_CHECK_FAILED if failed else EXIT_OK


def cmd_identity_check(args: argparse.Namespace) -> int:
    if args.identity == "s-vanishing":
        value = s_partition_vanishing(_ints(args.d), args.n, args.beta0)
        print(value)
        return EXIT_OK if value == 0 else EXIT_CHECK_FAILED
    if args.identity == "proper-subset":
        d = _ints(args.d)
        if len(d) != 1:
            raise InputError(f"proper-subset needs a single d, got {args.d!r}")
        result = proper_subset_vanishing(d[0], args.beta0, load_gamma(args.gamma))
        print(result.to_text())
        return EXIT_OK if result.is_zero() else EXIT_CHECK_FAILED
    report = binomial_question_experiment(
        args.alpha0, args.beta0, args.i, load_gamma(args.gamma),
        args.bbar,
    )
    print(f"lhs\t{report.lhs.to_text()}")
    print(f"rhs\t{report.rhs.to_text()}")
    print(f"equal\t{str(report.equal).lower()}")
    return EXIT_OK


def cmd_localize(args: argparse.Namespace) -> int:
    model = model_from_text(args.model)
    print(ab_integrate(model, integrand_from_text(args.integrand), twisted=not args.no_twist).to_text())
    return EXIT_OK


def cmd_experiment(args: argparse.Namespace) -> int:
    if args.experiment == "adjoint":
        report = adjoint_experiment(args.r, args.alpha0)
        for k, value in report.grouped:
            print(f"# {k}\t{value.to_text()}")
        print(f"lhs\t{report.lhs.to_text()}")
        print(f"rhs\t{report.rhs.to_text()}")
        print(f"equal\t{str(report.equal).lower()}")
        return EXIT_OK if report.equal else EXIT_CHECK_FAILED
    values = one_arrow_recursion(args.alpha0, args.beta0, load_gamma(args.gamma))
    for k, value in enumerate(values):
        print(f"{k}\t{value.to_text()}")
    return EXIT_OK


# ====== parser ======

def _quiver_arguments(p: argparse.ArgumentParser) -> None:
    p.add_argument("quiver", help="quiver JSON file or builtin:<spec>")
    p.add_argument("--alpha", required=True, help="dimension vector, v=n,... or positional")


def _flag_arguments(p: argparse.ArgumentParser) -> None:
    p.add_argument("--wall", required=True, help="primitive beta")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--zero", help="vertex 0 (default: first vertex with beta != 0)")
    p.add_argument("--zeta-bar", help="point on the wall (default: computed)")
    p.add_argument("--index-set", help="kI as a comma separated list (default: [alpha_0])")
    p.add_argument("--length", type=int, help="chain length L (default: max of the index set)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wallcross", description="Wall-crossing coefficients for framed quivers")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a quiver file")
    p.add_argument("quiver")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("walls", help="list walls for a dimension vector")
    _quiver_arguments(p)
    p.add_argument("--zeta", help="classify this stability parameter")
    p.set_defaults(func=cmd_walls)

    p = sub.add_parser("params-find", help="construct certified (zeta+, zeta-, eta)")
    _quiver_arguments(p)
    _flag_arguments(p)
    p.add_argument("--max-denominator", type=int, help="denominator cap (default: $WC_MAX_DENOM)")
    p.set_defaults(func=cmd_params_find)

    p = sub.add_parser("params-check", help="run the four parameter predicates")
    _quiver_arguments(p)
    _flag_arguments(p)
    p.add_argument("--zeta-plus", required=True)
    p.add_argument("--zeta-minus", required=True)
    p.add_argument("--eta", required=True, help="comma separated rationals")
    p.set_defaults(func=cmd_params_check)

    p = sub.add_parser("dec-enum", help="enumerate decomposition data")
    p.add_argument("--alpha0", type=int, required=True)
    p.add_argument("--beta0", type=int, default=1)
    p.add_argument("--j", type=int)
    p.set_defaults(func=cmd_dec_enum)

    p = sub.add_parser("wc-coeffs", help="wall-crossing coefficients")
    _quiver_arguments(p)
    p.add_argument("--beta", required=True)
    p.add_argument("--gamma", default="symbolic", help="handsaw, symbolic, table:FILE or localization")
    p.add_argument("--zero")
    p.add_argument("--symbolic-bbar", action="store_true", help="keep beta_bar_infinity as the variable bbar")
    p.set_defaults(func=cmd_wc_coeffs)

    p = sub.add_parser("gamma-check", help="one-arrow consistency of a gamma series")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--beta0", type=int, default=1)
    p.add_argument("--gamma", default="handsaw")
    p.set_defaults(func=cmd_gamma_check)

    p = sub.add_parser("identity-check", help="combinatorial identities and experiments")
    p.add_argument("identity", choices=["s-vanishing", "proper-subset", "binomial-question"])
    p.add_argument("--d", help="part sizes d_1,...,d_j (s-vanishing) or d (proper-subset)")
    p.add_argument("--n", type=int)
    p.add_argument("--beta0", type=int, default=1)
    p.add_argument("--gamma", default="handsaw")
    p.add_argument("--alpha0", type=int)
    p.add_argument("--i", type=int)
    p.add_argument("--bbar", type=int, help="integer beta_bar_infinity (default: symbolic)")
    p.set_defaults(func=cmd_identity_check)

    p = sub.add_parser("localize", help="fixed-point integration")
    p.add_argument("--model", required=True, help="point, grassmannian:K,N or flag:N:D1,D2,...")
    p.add_argument("--integrand", required=True, help="bundle expression such as T+V-Q*")
    p.add_argument("--no-twist", action="store_true", help="untwisted Euler class")
    p.set_defaults(func=cmd_localize)

    p = sub.add_parser("experiment", help="independent cross-checks")
    p.add_argument("experiment", choices=["adjoint", "one-arrow"])
    p.add_argument("--r", type=int)
    p.add_argument("--alpha0", type=int, required=True)
    p.add_argument("--beta0", type=int, default=1)
    p.add_argument("--gamma", default="handsaw")
    p.set_defaults(func=cmd_experiment)

    return parser


_REQUIRED: Dict[str, Sequence[str]] = {
    "s-vanishing": ("d", "n"),
    "proper-subset": ("d",),
    "binomial-question": ("alpha0", "i"),
    "adjoint": ("r",),
}


def _check_required(args: argparse.Namespace) -> None:
    key = getattr(args, "identity", None) or getattr(args, "experiment", None)
    missing = [name for name in _REQUIRED.get(key, ()) if getattr(args, name) is None]
    if missing:
        raise InputError(f"{key} needs {', '.join('--' + m for m in missing)}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    func: Callable[[argparse.Namespace], int] = args.func
    try:
        _check_required(args)
        return func(args)
    except ParameterSearchError as exc:
        print(f"search failed: {exc} (predicate {exc.predicate})")
        return EXIT_CHECK_FAILED
    except (InputError, MissingGammaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NotImplementedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
