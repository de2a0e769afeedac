"""Command-line front end.

Every subcommand reads JSON files with exact "a/b" literals and writes deterministic JSON (or a short text line for
`padic`). Exit status is 0 on success, 1 when a check or verification fails, and 2 for malformed input.

"""

import argparse
import logging
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .DiophantineSystem import evaluate_system, hensel_iterates, infinitesimal_points, tangent_space
from .FormalGroupLaw import build_formal_group_law, jet_group_add, verify_axioms
from .PadicNumber import arith, as_padic, digit_expansion, norm
from .WeilAlgebra import make_dual_numbers
from .WeilBundle import ChartTransition, WeilPoint, transition_lift
from .analyticfunctions import lift_series, mahler_coefficients, mahler_continuity_check, mahler_eval, series_eval
from .charts import p1_transition, projective_transition
from .jsonio import (
    algebra_from_json,
    curve_from_json,
    dumps,
    element_to_json,
    literal,
    load_json,
    mahler_from_json,
    parse_rational,
    parse_vector,
    point_from_json,
    point_to_json,
    samples_from_json,
    series_from_json,
    series_to_json,
    system_from_json,
    transition_from_json,
    vector_to_json,
)
from .padicfunctions import is_prime
from .scaling import DEFAULT_FGL_DEGREE, DEFAULT_PRECISION, DEFAULT_SAMPLE_COUNT, DEFAULT_SEED
from .scanner import cocycle_scan
from .utils import (
    ConvergenceError,
    NotAnApproximateRootError,
    NotASolutionError,
    NotAWeilAlgebraError,
    SingularJacobianError,
)

__all__ = ["RunConfig", "build_parser", "main"]

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_CHECK_FAILED, EXIT_BAD_INPUT = 0, 1, 2

_BUILTIN_TRANSITION = re.compile(r"^(p1|pn):(\d+)-(\d+)$")

Result = Tuple[Any, int]


@dataclass
class RunConfig:
    """Settings of one invocation, gathered from the command line."""

    command: str
    action: Optional[str] = None
    prime: Optional[int] = None
    precision: Optional[int] = None
    inputs: List[str] = field(default_factory=list)
    out: Optional[str] = None
    params: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.prime is not None and not is_prime(self.prime):
            raise ValueError(f"--p {self.prime} is not a prime.")
        if self.precision is not None and self.precision < 1:
            raise ValueError(f"--N must be at least 1, got {self.precision}.")

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        reserved = {"command", "action", "p", "N", "out", "inputs", "verbose", "handler"}
        params = {k: v for k, v in vars(args).items() if k not in reserved}
        return cls(
            command=args.command,
            action=getattr(args, "action", None),
            prime=args.p,
            precision=args.N,
            inputs=list(getattr(args, "inputs", []) or []),
            out=args.out,
            params=params,
        )

    def require_prime(self) -> int:
        if self.prime is None:
            raise ValueError(f"`{self.command}` needs --p.")
        return self.prime

    @property
    def working_precision(self) -> int:
        return DEFAULT_PRECISION if self.precision is None else self.precision


def _load(path: str) -> Any:
    logger.info("reading %s", path)
    return load_json(path)


def _verdict(flag: bool) -> str:
    return "pass" if flag else "fail"


def cmd_padic(config: RunConfig) -> Result:
    p, N = config.require_prime(), config.working_precision
    values = [as_padic(parse_rational(v), p, N) for v in config.params["values"]]
    op = config.action

    if op in ("add", "sub", "mul", "div"):
        if len(values) != 2:
            raise ValueError(f"`padic {op}` takes two values, got {len(values)}.")
        x = arith(values[0], values[1], op, strict=False)
        return f"{literal(x)} (norm {norm(x)})", EXIT_OK
    if len(values) != 1:
        raise ValueError(f"`padic {op}` takes one value, got {len(values)}.")
    x = values[0]
    if op == "norm":
        return str(norm(x)), EXIT_OK
    if op == "digits":
        return " ".join(str(d) for d in digit_expansion(x)), EXIT_OK
    return f"{x}\n{literal(x)}", EXIT_OK


def cmd_algebra(config: RunConfig) -> Result:
    try:
        algebra = algebra_from_json(_load(config.inputs[0]), config.prime, config.precision)
    except NotAWeilAlgebraError as error:
        payload = {
            "weil_algebra": "fail",
            "error": type(error).__name__,
            "message": str(error),
            "witness": list(error.witness),
        }
        return payload, EXIT_CHECK_FAILED
    payload = {
        "weil_algebra": "pass",
        "dim": algebra.dim,
        "nilpotency_index": algebra.nilpotency_index,
        "labels": list(algebra.labels),
    }
    return payload, EXIT_OK


def cmd_lift(config: RunConfig) -> Result:
    series_path, point_path = config.inputs
    f = series_from_json(_load(series_path), config.prime, config.precision)
    xi = point_from_json(_load(point_path), config.prime, config.precision, Path(point_path).parent)
    value = lift_series(f, xi.rows())
    payload = element_to_json(value)
    if not config.params.get("check_diagram"):
        return payload, EXIT_OK

    direct = series_eval(f, xi.base_point())
    commutes = value.project() == direct
    payload["diagram"] = _verdict(commutes)
    payload["projected"] = literal(value.project())
    payload["evaluated"] = literal(direct)
    return payload, EXIT_OK if commutes else EXIT_CHECK_FAILED


def cmd_mahler(config: RunConfig) -> Result:
    data = _load(config.inputs[0])
    if config.action == "fit":
        samples = samples_from_json(data, config.prime, config.precision)
        a = mahler_coefficients(samples)
        return {"prime": a.prime, "precision": a.precision, "coeffs": vector_to_json(a.coeffs)}, EXIT_OK

    a = mahler_from_json(data, config.prime, config.precision)
    if config.action == "eval":
        x = parse_rational(config.params["x"])
        return {"x": str(x), "value": literal(mahler_eval(a, x))}, EXIT_OK

    report = mahler_continuity_check(a)
    payload = report.to_dict()
    payload["verdict"] = report.passed
    return payload, EXIT_OK if report.passed else EXIT_CHECK_FAILED


def cmd_fgl(config: RunConfig) -> Result:
    data = dict(_load(config.inputs[0]))
    if config.params.get("allow_singular"):
        data["allow_singular"] = True
    curve = curve_from_json(data, config.prime, config.precision)
    G = build_formal_group_law(curve, config.params["degree"])

    if config.action == "build":
        return series_to_json(G.F), EXIT_OK
    if config.action == "verify":
        report = verify_axioms(G)
        return report.to_dict(), EXIT_OK if report.passed else EXIT_CHECK_FAILED

    dual = make_dual_numbers(curve.prime, curve.precision)
    X = dual.element(parse_vector(config.params["x"]))
    Y = dual.element(parse_vector(config.params["y"]))
    return element_to_json(jet_group_add(G, X, Y)), EXIT_OK


def cmd_dioph(config: RunConfig) -> Result:
    S = system_from_json(_load(config.inputs[0]), config.prime, config.precision)

    if config.action == "hensel":
        if not config.params.get("seed"):
            raise ValueError("`dioph hensel` needs --seed.")
        steps = list(hensel_iterates(S, parse_vector(config.params["seed"])))
        root = steps[-1].point
        payload = {
            "root": vector_to_json(root),
            "residues": [str(x.residue(S.precision)) for x in root],
            "modulus": str(S.prime ** S.precision),
            "steps": [step.to_dict() for step in steps],
            "residual": evaluate_system(S, root).to_dict(),
        }
        return payload, EXIT_OK

    if not config.params.get("base"):
        raise ValueError(f"`dioph {config.action}` needs --base.")
    base = parse_vector(config.params["base"])
    if config.action == "tangent":
        return tangent_space(S, base).to_dict(), EXIT_OK

    points = infinitesimal_points(S, base)
    vectors = [parse_vector(v) for v in config.params.get("vector") or []]
    if not vectors:
        vectors = points.solution.kernel_basis
    checks = [points.verify(v) for v in vectors]
    passed = all(check.passed for check in checks)
    payload = {
        "tangent_space": points.solution.to_dict(),
        "checks": [check.to_dict() for check in checks],
        "verifier": _verdict(passed),
    }
    return payload, EXIT_OK if passed else EXIT_CHECK_FAILED


def _builtin_transition(spec: str, xi: WeilPoint) -> ChartTransition:
    match = _BUILTIN_TRANSITION.match(spec)
    kind, i, j = match.group(1), int(match.group(2)), int(match.group(3))
    base = xi.base_point()
    if kind == "p1":
        if xi.n != 1:
            raise ValueError(f"P^1 charts take one coordinate, the point has {xi.n}.")
        return p1_transition(i, j, base[0])
    return projective_transition(i, j, base)


def cmd_chart(config: RunConfig) -> Result:
    if config.action == "cocycle":
        result = cocycle_scan(
            config.require_prime(),
            config.working_precision,
            samples=config.params["samples"],
            seed=config.params["seed"],
            order=config.params["order"],
            processes=config.params.get("processes"),
        )
        return result.to_dict(), EXIT_OK if result.passed else EXIT_CHECK_FAILED

    transition, point_path = config.inputs
    xi = point_from_json(_load(point_path), config.prime, config.precision, Path(point_path).parent)
    if _BUILTIN_TRANSITION.match(transition):
        T = _builtin_transition(transition, xi)
    else:
        T = transition_from_json(transition, config.prime, config.precision)
    return point_to_json(transition_lift(T, xi)), EXIT_OK


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, help="the prime p; overrides the input files")
    common.add_argument("--N", type=int, help="the working precision; overrides the input files")
    common.add_argument("--out", help="write the result to this file instead of stdout")
    common.add_argument("-v", "--verbose", action="count", default=0, help="log progress (-vv for debug output)")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(prog="pyweil", description="p-adic Weil bundles, jets and formal groups.")
    commands = parser.add_subparsers(dest="command", required=True)

    padic = commands.add_parser("padic", parents=[common], help="arithmetic on rational literals in Q_p")
    padic.add_argument("action", choices=["add", "sub", "mul", "div", "norm", "digits", "show"])
    padic.add_argument("values", nargs="+", help='rational literals "a/b"; put negative ones after --')
    padic.set_defaults(handler=cmd_padic)

    algebra = commands.add_parser("algebra", help="Weil algebra validation")
    algebra_actions = algebra.add_subparsers(dest="action", required=True)
    check = algebra_actions.add_parser("check", parents=[common], help="validate structure constants")
    check.add_argument("inputs", nargs=1, metavar="ALGEBRA")
    check.set_defaults(handler=cmd_algebra)

    lift = commands.add_parser("lift", parents=[common], help="evaluate a series at a Weil point")
    lift.add_argument("inputs", nargs=2, metavar=("SERIES", "POINT"))
    lift.add_argument("--check-diagram", action="store_true", help="check that projection commutes with lifting")
    lift.set_defaults(handler=cmd_lift)

    mahler = commands.add_parser("mahler", help="Mahler expansions of functions Z_p -> Q_p")
    mahler_actions = mahler.add_subparsers(dest="action", required=True)
    fit = mahler_actions.add_parser("fit", parents=[common], help="coefficients from samples f(0), ..., f(K)")
    fit.add_argument("inputs", nargs=1, metavar="SAMPLES")
    evaluate = mahler_actions.add_parser("eval", parents=[common], help="evaluate an expansion")
    evaluate.add_argument("inputs", nargs=1, metavar="COEFFS")
    evaluate.add_argument("--x", required=True)
    continuity = mahler_actions.add_parser("check", parents=[common], help="decay of the coefficients")
    continuity.add_argument("inputs", nargs=1, metavar="COEFFS")
    mahler.set_defaults(handler=cmd_mahler)

    fgl = commands.add_parser("fgl", help="formal group laws of elliptic curves")
    fgl_actions = fgl.add_subparsers(dest="action", required=True)
    for name, text in (("build", "expand F"), ("add", "add two dual-number jets"), ("verify", "check the axioms")):
        sub = fgl_actions.add_parser(name, parents=[common], help=text)
        sub.add_argument("inputs", nargs=1, metavar="CURVE")
        sub.add_argument("--degree", type=int, default=DEFAULT_FGL_DEGREE)
        sub.add_argument("--allow-singular", action="store_true")
        if name == "add":
            sub.add_argument("--x", required=True, help='the jet z0 + z1 eps as "z0,z1"')
            sub.add_argument("--y", required=True, help='the jet w0 + w1 eps as "w0,w1"')
    fgl.set_defaults(handler=cmd_fgl)

    dioph = commands.add_parser("dioph", help="infinitesimal solutions of polynomial systems")
    dioph_actions = dioph.add_subparsers(dest="action", required=True)
    tangent = dioph_actions.add_parser("tangent", parents=[common], help="tangent space at a solution")
    tangent.add_argument("inputs", nargs=1, metavar="SYSTEM")
    tangent.add_argument("--base", required=True)
    hensel = dioph_actions.add_parser("hensel", parents=[common], help="lift a root mod p")
    hensel.add_argument("inputs", nargs=1, metavar="SYSTEM")
    hensel.add_argument("--seed", required=True)
    points = dioph_actions.add_parser("points", parents=[common], help="verify dual-number solutions")
    points.add_argument("inputs", nargs=1, metavar="SYSTEM")
    points.add_argument("--base", required=True)
    points.add_argument("--vector", action="append", help="a tangent vector to test; repeatable")
    dioph.set_defaults(handler=cmd_dioph)

    chart = commands.add_parser("chart", help="chart transitions of Weil bundles")
    chart_actions = chart.add_subparsers(dest="action", required=True)
    transit = chart_actions.add_parser("transit", parents=[common], help="carry a Weil point through a transition")
    transit.add_argument("inputs", nargs=2, metavar=("TRANSITION", "POINT"), help='a file, or "p1:I-J" / "pn:I-J"')
    cocycle = chart_actions.add_parser("cocycle", parents=[common], help="triple-overlap check on the P^1 charts")
    cocycle.add_argument("--samples", type=int, default=DEFAULT_SAMPLE_COUNT)
    cocycle.add_argument("--seed", type=int, default=DEFAULT_SEED)
    cocycle.add_argument("--order", type=int, default=1, help="jet order of the algebra")
    cocycle.add_argument("--processes", type=int)
    chart.set_defaults(handler=cmd_chart)

    return parser


def _emit(payload: Any, out: Optional[str]):
    text = payload if isinstance(payload, str) else dumps(payload)
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.verbose:
        logging.basicConfig(level=logging.DEBUG if args.verbose > 1 else logging.INFO)

    try:
        config = RunConfig.from_args(args)
        payload, status = args.handler(config)
    except ConvergenceError as error:
        payload = {"error": "ConvergenceError", "message": str(error)}
        if error.certificate is not None:
            payload["certificate"] = error.certificate.to_dict()
        status = EXIT_CHECK_FAILED
    except NotAWeilAlgebraError as error:
        payload = {"error": type(error).__name__, "message": str(error), "witness": list(error.witness)}
        status = EXIT_CHECK_FAILED
    except (NotASolutionError, NotAnApproximateRootError, SingularJacobianError) as error:
        payload = {"error": type(error).__name__, "message": str(error)}
        status = EXIT_CHECK_FAILED
    except (ValueError, KeyError, TypeError, IndexError, OSError, ArithmeticError) as error:
        print(f"pyweil: error: {error}", file=sys.stderr)
        return EXIT_BAD_INPUT

    _emit(payload, config.out)
    return status
