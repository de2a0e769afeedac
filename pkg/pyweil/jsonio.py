"""Readers and writers for the JSON file formats of the command line.

Every number is written as an exact rational string "a/b" (or "a" for integers); floats are rejected. Files that refer
to other files (points naming their algebra, transitions listing their component series) resolve relative paths
against the directory of the referring file.

"""

import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Any, List, Optional, Sequence, Union

from .DiophantineSystem import DiophantineSystem
from .FormalGroupLaw import WeierstrassCurve
from .PadicNumber import PadicNumber, as_padic
from .PowerSeries import PowerSeries
from .WeilAlgebra import WeilAlgebra, WeilElement, make_jet_algebra
from .WeilBundle import ChartTransition, WeilPoint
from .analyticfunctions import MahlerCoefficients
from .scaling import DEFAULT_PRECISION

__all__ = [
    "parse_rational",
    "literal",
    "load_json",
    "dumps",
    "series_from_json",
    "series_to_json",
    "algebra_from_json",
    "element_to_json",
    "point_from_json",
    "point_to_json",
    "curve_from_json",
    "system_from_json",
    "transition_from_json",
    "samples_from_json",
    "mahler_from_json",
    "parse_vector",
    "vector_to_json",
]

PathLike = Union[str, Path]

_RATIONAL = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")


def parse_rational(text: Any) -> Fraction:
    """Parses "a/b", "a" or a JSON integer into a Fraction.

    Raises
    ------
    ValueError
        For floats, malformed strings and zero denominators.

    """
    if isinstance(text, bool):
        raise ValueError(f"{text!r} is not a rational literal.")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str) or not _RATIONAL.match(text):
        raise ValueError(f"{text!r} is not a rational literal of the form a/b.")
    try:
        return Fraction(text.replace(" ", ""))
    except ZeroDivisionError:
        raise ValueError(f"{text!r} has a zero denominator.") from None


def literal(x: Union[PadicNumber, Fraction, int]) -> str:
    """The "a/b" form of a number; p-adic numbers go through rational reconstruction."""
    if isinstance(x, PadicNumber):
        x = x.to_fraction()
    return str(Fraction(x))


def load_json(path: PathLike) -> Any:
    with open(path, encoding="utf-8") as handle:
        return json.load(handle)


def dumps(data: Any) -> str:
    """Deterministic serialization: sorted keys, fixed indentation."""
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False)


def _context(data: dict, p: Optional[int], N: Optional[int]):
    prime = p if p is not None else data.get("prime")
    if prime is None:
        raise KeyError("The prime is missing: give it in the file or with --p.")
    precision = N if N is not None else data.get("precision", DEFAULT_PRECISION)
    return int(prime), int(precision)


def _resolve(reference: Union[dict, list, str], base_dir: Optional[Path]):
    """Inline data is returned as is; a string is read as a path relative to `base_dir`."""
    if isinstance(reference, str):
        path = Path(reference)
        if base_dir is not None and not path.is_absolute():
            path = base_dir / path
        return load_json(path), path.parent
    return reference, base_dir


def series_from_json(data: dict, p: Optional[int] = None, N: Optional[int] = None) -> PowerSeries:
    """Reads { "prime", "precision", "nvars", "trunc_degree", "center", "terms": [{"exponents", "coeff"}],
    "polynomial" }.

    `polynomial` defaults to true, so that a bare list of terms describes a polynomial; `trunc_degree` defaults to the
    largest degree among the terms.
    """
    prime, precision = _context(data, p, N)
    terms = {}
    for term in data.get("terms", []):
        exponents = tuple(int(e) for e in term["exponents"])
        terms[exponents] = terms.get(exponents, 0) + parse_rational(term["coeff"])

    if "nvars" in data:
        nvars = int(data["nvars"])
    elif terms:
        nvars = len(next(iter(terms)))
    else:
        raise KeyError("nvars is required for a series without terms.")

    top = max((sum(m) for m in terms), default=0)
    center = data.get("center")
    if center is not None:
        center = [parse_rational(c) for c in center]
    return PowerSeries(
        prime,
        precision,
        nvars,
        terms,
        int(data.get("trunc_degree", top)),
        center,
        bool(data.get("polynomial", True)),
    )


def series_to_json(f: PowerSeries) -> dict:
    return {
        "prime": f.prime,
        "precision": f.precision,
        "nvars": f.nvars,
        "trunc_degree": f.trunc_degree,
        "polynomial": f.polynomial,
        "center": [literal(c) for c in f.center],
        "terms": [{"exponents": list(m), "coeff": literal(c)} for m, c in sorted(f.terms.items())],
    }


def algebra_from_json(data: dict, p: Optional[int] = None, N: Optional[int] = None) -> WeilAlgebra:
    """Reads { "prime", "precision", "dim", "structure_constants": [{"i", "j", "k", "value"}], "labels" }, with 1-based
    indices and omitted entries zero. { "prime", "precision", "jet_order": k } builds Q_p[eps]/(eps^{k+1}).
    """
    prime, precision = _context(data, p, N)
    if "jet_order" in data:
        return make_jet_algebra(prime, precision, int(data["jet_order"]))
    constants = {}
    for entry in data["structure_constants"]:
        index = (int(entry["i"]), int(entry["j"]), int(entry["k"]))
        constants[index] = parse_rational(entry["value"])
    return WeilAlgebra(prime, precision, int(data["dim"]), constants, data.get("labels"))


def element_to_json(a: WeilElement) -> dict:
    return {"coeffs": [literal(c) for c in a.coeffs], "display": str(a)}


def point_from_json(
    data: Union[dict, str], p: Optional[int] = None, N: Optional[int] = None, base_dir: Optional[Path] = None
) -> WeilPoint:
    """Reads { "algebra": inline algebra or path, "coords": [["a/b", ...], ...] }."""
    data, base_dir = _resolve(data, base_dir)
    algebra_data, _ = _resolve(data["algebra"], base_dir)
    algebra = algebra_from_json(algebra_data, p, N)
    coords = [[parse_rational(x) for x in row] for row in data["coords"]]
    return WeilPoint(algebra, coords)


def point_to_json(xi: WeilPoint) -> dict:
    return {
        "coords": [[literal(x) for x in row] for row in xi.coords],
        "display": [str(row) for row in xi.rows()],
    }


def curve_from_json(data: dict, p: Optional[int] = None, N: Optional[int] = None) -> WeierstrassCurve:
    """Reads { "prime", "precision", "a1", "a2", "a3", "a4", "a6", "allow_singular" }; omitted coefficients are zero."""
    prime, precision = _context(data, p, N)
    coefficients = {name: parse_rational(data.get(name, 0)) for name in ("a1", "a2", "a3", "a4", "a6")}
    return WeierstrassCurve(prime, precision, allow_singular=bool(data.get("allow_singular", False)), **coefficients)


def system_from_json(data: dict, p: Optional[int] = None, N: Optional[int] = None) -> DiophantineSystem:
    """Reads { "prime", "precision", "nvars", "equations": [series JSON] }; equations inherit the outer context."""
    prime, precision = _context(data, p, N)
    equations = []
    for equation in data["equations"]:
        equation = dict(equation)
        equation.setdefault("nvars", data.get("nvars"))
        if equation["nvars"] is None:
            del equation["nvars"]
        equations.append(series_from_json(equation, prime, precision))
    return DiophantineSystem(equations)


def transition_from_json(
    data: Union[list, dict, str], p: Optional[int] = None, N: Optional[int] = None, base_dir: Optional[Path] = None
) -> ChartTransition:
    """Reads a list of component series, each inline or a path, or { "components": [...] }."""
    data, base_dir = _resolve(data, base_dir)
    components = data["components"] if isinstance(data, dict) else data
    series = []
    for component in components:
        component, _ = _resolve(component, base_dir)
        series.append(series_from_json(component, p, N))
    return ChartTransition(series)


def samples_from_json(data: dict, p: Optional[int] = None, N: Optional[int] = None) -> List[PadicNumber]:
    """Reads { "prime", "precision", "samples": [f(0), f(1), ...] }."""
    prime, precision = _context(data, p, N)
    return [as_padic(parse_rational(s), prime, precision) for s in data["samples"]]


def mahler_from_json(data: dict, p: Optional[int] = None, N: Optional[int] = None) -> MahlerCoefficients:
    """Reads { "prime", "precision", "coeffs": [a_0, a_1, ...] }."""
    prime, precision = _context(data, p, N)
    coeffs = tuple(as_padic(parse_rational(c), prime, precision) for c in data["coeffs"])
    return MahlerCoefficients(prime, precision, coeffs)


def parse_vector(text: str) -> List[Fraction]:
    """Parses a comma-separated list of rationals such as "1,0" or "1/2,-3"."""
    return [parse_rational(part) for part in text.split(",")]


def vector_to_json(v: Sequence[PadicNumber]) -> List[str]:
    return [literal(x) for x in v]
