"""Randomized scans over Weil points, optionally spread over a process pool."""

import logging
from dataclasses import dataclass, field
from math import inf
from multiprocessing import Pool
from typing import List, Optional

import numpy as np

from .WeilAlgebra import WeilAlgebra, make_jet_algebra
from .WeilBundle import WeilPoint
from .charts import cocycle_discrepancy
from .scaling import (
    DEFAULT_CHART_DEGREE,
    DEFAULT_COCYCLE_LOSS,
    DEFAULT_PRECISION,
    DEFAULT_SAMPLE_COUNT,
    DEFAULT_SEED,
)

__all__ = ["CocycleScanResult", "random_digits", "random_unit_point", "cocycle_scan"]

logger = logging.getLogger(__name__)


@dataclass
class CocycleScanResult:
    passed: bool
    threshold: int
    min_valuation: float
    samples: int
    valuations: List[float] = field(default_factory=list)

    def to_dict(self) -> dict:
        literal = lambda v: "inf" if v == inf else int(v)
        return {
            "cocycle": "pass" if self.passed else "fail",
            "threshold": self.threshold,
            "min_discrepancy_valuation": literal(self.min_valuation),
            "samples": self.samples,
        }


def random_digits(rng: np.random.Generator, p: int, N: int) -> int:
    """A uniformly random residue mod p^N, assembled digit by digit so that p^N may exceed the int64 range."""
    digits = rng.integers(0, p, size=N)
    return sum(int(d) * p ** k for k, d in enumerate(digits))


def random_unit_point(rng: np.random.Generator, algebra: WeilAlgebra) -> WeilPoint:
    """A one-dimensional Weil point whose base coordinate is a unit avoiding -1 mod p.

    Such points lie in all three P^1 charts.
    """
    p, N = algebra.prime, algebra.precision
    while True:
        base = random_digits(rng, p, N)
        if base % p not in (0, p - 1):
            break
    higher = [random_digits(rng, p, N) for _ in range(algebra.dim - 1)]
    return WeilPoint(algebra, [[base] + higher])


def _cocycle_worker(job) -> float:
    p, N, order, coords, degree = job
    algebra = make_jet_algebra(p, N, order)
    return cocycle_discrepancy(WeilPoint(algebra, [coords]), degree=degree)


def cocycle_scan(
    p: int,
    N: int = DEFAULT_PRECISION,
    samples: int = DEFAULT_SAMPLE_COUNT,
    seed: int = DEFAULT_SEED,
    order: int = 1,
    degree: int = DEFAULT_CHART_DEGREE,
    loss: int = DEFAULT_COCYCLE_LOSS,
    processes: Optional[int] = None,
) -> CocycleScanResult:
    """Runs the P^1 triple-overlap cocycle check at random unit points of the jet bundle of the given order.

    Parameters
    ----------
    p : int

    N : int

    samples : int

    seed : int

    order : int
        Jet order k of the algebra Q_p[eps]/(eps^{k+1}); 1 gives dual numbers.

    degree : int
        Expansion degree of the chart transitions.

    loss : int
        The check passes when every discrepancy has valuation at least N - loss.

    processes : int, optional
        Size of a multiprocessing pool; the scan runs in-process when omitted.

    Returns
    -------
    result : CocycleScanResult

    """
    rng = np.random.default_rng(seed)
    algebra = make_jet_algebra(p, N, order)
    points = [random_unit_point(rng, algebra) for _ in range(samples)]
    jobs = [(p, N, order, [x.residue(x.precision) for x in point.coords[0]], degree) for point in points]

    if processes:
        with Pool(processes) as pool:
            valuations = pool.map(_cocycle_worker, jobs)
    else:
        valuations = [_cocycle_worker(job) for job in jobs]

    threshold = N - loss
    lowest = min(valuations, default=inf)
    logger.info("cocycle scan over %d points: smallest discrepancy valuation %s", samples, lowest)
    return CocycleScanResult(lowest >= threshold, threshold, lowest, samples, list(valuations))
