"""Hammerstein integral equations x(t) = int_1^T G(t,s) sum_i f_i(s, x(s)) ds + p(t)
with 2m nonlinearities banded by log(1 + .) in alternating directions, the
induced product operator, and numerical checkers for the standing
assumptions.

The bundled example uses the logarithmic kernel G(t,s) = 1/(2 ln T * t * s),
f1(s,x) = ln(s + x), f2(s,x) = -(ln s + ln x); its exact solution is
x(t) = alpha * t.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, List, Sequence, Tuple

import numpy as np

from .engine import ProductOperator
from .funcspace import (
    Grid,
    GridFunction,
    QuadratureRule,
    interpolate,
    make_quadrature,
    uniform_grid,
)

__all__ = [
    "HammersteinProblem",
    "DomainFloorError",
    "AssumptionDReport",
    "AssumptionEReport",
    "apply_A",
    "product_operator",
    "kernel_bound",
    "check_assumption_d",
    "check_assumption_e",
    "closed_H_formulas",
    "check_exp_inequality",
    "build_log_example",
    "initial_bracket",
]

log = logging.getLogger(__name__)

Kernel = Callable[[float, float], float]
Nonlinearity = Callable[[float, float], float]


class DomainFloorError(ValueError):
    """A component dips below the admissible floor; names node and component."""

    def __init__(self, component: int, node: float, value: float, floor: float):
        self.component = component
        self.node = node
        super().__init__(
            f"component {component} value {value:.6g} at s={node:.6g} "
            f"is below the domain floor {floor:.6g}"
        )


@dataclass(frozen=True)
class HammersteinProblem:
    """Problem data plus its discretization (collocation grid and quadrature).

    Nonlinearities come in ordered pairs: odd positions are nondecreasing in
    x with increments bounded above by eta*log(1+dx), even positions are
    nonincreasing with increments bounded below by -eta*log(1+dx).
    """

    T: float
    m: int
    kernel: Kernel
    nonlinearities: Tuple[Nonlinearity, ...]
    forcing: Callable[[float], float]
    etas: Tuple[float, ...]
    domain_floor: float
    grid: Grid
    quadrature: QuadratureRule

    def __post_init__(self):
        if not self.T > 1.0:
            raise ValueError(f"T must exceed 1, got {self.T}")
        if self.m < 1:
            raise ValueError(f"m must be >= 1, got {self.m}")
        if len(self.nonlinearities) != 2 * self.m:
            raise ValueError(f"expected {2 * self.m} nonlinearities")
        if len(self.etas) != 2 * self.m or any(e <= 0 for e in self.etas):
            raise ValueError("need 2m positive eta constants")
        kmat = self._kernel_matrix()
        if np.any(kmat < 0.0) or not np.all(np.isfinite(kmat)):
            raise ValueError("kernel must be finite and nonnegative on the grid")

    @property
    def k(self) -> int:
        return 2 * self.m

    def _kernel_matrix(self) -> np.ndarray:
        # rows: collocation nodes t_j; columns: quadrature nodes s_q
        cache = getattr(self, "_kmat", None)
        if cache is None:
            tt = self.grid.nodes[:, None]
            ss = self.quadrature.nodes[None, :]
            cache = np.vectorize(self.kernel)(tt, ss)
            object.__setattr__(self, "_kmat", cache)
        return cache

    def _weighted_kernel(self) -> np.ndarray:
        cache = getattr(self, "_wkmat", None)
        if cache is None:
            cache = self._kernel_matrix() * self.quadrature.weights[None, :]
            object.__setattr__(self, "_wkmat", cache)
        return cache

    def _forcing_values(self) -> np.ndarray:
        cache = getattr(self, "_pvals", None)
        if cache is None:
            cache = np.array([self.forcing(t) for t in self.grid.nodes])
            object.__setattr__(self, "_pvals", cache)
        return cache


def apply_A(problem: HammersteinProblem, x: Sequence[GridFunction]) -> GridFunction:
    """Evaluate the product operator at a 2m-tuple of grid functions.

    Components are transferred to the quadrature nodes by monotone-safe
    interpolation; the integral is the configured weighted sum at every
    collocation node.
    """
    if len(x) != problem.k:
        raise ValueError(f"expected {problem.k} components, got {len(x)}")
    s_nodes = problem.quadrature.nodes
    total = np.zeros_like(s_nodes)
    for i, (fi, xi) in enumerate(zip(problem.nonlinearities, x), start=1):
        vals_colloc = xi.values
        bad = np.nonzero(vals_colloc < problem.domain_floor - 1e-12)[0]
        if bad.size:
            j = int(bad[0])
            raise DomainFloorError(
                i, float(xi.grid.nodes[j]), float(vals_colloc[j]), problem.domain_floor
            )
        vals = interpolate(xi, s_nodes)
        # interpolation cannot overshoot monotone data, but guard anyway
        bad = np.nonzero(vals < problem.domain_floor - 1e-9)[0]
        if bad.size:
            j = int(bad[0])
            raise DomainFloorError(
                i, float(s_nodes[j]), float(vals[j]), problem.domain_floor
            )
        total += np.array([fi(s, v) for s, v in zip(s_nodes, vals)])
    if not np.all(np.isfinite(total)):
        raise ArithmeticError("non-finite integrand encountered")
    out = problem._weighted_kernel() @ total + problem._forcing_values()
    return GridFunction(problem.grid, out)


def product_operator(problem: HammersteinProblem) -> ProductOperator:
    return ProductOperator(problem.k, lambda *x: apply_A(problem, x))


def kernel_bound(problem: HammersteinProblem) -> float:
    """2m * max over collocation nodes t of int_1^T G(t, s) ds."""
    integrals = problem._weighted_kernel() @ np.ones(problem.quadrature.nodes.size)
    return problem.k * float(np.max(integrals))


@dataclass(frozen=True)
class AssumptionDReport:
    kernel_bound: float
    eta_ok: bool
    violations: Tuple[tuple, ...]  # (nonlinearity index, s, x, y, excess)

    @property
    def passed(self) -> bool:
        return self.eta_ok and not self.violations


def check_assumption_d(
    problem: HammersteinProblem,
    value_pairs: Sequence[Tuple[float, float]],
    s_samples: Sequence[float],
    tol: float = 1e-12,
) -> AssumptionDReport:
    """Sampled check of the alternating log-increment bands and the eta cap.

    value_pairs are ordered (x, y) with y >= x >= domain_floor; every
    nonlinearity is tested at every (s, x, y) combination.
    """
    violations: List[tuple] = []
    for x, y in value_pairs:
        if y < x or x < problem.domain_floor:
            raise ValueError(f"bad value pair ({x}, {y})")
        band = math.log1p(y - x)
        for s in s_samples:
            if not 1.0 <= s <= problem.T:
                raise ValueError(f"s sample {s} outside [1, T]")
            for i, fi in enumerate(problem.nonlinearities, start=1):
                diff = fi(s, y) - fi(s, x)
                eta = problem.etas[i - 1]
                if i % 2 == 1:
                    lo, hi = 0.0, eta * band
                else:
                    lo, hi = -eta * band, 0.0
                if diff < lo - tol or diff > hi + tol:
                    excess = max(lo - diff, diff - hi)
                    violations.append((i, s, x, y, excess))
    bound = kernel_bound(problem)
    eta_ok = max(problem.etas) <= 1.0 / bound + 1e-8 if bound > 0 else True
    return AssumptionDReport(bound, eta_ok, tuple(violations))


@dataclass(frozen=True)
class AssumptionEReport:
    h_functions: Tuple[GridFunction, ...]
    failures: Tuple[tuple, ...]  # (r, node index) where the comparison fails

    @property
    def passed(self) -> bool:
        return not self.failures


def _h_index_pairs(r: int, two_m: int) -> List[Tuple[int, int]]:
    """(nonlinearity index, component index) pairs for the r-th comparison
    function, 1-based.  For r >= 2 this is the printed two-sum scheme, which
    coincides with pairing f_i against component sigma_r(i) of the cyclic
    shift; the equality is asserted in tests."""
    if r == 1:
        return [(i, i) for i in range(1, two_m + 1)]
    pairs = [(i, i + r - 1) for i in range(1, two_m - r + 2)]
    pairs += [(two_m - ell, r - 1 - ell) for ell in range(0, r - 1)]
    for fi, yi in pairs:
        if not (1 <= fi <= two_m and 1 <= yi <= two_m):
            raise ValueError(f"index scheme leaves 1..{two_m} at r={r}")
    return pairs


def check_assumption_e(
    problem: HammersteinProblem,
    y0: Sequence[GridFunction],
    tol: float = 1e-10,
) -> AssumptionEReport:
    """Starting-bracket condition: odd components sit below their comparison
    integrals H_r, even components above, nodewise."""
    if len(y0) != problem.k:
        raise ValueError(f"expected {problem.k} components")
    hs = []
    for r in range(1, problem.k + 1):
        pairs = _h_index_pairs(r, problem.k)
        permuted = tuple(y0[yi - 1] for _, yi in pairs)
        fns = tuple(problem.nonlinearities[fi - 1] for fi, _ in pairs)
        shuffled = HammersteinProblem(
            problem.T, problem.m, problem.kernel, fns, problem.forcing,
            problem.etas, problem.domain_floor, problem.grid, problem.quadrature,
        )
        hs.append(apply_A(shuffled, permuted))
    failures: List[tuple] = []
    for r, h in enumerate(hs, start=1):
        comp = y0[r - 1]
        if r % 2 == 1:
            bad = np.nonzero(comp.values > h.values + tol)[0]
        else:
            bad = np.nonzero(comp.values < h.values - tol)[0]
        failures.extend((r, int(j)) for j in bad)
    return AssumptionEReport(tuple(hs), tuple(failures))


def closed_H_formulas(alpha: float, T: float, t) -> Tuple[float, float]:
    """Closed forms of the two comparison integrals for the log-kernel
    example started from (alpha*t/2, 3*alpha*t/2); T cancels.

    H1(t) = alpha*t + ln((2+alpha)/(3(1+alpha))) / (2t)
    H2(t) = alpha*t + ln((2+3alpha)/(1+alpha)) / (2t)
    """
    if not alpha > 1.0:
        raise ValueError(f"alpha must exceed 1, got {alpha}")
    if not T > 1.0:
        raise ValueError(f"T must exceed 1, got {T}")
    t = np.asarray(t, dtype=float)
    if np.any(t < 1.0) or np.any(t > T):
        raise ValueError("t outside [1, T]")
    h1 = alpha * t + math.log((2 + alpha) / (3 * (1 + alpha))) / (2 * t)
    h2 = alpha * t + math.log((2 + 3 * alpha) / (1 + alpha)) / (2 * t)
    if t.ndim == 0:
        return float(h1), float(h2)
    return h1, h2


def check_exp_inequality(alpha: float) -> bool:
    """True iff exp(alpha) > (2 + 3*alpha)/(1 + alpha); holds for alpha >= 1
    and underwrites the admissibility of the 3*alpha*t/2 upper start."""
    if alpha <= 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    return math.exp(alpha) - (2 + 3 * alpha) / (1 + alpha) > 0


def build_log_example(
    alpha: float,
    T: float,
    n_intervals: int = 200,
    quad_panels: int = 32,
    quad_points: int = 8,
) -> HammersteinProblem:
    """The bundled m=1 problem with exact solution x(t) = alpha * t.

    kernel G(t,s) = 1/(2 ln T * t * s), f1 = ln(s+x), f2 = -(ln s + ln x),
    forcing p(t) = alpha*t - ln((1+alpha)/(alpha*sqrt(T)))/(2t); both eta
    constants are 1, exactly saturating the kernel-bound cap.
    """
    if not alpha > 1.0:
        raise ValueError(f"alpha must exceed 1, got {alpha}")
    if not T > 1.0:
        raise ValueError(f"T must exceed 1, got {T}")
    two_lnT = 2.0 * math.log(T)
    c = math.log((1 + alpha) / (alpha * math.sqrt(T)))
    return HammersteinProblem(
        T=T,
        m=1,
        kernel=lambda t, s: 1.0 / (two_lnT * t * s),
        nonlinearities=(
            lambda s, x: math.log(s + x),
            lambda s, x: -(math.log(s) + math.log(x)),
        ),
        forcing=lambda t: alpha * t - c / (2.0 * t),
        etas=(1.0, 1.0),
        domain_floor=1.0,
        grid=uniform_grid(T, n_intervals),
        quadrature=make_quadrature("gauss-legendre", T, quad_panels, quad_points),
    )


def initial_bracket(problem: HammersteinProblem, alpha: float) -> Tuple[GridFunction, GridFunction]:
    """Starting pair (alpha*t/2, 3*alpha*t/2) for the log-kernel example.

    For alpha < 2 the lower start would dip below the domain floor near t=1;
    it is raised to the floor and the substitution is logged.  The
    starting-order condition should then be re-checked numerically.
    """
    t = problem.grid.nodes
    lower = alpha * t / 2.0
    if lower[0] < problem.domain_floor:
        log.warning(
            "lower start alpha*t/2 dips below the floor %.6g near t=1; "
            "clamping to the floor", problem.domain_floor,
        )
        lower = np.maximum(lower, problem.domain_floor)
    upper = 3.0 * alpha * t / 2.0
    return GridFunction(problem.grid, lower), GridFunction(problem.grid, upper)
