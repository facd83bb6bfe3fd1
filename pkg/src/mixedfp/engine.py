"""Picard iteration for multidimensional fixed points.

One Jacobi sweep replaces every component i by F applied to the sigma_i
permutation of the current tuple.  Under the contraction/monotonicity
hypotheses the sweeps converge to the unique fixed tuple; with the cyclic
shift the components additionally collapse to a single base element.
"""

import logging
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

from .contraction import ContractionTriple, gain_bound_sequence
from .order import Partition, UpsilonTuple, product_leq

__all__ = [
    "ProductOperator",
    "IterationConfig",
    "IterationReport",
    "NonConvergenceError",
    "OperatorEvaluationError",
    "iterate_step",
    "residual",
    "check_initial_condition",
    "check_mixed_monotone_sampled",
    "solve",
    "trace_csv",
]

log = logging.getLogger(__name__)

Distance = Callable[[object, object], float]
Leq = Callable[[object, object], bool]


class OperatorEvaluationError(RuntimeError):
    """Operator evaluation failed; carries the 1-based component index."""

    def __init__(self, component: int, cause: BaseException):
        self.component = component
        self.cause = cause
        super().__init__(f"operator failed at component {component}: {cause}")


@dataclass(frozen=True)
class ProductOperator:
    """A mapping from k base elements to one base element.

    Must be deterministic and side-effect free; the sweep may evaluate
    components in any order.
    """

    k: int
    apply: Callable[..., object]

    def __post_init__(self):
        if self.k < 2:
            raise ValueError(f"k must be >= 2, got {self.k}")


@dataclass(frozen=True)
class IterationConfig:
    tol_step: float = 1e-10
    tol_residual: float = 1e-8
    max_iters: int = 100000
    check_monotone: bool = True
    check_contraction_each_step: bool = False

    def __post_init__(self):
        if self.tol_step <= 0 or self.tol_residual <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")


@dataclass(frozen=True)
class IterationReport:
    iterations: int
    step_history: Tuple[float, ...]
    residual_history: Tuple[Tuple[float, ...], ...]
    spread_history: Tuple[float, ...]
    monotone_ok: bool
    collapsed: bool
    converged: bool
    fixed_point: tuple
    contraction_violations: Tuple[int, ...] = ()

    @property
    def final_residual(self) -> float:
        return max(self.residual_history[-1])

    @property
    def final_spread(self) -> float:
        return self.spread_history[-1]


class NonConvergenceError(RuntimeError):
    """max_iters exhausted; ``report`` holds the partial trace."""

    def __init__(self, report: IterationReport):
        self.report = report
        super().__init__(
            f"no convergence after {report.iterations} sweeps "
            f"(last step {report.step_history[-1]:.3e})"
        )


def iterate_step(F: ProductOperator, upsilon: UpsilonTuple, x: Sequence) -> tuple:
    """One Jacobi sweep: y_i = F(x permuted by sigma_i) for every i."""
    k = upsilon.partition.k
    if len(x) != k or F.k != k:
        raise ValueError("dimension mismatch between operator, tuple and point")
    out = []
    for i in range(1, k + 1):
        try:
            out.append(F.apply(*upsilon.permute(i, x)))
        except Exception as exc:  # attach the failing component index
            raise OperatorEvaluationError(i, exc) from exc
    return tuple(out)


def residual(
    F: ProductOperator, upsilon: UpsilonTuple, x: Sequence, dist: Distance
) -> List[float]:
    """Defect of the fixed-tuple equations: d(x_i, F(sigma_i-permuted x))."""
    y = iterate_step(F, upsilon, x)
    return [dist(xi, yi) for xi, yi in zip(x, y)]


def check_initial_condition(
    F: ProductOperator,
    upsilon: UpsilonTuple,
    x0: Sequence,
    leq: Leq,
) -> Tuple[bool, List[bool]]:
    """Starting-point condition: x0_i below its image for i in A, above for
    i in B (the partition-twisted reading of the per-component order)."""
    partition = upsilon.partition
    y = iterate_step(F, upsilon, x0)
    per_component = []
    for i in range(1, partition.k + 1):
        if i in partition.a:
            per_component.append(leq(x0[i - 1], y[i - 1]))
        else:
            per_component.append(leq(y[i - 1], x0[i - 1]))
    return all(per_component), per_component


def check_mixed_monotone_sampled(
    F: ProductOperator,
    partition: Partition,
    samples: Sequence[tuple],
    leq: Leq,
) -> List[tuple]:
    """Sampled mixed-monotonicity check.

    Each sample is (base_point, j, low, high): a k-tuple, a 1-based
    coordinate, and an ordered pair low <= high to substitute there.  F must
    be nondecreasing in coordinates of A and nonincreasing in coordinates of
    B.  Returns the violating samples as (sample_index, j).
    """
    violations = []
    for idx, sample in enumerate(samples):
        if len(sample) != 4:
            raise ValueError(f"sample {idx} is not (point, coord, low, high)")
        point, j, low, high = sample
        if len(point) != partition.k or not (1 <= j <= partition.k):
            raise ValueError(f"sample {idx} has bad dimensions")
        lo_point = list(point)
        hi_point = list(point)
        lo_point[j - 1] = low
        hi_point[j - 1] = high
        f_lo = F.apply(*lo_point)
        f_hi = F.apply(*hi_point)
        if j in partition.a:
            ok = leq(f_lo, f_hi)
        else:
            ok = leq(f_hi, f_lo)
        if not ok:
            violations.append((idx, j))
    return violations


def solve(
    F: ProductOperator,
    upsilon: UpsilonTuple,
    x0: Sequence,
    config: IterationConfig,
    triple: Optional[ContractionTriple] = None,
    *,
    dist: Distance,
    leq: Leq,
    skip_initial_check: bool = False,
) -> IterationReport:
    """Iterate Jacobi sweeps until both the step displacement and the
    fixed-tuple residual fall below tolerance.

    The returned fixed_point is the last iterate whose residual was measured,
    so the report's final residual is the defect of the returned point.
    """
    partition = upsilon.partition
    if len(x0) != partition.k:
        raise ValueError("starting point dimension mismatch")
    if not skip_initial_check:
        ok, per_component = check_initial_condition(F, upsilon, x0, leq)
        if not ok:
            raise ValueError(
                f"starting point fails the initial-order condition; "
                f"per-component: {per_component}"
            )
    else:
        log.warning("initial-order condition check overridden by caller")
    if triple is not None:
        triple.warn_if_undeclared()

    x = tuple(x0)
    steps: List[float] = []
    residuals: List[Tuple[float, ...]] = []
    spreads: List[float] = []
    contraction_violations: List[int] = []
    monotone_ok = True

    for it in range(config.max_iters):
        y = iterate_step(F, upsilon, x)
        res = tuple(dist(xi, yi) for xi, yi in zip(x, y))
        d = max(res)
        steps.append(d)
        residuals.append(res)
        spreads.append(_spread(x, dist))

        if config.check_monotone and not product_leq(x, y, partition, leq):
            if monotone_ok:
                log.warning("monotone bracketing violated at sweep %d", it + 1)
            monotone_ok = False

        if config.check_contraction_each_step and triple is not None and len(steps) >= 2:
            prev = steps[-2]
            if triple.psi(d) > triple.theta(prev) - triple.phi(prev) + 1e-10:
                contraction_violations.append(it)

        if d <= config.tol_step and d <= config.tol_residual:
            collapsed = spreads[-1] <= config.tol_residual
            return IterationReport(
                iterations=it + 1,
                step_history=tuple(steps),
                residual_history=tuple(residuals),
                spread_history=tuple(spreads),
                monotone_ok=monotone_ok,
                collapsed=collapsed,
                converged=True,
                fixed_point=x,
                contraction_violations=tuple(contraction_violations),
            )
        x = y

    report = IterationReport(
        iterations=config.max_iters,
        step_history=tuple(steps),
        residual_history=tuple(residuals),
        spread_history=tuple(spreads),
        monotone_ok=monotone_ok,
        collapsed=False,
        converged=False,
        fixed_point=x,
        contraction_violations=tuple(contraction_violations),
    )
    raise NonConvergenceError(report)


def _spread(x: Sequence, dist: Distance) -> float:
    k = len(x)
    return max(
        (dist(x[i], x[j]) for i in range(k) for j in range(i + 1, k)),
        default=0.0,
    )


def majorant_for(report: IterationReport, triple: ContractionTriple) -> List[float]:
    """Gain-bound sequence seeded by the first recorded displacement."""
    return gain_bound_sequence(report.step_history[0], len(report.step_history) - 1, triple)


def trace_csv(report: IterationReport) -> str:
    """Per-iteration trace: `iter,step_dk,max_residual,collapsed_spread`."""
    lines = ["iter,step_dk,max_residual,collapsed_spread"]
    for i, (s, res, sp) in enumerate(
        zip(report.step_history, report.residual_history, report.spread_history)
    ):
        lines.append(f"{i},{s:.17g},{max(res):.17g},{sp:.17g}")
    return "\n".join(lines) + "\n"
