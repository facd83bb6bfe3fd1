"""Altering-distance triples (psi, theta, phi) and contraction diagnostics.

The contraction inequality being checked is

    psi(d(F(x), F(z))) <= theta(d_k(x, z)) - phi(d_k(x, z))

for ordered pairs x <=_k z, with psi an altering distance function,
theta(0) = phi(0) = 0 and psi(x) - theta(x) + phi(x) > 0 for x > 0.

Semi-continuity of theta/phi is not numerically decidable; triples carry
declared flags and the solver trusts them (built-ins declare truthfully).
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, List, Sequence, Tuple

import numpy as np

__all__ = [
    "DeclaredProperties",
    "ContractionTriple",
    "TripleGridReport",
    "ContractionSampleReport",
    "UnsupportedDiagnosticError",
    "builtin_log_triple",
    "default_check_grid",
    "check_triple_on_grid",
    "verify_contraction_sampled",
    "gain_bound_sequence",
]

log = logging.getLogger(__name__)

ScalarFn = Callable[[float], float]


@dataclass(frozen=True)
class DeclaredProperties:
    psi_altering: bool = False
    theta_usc: bool = False
    phi_lsc: bool = False
    zero_at_zero: bool = False


@dataclass(frozen=True)
class ContractionTriple:
    psi: ScalarFn
    theta: ScalarFn
    phi: ScalarFn
    declared: DeclaredProperties = field(default_factory=DeclaredProperties)

    def gap(self, x: float) -> float:
        """psi(x) - theta(x) + phi(x); must be positive for x > 0."""
        return self.psi(x) - self.theta(x) + self.phi(x)

    def warn_if_undeclared(self):
        d = self.declared
        if not (d.psi_altering and d.theta_usc and d.phi_lsc and d.zero_at_zero):
            log.warning(
                "contraction triple has unverified analytic declarations: %s", d
            )


def builtin_log_triple() -> ContractionTriple:
    """psi(x) = x, theta(x) = log(1+x), phi(x) = 0.

    gap(x) = x - log(1+x) > 0 for all x > 0, so the triple is admissible.
    """
    return ContractionTriple(
        psi=lambda x: x,
        theta=lambda x: math.log1p(x),
        phi=lambda x: 0.0,
        declared=DeclaredProperties(True, True, True, True),
    )


def default_check_grid() -> np.ndarray:
    """Logarithmic sample grid 1e-8 .. 1e4, 121 points."""
    return np.logspace(-8.0, 4.0, 121)


@dataclass(frozen=True)
class TripleGridReport:
    violations: Tuple[Tuple[float, float], ...]  # (x, gap) with gap <= 0
    min_gap: float
    zero_ok: bool

    @property
    def passed(self) -> bool:
        return self.zero_ok and not self.violations


def check_triple_on_grid(triple: ContractionTriple, xs) -> TripleGridReport:
    """Evaluate the positivity condition on a finite positive grid."""
    xs = np.asarray(xs, dtype=float)
    if xs.size == 0:
        raise ValueError("empty sample grid")
    if np.any(xs <= 0.0):
        raise ValueError("sample grid must be strictly positive")
    gaps = [triple.gap(float(x)) for x in xs]
    violations = tuple((float(x), g) for x, g in zip(xs, gaps) if g <= 0.0)
    zero_ok = triple.psi(0.0) == 0.0 and triple.theta(0.0) == 0.0 and triple.phi(0.0) == 0.0
    return TripleGridReport(violations, min(gaps), zero_ok)


@dataclass(frozen=True)
class ContractionSampleReport:
    slacks: Tuple[float, ...]          # theta(dk) - phi(dk) - psi(d(Fx, Fz)) per pair
    rejected_pairs: Tuple[int, ...]    # indices of pairs failing the order precondition
    tol_slack: float

    @property
    def min_slack(self) -> float:
        return min(self.slacks) if self.slacks else math.inf

    @property
    def passed(self) -> bool:
        return not self.rejected_pairs and all(s >= -self.tol_slack for s in self.slacks)


def verify_contraction_sampled(
    apply_f: Callable[[Sequence], object],
    pairs: Sequence[Tuple[Sequence, Sequence]],
    triple: ContractionTriple,
    dist: Callable[[object, object], float],
    dist_k: Callable[[Sequence, Sequence], float],
    ordered: Callable[[Sequence, Sequence], bool],
    tol_slack: float = 1e-12,
) -> ContractionSampleReport:
    """Check the contraction inequality on sampled ordered pairs.

    Pairs failing the order precondition are rejected before any operator
    evaluation and reported separately.
    """
    slacks: List[float] = []
    rejected: List[int] = []
    for idx, (x, z) in enumerate(pairs):
        if not ordered(x, z):
            rejected.append(idx)
            continue
        dk = dist_k(x, z)
        lhs = triple.psi(dist(apply_f(x), apply_f(z)))
        slacks.append(triple.theta(dk) - triple.phi(dk) - lhs)
    return ContractionSampleReport(tuple(slacks), tuple(rejected), tol_slack)


class UnsupportedDiagnosticError(RuntimeError):
    """The requested diagnostic needs an inverse of psi that is not available."""


def _psi_is_identity(triple: ContractionTriple) -> bool:
    probes = (0.0, 1e-9, 0.37, 1.0, 42.5, 1e4)
    return all(triple.psi(x) == x for x in probes)


def gain_bound_sequence(d0: float, n: int, triple: ContractionTriple) -> List[float]:
    """A-priori majorant of step displacements: d_{j+1} = theta(d_j) - phi(d_j).

    Only valid when psi is the identity (the recurrence otherwise needs
    psi^{-1}, which is not provided in general).
    """
    if d0 < 0:
        raise ValueError(f"d0 must be nonnegative, got {d0}")
    if not _psi_is_identity(triple):
        raise UnsupportedDiagnosticError(
            "gain bound requires psi to be the identity"
        )
    seq = [float(d0)]
    for _ in range(n):
        seq.append(max(0.0, triple.theta(seq[-1]) - triple.phi(seq[-1])))
    return seq
