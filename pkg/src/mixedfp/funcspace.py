"""Discretized continuous functions on [1, T]: grids, sup-metric, pointwise
order, monotone-safe interpolation, and composite quadrature."""

import io
from dataclasses import dataclass
from typing import Callable

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.interpolate import PchipInterpolator

__all__ = [
    "Grid",
    "GridFunction",
    "QuadratureRule",
    "uniform_grid",
    "make_quadrature",
    "integrate",
    "sup_metric",
    "pointwise_leq",
    "interpolate",
    "save_csv",
    "load_csv",
]


@dataclass(frozen=True)
class Grid:
    """Strictly increasing nodes spanning [1, T], N >= 8 intervals."""

    T: float
    nodes: np.ndarray
    kind: str = "uniform"

    def __post_init__(self):
        if not self.T > 1.0:
            raise ValueError(f"T must exceed 1, got {self.T}")
        nodes = np.asarray(self.nodes, dtype=float)
        object.__setattr__(self, "nodes", nodes)
        if nodes.size < 9:
            raise ValueError("grid needs at least 8 intervals")
        if np.any(np.diff(nodes) <= 0.0):
            raise ValueError("grid nodes must be strictly increasing")
        if self.kind == "uniform":
            if nodes[0] != 1.0 or nodes[-1] != self.T:
                raise ValueError("uniform grid must have endpoints 1 and T")
        else:
            if nodes[0] < 1.0 or nodes[-1] > self.T:
                raise ValueError("grid nodes must lie in [1, T]")

    @property
    def n(self) -> int:
        return self.nodes.size

    def sample(self, f: Callable[[float], float]) -> "GridFunction":
        return GridFunction(self, np.array([f(t) for t in self.nodes], dtype=float))


def uniform_grid(T: float, n_intervals: int = 200) -> Grid:
    return Grid(T, np.linspace(1.0, T, n_intervals + 1), "uniform")


@dataclass(frozen=True)
class GridFunction:
    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", values)
        if values.shape != (self.grid.n,):
            raise ValueError(
                f"expected {self.grid.n} values, got shape {values.shape}"
            )
        if not np.all(np.isfinite(values)):
            raise ValueError("grid function values must be finite")

    def __call__(self, t):
        return interpolate(self, t)


def sup_metric(u: GridFunction, v: GridFunction) -> float:
    """max_j |u_j - v_j| over the common grid."""
    if u.grid is not v.grid and not np.array_equal(u.grid.nodes, v.grid.nodes):
        raise ValueError("grid mismatch")
    return float(np.max(np.abs(u.values - v.values)))


def pointwise_leq(u: GridFunction, v: GridFunction, tol: float = 0.0) -> bool:
    """u <= v nodewise, with nonnegative slack tol (default exact)."""
    if u.grid is not v.grid and not np.array_equal(u.grid.nodes, v.grid.nodes):
        raise ValueError("grid mismatch")
    return bool(np.all(u.values <= v.values + tol))


def interpolate(u: GridFunction, t):
    """Monotone-safe piecewise-cubic value(s) at t in [1, T].

    PCHIP keeps monotone data monotone (no overshoot), so order checks
    survive transfer to finer grids; it is exact at nodes and reproduces
    linear data to rounding.
    """
    t_arr = np.asarray(t, dtype=float)
    lo, hi = u.grid.nodes[0], u.grid.nodes[-1]
    if np.any(t_arr < lo - 1e-12) or np.any(t_arr > hi + 1e-12):
        raise ValueError(f"evaluation point outside [{lo}, {hi}]")
    flat = np.atleast_1d(np.clip(t_arr, lo, hi))
    out = np.asarray(PchipInterpolator(u.grid.nodes, u.values)(flat))
    # stored values win at exact node hits (polynomial evaluation can be
    # off by an ulp at panel edges)
    pos = np.minimum(np.searchsorted(u.grid.nodes, flat), u.grid.nodes.size - 1)
    exact = u.grid.nodes[pos] == flat
    out[exact] = u.values[pos[exact]]
    return float(out[0]) if t_arr.ndim == 0 else out.reshape(t_arr.shape)


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes/weights on [1, T]; weights must reproduce the constant 1."""

    nodes: np.ndarray
    weights: np.ndarray
    T: float

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)
        if nodes.shape != weights.shape:
            raise ValueError("nodes/weights length mismatch")
        if np.any(weights <= 0.0):
            raise ValueError("weights must be positive")
        length = self.T - 1.0
        if abs(float(np.sum(weights)) - length) > 1e-12 * max(1.0, length):
            raise ValueError("weights do not sum to T - 1")


def make_quadrature(
    kind: str, T: float, panels: int, points: int
) -> QuadratureRule:
    """Composite rule on [1, T].

    kind "gauss-legendre": `points` nodes per panel (2..16), exact on
    polynomials of degree 2*points - 1 per panel.
    kind "simpson": `points` subintervals per panel, must be even.
    """
    if not T > 1.0:
        raise ValueError(f"T must exceed 1, got {T}")
    if panels < 1:
        raise ValueError("panels must be >= 1")
    edges = np.linspace(1.0, T, panels + 1)
    all_nodes, all_weights = [], []
    if kind == "gauss-legendre":
        if not 2 <= points <= 16:
            raise ValueError("gauss-legendre points per panel must be in 2..16")
        xi, wi = leggauss(points)
        for a, b in zip(edges[:-1], edges[1:]):
            all_nodes.append((b - a) / 2.0 * xi + (a + b) / 2.0)
            all_weights.append((b - a) / 2.0 * wi)
    elif kind == "simpson":
        if points < 2 or points % 2 != 0:
            raise ValueError("simpson subinterval count must be even and >= 2")
        w = np.ones(points + 1)
        w[1:-1:2] = 4.0
        w[2:-1:2] = 2.0
        for a, b in zip(edges[:-1], edges[1:]):
            h = (b - a) / points
            all_nodes.append(np.linspace(a, b, points + 1))
            all_weights.append(w * h / 3.0)
    else:
        raise ValueError(f"unknown quadrature kind {kind!r}")
    return QuadratureRule(np.concatenate(all_nodes), np.concatenate(all_weights), T)


def integrate(rule: QuadratureRule, fvals) -> float:
    """Weighted sum of integrand values sampled exactly at the rule nodes."""
    fvals = np.asarray(fvals, dtype=float)
    if fvals.shape != rule.nodes.shape:
        raise ValueError("integrand sample length does not match rule nodes")
    return float(np.dot(rule.weights, fvals))


def save_csv(gf: GridFunction, path) -> None:
    """Write `t,value` rows at 17 significant digits."""
    with open(path, "w") as fh:
        fh.write(format_csv(gf))


def format_csv(gf: GridFunction) -> str:
    buf = io.StringIO()
    buf.write("t,value\n")
    for t, v in zip(gf.grid.nodes, gf.values):
        buf.write(f"{t:.17g},{v:.17g}\n")
    return buf.getvalue()


def load_csv(path) -> GridFunction:
    """Read a `t,value` file back into a GridFunction."""
    data = np.loadtxt(path, delimiter=",", skiprows=1)
    if data.ndim != 2 or data.shape[1] != 2:
        raise ValueError("expected two columns t,value")
    t, v = data[:, 0], data[:, 1]
    return GridFunction(Grid(float(t[-1]), t, kind="loaded"), v)
