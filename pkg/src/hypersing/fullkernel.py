"""Finite-part equation with a smooth perturbing kernel.

The full equation adds a regular kernel K0 to the characteristic one:

    fp-int g(t) / (x - t)^2 dt  +  int K0(x, t) g(t) dt  =  fprime(x).

Two solution paths are provided.  Direct collocation augments the
characteristic matrix with midpoint-rule samples ``h * K0(x_i, t_j)``.
Alternatively, when K0 has an antiderivative K1 in its first argument
(K0 = dK1/dx) and fprime has antiderivative f, applying the inversion
operator of the characteristic equation converts the problem into a
second-kind Fredholm equation

    g(x) + int N1(x, t) g(t) dt = f1(x),

with N1 and f1 produced by weighted principal-value integrals of K1 and
f.  The Fredholm equation is then solved by a Nystrom method on
Chebyshev points.  Solving the same problem down both paths is the
strongest available end-to-end check.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .grids import Grid, Interval, SampledFunction, SampleSite
from .linalg import SingularMatrixError, lu_solve, residual_norm
from .quadrature import PVQuadSpec, chebyshev_nodes, pv_weighted_integral, _sample
from .characteristic import assemble_characteristic

__all__ = [
    "FullProblem",
    "FredholmSystem",
    "assemble_full",
    "solve_full_collocation",
    "chebyshev_nystrom_rule",
    "fredholm_reduce",
    "solve_fredholm",
    "nystrom_eval",
]


@dataclass(frozen=True)
class FullProblem:
    """Kernel and right-hand side of the perturbed equation.

    ``K0`` must be continuous on the closed square.  ``K1`` (an
    antiderivative of K0 in the first argument) and ``f`` (an
    antiderivative of fprime) are optional and only required by the
    Fredholm route; when ``K1`` is given it is probed against ``K0``
    by centered finite differences.
    """

    interval: Interval
    K0: Callable[[float, float], float]
    fprime: Callable[[float], float]
    K1: Optional[Callable[[float, float], float]] = None
    f: Optional[Callable[[float], float]] = None

    def __post_init__(self):
        if self.K1 is not None:
            iv = self.interval
            delta = 1e-4 * max(1.0, iv.halfwidth)
            probes = [
                (iv.midpoint - 0.45 * iv.halfwidth, iv.midpoint + 0.3 * iv.halfwidth),
                (iv.midpoint, iv.midpoint - 0.6 * iv.halfwidth),
                (iv.midpoint + 0.37 * iv.halfwidth, iv.midpoint),
            ]
            for xp, tp in probes:
                fd = (float(self.K1(xp + delta, tp))
                      - float(self.K1(xp - delta, tp))) / (2.0 * delta)
                stated = float(self.K0(xp, tp))
                if not np.isfinite(fd) or abs(fd - stated) > 1e-4 * (1.0 + abs(stated)):
                    raise ValueError(
                        "K1 is not an antiderivative of K0 in its first argument "
                        f"(probe at x={xp:.6g}, t={tp:.6g}: finite difference {fd:.6g}, "
                        f"stated {stated:.6g})")


def assemble_full(grid: Grid, K0) -> np.ndarray:
    """Collocation matrix: characteristic part plus ``h * K0(x_i, t_j)``.

    With ``K0 == 0`` this reproduces the characteristic matrix bitwise.
    The kernel callable may be vectorized over numpy arrays; scalar-only
    callables are evaluated entry by entry.
    """
    base = assemble_characteristic(grid)
    x = grid.colloc
    t = grid.nodes[1:]
    vals = None
    with np.errstate(all="ignore"):
        try:
            trial = np.asarray(K0(x[:, None], t[None, :]), dtype=float)
            if trial.shape == (grid.n, grid.n):
                vals = trial
        except Exception:
            vals = None
    if vals is None:
        vals = np.array([[float(K0(xi, tj)) for tj in t] for xi in x])
    if not np.all(np.isfinite(vals)):
        raise ValueError("kernel K0 returned a non-finite sample")
    return base + grid.h * vals


def solve_full_collocation(problem: FullProblem, grid: Grid,
                           refine: bool = False) -> SampledFunction:
    """Solve the perturbed equation by direct collocation.

    Sample attribution follows ``solve_characteristic``: the returned
    values live at the cell midpoints x_1 .. x_n.
    """
    if problem.interval != grid.interval:
        raise ValueError("problem and grid are built on different intervals")
    matrix = assemble_full(grid, problem.K0)
    rhs = _sample(problem.fprime, grid.colloc)
    values = lu_solve(matrix, rhs, refine=refine)
    tol = 1e-9 * float(np.max(np.abs(rhs)))
    if residual_norm(matrix, values, rhs) > tol:
        values = lu_solve(matrix, rhs, refine=True)
        resid = residual_norm(matrix, values, rhs)
        if resid > tol:
            raise ArithmeticError(
                f"collocation residual {resid:.3e} exceeds tolerance {tol:.3e}")
    return SampledFunction(grid=grid, values=values, site=SampleSite.COLLOC)


@dataclass(frozen=True, eq=False)
class FredholmSystem:
    """Discretized second-kind system: nodes, kernel matrix N1, data f1."""

    nodes: np.ndarray
    N1: np.ndarray
    f1: np.ndarray

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        N1 = np.asarray(self.N1, dtype=float)
        f1 = np.asarray(self.f1, dtype=float)
        m = nodes.shape[0]
        if nodes.ndim != 1 or N1.shape != (m, m) or f1.shape != (m,):
            raise ValueError("inconsistent shapes in Fredholm system")
        if not (np.all(np.isfinite(N1)) and np.all(np.isfinite(f1))):
            raise ValueError("Fredholm system contains non-finite entries")
        for name, arr in (("nodes", nodes), ("N1", N1), ("f1", f1)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)


def chebyshev_nystrom_rule(interval: Interval, count: int):
    """Nodes and plain-dt weights for Nystrom quadrature on the interval.

    Uses the first-kind Chebyshev points with weights
    ``(pi / count) * sqrt((t - a)(b - t))``, so that integrating a
    function against dt is the Gauss-Chebyshev rule applied to
    ``f * w / w``.  This choice is exact when the integrand times the
    weight is a polynomial, which suits solutions vanishing like a
    square root at the endpoints.
    """
    nodes = chebyshev_nodes(interval, count)
    weights = (np.pi / int(count)) * np.sqrt((nodes - interval.a) * (interval.b - nodes))
    return nodes, weights


def _inversion_prefactor(interval: Interval, x: float) -> float:
    return float(np.sqrt((x - interval.a) * (interval.b - x)) / np.pi**2)


def fredholm_reduce(problem: FullProblem, spec: PVQuadSpec, nodes) -> FredholmSystem:
    """Reduce the full equation to second-kind form on the given nodes.

    Every entry is a weighted principal-value integral:

        N1(x, t) = pref(x) * pv-int K1(tau, t) / (w(tau)(x - tau)) dtau
        f1(x)    = pref(x) * pv-int f(tau)     / (w(tau)(x - tau)) dtau

    with ``pref(x) = sqrt((x - a)(b - x)) / pi^2``.  Requires both
    antiderivatives ``K1`` and ``f`` on the problem.
    """
    if problem.K1 is None or problem.f is None:
        raise ValueError("Fredholm reduction needs both antiderivatives K1 and f")
    iv = problem.interval
    nodes = np.asarray(nodes, dtype=float)
    if nodes.ndim != 1 or nodes.size == 0:
        raise ValueError("nodes must be a nonempty 1-D array")
    if not np.all((nodes > iv.a) & (nodes < iv.b)):
        raise ValueError("all Nystrom nodes must lie strictly inside the interval")
    m = nodes.size
    pref = np.sqrt((nodes - iv.a) * (iv.b - nodes)) / np.pi**2
    f1 = np.array([pv_weighted_integral(problem.f, iv, x, spec) for x in nodes])
    f1 *= pref
    N1 = np.empty((m, m))
    for j, tj in enumerate(nodes):
        column = lambda tau, tj=tj: problem.K1(tau, tj)
        N1[:, j] = [pv_weighted_integral(column, iv, x, spec) for x in nodes]
    N1 *= pref[:, None]
    return FredholmSystem(nodes=nodes, N1=N1, f1=f1)


def solve_fredholm(system: FredholmSystem, weights) -> np.ndarray:
    """Solve ``(I + N1 diag(weights)) g = f1`` for the node values of g.

    A singular Nystrom matrix means -1 is an eigenvalue of the
    discretized integral operator; this is reported as
    ``SingularMatrixError`` rather than regularized away.
    """
    weights = np.asarray(weights, dtype=float)
    m = system.nodes.size
    if weights.shape != (m,):
        raise ValueError(f"need {m} quadrature weights, got shape {weights.shape}")
    if not np.all(np.isfinite(weights)) or np.any(weights <= 0.0):
        raise ValueError("quadrature weights must be positive and finite")
    matrix = np.eye(m) + system.N1 * weights[None, :]
    try:
        return lu_solve(matrix, system.f1)
    except SingularMatrixError as exc:
        raise SingularMatrixError(
            "Nystrom matrix I + N1 W is singular: -1 is an eigenvalue of the "
            "discretized operator at these nodes") from exc


def nystrom_eval(problem: FullProblem, spec: PVQuadSpec, system: FredholmSystem,
                 weights, values, xs) -> np.ndarray:
    """Natural Nystrom interpolant of a Fredholm solution at new points.

    Evaluates ``g(x) = f1(x) - sum_k w_k N1(x, node_k) g_k`` which is
    exactly how the discrete solution extends off its nodes; the new
    rows of N1 and f1 are built with the same principal-value rule.
    """
    weights = np.asarray(weights, dtype=float)
    values = np.asarray(values, dtype=float)
    m = system.nodes.size
    if weights.shape != (m,) or values.shape != (m,):
        raise ValueError("weights and values must match the system nodes")
    iv = problem.interval
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    out = np.empty(xs.shape)
    for i, x in enumerate(xs):
        pref = _inversion_prefactor(iv, x)
        fx = pref * pv_weighted_integral(problem.f, iv, x, spec)
        row = np.array([
            pv_weighted_integral(lambda tau, tj=tj: problem.K1(tau, tj), iv, x, spec)
            for tj in system.nodes])
        out[i] = fx - float(np.dot(weights * pref * row, values))
    return out
