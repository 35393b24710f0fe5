"""Two-point boundary-value solver for ``-x'' = f(t, x)`` on [0, 1] with
homogeneous Dirichlet data, via Picard iteration on the equivalent integral
equation

    x(t) = integral_0^1 G(t, s) f(s, x(s)) ds,

where ``G`` is the triangular kernel ``min(t, s) * (1 - max(t, s))``. The
kernel annihilates the boundary, so the solver's boundary values are exactly
zero by construction.

Quadrature is composite Simpson on the solution grid itself, split at the
kernel's diagonal kink so each panel is smooth. Panels with an odd number of
subintervals close with a 3/8 block on the kink side; the one-subinterval
panels next to the boundary use a 3-point Newton-Cotes rule evaluated on the
smooth kernel *branch* (the kink lives in the kernel alone, so the branch
formula extends smoothly past the panel). Every rule is exact on linear
integrands, so the row sums of the discrete operator reproduce the
closed-form kernel row integral ``t(1 - t)/2`` to rounding error, whose
maximum 1/8 is the operator's contraction constant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

import numpy as np
from scipy.linalg import solve_banded

from .errors import DomainError, OracleError
from .framework import GRID_EPS
from .metrics import Point, as_grid_function, nodes, sup_metric
from .picard import CONVERGED, IterationTrace, PicardConfig, picard_iterate
from .report import Witness, VerificationReport, make_report

CONTRACTION_FACTOR = 0.125  # sup_t of the kernel row integral t(1 - t)/2


def _check_unit_interval(name: str, value: np.ndarray | float) -> np.ndarray:
    arr = np.asarray(value, dtype=float)
    if not np.all(np.isfinite(arr)) or np.any(arr < 0.0) or np.any(arr > 1.0):
        raise DomainError(f"{name} must lie in [0, 1]")
    return arr


def green_kernel(t, s):
    """Triangular kernel ``t(1 - s)`` for t <= s, ``s(1 - t)`` for s <= t;
    equivalently ``min(t, s) * (1 - max(t, s))``. Accepts scalars or arrays
    broadcast together; arguments must lie in [0, 1]."""
    ta = _check_unit_interval("t", t)
    sa = _check_unit_interval("s", s)
    out = np.minimum(ta, sa) * (1.0 - np.maximum(ta, sa))
    if out.ndim == 0:
        return float(out)
    return out


def green_row_integral(t):
    """Closed form of the kernel row integral over s: ``-t^2/2 + t/2``.

    Its maximum over [0, 1] is 1/8, attained at t = 1/2.
    """
    ta = _check_unit_interval("t", t)
    out = -0.5 * ta * ta + 0.5 * ta
    if out.ndim == 0:
        return float(out)
    return out


def _panel_weights(m: int) -> np.ndarray:
    """Composite Simpson weights (unit spacing) for one smooth panel of
    ``m >= 2`` subintervals: plain 1/3 rule when m is even, 1/3 plus a
    trailing 3/8 block when odd. All weights are positive and the rule is
    exact on cubics."""
    w = np.zeros(m + 1)
    if m == 0:
        return w
    if m == 1:
        return np.array([0.5, 0.5])
    if m % 2 == 0:
        w[0] = w[m] = 1.0 / 3.0
        w[1:m:2] = 4.0 / 3.0
        w[2:m:2] = 2.0 / 3.0
        return w
    head = m - 3
    if head > 0:
        w[0] = 1.0 / 3.0
        w[1:head:2] = 4.0 / 3.0
        w[2:head:2] = 2.0 / 3.0
        w[head] = 1.0 / 3.0
    w[head:] += np.array([3.0, 9.0, 9.0, 3.0]) / 8.0
    return w


# 3-point Newton-Cotes weights for the leading subinterval [x0, x1] of three
# equispaced nodes (exact on quadratics); used on the smooth kernel branch
# where a panel has a single subinterval.
_EDGE_RULE = np.array([5.0, 8.0, -1.0]) / 12.0


def kernel_quadrature_matrix(n: int) -> np.ndarray:
    """Matrix ``K`` with ``(K @ f_values)[i]`` the split-Simpson quadrature
    of ``G(t_i, s) f(s)`` over s.

    Row i integrates the two smooth panels [0, t_i] and [t_i, 1]
    independently; odd panels place their 3/8 block on the kink side. The
    one-subinterval panels at i = 1 and i = n - 1 apply the edge rule to the
    smooth branch extension (for n >= 4; the degenerate n = 2 grid falls
    back to the trapezoid)."""
    ts = nodes(n)
    h = 1.0 / n
    # branch formulas, each smooth on the whole square
    lower = ts[None, :] * (1.0 - ts[:, None])   # s (1 - t), exact where s <= t
    upper = ts[:, None] * (1.0 - ts[None, :])   # t (1 - s), exact where t <= s
    w_lower = np.zeros((n + 1, n + 1))
    w_upper = np.zeros((n + 1, n + 1))
    for i in range(n + 1):
        if i == 1 and n >= 4:
            w_lower[i, :3] = _EDGE_RULE
        else:
            w_lower[i, :i + 1] = _panel_weights(i)
        m = n - i
        if m == 1 and n >= 4:
            w_upper[i, n - 2:] = _EDGE_RULE[::-1]
        else:
            w_upper[i, i:] = _panel_weights(m)[::-1]
    return h * (w_lower * lower + w_upper * upper)


def row_integral_quadrature(n: int) -> np.ndarray:
    """Split-Simpson quadrature of each kernel row ``G(t_i, .)`` over s;
    agrees with :func:`green_row_integral` to rounding error because every
    panel rule is exact on linear integrands."""
    return kernel_quadrature_matrix(n) @ np.ones(n + 1)


@dataclass
class BVPProblem:
    """One Dirichlet problem ``-x'' = f(t, x)``, ``x(0) = x(1) = 0``.

    ``rhs(t, x)`` must accept numpy arrays of nodes and node values and
    return finite values (scalars broadcast). ``gate`` is an optional pair
    predicate ``xi(a, b)``; None means the always-open gate (constant 1),
    which admits every pair. The grid size must be even to keep the split
    Simpson panels aligned.
    """

    rhs: Callable[[np.ndarray, np.ndarray], np.ndarray]
    n: int = 100
    tolerance: float = 1e-8
    gate: Optional[Callable[[float, float], float]] = None
    name: str = "bvp"
    nodes: np.ndarray = field(init=False, repr=False)
    _kernel_weights: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"grid size must be at least 2, got {self.n}")
        if self.n % 2 != 0:
            raise ValueError(f"grid size must be even, got {self.n}")
        if not (math.isfinite(self.tolerance) and self.tolerance > 0.0):
            raise ValueError(f"tolerance must be positive, got {self.tolerance}")
        self.nodes = nodes(self.n)
        self._kernel_weights = kernel_quadrature_matrix(self.n)

    def gate_value(self, a: float, b: float) -> float:
        if self.gate is None:
            return 1.0
        return float(self.gate(float(a), float(b)))

    def rhs_values(self, x: np.ndarray) -> np.ndarray:
        values = np.asarray(self.rhs(self.nodes, x), dtype=float)
        if values.ndim == 0:
            values = np.full(self.nodes.shape, float(values))
        if values.shape != self.nodes.shape:
            raise DomainError(f"rhs returned shape {values.shape}, "
                              f"expected {self.nodes.shape}")
        if not np.all(np.isfinite(values)):
            raise DomainError("rhs produced non-finite values on the grid")
        return values


def integral_operator(problem: BVPProblem, x: Point) -> np.ndarray:
    """Apply the kernel-weighted quadrature to ``f(s, x(s))``; boundary
    nodes are exactly zero."""
    xa = as_grid_function(x)
    if xa.shape != problem.nodes.shape:
        raise DomainError(f"iterate has {xa.size} nodes, problem grid has "
                          f"{problem.nodes.size}")
    out = problem._kernel_weights @ problem.rhs_values(xa)
    out[0] = 0.0
    out[-1] = 0.0
    return out


def bvp_operator(problem: BVPProblem) -> Callable[[Point], np.ndarray]:
    """The problem's integral operator as a plain mapping for the Picard
    engine and the contraction verifiers."""
    return lambda x: integral_operator(problem, x)


def second_difference_residual(problem: BVPProblem, x: Point) -> float:
    """Max over interior nodes of ``|-(x_{i-1} - 2 x_i + x_{i+1})/h^2 -
    f(t_i, x_i)|``: how well the grid function solves the differential
    form of the problem."""
    xa = as_grid_function(x)
    h = 1.0 / problem.n
    lap = -(xa[:-2] - 2.0 * xa[1:-1] + xa[2:]) / (h * h)
    f_vals = problem.rhs_values(xa)[1:-1]
    return float(np.max(np.abs(lap - f_vals)))


@dataclass
class BVPSolution:
    values: np.ndarray
    trace: IterationTrace
    contraction_estimate: Optional[float]
    residual: float

    @property
    def converged(self) -> bool:
        return self.trace.termination == CONVERGED


def solve_bvp(problem: BVPProblem, cfg: PicardConfig | None = None) -> BVPSolution:
    """Picard-iterate the integral operator from the zero function.

    The zero start lies in the carrier and is admitted by the default gate.
    On any termination the solution record carries the trace, the observed
    maximum gap ratio, and the second-difference residual.
    """
    if cfg is None:
        cfg = PicardConfig(tolerance=problem.tolerance, max_iterations=200)
    x0 = np.zeros(problem.n + 1)
    trace = picard_iterate(bvp_operator(problem), x0, cfg, sup_metric)
    values = np.asarray(trace.final, dtype=float)
    defined = trace.defined_ratios()
    estimate = max(defined) if defined else None
    residual = second_difference_residual(problem, values)
    return BVPSolution(values=values, trace=trace,
                       contraction_estimate=estimate, residual=residual)


def check_rhs_displacement_bound(problem: BVPProblem,
                                 triples: Iterable[tuple[float, float, float]],
                                 tol: float = GRID_EPS) -> VerificationReport:
    """Check ``|f(t, a) - f(t, b)| <= max{|a - b|, |a - Ta|, |b - Tb|}`` on
    sampled ``(t, a, b)`` triples admitted by the gate.

    ``Ta`` embeds the constant function a, applies the integral operator,
    and reads the node nearest to t. Triples with a non-positive gate value
    are skipped (the bound is only required on gated pairs).
    """
    witnesses: list[Witness] = []
    checked = 0
    operator_cache: dict[float, np.ndarray] = {}

    def operator_on_constant(value: float) -> np.ndarray:
        if value not in operator_cache:
            constant = np.full(problem.n + 1, value)
            operator_cache[value] = integral_operator(problem, constant)
        return operator_cache[value]

    for t, a, b in triples:
        t, a, b = float(t), float(a), float(b)
        if not 0.0 <= t <= 1.0:
            raise DomainError(f"t = {t} outside [0, 1]")
        if problem.gate_value(a, b) <= 0.0:
            continue
        checked += 1
        index = int(round(t * problem.n))
        lhs = abs(float(problem.rhs(t, a)) - float(problem.rhs(t, b)))
        ta = float(operator_on_constant(a)[index])
        tb = float(operator_on_constant(b)[index])
        bound = max(abs(a - b), abs(a - ta), abs(b - tb))
        margin = bound - lhs
        if lhs > bound + tol:
            witnesses.append(Witness(
                "rhs/displacement", (t, a, b), margin,
                f"|f(t, a) - f(t, b)| = {lhs!r} exceeds the displacement max {bound!r}",
                lhs=lhs, bound=bound))
    return make_report("rhs-displacement-bound", witnesses, checked, tolerance=tol)


def check_operator_contraction(problem: BVPProblem,
                               pairs: Iterable[tuple[Point, Point]],
                               tol: float = GRID_EPS,
                               factor: float = CONTRACTION_FACTOR) -> VerificationReport:
    """Check ``||Tx - Ty||_inf <= factor * max{d(x, y), d(x, Tx), d(y, Ty)}``
    on sampled grid-function pairs; the default factor 1/8 is the kernel
    row-integral maximum."""
    T = bvp_operator(problem)
    witnesses: list[Witness] = []
    checked = 0
    for x, y in pairs:
        checked += 1
        tx = T(x)
        ty = T(y)
        lhs = sup_metric(tx, ty)
        m = max(sup_metric(x, y), sup_metric(x, tx), sup_metric(y, ty))
        bound = factor * m
        margin = bound - lhs
        if lhs > bound + tol:
            witnesses.append(Witness(
                "operator/contraction", (x, y), margin,
                f"||Tx - Ty|| = {lhs!r} exceeds {factor!r} * M = {bound!r}",
                lhs=lhs, bound=bound))
    return make_report("operator-contraction", witnesses, checked, tolerance=tol)


def gate_accepts_start(problem: BVPProblem, x0: Point) -> bool:
    """True when ``xi(x0(t), (T x0)(t)) >= 0`` at every node: the gate
    admits the starting iterate."""
    xa = as_grid_function(x0)
    tx = integral_operator(problem, xa)
    return all(problem.gate_value(a, b) >= 0.0 for a, b in zip(xa, tx))


def check_gate_propagation(problem: BVPProblem,
                           pairs: Iterable[tuple[Point, Point]]) -> VerificationReport:
    """Nodewise gate positivity must survive one application of the
    operator: ``xi(x(t), y(t)) > 0`` for all t implies
    ``xi(Tx(t), Ty(t)) > 0`` for all t."""
    witnesses: list[Witness] = []
    checked = 0
    for x, y in pairs:
        checked += 1
        xa = as_grid_function(x)
        ya = as_grid_function(y)
        if all(problem.gate_value(a, b) > 0.0 for a, b in zip(xa, ya)):
            tx = integral_operator(problem, xa)
            ty = integral_operator(problem, ya)
            values = [problem.gate_value(a, b) for a, b in zip(tx, ty)]
            worst = min(values)
            if worst <= 0.0:
                node = int(np.argmin(values))
                witnesses.append(Witness(
                    "gate/propagation", (x, y), worst,
                    f"gate positive on (x, y) but xi(Tx, Ty) = {worst!r} at node {node}",
                    lhs=worst, bound=0.0))
    return make_report("gate-propagation", witnesses, checked)


def check_gate_limit(problem: BVPProblem, sequence: Iterable[Point],
                     limit: Point) -> VerificationReport:
    """Falsification check of the gate's limit condition: when consecutive
    sequence members pass the gate nodewise and the sequence approaches
    ``limit``, each member paired with the limit must pass as well."""
    members = [as_grid_function(x) for x in sequence]
    limit_arr = as_grid_function(limit)
    witnesses: list[Witness] = []
    checked = 0
    consecutive_ok = all(
        all(problem.gate_value(a, b) > 0.0 for a, b in zip(members[k], members[k + 1]))
        for k in range(len(members) - 1))
    if consecutive_ok:
        for k, member in enumerate(members):
            checked += 1
            values = [problem.gate_value(a, b) for a, b in zip(member, limit_arr)]
            worst = min(values)
            if worst <= 0.0:
                node = int(np.argmin(values))
                witnesses.append(Witness(
                    "gate/limit", (k,), worst,
                    f"xi(x_{k}, limit) = {worst!r} at node {node} is not positive",
                    lhs=worst, bound=0.0))
    return make_report("gate-limit", witnesses, checked, mode="falsification")


def finite_difference_solve(problem: BVPProblem, damping: float = 0.8,
                            tol: float = 1e-12,
                            max_iterations: int = 400) -> np.ndarray:
    """Independent reference route: second-order central differences with a
    damped fixed-point iteration on the nonlinear system. Used to
    cross-check :func:`solve_bvp`; raises :class:`OracleError` when the
    iteration fails to converge."""
    if not 0.0 < damping <= 1.0:
        raise ValueError(f"damping must lie in (0, 1], got {damping}")
    n = problem.n
    h = 1.0 / n
    interior = n - 1
    banded = np.zeros((3, interior))
    banded[0, 1:] = -1.0 / (h * h)
    banded[1, :] = 2.0 / (h * h)
    banded[2, :-1] = -1.0 / (h * h)
    x = np.zeros(n + 1)
    for _ in range(max_iterations):
        f_vals = problem.rhs_values(x)[1:-1]
        solved = np.zeros(n + 1)
        solved[1:-1] = solve_banded((1, 1), banded, f_vals)
        x_next = (1.0 - damping) * x + damping * solved
        step = float(np.max(np.abs(x_next - x)))
        x = x_next
        if step <= tol:
            return x
    raise OracleError(f"finite-difference iteration did not reach {tol} "
                      f"within {max_iterations} sweeps")
