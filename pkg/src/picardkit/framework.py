"""Function families for generalized contraction hypotheses and their
sampling-based verifiers.

A contraction hypothesis is packaged as a :class:`ContractionBundle`
``(T, alpha, beta, zeta, G)`` and verified through the single inequality

    zeta(alpha(x, y) * d(Tx, Ty), beta(M) * M) >= c_G,

where ``M = max{d(x, y), d(x, Tx), d(y, Ty)}`` is the displacement gauge.
The family members carry their own side conditions:

* ``beta`` (Geraghty gain): values in [0, 1), and values tending to 1 must
  force arguments to 0;
* ``zeta`` (simulation function): zeta(0, 0) = 0, zeta(t, s) < s - t for
  positive arguments, and negative limsup along equal-limit positive
  sequences;
* ``G`` (C-class function): G(s, t) <= s with equality only at degenerate
  arguments, plus a benchmark constant c_G with G(s, t) > c_G forcing s > t;
* ``alpha`` (admissibility weight): nonnegative, and alpha >= 1 must survive
  one application of the mapping.

Pointwise conditions are checked exactly on the supplied samples, up to a
strictness epsilon. Limit-style conditions are *falsification* checks: a
pass means "no counterexample found on the supplied probes", never a proof.
All verifiers are pure and order-independent; sample sets may be partitioned,
checked concurrently, and the reports merged with
:func:`picardkit.report.merge_reports`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import DomainError
from .metrics import Metric, Point, PointMap
from .report import Witness, VerificationReport, make_report

# Strict inequalities are checked as "lhs < rhs - eps"; equalities use the
# same eps. Scalar-metric quantities resolve to 1e-12, sup-metric quantities
# to 1e-9 (quadrature noise).
SCALAR_EPS = 1e-12
GRID_EPS = 1e-9

MIN_TAIL = 25  # minimum tail length for limsup estimates


@dataclass(frozen=True)
class GeraghtyBeta:
    """Gain function ``beta(t)`` for t >= 0, expected to take values in
    [0, 1). The range condition is verified by :func:`check_geraghty`, not
    enforced per call, so bundles with boundary violations still evaluate."""

    fn: Callable[[float], float]
    name: str = "beta"

    def __call__(self, t: float) -> float:
        value = float(self.fn(float(t)))
        if not math.isfinite(value):
            raise DomainError(f"{self.name}({t}) is not finite")
        return value


@dataclass(frozen=True)
class SimulationFunction:
    """Two-argument function ``zeta(t, s)`` encoding a contraction
    inequality; ``sequence_axiom`` selects which limsup condition
    :func:`check_simulation_sequences` applies ("classic" accepts any
    equal-limit positive probes, "roldan" additionally requires t_n < s_n)."""

    fn: Callable[[float, float], float]
    name: str = "zeta"
    sequence_axiom: str = "classic"

    def __post_init__(self) -> None:
        if self.sequence_axiom not in ("classic", "roldan"):
            raise ValueError(f"unknown sequence axiom {self.sequence_axiom!r}")

    def __call__(self, t: float, s: float) -> float:
        value = float(self.fn(float(t), float(s)))
        if not math.isfinite(value):
            raise DomainError(f"{self.name}({t}, {s}) is not finite")
        return value


@dataclass(frozen=True)
class CClassFunction:
    """Function ``G(s, t)`` generalizing the subtraction ``s - t``, together
    with its benchmark constant ``c_g >= 0``."""

    fn: Callable[[float, float], float]
    c_g: float = 0.0
    name: str = "G"

    def __post_init__(self) -> None:
        if not (math.isfinite(self.c_g) and self.c_g >= 0.0):
            raise ValueError(f"c_g must be a finite nonnegative real, got {self.c_g}")

    def __call__(self, s: float, t: float) -> float:
        value = float(self.fn(float(s), float(t)))
        if not math.isfinite(value):
            raise DomainError(f"{self.name}({s}, {t}) is not finite")
        return value


@dataclass(frozen=True)
class AlphaFunction:
    """Nonnegative admissibility weight ``alpha(x, y)`` over the carrier."""

    fn: Callable[[Point, Point], float]
    name: str = "alpha"

    def __call__(self, x: Point, y: Point) -> float:
        value = float(self.fn(x, y))
        if not math.isfinite(value) or value < 0.0:
            raise DomainError(f"{self.name} must be finite and nonnegative, got {value}")
        return value


@dataclass(frozen=True)
class ContractionBundle:
    """One contraction hypothesis: the mapping plus its function family.

    ``caveats`` lists (check name, note) pairs for known benign boundary
    violations; the batch front-end reports these as caveats instead of
    failures while still showing the witness.
    """

    mapping: PointMap
    alpha: AlphaFunction
    beta: GeraghtyBeta
    zeta: SimulationFunction
    g: CClassFunction
    name: str = "bundle"
    caveats: tuple[tuple[str, str], ...] = ()

    def caveat_for(self, check_name: str) -> str | None:
        for name, note in self.caveats:
            if name == check_name:
                return note
        return None


def max_displacement(T: PointMap, x: Point, y: Point, d: Metric) -> float:
    """Displacement gauge ``max{d(x, y), d(x, Tx), d(y, Ty)}``.

    Metric-level validation surfaces mapping outputs that leave the carrier
    (wrong grid, non-finite values) as domain/dimension errors.
    """
    return max(d(x, y), d(x, T(x)), d(y, T(y)))


def _tail(length: int, min_tail: int = MIN_TAIL) -> int:
    return min(length, max(length // 4, min_tail))


def check_simulation_pointwise(zeta: SimulationFunction,
                               samples: Iterable[tuple[float, float]],
                               tol: float = SCALAR_EPS) -> VerificationReport:
    """Exact check of the origin value ``zeta(0, 0) = 0`` and of the strict
    bound ``zeta(t, s) < s - t`` on strictly positive samples.

    Samples with exactly one zero coordinate fall outside both clauses and
    are skipped. A useful sample set contains (0, 0) and a spread of
    strictly positive pairs.
    """
    witnesses: list[Witness] = []
    checked = 0
    for pair in samples:
        t, s = float(pair[0]), float(pair[1])
        if t < 0.0 or s < 0.0:
            raise DomainError(f"simulation-function samples must be nonnegative, got ({t}, {s})")
        if t == 0.0 and s == 0.0:
            checked += 1
            value = zeta(0.0, 0.0)
            margin = -abs(value)
            if margin < -tol:
                witnesses.append(Witness(
                    "simulation/origin", (0.0, 0.0), margin,
                    f"zeta(0, 0) = {value!r} is not 0", lhs=value, bound=0.0))
        elif t > 0.0 and s > 0.0:
            checked += 1
            value = zeta(t, s)
            margin = (s - t) - value
            if not margin > tol:
                witnesses.append(Witness(
                    "simulation/strict", (t, s), margin,
                    f"zeta({t!r}, {s!r}) = {value!r} is not strictly below s - t = {s - t!r}",
                    lhs=value, bound=s - t))
    return make_report("simulation-pointwise", witnesses, checked, tolerance=tol)


def check_simulation_sequences(zeta: SimulationFunction,
                               sequence_pairs: Iterable[tuple[Sequence[float], Sequence[float]]],
                               tol: float = SCALAR_EPS,
                               min_tail: int = MIN_TAIL) -> VerificationReport:
    """Falsification check of the negative-limsup condition along probe
    sequence pairs sharing a positive limit.

    The limsup is estimated by the maximum of zeta over the final quarter of
    each probe (at least ``min_tail`` terms); supply longer probes for
    sharper estimates. A pass refutes nothing beyond the supplied probes.
    """
    pairs = list(sequence_pairs)
    witnesses: list[Witness] = []
    for index, (t_seq, s_seq) in enumerate(pairs):
        tn = np.asarray(t_seq, dtype=float)
        sn = np.asarray(s_seq, dtype=float)
        if tn.size == 0 or tn.size != sn.size:
            raise DomainError(f"probe pair {index} must be two non-empty sequences of equal length")
        if not (np.all(np.isfinite(tn)) and np.all(np.isfinite(sn))):
            raise DomainError(f"probe pair {index} contains non-finite terms")
        if float(tn.min()) <= 0.0 or float(sn.min()) <= 0.0:
            raise DomainError(f"probe pair {index} must be strictly positive")
        if zeta.sequence_axiom == "roldan" and not np.all(tn < sn):
            raise DomainError(f"probe pair {index} must satisfy t_n < s_n elementwise (roldan mode)")
        k = _tail(tn.size, min_tail)
        tails_t, tails_s = tn[-k:], sn[-k:]
        values = [zeta(float(a), float(b)) for a, b in zip(tails_t, tails_s)]
        best = int(np.argmax(values))
        estimate = float(values[best])
        if estimate >= -tol:
            witnesses.append(Witness(
                "simulation/limit", (index, float(tails_t[best]), float(tails_s[best])),
                -estimate,
                f"tail limsup estimate {estimate!r} over {k} terms is not negative",
                lhs=estimate, bound=0.0))
    return make_report("simulation-limits", witnesses, len(pairs),
                       mode="falsification", tolerance=tol)


def check_cclass(g: CClassFunction, samples: Iterable[tuple[float, float]],
                 tol: float = SCALAR_EPS) -> VerificationReport:
    """Check the C-class clauses on sampled ``(s, t)`` from the closed
    positive quadrant:

    * upper bound: G(s, t) <= s;
    * degeneracy: G(s, t) = s (within tol) only when s or t is within tol of 0;
    * benchmark: G(s, t) > c_g forces s > t;
    * zero row: G(s, t) <= c_g whenever s = 0.

    The zero-row clause is evaluated at s = 0 only; a useful sample set
    covers s = 0, t = 0, and the open quadrant.
    """
    witnesses: list[Witness] = []
    checked = 0
    c = float(g.c_g)
    for pair in samples:
        s, t = float(pair[0]), float(pair[1])
        if s < 0.0 or t < 0.0:
            raise DomainError(f"C-class samples must be nonnegative, got ({s}, {t})")
        checked += 1
        value = g(s, t)
        upper_margin = s - value
        if upper_margin < -tol:
            witnesses.append(Witness(
                "cclass/upper", (s, t), upper_margin,
                f"G({s!r}, {t!r}) = {value!r} exceeds s", lhs=value, bound=s))
        elif abs(value - s) <= tol and s > tol and t > tol:
            witnesses.append(Witness(
                "cclass/degenerate", (s, t), -min(s, t),
                f"G = s at non-degenerate arguments s={s!r}, t={t!r}",
                lhs=value, bound=s))
        if value > c + tol and not s > t + tol:
            witnesses.append(Witness(
                "cclass/benchmark", (s, t), s - t,
                f"G({s!r}, {t!r}) = {value!r} exceeds c_g = {c!r} but s <= t",
                lhs=value, bound=c))
        if s <= tol and value > c + tol:
            witnesses.append(Witness(
                "cclass/zero-row", (s, t), c - value,
                f"G({s!r}, {t!r}) = {value!r} exceeds c_g = {c!r} on the s = 0 row",
                lhs=value, bound=c))
    return make_report("cclass", witnesses, checked, tolerance=tol)


def check_geraghty(beta: GeraghtyBeta, samples: Iterable[float],
                   probe_sequences: Iterable[Sequence[float]] = (),
                   tol: float = SCALAR_EPS, limit_tol: float = 1e-9,
                   separation: float = 1e-6,
                   min_tail: int = MIN_TAIL) -> VerificationReport:
    """Range check ``beta(t) in [0, 1)`` on the samples, plus falsification
    probes of the limit property: a witness is reported when beta tends to 1
    (tail values within ``limit_tol`` of 1) along a probe whose arguments
    stay at least ``separation`` away from 0.
    """
    witnesses: list[Witness] = []
    checked = 0
    for raw in samples:
        t = float(raw)
        if t < 0.0:
            raise DomainError(f"beta samples must be nonnegative, got {t}")
        checked += 1
        value = beta(t)
        if value < -tol:
            witnesses.append(Witness(
                "geraghty/range", (t,), value,
                f"beta({t!r}) = {value!r} is below 0", lhs=value, bound=0.0))
        elif not (1.0 - value) > tol:
            witnesses.append(Witness(
                "geraghty/range", (t,), 1.0 - value,
                f"beta({t!r}) = {value!r} is not strictly below 1", lhs=value, bound=1.0))
    probes = list(probe_sequences)
    for index, seq in enumerate(probes):
        arr = np.asarray(seq, dtype=float)
        if arr.size == 0 or not np.all(np.isfinite(arr)) or float(arr.min()) < 0.0:
            raise DomainError(f"beta probe {index} must be non-empty, finite and nonnegative")
        k = _tail(arr.size, min_tail)
        tail = arr[-k:]
        tail_beta = np.array([beta(float(u)) for u in tail])
        tail_min_t = float(tail.min())
        tail_min_beta = float(tail_beta.min())
        if tail_min_beta >= 1.0 - limit_tol and tail_min_t >= separation:
            witnesses.append(Witness(
                "geraghty/limit", (index, tail_min_t), -tail_min_t,
                f"beta tends to 1 (tail min beta = {tail_min_beta!r}) while the "
                f"arguments stay above {tail_min_t!r}",
                lhs=tail_min_beta, bound=1.0))
    notes = ("range clause is exact; limit clause is falsification-only",) if probes else ()
    return make_report("geraghty", witnesses, checked + len(probes),
                       mode="falsification" if probes else "exact",
                       tolerance=tol, notes=notes)


def check_alpha_admissible(T: PointMap, alpha: AlphaFunction,
                           pairs: Iterable[tuple[Point, Point]],
                           tol: float = SCALAR_EPS) -> VerificationReport:
    """``alpha(x, y) >= 1`` must survive one application of the mapping."""
    witnesses: list[Witness] = []
    checked = 0
    for x, y in pairs:
        checked += 1
        if alpha(x, y) >= 1.0 - tol:
            value = alpha(T(x), T(y))
            if value < 1.0 - tol:
                witnesses.append(Witness(
                    "alpha/admissible", (x, y), value - 1.0,
                    f"alpha(x, y) >= 1 but alpha(Tx, Ty) = {value!r}",
                    lhs=value, bound=1.0))
    return make_report("alpha-admissible", witnesses, checked, tolerance=tol)


def check_triangular_alpha(alpha: AlphaFunction,
                           triples: Iterable[tuple[Point, Point, Point]],
                           tol: float = SCALAR_EPS) -> VerificationReport:
    """``alpha(x, z) >= 1`` and ``alpha(z, y) >= 1`` must force
    ``alpha(x, y) >= 1`` on every sampled triple."""
    witnesses: list[Witness] = []
    checked = 0
    for x, z, y in triples:
        checked += 1
        if alpha(x, z) >= 1.0 - tol and alpha(z, y) >= 1.0 - tol:
            value = alpha(x, y)
            if value < 1.0 - tol:
                witnesses.append(Witness(
                    "alpha/triangular", (x, z, y), value - 1.0,
                    f"alpha chains through z but alpha(x, y) = {value!r}",
                    lhs=value, bound=1.0))
    return make_report("alpha-triangular", witnesses, checked, tolerance=tol)


def verify_contraction(bundle: ContractionBundle,
                       pairs: Iterable[tuple[Point, Point]],
                       d: Metric, tol: float = SCALAR_EPS) -> VerificationReport:
    """Sampled check of the master inequality

        zeta(alpha(x, y) * d(Tx, Ty), beta(M) * M) >= c_G

    with ``M = max{d(x, y), d(x, Tx), d(y, Ty)}``. The carrier must be
    closed under the mapping on the sampled pairs; witnesses carry the pair,
    the left-hand value, the benchmark c_G, and the margin.
    """
    T = bundle.mapping
    c = float(bundle.g.c_g)
    witnesses: list[Witness] = []
    checked = 0
    for x, y in pairs:
        checked += 1
        tx = T(x)
        ty = T(y)
        m = max(d(x, y), d(x, tx), d(y, ty))
        lhs = bundle.zeta(bundle.alpha(x, y) * d(tx, ty), bundle.beta(m) * m)
        margin = lhs - c
        if margin < -tol:
            witnesses.append(Witness(
                "contraction", (x, y), margin,
                f"zeta(alpha*d(Tx, Ty), beta(M)*M) = {lhs!r} falls below c_g = {c!r}",
                lhs=lhs, bound=c))
    return make_report("contraction", witnesses, checked, tolerance=tol,
                       notes=(f"bundle={bundle.name}",))
