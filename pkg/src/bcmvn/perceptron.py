"""Perceptron trainers: real, complex multi-valued neuron, bicomplex MVN.

Complex MVN rule, for a sample ``X`` with desired sector ``q`` whose weighted
sum currently falls in sector ``s``::

    W <- W + C * c(q, s) * conj(X)        bias <- bias + C * c(q, s)

With ``target="root"`` the coefficient is ``c = eps**q - eps**s``, the rule as
usually printed. Sectors own the arc ``[2 pi l/k, 2 pi (l+1)/k)``, so ``eps**l``
sits on a sector's edge and for ``k = 2`` that correction is parallel to the
boundary: it can never move a sample across it. The default
``target="bisector"`` aims at the sector centres instead,
``c = eps**(q + 1/2) - eps**(s + 1/2)``. With that choice the norm and margin
estimates of the convergence argument hold step by step (see
:func:`complex_upper_constant` and :func:`complex_lower_constant`).

A weighted sum at the origin has no sector. The trainers record ``s = None``
and use ``c = eps**(q + shift)``, i.e. they move straight towards the target;
this is what happens on the first sample from the all-zero start.

The bicomplex rule ``W <- W + C xi X*`` with
``xi = c(q1, s1) e1 + c(q2, s2) e2`` is two independent complex rules, one per
idempotent slot. The ``lockstep`` schedule realizes the step count
``max(n1, n2)``: each joint step pairs the next slot-1 mistake with the next
slot-2 mistake (the sample set is a direct sum ``T1 e1 + T2 e2``, so the pair
is itself an admissible input).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from itertools import zip_longest
from typing import Optional

import numpy as np

from .activation import SectorConfig, sector_index
from .algebra import Bicomplex, Hyperbolic, bc_mul_cartesian, bc_scale
from .datasets import BicomplexDataset, ComplexDataset, RealSeparableProblem
from .errors import MissingHiddenError, NonPositiveRateError, NotConvergedError, ZeroArgumentError
from .linalg import BicomplexVector

RULE_FORMS = ("idempotent", "direct")
TARGETS = ("bisector", "root")
SCHEDULES = ("lockstep", "sample")


@dataclass(frozen=True)
class TrainConfig:
    k: int = 2
    C: float = 1.0
    max_epochs: int = 10_000
    seed: int = 0
    rule_form: str = "idempotent"
    target: str = "bisector"
    schedule: str = "lockstep"
    shuffle: bool = False
    boundary_tolerance: float = 1e-12
    use_bias: bool = True
    record_weights: bool = False

    def __post_init__(self):
        if not self.C > 0:
            raise ValueError("C must be > 0")
        if self.max_epochs < 0:
            raise ValueError("max_epochs must be >= 0")
        for name, allowed in (("rule_form", RULE_FORMS), ("target", TARGETS), ("schedule", SCHEDULES)):
            if getattr(self, name) not in allowed:
                raise ValueError(f"{name} must be one of {allowed}")

    @property
    def sectors(self) -> SectorConfig:
        return SectorConfig(self.k, self.boundary_tolerance)

    def to_json(self):
        return {
            "k": self.k,
            "C": self.C,
            "max_epochs": self.max_epochs,
            "seed": self.seed,
            "rule_form": self.rule_form,
            "target": self.target,
            "schedule": self.schedule,
            "shuffle": self.shuffle,
            "boundary_tolerance": self.boundary_tolerance,
            "use_bias": self.use_bias,
        }

    @classmethod
    def from_json(cls, obj):
        known = {f for f in cls.__dataclass_fields__}
        return cls(**{key: value for key, value in obj.items() if key in known})


@dataclass
class UpdateRecord:
    step: int
    sample: object
    q: object
    s: object
    norm: object


@dataclass
class TrainingTrace:
    """Log of every non-identity update plus per-epoch mistake counts.

    For the bicomplex trainer ``sample``, ``q`` and ``s`` are pairs, ``norm``
    is the hyperbolic norm of the (bias-augmented) weights and ``epochs``
    holds one ``(slot1, slot2)`` count per epoch.
    """

    mode: str
    config: dict = field(default_factory=dict)
    updates: list = field(default_factory=list)
    epochs: list = field(default_factory=list)
    converged: bool = False
    weights: Optional[list] = None

    @property
    def steps_to_converge(self) -> int:
        return len(self.updates)

    def slot_steps(self):
        """Per-slot update counts ``(n1, n2)`` of a bicomplex trace."""
        n1 = sum(1 for u in self.updates if u.q[0] != u.s[0])
        n2 = sum(1 for u in self.updates if u.q[1] != u.s[1])
        return n1, n2


# real perceptron


def _rate_fn(rates):
    if rates is None:
        return lambda n: 1.0
    if callable(rates):
        return rates
    seq = list(rates)
    return lambda n: seq[n - 1]


def rate_condition_check(rates, horizon: int) -> float:
    """``sum(e(m)**2) / sum(e(m))**2`` over ``m = 1..horizon``.

    ``rates`` is a callable ``m -> e(m)`` or a sequence indexed from ``m = 1``.
    The normalized-step perceptron is guaranteed to stop when this ratio tends
    to 0; constant rates give exactly ``1 / horizon``.
    """
    e = np.array([float(_rate_fn(rates)(m)) for m in range(1, horizon + 1)])
    if np.any(e <= 0):
        raise NonPositiveRateError("rates must be strictly positive")
    return float(np.sum(e * e) / np.sum(e) ** 2)


def real_perceptron_train(problem: RealSeparableProblem, rates=None, max_epochs=1000, record_weights=False):
    """Normalized perceptron over cyclic passes of ``problem``.

    Starts from the first sample, signed by its class and normalized, and on
    each mistake (``y * a.x <= 0``) adds ``e(n) * y * x / ||x||`` where ``n``
    counts updates from 1. Returns ``(a, trace)``.
    """
    X = np.asarray(problem.X, float)
    y = np.asarray(problem.labels, int)
    norms = np.linalg.norm(X, axis=1)
    if np.any(norms == 0):
        raise ValueError("samples must be nonzero")
    U = y[:, None] * X / norms[:, None]
    rate = _rate_fn(rates)
    a = U[0].copy()
    trace = TrainingTrace("real", {"max_epochs": max_epochs, "unit_rates": rates is None})
    if record_weights:
        trace.weights = [a.copy()]
    for _ in range(max_epochs):
        errors = 0
        for i in range(len(y)):
            dot = float(a @ X[i])
            if y[i] * dot > 0:
                continue
            errors += 1
            a = a + rate(len(trace.updates) + 1) * U[i]
            s = 0 if dot == 0 else (1 if dot > 0 else -1)
            trace.updates.append(UpdateRecord(len(trace.updates) + 1, i, int(y[i]), s, float(np.linalg.norm(a))))
            if record_weights:
                trace.weights.append(a.copy())
        trace.epochs.append(errors)
        if errors == 0:
            trace.converged = True
            return a, trace
    raise NotConvergedError(
        f"no clean epoch within {max_epochs} epochs",
        best_epoch_errors=min(trace.epochs, default=None), weights=a, trace=trace,
    )


# complex MVN


@dataclass(frozen=True)
class ComplexWeights:
    bias: complex
    w: np.ndarray

    @classmethod
    def zeros(cls, n):
        return cls(0j, np.zeros(n, complex))

    @property
    def augmented(self):
        return np.concatenate(([self.bias], self.w))

    def norm(self) -> float:
        return float(math.sqrt(abs(self.bias) ** 2 + float(np.vdot(self.w, self.w).real)))

    def weighted_sum(self, x) -> complex:
        return self.bias + complex(np.dot(self.w, x))


def correction(q, s, sectors: SectorConfig, target="bisector") -> complex:
    """Coefficient ``c(q, s)`` of the learning rule (0 exactly when ``s == q``)."""
    if s == q:
        return 0j
    shift = 0.5 if target == "bisector" else 0.0
    goal = sectors.root(q + shift)
    return goal if s is None else goal - sectors.root(s + shift)


def _sector_or_none(z, sectors, scale):
    try:
        return sector_index(z, sectors, scale)
    except ZeroArgumentError:
        return None


def mvn_step_complex(weights: ComplexWeights, x, q: int, cfg: TrainConfig, sectors=None):
    """One application of the complex rule; returns ``(new_weights, s)``."""
    sectors = sectors or cfg.sectors
    x = np.asarray(x, complex)
    z = weights.weighted_sum(x)
    scale = weights.norm() * math.sqrt(1.0 + float(np.vdot(x, x).real))
    s = _sector_or_none(z, sectors, scale)
    c = cfg.C * correction(q, s, sectors, cfg.target)
    if c == 0:
        return weights, s
    bias = weights.bias + c if cfg.use_bias else weights.bias
    return ComplexWeights(bias, weights.w + c * np.conj(x)), s


def _order(m, cfg, rng):
    return rng.permutation(m) if cfg.shuffle else range(m)


def mvn_train_complex(dataset: ComplexDataset, cfg: TrainConfig, init: Optional[ComplexWeights] = None):
    """Cycle the dataset until a full epoch makes no update; returns ``(weights, trace)``."""
    X = np.asarray(dataset.X, complex)
    labels = [int(q) for q in dataset.labels]
    if len(labels) == 0:
        raise ValueError("empty dataset")
    if cfg.k != dataset.k:
        cfg = replace(cfg, k=dataset.k)
    sectors = cfg.sectors
    weights = init or ComplexWeights.zeros(X.shape[1])
    rng = np.random.default_rng(cfg.seed)
    trace = TrainingTrace("complex", cfg.to_json())
    if cfg.record_weights:
        trace.weights = [weights]
    for _ in range(cfg.max_epochs):
        errors = 0
        for i in _order(len(labels), cfg, rng):
            q = labels[i]
            weights, s = mvn_step_complex(weights, X[i], q, cfg, sectors)
            if s == q:
                continue
            errors += 1
            trace.updates.append(UpdateRecord(len(trace.updates) + 1, int(i), q, s, weights.norm()))
            if cfg.record_weights:
                trace.weights.append(weights)
        trace.epochs.append(errors)
        if errors == 0:
            trace.converged = True
            return weights, trace
    raise NotConvergedError(
        f"no clean epoch within {cfg.max_epochs} epochs",
        best_epoch_errors=min(trace.epochs, default=None), weights=weights, trace=trace,
    )


# bicomplex MVN


@dataclass(frozen=True)
class BicomplexWeights:
    bias: Bicomplex
    w: BicomplexVector

    @classmethod
    def zeros(cls, n):
        return cls(Bicomplex(0.0), BicomplexVector(np.zeros(n, complex)))

    @classmethod
    def from_slots(cls, first: ComplexWeights, second: ComplexWeights):
        return cls(
            Bicomplex.from_idempotent(first.bias, second.bias),
            BicomplexVector.from_slots(first.w, second.w),
        )

    def slots(self):
        """The two complex weight sets carried by the idempotent slots."""
        b1, b2 = self.bias.idempotent
        W1, W2 = self.w.slots
        return ComplexWeights(complex(b1), W1), ComplexWeights(complex(b2), W2)

    def norm(self) -> Hyperbolic:
        """Hyperbolic norm of the bias-augmented weight vector."""
        first, second = self.slots()
        return Hyperbolic.from_idempotent(first.norm(), second.norm())


def bc_sectors(weights: BicomplexWeights, X: BicomplexVector, sectors: SectorConfig):
    """Sector pair of the weighted sum; ``None`` in a slot whose sum is at the origin."""
    out = []
    for wt, x in zip(weights.slots(), X.slots):
        scale = wt.norm() * math.sqrt(1.0 + float(np.vdot(x, x).real))
        out.append(_sector_or_none(wt.weighted_sum(x), sectors, scale))
    return tuple(out)


def _xi(q, s, cfg, sectors):
    return (
        cfg.C * correction(q[0], s[0], sectors, cfg.target),
        cfg.C * correction(q[1], s[1], sectors, cfg.target),
    )


def mvn_step_bc_idempotent(weights: BicomplexWeights, X: BicomplexVector, q, cfg: TrainConfig, sectors=None):
    """``W <- W + C xi X*`` computed in idempotent coordinates; returns ``(new_weights, (s1, s2))``."""
    sectors = sectors or cfg.sectors
    s = bc_sectors(weights, X, sectors)
    c1, c2 = _xi(q, s, cfg, sectors)
    if c1 == 0 and c2 == 0:
        return weights, s
    xi = Bicomplex.from_idempotent(c1, c2)
    bias = weights.bias + xi if cfg.use_bias else weights.bias
    return BicomplexWeights(bias, BicomplexVector.wrap(weights.w + xi * X.star())), s


_ONE_PLUS_K = Bicomplex(1.0, 1j)
_ONE_MINUS_K = Bicomplex(1.0, -1j)


def mvn_step_bc_direct(weights: BicomplexWeights, X: BicomplexVector, q, cfg: TrainConfig, sectors=None):
    """Same update written in the units ``i, j`` with cartesian products::

        W <- W + (C/2) [ (1 + ij) c1 X* + (1 - ij) c2 X* ]

    where ``c1, c2`` are the slot coefficients taken as elements of C(i).
    """
    sectors = sectors or cfg.sectors
    s = bc_sectors(weights, X, sectors)
    c1, c2 = _xi(q, s, cfg, sectors)
    if c1 == 0 and c2 == 0:
        return weights, s
    Xs = X.star()
    dw = bc_mul_cartesian(_ONE_PLUS_K, bc_scale(c1 / 2, Xs)) + bc_mul_cartesian(_ONE_MINUS_K, bc_scale(c2 / 2, Xs))
    bias = weights.bias
    if cfg.use_bias:
        bias = bias + bc_mul_cartesian(_ONE_PLUS_K, Bicomplex(c1 / 2)) + bc_mul_cartesian(_ONE_MINUS_K, Bicomplex(c2 / 2))
    return BicomplexWeights(bias, BicomplexVector.wrap(weights.w + dw)), s


_STEPS = {"idempotent": mvn_step_bc_idempotent, "direct": mvn_step_bc_direct}


class _SlotCursor:
    """Walks one idempotent slot through its epochs, stopping at mistakes."""

    def __init__(self, idx, X, labels, cfg, sectors):
        self.idx, self.X, self.labels = idx, X, labels
        self.cfg, self.sectors = cfg, sectors
        self.rng = np.random.default_rng(cfg.seed)
        self.epochs, self.errors, self.pos = [], 0, 0
        self.order = list(_order(len(labels), cfg, self.rng))
        self.clean = False

    def next_mistake(self, weights: ComplexWeights):
        """Index of the next misclassified sample, or ``None`` once an epoch is clean."""
        m = len(self.labels)
        while not self.clean:
            if self.pos == m:
                self.epochs.append(self.errors)
                if self.errors == 0:
                    self.clean = True
                    break
                if len(self.epochs) >= self.cfg.max_epochs:
                    raise _SlotExhausted()
                self.pos, self.errors = 0, 0
                self.order = list(_order(m, self.cfg, self.rng))
            i = self.order[self.pos]
            x = self.X[i]
            scale = weights.norm() * math.sqrt(1.0 + float(np.vdot(x, x).real))
            if _sector_or_none(weights.weighted_sum(x), self.sectors, scale) != self.labels[i]:
                return i
            self.pos += 1
        return None

    def advance(self):
        self.errors += 1
        self.pos += 1


class _SlotExhausted(Exception):
    pass


def mvn_train_bc(dataset: BicomplexDataset, cfg: TrainConfig, init: Optional[BicomplexWeights] = None):
    """Bicomplex MVN training; returns ``(weights, trace)``.

    ``cfg.schedule == "lockstep"`` pairs slot mistakes as described in the
    module docstring, so ``trace.steps_to_converge == max(n1, n2)``.
    ``"sample"`` presents whole dataset samples in order and updates when
    either slot is wrong.
    """
    if len(dataset) == 0:
        raise ValueError("empty dataset")
    if cfg.k != dataset.k:
        cfg = replace(cfg, k=dataset.k)
    n = dataset.Z1.shape[1]
    weights = init or BicomplexWeights.zeros(n)
    trace = TrainingTrace("bicomplex", cfg.to_json())
    if cfg.record_weights:
        trace.weights = [weights]
    if cfg.schedule == "lockstep":
        return _train_bc_lockstep(dataset, cfg, weights, trace)
    return _train_bc_samples(dataset, cfg, weights, trace)


def _record(trace, cfg, weights, sample, q, s):
    trace.updates.append(UpdateRecord(len(trace.updates) + 1, sample, q, s, weights.norm()))
    if cfg.record_weights:
        trace.weights.append(weights)


def _not_converged(cfg, weights, trace):
    best = min(trace.epochs, key=sum, default=None)
    return NotConvergedError(
        f"no clean epoch within {cfg.max_epochs} epochs", best_epoch_errors=best, weights=weights, trace=trace
    )


def _train_bc_lockstep(dataset, cfg, weights, trace):
    sectors = cfg.sectors
    step = _STEPS[cfg.rule_form]
    batch = dataset.batch
    X1, X2 = (np.asarray(v) for v in batch.idempotent)
    labels = dataset.labels
    cursors = [
        _SlotCursor(0, X1, [int(q) for q in labels[:, 0]], cfg, sectors),
        _SlotCursor(1, X2, [int(q) for q in labels[:, 1]], cfg, sectors),
    ]
    if cfg.max_epochs == 0:
        raise _not_converged(cfg, weights, trace)
    try:
        while True:
            slot_w = weights.slots()
            picks = [cur.next_mistake(wt) for cur, wt in zip(cursors, slot_w)]
            if picks[0] is None and picks[1] is None:
                break
            # a finished slot borrows the other slot's sample; it is classified correctly there
            i1 = picks[0] if picks[0] is not None else picks[1]
            i2 = picks[1] if picks[1] is not None else picks[0]
            X = BicomplexVector.from_slots(X1[i1], X2[i2])
            q = (int(labels[i1, 0]), int(labels[i2, 1]))
            weights, s = step(weights, X, q, cfg, sectors)
            for cur, pick in zip(cursors, picks):
                if pick is not None:
                    cur.advance()
            _record(trace, cfg, weights, (int(i1), int(i2)), q, s)
    except _SlotExhausted:
        trace.epochs = [tuple(e) for e in zip_longest(cursors[0].epochs, cursors[1].epochs, fillvalue=0)]
        raise _not_converged(cfg, weights, trace) from None
    trace.epochs = [tuple(e) for e in zip_longest(cursors[0].epochs, cursors[1].epochs, fillvalue=0)]
    trace.converged = True
    return weights, trace


def _train_bc_samples(dataset, cfg, weights, trace):
    sectors = cfg.sectors
    step = _STEPS[cfg.rule_form]
    vectors = dataset.vectors()
    labels = [(int(a), int(b)) for a, b in dataset.labels]
    rng = np.random.default_rng(cfg.seed)
    for _ in range(cfg.max_epochs):
        e1 = e2 = 0
        for i in _order(len(labels), cfg, rng):
            q = labels[i]
            weights, s = step(weights, vectors[i], q, cfg, sectors)
            if s == q:
                continue
            e1 += s[0] != q[0]
            e2 += s[1] != q[1]
            _record(trace, cfg, weights, (int(i), int(i)), q, s)
        trace.epochs.append((e1, e2))
        if e1 == 0 and e2 == 0:
            trace.converged = True
            return weights, trace
    raise _not_converged(cfg, weights, trace)


# convergence constants


def max_correction_sq(k: int) -> float:
    """``max |eps**d - 1|**2`` over ``d = 1..k-1`` (4 for even ``k``)."""
    return max(abs(np.exp(2j * np.pi * d / k) - 1) ** 2 for d in range(1, k))


def complex_upper_constant(X, cfg: TrainConfig) -> float:
    """``M_bound = C**2 * max|c|**2 * max(||x||**2 + 1)``; the ``+ 1`` is the bias input.

    With bisector targets the cross term ``2 C Re(conj(c) z)`` of every
    update is non-positive, hence ``||W_t||**2 <= t * M_bound`` after ``t``
    updates from zero.
    """
    X = np.asarray(X, complex)
    aug = np.max(np.sum(np.abs(X) ** 2, axis=1)) + (1.0 if cfg.use_bias else 0.0)
    return float(cfg.C**2 * max(max_correction_sq(cfg.k), 1.0) * aug)


def complex_lower_constant(X, labels, hidden, cfg: TrainConfig) -> float:
    """Smallest possible gain ``m`` of ``Re <W, V>`` per update, ``V`` a rotated hidden vector.

    ``V = hidden`` for bisector targets and ``eps**(-1/2) * hidden`` for root
    targets; ``||V|| = ||hidden||`` either way, so
    ``||W_t|| >= t * m / ||hidden||``. The minimum runs over every sample and
    every wrong (or undefined) actual sector.
    """
    sectors = cfg.sectors
    rot = 1.0 if cfg.target == "bisector" else np.conj(sectors.root(0.5))
    z = np.asarray(X, complex) @ np.asarray(hidden, complex)
    m = math.inf
    for zi, q in zip(z, labels):
        for s in [None, *range(cfg.k)]:
            if s == q:
                continue
            gain = cfg.C * (correction(int(q), s, sectors, cfg.target) * np.conj(rot * zi)).real
            m = min(m, gain)
    return float(m)


@dataclass
class BoundCheck:
    name: str
    passed: bool
    detail: str


def check_complex_bounds(steps, norms, X, labels, hidden, cfg: TrainConfig, rel_tol=1e-9):
    """Checks the sandwich ``t m / ||hidden|| <= ||W_t|| <= sqrt(t M_bound)`` at every update.

    ``steps[i]`` is the number of non-identity updates behind ``norms[i]``.
    Also checks the resulting cap ``t <= M_bound ||hidden||**2 / m**2``.
    """
    M = complex_upper_constant(X, cfg)
    m = complex_lower_constant(X, labels, hidden, cfg)
    h = float(np.linalg.norm(hidden))
    steps = np.asarray(steps, float)
    norms = np.asarray(norms, float)
    worst_up = float(np.max(norms**2 / (steps * M))) if len(steps) else 0.0
    up_ok = bool(np.all(norms**2 <= steps * M * (1 + rel_tol)))
    if m > 0:
        low = steps * m / h
        low_ok = bool(np.all(norms >= low * (1 - rel_tol)))
        cap = M * h * h / (m * m)
        cap_ok = bool(steps.max(initial=0) <= cap)
    else:
        low_ok = cap_ok = False
        cap = math.inf
    t = int(steps.max(initial=0))
    return [
        BoundCheck("upper", up_ok, f"||W_t||^2 <= t*M_bound, M_bound={M:.6g}, worst ratio={worst_up:.6g}"),
        BoundCheck("lower", low_ok, f"||W_t|| >= t*m/||W*||, m={m:.6g}, ||W*||={h:.6g}"),
        BoundCheck("step_cap", cap_ok, f"t={t} <= M_bound*||W*||^2/m^2={cap:.6g}"),
    ]


def check_real_bound(steps: int, delta: float):
    """``M + 1 <= 1/delta**2`` and the integer form ``M + 1 <= ceil(1/delta**2)``."""
    limit = 1.0 / delta**2
    return [
        BoundCheck("margin", steps + 1 <= limit, f"M+1={steps + 1} <= 1/delta^2={limit:.6g}"),
        BoundCheck("margin_ceil", steps + 1 <= math.ceil(limit), f"M+1={steps + 1} <= ceil(1/delta^2)={math.ceil(limit)}"),
    ]


def trace_bound_checks(dataset, trace: TrainingTrace, rel_tol=1e-9):
    """All bound checks that apply to ``trace`` given the dataset's hidden separator."""
    if dataset.hidden is None:
        raise MissingHiddenError("dataset carries no hidden separator")
    if trace.mode == "real":
        if not trace.config.get("unit_rates", True):
            return [BoundCheck("margin", True, "skipped: non-unit rates")]
        return check_real_bound(trace.steps_to_converge, dataset.hidden.delta)
    cfg = TrainConfig.from_json({**trace.config, "k": dataset.k})
    if trace.mode == "complex":
        steps = [u.step for u in trace.updates]
        norms = [u.norm for u in trace.updates]
        return check_complex_bounds(steps, norms, dataset.X, dataset.labels, dataset.hidden, cfg, rel_tol)
    out = []
    for idx in (0, 1):
        slot = dataset.slot(idx)
        count, steps, norms = 0, [], []
        for u in trace.updates:
            if u.q[idx] != u.s[idx]:
                count += 1
                steps.append(count)
                norms.append(u.norm.s if idx == 0 else u.norm.t)
        for check in check_complex_bounds(steps, norms, slot.X, slot.labels, slot.hidden, cfg, rel_tol):
            out.append(BoundCheck(f"slot{idx + 1}_{check.name}", check.passed, check.detail))
    return out
