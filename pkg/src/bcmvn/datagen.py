"""Seeded generators for separable problems, with the hidden separator kept.

All three generators use rejection sampling against a hidden weight vector
drawn first from the seeded stream. Candidates are drawn in fixed-size
batches, so for a fixed seed the candidate stream does not depend on the
margin; a larger margin only rejects more of the same stream.
"""

from __future__ import annotations

import math

import numpy as np

from .algebra import Bicomplex
from .activation import SectorConfig, sector_index, sector_index_bc
from .datasets import BicomplexDataset, ComplexDataset, GenSpec, RealHidden, RealSeparableProblem
from .errors import GenerationStalledError
from .linalg import BicomplexVector, weighted_sum_bc, weighted_sum_complex

BATCH = 1024
#: Give up once this many candidates were drawn at an acceptance rate below ``STALL_RATE``.
STALL_WINDOW = 10_000
STALL_RATE = 1e-3


def slot_seed(seed: int, slot: int) -> int:
    """64-bit sub-seed for idempotent slot 1 or 2 (SeedSequence mix of ``(seed, slot)``)."""
    return int(np.random.SeedSequence([int(seed) & (2**64 - 1), slot]).generate_state(1, np.uint64)[0])


def angular_position(z, k):
    """Sector label and angular distance to the nearest sector boundary."""
    width = 2 * np.pi / k
    pos = np.mod(np.angle(z), 2 * np.pi) / width
    floor = np.floor(pos)
    dist = np.minimum(pos - floor, floor + 1 - pos) * width
    return floor.astype(int) % k, dist


def _collect(rng, spec, draw, accept):
    """Draw batches until ``spec.count`` candidates pass ``accept``.

    Returns the accepted candidates in stream order and the number of
    candidates consumed up to and including the last accepted one.
    """
    parts, got, draws = [], 0, 0
    while got < spec.count:
        cand = draw(rng, BATCH)
        ok = np.flatnonzero(accept(cand))[: spec.count - got]
        draws += int(ok[-1]) + 1 if got + len(ok) == spec.count else BATCH
        parts.append(cand[ok])
        got += len(ok)
        if got < spec.count and draws >= STALL_WINDOW and got < STALL_RATE * draws:
            raise GenerationStalledError(
                f"accepted {got} of {draws} candidates; margin {spec.margin} too large"
            )
    return np.concatenate(parts), draws


def gen_real(spec: GenSpec) -> RealSeparableProblem:
    """Real problem in R^n with normalized margin ``spec.margin`` around a hidden unit ``a``."""
    if not 0 < spec.margin < 1:
        raise ValueError("real margin must lie in (0, 1)")
    rng = np.random.default_rng(spec.seed)
    a = rng.normal(size=spec.n)
    a /= np.linalg.norm(a)
    r_min, r_max = spec.radius_range

    def draw(rng, size):
        d = rng.normal(size=(size, spec.n))
        d /= np.linalg.norm(d, axis=1, keepdims=True)
        return d * rng.uniform(r_min, r_max, size)[:, None]

    def accept(x):
        return np.abs(x @ a) >= spec.margin * np.linalg.norm(x, axis=1)

    X, draws = _collect(rng, spec, draw, accept)
    labels = np.where(X @ a > 0, 1, -1)
    return RealSeparableProblem(X, labels, RealHidden(a, spec.margin), spec, draws)


def _complex_parts(spec, rng):
    if not 0 < spec.margin < math.pi / spec.k:
        raise ValueError(f"angular margin must lie in (0, pi/k) = (0, {math.pi / spec.k:.4g})")
    W = np.exp(1j * rng.uniform(0.0, 2 * np.pi, spec.n))
    r_min, r_max = spec.radius_range

    def draw(rng, size):
        r = rng.uniform(r_min, r_max, (size, spec.n))
        return r * np.exp(1j * rng.uniform(0.0, 2 * np.pi, (size, spec.n)))

    def accept(x):
        z = x @ W
        _, dist = angular_position(z, spec.k)
        return (dist >= spec.margin) & (np.abs(z) > 0)

    X, draws = _collect(rng, spec, draw, accept)
    labels, _ = angular_position(X @ W, spec.k)
    return X, labels, W, draws


def gen_ksep_complex(spec: GenSpec) -> ComplexDataset:
    """k-separable complex data: ``P(sum w_j x_j) = eps**label`` with angular margin."""
    X, labels, W, draws = _complex_parts(spec, np.random.default_rng(spec.seed))
    return ComplexDataset(X, labels, spec.k, W, spec, draws)


def gen_ksep_bc(spec: GenSpec, slot_seeds=None) -> BicomplexDataset:
    """Slotwise k-separable bicomplex data.

    Each idempotent slot is an independent complex problem generated from its
    own sub-seed (``slot_seed(spec.seed, 1|2)`` unless ``slot_seeds`` is given).
    """
    if slot_seeds is None:
        slot_seeds = (slot_seed(spec.seed, 1), slot_seed(spec.seed, 2))
    parts = [_complex_parts(spec, np.random.default_rng(s)) for s in slot_seeds]
    (X1, q1, W1, _), (X2, q2, W2, _) = parts
    hidden = BicomplexVector.from_slots(W1, W2)
    return BicomplexDataset.from_slots(X1, X2, np.stack([q1, q2], axis=1), spec.k, hidden, spec)


# audits: re-evaluate each sample through the activation module


def audit_real(problem: RealSeparableProblem, tol=1e-12):
    """Indices violating the hidden separator or its margin."""
    if problem.hidden is None:
        return []
    a, delta = problem.hidden.a, problem.hidden.delta
    bad = []
    for i, (x, y) in enumerate(zip(problem.X, problem.labels)):
        d = float(a @ x)
        if np.sign(d) != y or abs(d) < delta * np.linalg.norm(x) * (1 - tol):
            bad.append(i)
    return bad


def audit_complex(ds: ComplexDataset):
    if ds.hidden is None:
        return []
    cfg = SectorConfig(ds.k)
    return [
        i for i, (x, q) in enumerate(zip(ds.X, ds.labels))
        if sector_index(weighted_sum_complex(0.0, ds.hidden, x), cfg) != q
    ]


def audit_bc(ds: BicomplexDataset):
    if ds.hidden is None:
        return []
    cfg = SectorConfig(ds.k)
    zero = Bicomplex(0.0)
    bad = []
    for i in range(len(ds)):
        s = sector_index_bc(weighted_sum_bc(zero, ds.hidden, ds.vector(i)), cfg)
        if s != tuple(ds.labels[i]):
            bad.append(i)
    return bad


def audit(dataset):
    """Dispatch on dataset type; returns the list of violating sample indices."""
    if isinstance(dataset, RealSeparableProblem):
        return audit_real(dataset)
    if isinstance(dataset, ComplexDataset):
        return audit_complex(dataset)
    if isinstance(dataset, BicomplexDataset):
        return audit_bc(dataset)
    raise TypeError(f"unsupported dataset {type(dataset).__name__}")
