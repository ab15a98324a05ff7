"""k-valued sector activations and the threshold-function constructions.

The complex activation splits the plane into ``k`` sectors
``[2 pi l / k, 2 pi (l + 1) / k)`` of the argument (taken in ``[0, 2 pi)``) and
maps sector ``l`` to the root of unity ``eps**l``. The bicomplex activation
applies it to both idempotent parts.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .algebra import Bicomplex
from .errors import ZeroArgumentError
from .linalg import BicomplexVector, weighted_sum_bc, weighted_sum_complex

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class SectorConfig:
    """Sector partition for ``k`` outputs.

    ``boundary_tolerance`` does two jobs: arguments within that many radians
    below a sector boundary are placed on the boundary (and hence in the upper
    sector, which owns its lower edge), and a weighted sum with
    ``|z| <= boundary_tolerance * scale`` is treated as the origin.
    """

    k: int
    boundary_tolerance: float = 1e-12
    epsilon: complex = field(init=False)

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 2:
            raise ValueError(f"k must be an integer >= 2, got {self.k!r}")
        if self.boundary_tolerance < 0:
            raise ValueError("boundary_tolerance must be >= 0")
        object.__setattr__(self, "k", int(self.k))
        object.__setattr__(self, "epsilon", cmath.exp(2j * math.pi / self.k))

    def root(self, power) -> complex:
        """``eps**power``; ``power`` may be fractional (e.g. ``t + 1/2``)."""
        return cmath.exp(2j * math.pi * power / self.k)

    def to_json(self):
        return {"k": self.k, "boundary_tolerance": self.boundary_tolerance}

    @classmethod
    def from_json(cls, obj):
        return cls(int(obj["k"]), float(obj.get("boundary_tolerance", 1e-12)))


def principal_arg(z: complex) -> float:
    """Argument in ``[0, 2 pi)``."""
    a = math.atan2(z.imag, z.real)
    if a < 0.0:
        a += TWO_PI
    # a tiny negative angle rounds to exactly 2 pi
    return 0.0 if a >= TWO_PI else a


def sector_index(z, cfg: SectorConfig, scale: float = 1.0) -> int:
    z = complex(z)
    if abs(z) <= cfg.boundary_tolerance * scale:
        raise ZeroArgumentError(f"activation undefined at |z| = {abs(z):.3g}")
    width = TWO_PI / cfg.k
    pos = (principal_arg(z) + cfg.boundary_tolerance) / width
    return int(math.floor(pos)) % cfg.k


def activation_P(z, cfg: SectorConfig, scale: float = 1.0) -> complex:
    return cfg.root(sector_index(z, cfg, scale))


def sector_index_bc(Z: Bicomplex, cfg: SectorConfig, scale: float = 1.0):
    """Sector pair of the two idempotent parts."""
    l1, l2 = Z.idempotent
    out = []
    for slot, lam in ((1, l1), (2, l2)):
        try:
            out.append(sector_index(lam, cfg, scale))
        except ZeroArgumentError as exc:
            raise ZeroArgumentError(f"slot {slot}: {exc}", slot=slot) from None
    return tuple(out)


def activation_BC(Z: Bicomplex, cfg: SectorConfig, scale: float = 1.0) -> Bicomplex:
    s1, s2 = sector_index_bc(Z, cfg, scale)
    return Bicomplex.from_idempotent(cfg.root(s1), cfg.root(s2))


def threshold_eval_complex(w0, W, X, cfg: SectorConfig) -> complex:
    return activation_P(weighted_sum_complex(w0, W, X), cfg)


def threshold_eval_bc(w0: Bicomplex, W: BicomplexVector, X: BicomplexVector, cfg: SectorConfig) -> Bicomplex:
    return activation_BC(weighted_sum_bc(w0, W, X), cfg)


def _sample_bound(sample) -> tuple[int, float]:
    rows = [np.asarray(x, complex) for x in sample]
    if not rows:
        raise ValueError("sample must be non-empty")
    n = len(rows[0])
    M = max(float(np.max(np.abs(r))) for r in rows)
    return n, M


def perturbation_bound_complex(w0, sample, cfg: SectorConfig):
    """Bias ``w0'`` and radius ``delta`` that keep a bias-only classifier fixed.

    With ``t`` the sector of ``w0``, ``w0' = eps**(t + 1/2)`` sits on the
    sector bisector at unit distance from the origin, and the disc of radius
    ``sin(pi/k)`` around it touches both boundary rays. Any weights with
    ``|w_j| < delta = sin(pi/k) / (n M)``, where ``M`` bounds every input
    coordinate in ``sample``, move the weighted sum by less than that radius,
    so ``P(w0' + sum w_j x_j) == P(w0)`` on the whole sample.

    Returns ``(w0_prime, delta)``; ``delta`` is ``inf`` when every input is 0.
    """
    t = sector_index(w0, cfg)
    n, M = _sample_bound(sample)
    delta = math.inf if M == 0.0 else math.sin(math.pi / cfg.k) / (n * M)
    return cfg.root(t + 0.5), delta


def perturbation_bound_bc(w0: Bicomplex, sample, cfg: SectorConfig):
    """Slotwise version: ``delta = min(delta1, delta2)`` and
    ``w0' = eps**(t1 + 1/2) e1 + eps**(t2 + 1/2) e2``."""
    b1, b2 = w0.idempotent
    sample = list(sample)
    if not sample:
        raise ValueError("sample must be non-empty")
    slots = [X.slots for X in sample]
    primes, deltas = [], []
    for idx, (b, slot) in enumerate(((b1, 1), (b2, 2))):
        try:
            p, d = perturbation_bound_complex(b, [s[idx] for s in slots], cfg)
        except ZeroArgumentError as exc:
            raise ZeroArgumentError(f"slot {slot}: {exc}", slot=slot) from None
        primes.append(p)
        deltas.append(d)
    return Bicomplex.from_idempotent(*primes), min(deltas)


def sector_indices(z, cfg: SectorConfig, scale=1.0) -> np.ndarray:
    """Vectorized :func:`sector_index` over an array of weighted sums."""
    z = np.asarray(z, complex)
    if np.any(np.abs(z) <= cfg.boundary_tolerance * np.asarray(scale)):
        raise ZeroArgumentError("activation undefined at the origin")
    a = np.mod(np.angle(z), TWO_PI)
    a = np.where(a >= TWO_PI, 0.0, a)
    return np.floor((a + cfg.boundary_tolerance) / (TWO_PI / cfg.k)).astype(int) % cfg.k


def _random_disc(rng, radius, size):
    r = radius * np.sqrt(rng.uniform(0.0, 1.0, size))
    return r * np.exp(1j * rng.uniform(0.0, TWO_PI, size))


def perturbation_violations(w0, sample, cfg: SectorConfig, trials=1000, rng=None, shrink=1e-9) -> int:
    """Monte-Carlo check of :func:`perturbation_bound_complex`.

    Draws ``trials`` weight vectors with ``|w_j| < delta * (1 - shrink)`` and
    counts the (weights, input) pairs whose output differs from ``P(w0)``.
    """
    rng = np.random.default_rng(rng)
    w0_prime, delta = perturbation_bound_complex(w0, sample, cfg)
    target = sector_index(w0, cfg)
    rows = np.array([np.asarray(x, complex) for x in sample])
    radius = (1.0 if math.isinf(delta) else delta) * (1.0 - shrink)
    W = _random_disc(rng, radius, (trials, rows.shape[1]))
    sums = w0_prime + W @ rows.T
    return int(np.count_nonzero(sector_indices(sums, cfg) != target))


def perturbation_violations_bc(w0: Bicomplex, sample, cfg: SectorConfig, trials=1000, rng=None, shrink=1e-9) -> int:
    """Monte-Carlo check of :func:`perturbation_bound_bc`.

    Perturbed weighted sums are assembled as bicomplex values and classified
    by their idempotent parts; a pair counts as a violation if either slot
    leaves its sector.
    """
    rng = np.random.default_rng(rng)
    sample = list(sample)
    w0_prime, delta = perturbation_bound_bc(w0, sample, cfg)
    t1, t2 = sector_index_bc(w0, cfg)
    X1 = np.array([X.slots[0] for X in sample])
    X2 = np.array([X.slots[1] for X in sample])
    radius = (1.0 if math.isinf(delta) else delta) * (1.0 - shrink)
    n = X1.shape[1]
    W1 = _random_disc(rng, radius, (trials, n))
    W2 = _random_disc(rng, radius, (trials, n))
    p1, p2 = w0_prime.idempotent
    sums = Bicomplex.from_idempotent(p1 + W1 @ X1.T, p2 + W2 @ X2.T)
    l1, l2 = sums.idempotent
    bad = (sector_indices(l1, cfg) != t1) | (sector_indices(l2, cfg) != t2)
    return int(np.count_nonzero(bad))
