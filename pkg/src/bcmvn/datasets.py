"""Labeled sample containers shared by the generators, trainers and CLI."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .algebra import Bicomplex
from .linalg import BicomplexVector


@dataclass(frozen=True)
class GenSpec:
    """Generation parameters.

    ``margin`` is an angular margin in radians from the sector boundaries for
    the complex and bicomplex generators, and the normalized linear margin
    ``|a . x| / ||x||`` for the real one.
    """

    n: int
    k: int = 2
    count: int = 100
    margin: float = 0.1
    seed: int = 0
    radius_range: tuple = (0.5, 2.0)

    def __post_init__(self):
        object.__setattr__(self, "radius_range", tuple(float(r) for r in self.radius_range))
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.count < 1:
            raise ValueError("count must be >= 1")
        if self.k < 2:
            raise ValueError("k must be >= 2")
        if self.margin <= 0:
            raise ValueError("margin must be > 0")
        r_min, r_max = self.radius_range
        if not 0 < r_min <= r_max:
            raise ValueError(f"need 0 < r_min <= r_max, got {self.radius_range}")

    def to_json(self):
        return {
            "n": self.n,
            "k": self.k,
            "count": self.count,
            "margin": self.margin,
            "seed": self.seed,
            "radius_range": list(self.radius_range),
        }

    @classmethod
    def from_json(cls, obj):
        return cls(
            n=int(obj["n"]),
            k=int(obj.get("k", 2)),
            count=int(obj.get("count", 100)),
            margin=float(obj.get("margin", 0.1)),
            seed=int(obj.get("seed", 0)),
            radius_range=tuple(obj.get("radius_range", (0.5, 2.0))),
        )


@dataclass(frozen=True)
class RealHidden:
    a: np.ndarray
    delta: float


@dataclass(frozen=True)
class RealSeparableProblem:
    """Vectors in R^N with class labels +1 / -1."""

    X: np.ndarray
    labels: np.ndarray
    hidden: Optional[RealHidden] = None
    spec: Optional[GenSpec] = None
    draws: int = 0

    mode = "real"

    def __len__(self):
        return len(self.labels)

    def without_hidden(self):
        return RealSeparableProblem(self.X, self.labels, None, self.spec, self.draws)


@dataclass(frozen=True)
class ComplexDataset:
    """Vectors in C^n labeled with target sectors in ``[0, k)``.

    ``hidden`` is the separating weight vector (zero bias) when known.
    """

    X: np.ndarray
    labels: np.ndarray
    k: int
    hidden: Optional[np.ndarray] = None
    spec: Optional[GenSpec] = None
    draws: int = 0

    mode = "complex"

    def __len__(self):
        return len(self.labels)

    def without_hidden(self):
        return ComplexDataset(self.X, self.labels, self.k, None, self.spec, self.draws)


@dataclass(frozen=True)
class BicomplexDataset:
    """Vectors in BC^n labeled with a sector pair per sample.

    ``Z1, Z2`` are the cartesian parts, arrays of shape ``(count, n)``;
    ``labels`` has shape ``(count, 2)``.
    """

    Z1: np.ndarray
    Z2: np.ndarray
    labels: np.ndarray
    k: int
    hidden: Optional[BicomplexVector] = None
    spec: Optional[GenSpec] = None

    mode = "bicomplex"

    def __len__(self):
        return len(self.labels)

    @classmethod
    def from_slots(cls, X1, X2, labels, k, hidden=None, spec=None):
        X1, X2 = np.asarray(X1, complex), np.asarray(X2, complex)
        return cls((X1 + X2) / 2, 1j * (X1 - X2) / 2, np.asarray(labels, int), k, hidden, spec)

    @property
    def batch(self) -> Bicomplex:
        return Bicomplex(self.Z1, self.Z2)

    def vector(self, i) -> BicomplexVector:
        return BicomplexVector(self.Z1[i], self.Z2[i])

    def vectors(self):
        return [self.vector(i) for i in range(len(self))]

    def slot(self, idx) -> ComplexDataset:
        """Complex dataset carried by idempotent slot ``idx`` (0 or 1)."""
        X = self.batch.idempotent[idx]
        hidden = None if self.hidden is None else self.hidden.slots[idx]
        return ComplexDataset(np.array(X), self.labels[:, idx].copy(), self.k, hidden, self.spec)

    def without_hidden(self):
        return BicomplexDataset(self.Z1, self.Z2, self.labels, self.k, None, self.spec)
