"""Vectors over C^n and BC^n.

Complex vectors are plain 1-D numpy arrays. :class:`BicomplexVector` is a
1-D batched :class:`~bcmvn.algebra.Bicomplex` with its two idempotent slot
views ``X1, X2`` (so ``X = X1 e1 + X2 e2``).

Two pairings are used and they differ on purpose. ``hermitian`` conjugates
its second argument and backs the D-valued inner product and the norms. The
weighted sums that feed the activations are plain bilinear sums
``w0 + sum(w_l x_l)``.
"""

from __future__ import annotations

import numpy as np

from .algebra import Bicomplex, Hyperbolic
from .errors import DimensionMismatch


def as_complex_vector(values) -> np.ndarray:
    """Validate and convert to a 1-D complex array of length >= 1."""
    arr = np.asarray(values, dtype=complex)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError(f"expected a non-empty 1-D vector, got shape {arr.shape}")
    return arr


def _check_same_length(a, b):
    if len(a) != len(b):
        raise DimensionMismatch(f"length {len(a)} != {len(b)}")


class BicomplexVector(Bicomplex):
    """Element of BC^n stored as cartesian arrays ``z1, z2`` of shape ``(n,)``."""

    __slots__ = ()

    def __init__(self, z1, z2=None):
        z1 = np.asarray(z1, dtype=complex)
        z2 = np.zeros_like(z1) if z2 is None else np.asarray(z2, dtype=complex)
        super().__init__(z1, z2)
        if self.z1.ndim != 1 or self.z1.size == 0:
            raise ValueError(f"expected a non-empty 1-D vector, got shape {self.z1.shape}")

    @classmethod
    def from_slots(cls, X1, X2):
        """Build ``X1 e1 + X2 e2`` from its two complex slot vectors."""
        X1, X2 = np.asarray(X1, complex), np.asarray(X2, complex)
        _check_same_length(X1, X2)
        return cls((X1 + X2) / 2, 1j * (X1 - X2) / 2)

    @classmethod
    def from_scalars(cls, entries):
        entries = list(entries)
        return cls([e.z1 for e in entries], [e.z2 for e in entries])

    @classmethod
    def wrap(cls, value: Bicomplex):
        return cls(value.z1, value.z2)

    @property
    def slots(self):
        """The idempotent views ``(X1, X2)``."""
        return self.idempotent

    def __iter__(self):
        for a, b in zip(self.z1, self.z2):
            yield Bicomplex(complex(a), complex(b))

    def __repr__(self):
        return f"BicomplexVector(z1={self.z1!r}, z2={self.z2!r})"


def hermitian(U, V) -> complex:
    """``sum(u_i * conj(v_i))``: linear in ``U``, conjugate-linear in ``V``."""
    _check_same_length(U, V)
    return complex(np.vdot(V, U))


def inner_product_D(X: BicomplexVector, Y: BicomplexVector) -> Bicomplex:
    """D-valued inner product ``<X1, Y1> e1 + <X2, Y2> e2``."""
    _check_same_length(X, Y)
    X1, X2 = X.slots
    Y1, Y2 = Y.slots
    return Bicomplex.from_idempotent(hermitian(X1, Y1), hermitian(X2, Y2))


def weighted_sum_complex(w0, W, X) -> complex:
    """``w0 + sum(w_l * x_l)`` with no conjugation."""
    W, X = np.asarray(W, complex), np.asarray(X, complex)
    _check_same_length(W, X)
    return complex(w0) + complex(np.dot(W, X))


def weighted_sum_bc(w0: Bicomplex, W: BicomplexVector, X: BicomplexVector) -> Bicomplex:
    """Bicomplex weighted sum, evaluated slotwise in idempotent coordinates."""
    _check_same_length(W, X)
    b1, b2 = w0.idempotent
    W1, W2 = W.slots
    X1, X2 = X.slots
    return Bicomplex.from_idempotent(b1 + np.dot(W1, X1), b2 + np.dot(W2, X2))


def d_norm_vec(X: BicomplexVector) -> Hyperbolic:
    """Hyperbolic-valued modulus ``||X1|| e1 + ||X2|| e2``."""
    X1, X2 = X.slots
    return Hyperbolic.from_idempotent(np.linalg.norm(X1), np.linalg.norm(X2))
