"""Bicomplex and hyperbolic scalar arithmetic.

A bicomplex number is ``Z = z1 + j z2`` with ``z1, z2`` in C(i), or in real
coordinates ``Z = x1 + i x2 + j x3 + k x4`` where ``k = ij`` squares to +1.
The idempotent elements ``e1 = (1 + k)/2`` and ``e2 = (1 - k)/2`` split every
number as ``Z = l1 e1 + l2 e2`` with ``l1 = z1 - i z2`` and ``l2 = z1 + i z2``;
in that basis multiplication is componentwise, which is how every product in
this module is computed.

Both :class:`Bicomplex` and :class:`Hyperbolic` accept numpy arrays for their
fields, in which case every operation is applied elementwise. That is how the
vector types in :mod:`bcmvn.linalg` are built and how the large randomized
checks stay fast.
"""

from __future__ import annotations

import math
import re

import numpy as np

from .errors import ParseError, ZeroDivisorError

#: Idempotent parts with modulus at or below ``INVERSE_TOL * (1 + ||Z||)`` count as zero.
INVERSE_TOL = 1e-14


def _c(v):
    if isinstance(v, np.ndarray):
        return v.astype(complex, copy=False)
    return complex(v)


def _r(v):
    if isinstance(v, np.ndarray):
        return v.astype(float, copy=False)
    return float(v)


def to_idempotent(z1, z2):
    """Cartesian pair ``(z1, z2)`` to idempotent pair ``(l1, l2)``."""
    return z1 - 1j * z2, z1 + 1j * z2


def from_idempotent(l1, l2):
    """Inverse of :func:`to_idempotent`."""
    return (l1 + l2) / 2, 1j * (l1 - l2) / 2


class Bicomplex:
    """Immutable bicomplex value ``z1 + j z2`` (scalar or elementwise array)."""

    __slots__ = ("z1", "z2")

    def __init__(self, z1=0.0, z2=0.0):
        z1, z2 = _c(z1), _c(z2)
        if isinstance(z1, np.ndarray) or isinstance(z2, np.ndarray):
            z1, z2 = np.broadcast_arrays(np.asarray(z1, complex), np.asarray(z2, complex))
            z1, z2 = z1.copy(), z2.copy()
            z1.flags.writeable = False
            z2.flags.writeable = False
        object.__setattr__(self, "z1", z1)
        object.__setattr__(self, "z2", z2)

    def __setattr__(self, name, value):
        raise AttributeError("Bicomplex values are immutable")

    # construction

    @classmethod
    def from_real(cls, x1=0.0, x2=0.0, x3=0.0, x4=0.0):
        """Build ``x1 + i x2 + j x3 + k x4``."""
        return cls(_r(x1) + 1j * _r(x2), _r(x3) + 1j * _r(x4))

    @classmethod
    def from_idempotent(cls, l1, l2):
        return cls(*from_idempotent(_c(l1), _c(l2)))

    @classmethod
    def from_hyperbolic(cls, h: "Hyperbolic"):
        # k y = j (i y)
        return cls(h.x, 1j * _r(h.y))

    # views

    @property
    def idempotent(self):
        """The pair ``(l1, l2)`` with ``Z = l1 e1 + l2 e2``."""
        return to_idempotent(self.z1, self.z2)

    @property
    def components(self):
        """Real coordinates ``(x1, x2, x3, x4)``."""
        return (np.real(self.z1), np.imag(self.z1), np.real(self.z2), np.imag(self.z2))

    @property
    def shape(self):
        return np.shape(self.z1)

    @property
    def is_batched(self):
        return isinstance(self.z1, np.ndarray)

    # arithmetic

    @staticmethod
    def _coerce(other):
        if isinstance(other, Bicomplex):
            return other
        if isinstance(other, Hyperbolic):
            return Bicomplex.from_hyperbolic(other)
        if isinstance(other, (int, float, complex, np.number)):
            return Bicomplex(other, 0.0)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Bicomplex(self.z1 + other.z1, self.z2 + other.z2)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Bicomplex(self.z1 - other.z1, self.z2 - other.z2)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return Bicomplex(-self.z1, -self.z2)

    def __pos__(self):
        return self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a1, a2 = self.idempotent
        b1, b2 = other.idempotent
        return Bicomplex.from_idempotent(a1 * b1, a2 * b2)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __pow__(self, n: int):
        a1, a2 = self.idempotent
        return Bicomplex.from_idempotent(a1**n, a2**n)

    def inverse(self):
        """Multiplicative inverse; raises :class:`ZeroDivisorError` on the null cone."""
        a1, a2 = self.idempotent
        floor = INVERSE_TOL * (1.0 + self.norm())
        if np.any(np.abs(a1) <= floor) or np.any(np.abs(a2) <= floor):
            raise ZeroDivisorError(f"{self!r} has a vanishing idempotent component")
        return Bicomplex.from_idempotent(1 / a1, 1 / a2)

    # conjugations

    def bar(self):
        return Bicomplex(np.conj(self.z1), np.conj(self.z2))

    def dagger(self):
        return Bicomplex(self.z1, -self.z2)

    def star(self):
        return Bicomplex(np.conj(self.z1), -np.conj(self.z2))

    # norms

    def norm(self):
        """Euclidean norm in R^4."""
        return np.sqrt(np.abs(self.z1) ** 2 + np.abs(self.z2) ** 2)

    def norm_idempotent(self):
        """Euclidean norm computed from the idempotent parts."""
        l1, l2 = self.idempotent
        return np.sqrt(np.abs(l1) ** 2 + np.abs(l2) ** 2) / math.sqrt(2.0)

    def d_norm(self) -> "Hyperbolic":
        """Hyperbolic-valued norm ``|l1| e1 + |l2| e2``."""
        l1, l2 = self.idempotent
        return Hyperbolic.from_idempotent(np.abs(l1), np.abs(l2))

    # comparison / display

    def isclose(self, other, tol=1e-12):
        """Componentwise closeness, relative for magnitudes >= 1, absolute below."""
        other = self._coerce(other)
        out = True
        for a, b in zip(self.components, other.components):
            out = out & (np.abs(a - b) <= tol * np.maximum(1.0, np.maximum(np.abs(a), np.abs(b))))
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return bool(np.all(self.z1 == other.z1) and np.all(self.z2 == other.z2))

    def __hash__(self):
        if self.is_batched:
            raise TypeError("batched Bicomplex values are unhashable")
        return hash((self.z1, self.z2))

    def __len__(self):
        if not self.is_batched or self.z1.ndim == 0:
            raise TypeError("scalar Bicomplex has no len()")
        return len(self.z1)

    def __getitem__(self, idx):
        if not self.is_batched:
            raise TypeError("scalar Bicomplex is not subscriptable")
        z1, z2 = self.z1[idx], self.z2[idx]
        if np.ndim(z1) == 0:
            return Bicomplex(complex(z1), complex(z2))
        return type(self)(z1, z2)

    def __repr__(self):
        if self.is_batched:
            return f"Bicomplex(z1={self.z1!r}, z2={self.z2!r})"
        return f"Bicomplex({format_bicomplex(self)})"

    def __str__(self):
        if self.is_batched:
            return repr(self)
        return format_bicomplex(self)


class Hyperbolic:
    """Immutable hyperbolic value ``x + k y`` (scalar or elementwise array)."""

    __slots__ = ("x", "y")

    def __init__(self, x=0.0, y=0.0):
        x, y = _r(x), _r(y)
        if isinstance(x, np.ndarray) or isinstance(y, np.ndarray):
            x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
            x, y = x.copy(), y.copy()
            x.flags.writeable = False
            y.flags.writeable = False
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    def __setattr__(self, name, value):
        raise AttributeError("Hyperbolic values are immutable")

    @classmethod
    def from_idempotent(cls, s, t):
        """Build ``s e1 + t e2``."""
        return cls((s + t) / 2, (s - t) / 2)

    @property
    def s(self):
        return self.x + self.y

    @property
    def t(self):
        return self.x - self.y

    def __add__(self, other):
        if isinstance(other, (int, float)):
            other = Hyperbolic(other)
        if not isinstance(other, Hyperbolic):
            return NotImplemented
        return Hyperbolic(self.x + other.x, self.y + other.y)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, float)):
            other = Hyperbolic(other)
        if not isinstance(other, Hyperbolic):
            return NotImplemented
        return Hyperbolic(self.x - other.x, self.y - other.y)

    def __neg__(self):
        return Hyperbolic(-self.x, -self.y)

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return Hyperbolic(self.x * other, self.y * other)
        if not isinstance(other, Hyperbolic):
            return NotImplemented
        return Hyperbolic.from_idempotent(self.s * other.s, self.t * other.t)

    __rmul__ = __mul__

    def diamond(self):
        return Hyperbolic(self.x, -self.y)

    def modulus_sq(self):
        """``x^2 - y^2``; may be negative."""
        return self.x * self.x - self.y * self.y

    def in_dplus(self):
        return (self.s >= 0) & (self.t >= 0)

    def leq(self, other):
        return (other - self).in_dplus()

    def isclose(self, other, tol=1e-12):
        out = True
        for a, b in ((self.x, other.x), (self.y, other.y)):
            out = out & (np.abs(a - b) <= tol * np.maximum(1.0, np.maximum(np.abs(a), np.abs(b))))
        return out

    def __eq__(self, other):
        if isinstance(other, (int, float)):
            other = Hyperbolic(other)
        if not isinstance(other, Hyperbolic):
            return NotImplemented
        return bool(np.all(self.x == other.x) and np.all(self.y == other.y))

    def __hash__(self):
        if isinstance(self.x, np.ndarray):
            raise TypeError("batched Hyperbolic values are unhashable")
        return hash((self.x, self.y))

    def __repr__(self):
        return f"Hyperbolic(x={self.x!r}, y={self.y!r})"


ONE = Bicomplex(1.0, 0.0)
I = Bicomplex(1j, 0.0)
J = Bicomplex(0.0, 1.0)
K = Bicomplex(0.0, 1j)
E1 = Bicomplex(0.5, 0.5j)
E2 = Bicomplex(0.5, -0.5j)


# functional surface


def idempotent_decompose(Z: Bicomplex):
    return Z.idempotent


def idempotent_compose(l1, l2) -> Bicomplex:
    return Bicomplex.from_idempotent(l1, l2)


def bc_add(Z, W):
    return Z + W


def bc_sub(Z, W):
    return Z - W


def bc_scale(c, Z: Bicomplex):
    """Multiply by a complex scalar of C(i)."""
    return Bicomplex(c * Z.z1, c * Z.z2)


def bc_mul(Z, W):
    return Z * W


def bc_mul_cartesian(Z: Bicomplex, W: Bicomplex) -> Bicomplex:
    """Product from the cartesian rule ``(z1 w1 - z2 w2) + j (z1 w2 + z2 w1)``.

    Same value as :func:`bc_mul`; kept as a separate code path for the
    direct-form update rule.
    """
    return Bicomplex(Z.z1 * W.z1 - Z.z2 * W.z2, Z.z1 * W.z2 + Z.z2 * W.z1)


def bc_inverse(Z):
    return Z.inverse()


def conj_bar(Z):
    return Z.bar()


def conj_dagger(Z):
    return Z.dagger()


def conj_star(Z):
    return Z.star()


def euclidean_norm(Z, via="cartesian"):
    if via == "cartesian":
        return Z.norm()
    if via == "idempotent":
        return Z.norm_idempotent()
    raise ValueError(f"unknown formula {via!r}")


def hyperbolic_norm(Z):
    return Z.d_norm()


def hyp_mul(a, b):
    return a * b


def hyp_conj_diamond(a):
    return a.diamond()


def hyp_modulus_sq(a):
    return a.modulus_sq()


def hyp_in_Dplus(a):
    return a.in_dplus()


def hyp_leq(a, b):
    return a.leq(b)


# text and JSON forms

_NUM = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_TERM = re.compile(rf"\s*([+-])?\s*({_NUM})?\s*\*?\s*([ijk])?\s*")
_UNIT_INDEX = {"": 0, "i": 1, "j": 2, "k": 3}


def parse_bicomplex(text: str) -> Bicomplex:
    """Parse ``a+bi+cj+dk``; terms may come in any order, coefficients may be omitted."""
    coords = [0.0, 0.0, 0.0, 0.0]
    seen = set()
    pos, first = 0, True
    text = text.strip()
    if not text:
        raise ParseError("empty bicomplex literal")
    while pos < len(text):
        m = _TERM.match(text, pos)
        sign, num, unit = m.group(1), m.group(2), m.group(3) or ""
        if m.end() == pos or (num is None and not unit):
            raise ParseError(f"cannot parse bicomplex literal {text!r} at offset {pos}")
        if sign is None and not first:
            raise ParseError(f"missing sign between terms in {text!r}")
        if unit in seen:
            raise ParseError(f"repeated {unit or 'real'} term in {text!r}")
        seen.add(unit)
        value = float(num) if num is not None else 1.0
        coords[_UNIT_INDEX[unit]] = -value if sign == "-" else value
        pos, first = m.end(), False
    return Bicomplex.from_real(*coords)


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def format_bicomplex(Z: Bicomplex) -> str:
    """Canonical ``a+bi+cj+dk`` text with 17 significant digits."""
    x1, x2, x3, x4 = (float(c) for c in Z.components)
    out = _fmt(x1)
    for value, unit in ((x2, "i"), (x3, "j"), (x4, "k")):
        s = _fmt(value)
        out += (s if s.startswith("-") else "+" + s) + unit
    return out


def bicomplex_to_json(Z: Bicomplex) -> dict:
    x1, x2, x3, x4 = (float(c) for c in Z.components)
    return {"x1": x1, "x2": x2, "x3": x3, "x4": x4}


def bicomplex_from_json(obj) -> Bicomplex:
    try:
        return Bicomplex.from_real(obj["x1"], obj["x2"], obj["x3"], obj["x4"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad bicomplex object {obj!r}") from exc


def hyperbolic_to_json(h: Hyperbolic) -> dict:
    return {"x": float(h.x), "y": float(h.y)}


def hyperbolic_from_json(obj) -> Hyperbolic:
    try:
        return Hyperbolic(obj["x"], obj["y"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad hyperbolic object {obj!r}") from exc
