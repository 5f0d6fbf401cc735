"""Exact arithmetic in cyclotomic fields.

An element of Q(zeta_n) is stored as a coefficient vector on a fixed basis of
powers of zeta_n.  The basis keeps exponent ``e`` when, for every prime power
``p^a`` exactly dividing ``n``, the leading base-``p`` digit of ``e mod p^a``
is nonzero (odd ``p``) or zero (``p = 2``).  Other powers are rewritten with

    zeta^e = -sum_{j=1}^{p-1} zeta^(e + j*n/p)

which only moves that one digit, so primes can be processed independently.
The basis is integral: algebraic integers have integer coordinates, which is
what lets character tables live in plain ``int64`` arrays.

Two layers are provided.  :class:`Cyclotomic` is the user-facing scalar with
``Fraction`` coefficients.  The ``*_vec`` helpers work on integer arrays whose
last axis has length ``n`` and are what the character code uses.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

import numpy as np
from sympy import factorint, mobius, totient

from bpi import kernels

__all__ = [
    "Cyclotomic",
    "E",
    "root_of_unity",
    "multiplicative_order",
    "basis_exponents",
    "reduction_matrix",
    "canon_vec",
    "conj_vec",
    "lift_vec",
    "mul_vec",
    "trace_form",
    "root_index",
    "rational_vec",
]


# -- basis and reduction ----------------------------------------------------


def _allowed(e: int, n: int, factors: Mapping[int, int]) -> bool:
    for p, a in factors.items():
        q = p**a
        digit = (e % q) // (q // p)
        if p == 2 and digit != 0:
            return False
        if p != 2 and digit == 0:
            return False
    return True


@lru_cache(maxsize=None)
def basis_exponents(n: int) -> tuple[int, ...]:
    """Exponents ``e`` for which ``zeta_n^e`` is a basis element."""
    factors = factorint(n)
    return tuple(e for e in range(n) if _allowed(e, n, factors))


@lru_cache(maxsize=None)
def reduction_matrix(n: int) -> np.ndarray:
    """Integer ``R`` with ``canonical(v) = v @ R`` for any coefficient row ``v``."""
    r = np.eye(n, dtype=np.int64)
    for p, a in sorted(factorint(n).items()):
        q = p**a
        step = n // p
        for e in range(n):
            digit = (e % q) // (q // p)
            if (p == 2 and digit != 0) or (p != 2 and digit == 0):
                col = r[:, e].copy()
                for j in range(1, p):
                    r[:, (e + j * step) % n] -= col
                r[:, e] = 0
    r.setflags(write=False)
    return r


def canon_vec(v: np.ndarray, n: int) -> np.ndarray:
    """Canonical coordinates of integer rows ``v`` (last axis length ``n``)."""
    if n == 1:
        return np.asarray(v, dtype=np.int64)
    return np.asarray(v, dtype=np.int64) @ reduction_matrix(n)


def conj_vec(v: np.ndarray, n: int) -> np.ndarray:
    """Complex conjugate, not re-canonicalised."""
    idx = (-np.arange(n)) % n
    return np.asarray(v)[..., idx]


def lift_vec(v: np.ndarray, m: int, n: int) -> np.ndarray:
    """Embed rows over Q(zeta_m) into Q(zeta_n), ``m | n``; canonical output."""
    if m == n:
        return np.asarray(v, dtype=np.int64)
    if n % m:
        raise ValueError(f"conductor {m} does not divide {n}")
    v = np.asarray(v, dtype=np.int64)
    out = np.zeros(v.shape[:-1] + (n,), dtype=np.int64)
    out[..., :: n // m] = v
    return canon_vec(out, n)


def mul_vec(a: np.ndarray, b: np.ndarray, n: int) -> np.ndarray:
    """Row-wise product of two stacks of integer elements; canonical output."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    shape = np.broadcast_shapes(a.shape, b.shape)
    a2 = np.ascontiguousarray(np.broadcast_to(a, shape).reshape(-1, n))
    b2 = np.ascontiguousarray(np.broadcast_to(b, shape).reshape(-1, n))
    return canon_vec(kernels.ring_mul(a2, b2), n).reshape(shape)


def rational_vec(q: int, n: int) -> np.ndarray:
    """Canonical coordinates of the integer ``q``."""
    return q * reduction_matrix(n)[0].copy() if n > 1 else np.array([q], dtype=np.int64)


@lru_cache(maxsize=None)
def _normalized_traces(n: int) -> tuple[Fraction, ...]:
    out = []
    for k in range(n):
        d = n // math.gcd(n, k)
        out.append(Fraction(int(mobius(d)), int(totient(d))))
    return tuple(out)


@lru_cache(maxsize=None)
def trace_form(n: int) -> tuple[np.ndarray, int]:
    """Integer matrix ``T`` and scale ``s`` with ``tr(a*b) = a @ T @ b / s``.

    ``tr`` is the trace to Q divided by the field degree, so on rational
    values it is the identity.  Works on any (not necessarily canonical)
    coefficient rows.
    """
    t = _normalized_traces(n)
    scale = math.lcm(*(x.denominator for x in t))
    row = np.array([int(x * scale) for x in t], dtype=np.int64)
    idx = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    mat = row[idx]
    mat.setflags(write=False)
    return mat, scale


@lru_cache(maxsize=None)
def _roots(n: int) -> dict[bytes, int]:
    # canonical zeta^k and -zeta^k, keyed by bytes, valued by exponent in Q(zeta_{2n})
    r = reduction_matrix(n) if n > 1 else np.ones((1, 1), dtype=np.int64)
    big = n if n % 2 == 0 else 2 * n
    out: dict[bytes, int] = {}
    for k in range(n):
        kk = k * (big // n)
        out[r[k].tobytes()] = kk
        out[(-r[k]).tobytes()] = (kk + big // 2) % big
    return out


def root_index(v: np.ndarray, n: int) -> tuple[int, int] | None:
    """If canonical ``v`` is a root of unity return ``(N, k)`` with ``v = zeta_N^k``."""
    k = _roots(n).get(np.ascontiguousarray(v, dtype=np.int64).tobytes())
    if k is None:
        return None
    return (n if n % 2 == 0 else 2 * n), k


# -- scalar type ------------------------------------------------------------


def _as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class Cyclotomic:
    """An element of Q(zeta_n) in canonical coordinates.

    Instances are immutable.  Arithmetic between different conductors goes
    through their lcm; equality and hashing do not depend on the conductor an
    element happens to be written in.
    """

    __slots__ = ("conductor", "_coeffs", "_hash")

    def __init__(self, conductor: int, coeffs: Mapping[int, object] | Iterable = ()):
        if conductor < 1:
            raise ValueError("conductor must be positive")
        n = conductor
        dense = [Fraction(0)] * n
        items = coeffs.items() if isinstance(coeffs, Mapping) else enumerate(coeffs)
        for e, c in items:
            dense[e % n] += _as_fraction(c)
        self.conductor = n
        self._coeffs = _canonical(dense, n)
        self._hash = None

    @classmethod
    def _raw(cls, n: int, coeffs: tuple) -> Cyclotomic:
        obj = cls.__new__(cls)
        obj.conductor = n
        obj._coeffs = coeffs
        obj._hash = None
        return obj

    @classmethod
    def from_vec(cls, v: np.ndarray, n: int) -> Cyclotomic:
        """Wrap canonical integer coordinates."""
        return cls._raw(n, tuple((int(e), Fraction(int(v[e]))) for e in np.nonzero(v)[0]))

    @classmethod
    def rational(cls, q) -> Cyclotomic:
        q = _as_fraction(q)
        return cls._raw(1, ((0, q),) if q else ())

    # -- views

    @property
    def coefficients(self) -> dict[int, Fraction]:
        return dict(self._coeffs)

    def dense(self, n: int | None = None) -> list[Fraction]:
        n = n or self.conductor
        if n % self.conductor:
            raise ValueError(f"conductor {self.conductor} does not divide {n}")
        out = [Fraction(0)] * n
        step = n // self.conductor
        for e, c in self._coeffs:
            out[e * step] += c
        return out

    def lift(self, n: int) -> Cyclotomic:
        if n == self.conductor:
            return self
        return Cyclotomic._raw(n, _canonical(self.dense(n), n))

    def to_vec(self, n: int | None = None) -> np.ndarray:
        """Canonical integer coordinates; raises if a coefficient is not integral."""
        c = self.lift(n or self.conductor)
        out = np.zeros(c.conductor, dtype=np.int64)
        for e, q in c._coeffs:
            if q.denominator != 1:
                raise ValueError(f"{self} is not an algebraic integer in this basis")
            out[e] = q.numerator
        return out

    def trace(self) -> Fraction:
        """Field trace divided by the degree; independent of the conductor."""
        t = _normalized_traces(self.conductor)
        return sum((c * t[e] for e, c in self._coeffs), Fraction(0))

    def is_rational(self) -> bool:
        return self == Cyclotomic.rational(self.trace())

    def to_rational(self) -> Fraction:
        q = self.trace()
        if self != Cyclotomic.rational(q):
            raise ValueError(f"{self} is not rational")
        return q

    def is_zero(self) -> bool:
        return not self._coeffs

    # -- arithmetic

    def _unify(self, other) -> tuple[int, list[Fraction], list[Fraction]]:
        if not isinstance(other, Cyclotomic):
            other = Cyclotomic.rational(other)
        n = math.lcm(self.conductor, other.conductor)
        return n, self.dense(n), other.dense(n)

    def __add__(self, other):
        n, a, b = self._unify(other)
        return Cyclotomic._raw(n, _canonical([x + y for x, y in zip(a, b)], n))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic._raw(self.conductor, tuple((e, -c) for e, c in self._coeffs))

    def __sub__(self, other):
        n, a, b = self._unify(other)
        return Cyclotomic._raw(n, _canonical([x - y for x, y in zip(a, b)], n))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        n, a, b = self._unify(other)
        out = [Fraction(0)] * n
        bnz = [(j, y) for j, y in enumerate(b) if y]
        for i, x in enumerate(a):
            if x:
                for j, y in bnz:
                    out[(i + j) % n] += x * y
        return Cyclotomic._raw(n, _canonical(out, n))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        result = Cyclotomic.rational(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, q):
        q = _as_fraction(q)
        return Cyclotomic._raw(self.conductor, tuple((e, c / q) for e, c in self._coeffs))

    def conjugate(self) -> Cyclotomic:
        n = self.conductor
        dense = [Fraction(0)] * n
        for e, c in self._coeffs:
            dense[(-e) % n] += c
        return Cyclotomic._raw(n, _canonical(dense, n))

    def galois(self, k: int) -> Cyclotomic:
        """Image under zeta -> zeta^k, ``gcd(k, n) = 1``."""
        n = self.conductor
        if math.gcd(k, n) != 1:
            raise ValueError("k must be a unit modulo the conductor")
        dense = [Fraction(0)] * n
        for e, c in self._coeffs:
            dense[(e * k) % n] += c
        return Cyclotomic._raw(n, _canonical(dense, n))

    def norm_squared(self) -> Cyclotomic:
        return self * self.conjugate()

    # -- comparison

    def __eq__(self, other):
        if not isinstance(other, Cyclotomic):
            if isinstance(other, (int, Fraction)):
                other = Cyclotomic.rational(other)
            else:
                return NotImplemented
        if self.conductor == other.conductor:
            return self._coeffs == other._coeffs
        n = math.lcm(self.conductor, other.conductor)
        return self.lift(n)._coeffs == other.lift(n)._coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.trace())
        return self._hash

    def sort_key(self) -> tuple:
        return (-self.trace(), self.conductor, self._coeffs)

    # -- output

    def __str__(self):
        if self.conductor == 1 or self.is_rational():
            return str(self.trace())
        parts = []
        for e, c in self._coeffs:
            mag = abs(c)
            term = f"E({self.conductor})^{e}" if mag == 1 else f"{mag}*E({self.conductor})^{e}"
            if not parts:
                parts.append(term if c > 0 else "-" + term)
            else:
                parts.append(("+ " if c > 0 else "- ") + term)
        return " ".join(parts)

    def __repr__(self):
        return f"Cyclotomic({self})"


def _canonical(dense: list[Fraction], n: int) -> tuple:
    if n > 1:
        factors = factorint(n)
        for p, a in sorted(factors.items()):
            q = p**a
            step = n // p
            for e in range(n):
                c = dense[e]
                if not c:
                    continue
                digit = (e % q) // (q // p)
                if (p == 2 and digit != 0) or (p != 2 and digit == 0):
                    for j in range(1, p):
                        dense[(e + j * step) % n] -= c
                    dense[e] = Fraction(0)
    return tuple((e, c) for e, c in enumerate(dense) if c)


def root_of_unity(n: int, k: int = 1) -> Cyclotomic:
    """``zeta_n^k`` in canonical form."""
    return Cyclotomic(n, {k % n: 1})


def E(n: int) -> Cyclotomic:
    return root_of_unity(n, 1)


def multiplicative_order(a: Cyclotomic) -> int | None:
    """Least ``m >= 1`` with ``a^m = 1``, or ``None`` if ``a`` is not a root of unity."""
    n = a.conductor
    try:
        v = a.to_vec()
    except ValueError:
        return None
    hit = root_index(v, n)
    if hit is None:
        return None
    big, k = hit
    return big // math.gcd(big, k)
