"""Exact character tables and the character operations built on them.

Character values are stored as ``int64`` arrays of shape ``(classes, n)``
holding canonical coordinates over Q(zeta_n) (see :mod:`bpi.cyclotomic`);
``n`` is the character's conductor, normally the exponent of its group.

Irr(G) is computed by the class-algebra method over a prime field: the
class matrices are simultaneously diagonalised modulo a prime
``p ≡ 1 (mod exponent)``, which gives every central character mod ``p``;
degrees are recovered from the orthogonality sum and each value is lifted to
Q(zeta_n) by recovering eigenvalue multiplicities with a discrete Fourier
transform over the power maps.
"""

from __future__ import annotations

import hashlib
import json
import logging
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np
from sympy import nextprime, primitive_root

from bpi import kernels
from bpi.cyclotomic import (
    Cyclotomic,
    canon_vec,
    conj_vec,
    lift_vec,
    mul_vec,
    rational_vec,
    root_index,
    trace_form,
)
from bpi.errors import InternalError, PreconditionError, ResourceError
from bpi.groups import PermGroup, QuotientMap

__all__ = [
    "Character",
    "CharacterTable",
    "Restriction",
    "character_table",
    "inner_product",
    "gram",
    "restrict",
    "constituents",
    "induce",
    "kernel",
    "center_of_character",
    "determinant_character",
    "determinantal_order",
    "inflate",
    "deflate",
    "conjugate_character",
    "trivial_character",
    "class_fusion",
    "set_cache_dir",
    "CLASS_CAP",
]

log = logging.getLogger(__name__)

CLASS_CAP = 60
_cache_dir: Path | None = None


def set_cache_dir(path: str | os.PathLike | None) -> None:
    """Directory for serialised tables; ``None`` disables the disk cache."""
    global _cache_dir
    _cache_dir = Path(path) if path else None


def _active_cache_dir() -> Path | None:
    if _cache_dir is not None:
        return _cache_dir
    env = os.environ.get("BPI_CACHE_DIR")
    return Path(env) if env else None


# -- characters -------------------------------------------------------------


class Character:
    """A class function with values in Q(zeta_conductor).

    ``index`` is the position in Irr(group) for irreducible characters
    produced by :func:`character_table`, otherwise ``None``.
    """

    __slots__ = ("group", "coeffs", "conductor", "index", "_degree")

    def __init__(self, group: PermGroup, coeffs: np.ndarray, conductor: int, index: int | None = None):
        coeffs = np.asarray(coeffs, dtype=np.int64)
        if coeffs.shape != (len(group.classes), conductor):
            raise ValueError(f"values of shape {coeffs.shape} do not fit {len(group.classes)} classes")
        coeffs.setflags(write=False)
        self.group = group
        self.coeffs = coeffs
        self.conductor = conductor
        self.index = index
        self._degree = None

    @property
    def degree(self) -> int:
        if self._degree is None:
            q = _rational_value(self.coeffs[0], self.conductor)
            if q.denominator != 1:
                raise InternalError("value at the identity is not an integer")
            self._degree = int(q)
        return self._degree

    def value(self, c: int) -> Cyclotomic:
        return Cyclotomic.from_vec(self.coeffs[c], self.conductor)

    @property
    def values(self) -> list[Cyclotomic]:
        return [self.value(c) for c in range(self.coeffs.shape[0])]

    def lift(self, n: int) -> np.ndarray:
        return lift_vec(self.coeffs, self.conductor, n)

    def at(self, n: int) -> Character:
        if n == self.conductor:
            return self
        return Character(self.group, self.lift(n), n, self.index)

    def _pair(self, other: Character) -> tuple[np.ndarray, np.ndarray, int]:
        if other.group is not self.group:
            raise PreconditionError("characters of different groups")
        n = math.lcm(self.conductor, other.conductor)
        return self.lift(n), other.lift(n), n

    def __eq__(self, other):
        if not isinstance(other, Character):
            return NotImplemented
        if other.group is not self.group:
            return False
        a, b, _ = self._pair(other)
        return np.array_equal(a, b)

    def __hash__(self):
        return hash((id(self.group), self.degree, len(self.coeffs)))

    def __mul__(self, other: Character) -> Character:
        a, b, n = self._pair(other)
        return Character(self.group, mul_vec(a, b, n), n)

    def __add__(self, other: Character) -> Character:
        a, b, n = self._pair(other)
        return Character(self.group, a + b, n)

    def __sub__(self, other: Character) -> Character:
        a, b, n = self._pair(other)
        return Character(self.group, a - b, n)

    def __rmul__(self, k: int) -> Character:
        return Character(self.group, int(k) * self.coeffs, self.conductor)

    def conjugate(self) -> Character:
        return Character(self.group, canon_vec(conj_vec(self.coeffs, self.conductor), self.conductor), self.conductor)

    def is_principal(self) -> bool:
        return bool((self.coeffs == rational_vec(1, self.conductor)).all())

    def is_irreducible(self) -> bool:
        return inner_product(self, self) == 1

    def key(self) -> bytes:
        return self.coeffs.tobytes()

    def sort_key(self) -> tuple:
        return (self.degree, tuple(v.sort_key() for v in self.values))

    def __str__(self):
        return "(" + ", ".join(str(v) for v in self.values) + ")"

    def __repr__(self):
        tag = f"chi_{self.index}" if self.index is not None else "Character"
        return f"<{tag} of {self.group!r}: {self}>"


def _rational_value(v: np.ndarray, n: int) -> Fraction:
    t, scale = trace_form(n)
    q = Fraction(int(v @ t[0]), scale)
    if q.denominator != 1 or not np.array_equal(v, rational_vec(int(q), n)):
        raise InternalError("value expected to be a rational integer is not")
    return q


def trivial_character(G: PermGroup) -> Character:
    n = G.exponent
    return Character(G, np.tile(rational_vec(1, n), (len(G.classes), 1)), n)


@dataclass(frozen=True)
class CharacterTable:
    group: PermGroup
    irreducibles: tuple[Character, ...]
    conductor: int

    def __len__(self):
        return len(self.irreducibles)

    def __getitem__(self, i: int) -> Character:
        return self.irreducibles[i]

    def __iter__(self):
        return iter(self.irreducibles)

    @property
    def degrees(self) -> list[int]:
        return [chi.degree for chi in self.irreducibles]

    def matrix(self, n: int | None = None) -> np.ndarray:
        """All rows stacked: ``(len(self), classes, n)``."""
        n = n or self.conductor
        cache = self.group.cache.setdefault("table_matrix", {})
        out = cache.get(n)
        if out is None:
            out = np.stack([chi.lift(n) for chi in self.irreducibles])
            out.setflags(write=False)
            cache[n] = out
        return out

    def index_of(self, chi: Character) -> int | None:
        if chi.group is not self.group:
            raise PreconditionError("character belongs to another group")
        if chi.index is not None and self.irreducibles[chi.index] is chi:
            return chi.index
        n = math.lcm(chi.conductor, self.conductor)
        hits = np.nonzero((self.matrix(n) == chi.lift(n)).all(axis=(1, 2)))[0]
        return int(hits[0]) if hits.size else None

    @property
    def trivial(self) -> Character:
        return self.irreducibles[0]


# -- table computation ------------------------------------------------------


def _table_prime(order: int, exponent: int) -> int:
    # least p ≡ 1 (mod exponent) with p > 2*sqrt(order)
    p = 2
    while True:
        p = int(nextprime(p))
        if p % exponent == 1 % exponent and p * p > 4 * order and p % 2 == 1:
            return p


def _rref_rows(b: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Column-reduce basis columns ``b`` so ``b[pivots] = I``."""
    m = b.T.copy() % p
    rows, cols = m.shape
    piv = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            m[[i, r]] = m[[r, i]]
        m[r] = m[r] * kernels.inv_mod(int(m[r, c]), p) % p
        col = m[:, c].copy()
        col[r] = 0
        m = (m - np.outer(col, m[r])) % p
        piv.append(c)
        r += 1
    return m[:r].T.copy(), piv


def _central_characters(G: PermGroup, p: int) -> list[np.ndarray]:
    cls = G.classes
    nc = len(cls)
    reps = cls.rep_index.astype(np.int64)
    y = np.asarray(G.mul(G.inverse[:, None], reps[None, :]), dtype=np.int64)
    counts = kernels.class_counts(np.ascontiguousarray(y), cls.class_of.astype(np.int64), nc)
    spaces = [np.eye(nc, dtype=np.int64)]
    for j in range(1, nc):
        if all(b.shape[1] == 1 for b in spaces):
            break
        mj = counts[j] % p
        split = []
        for b in spaces:
            d = b.shape[1]
            if d == 1:
                split.append(b)
                continue
            b, piv = _rref_rows(b, p)
            a = (mj @ b % p)[piv]
            poly = kernels.charpoly_mod(np.ascontiguousarray(a), p)
            got = 0
            for lam in kernels.poly_roots_mod(poly, p):
                shifted = (a - int(lam) * np.eye(d, dtype=np.int64)) % p
                ns = kernels.nullspace_mod(np.ascontiguousarray(shifted), p)
                got += ns.shape[1]
                split.append(b @ ns % p)
            if got != d:
                raise InternalError(f"class matrix {j} not diagonalisable mod {p}")
        spaces = split
    if any(b.shape[1] != 1 for b in spaces) or len(spaces) != nc:
        raise InternalError("class matrices failed to separate the irreducibles")
    out = []
    for b in spaces:
        w = b[:, 0] % p
        w = w * kernels.inv_mod(int(w[0]), p) % p
        out.append(w)
    return out


def _compute_table(G: PermGroup) -> CharacterTable:
    cls = G.classes
    nc = len(cls)
    if nc > CLASS_CAP:
        raise ResourceError(f"{nc} classes exceeds the character table cap {CLASS_CAP}")
    order = G.order
    n = G.exponent
    p = _table_prime(order, n)
    sizes = np.array(cls.sizes, dtype=np.int64)
    inv_sizes = np.array([kernels.inv_mod(int(s), p) for s in sizes], dtype=np.int64)
    z = pow(int(primitive_root(p)), (p - 1) // n, p)
    # zinv_pow[t, l] = z^(-l t)
    zinv = kernels.inv_mod(z, p)
    zpow = np.array([pow(zinv, k, p) for k in range(n)], dtype=np.int64)
    tl = (np.arange(n)[:, None] * np.arange(n)[None, :]) % n
    dft = zpow[tl]
    inv_n = kernels.inv_mod(n, p)
    pm = cls.power_maps[:n]
    max_deg = math.isqrt(order)
    chars = []
    for w in _central_characters(G, p):
        s = int((w * w[cls.inverse_class] % p * inv_sizes % p).sum() % p)
        target = order * kernels.inv_mod(s, p) % p
        degs = [d for d in range(1, max_deg + 1) if d * d % p == target]
        if len(degs) != 1:
            raise InternalError(f"cannot recover a degree (candidates {degs})")
        d = degs[0]
        vals = w * d % p * inv_sizes % p
        chi_pow = vals[pm]  # (n, nc): chi(g_c^t)
        mult = (chi_pow.T @ dft) % p * inv_n % p  # (nc, n)
        if (mult > d).any() or not (mult.sum(axis=1) == d).all():
            raise InternalError("eigenvalue multiplicities out of range")
        chars.append(canon_vec(mult, n))
    return _finish_table(G, chars, n)


def _finish_table(G: PermGroup, rows: list[np.ndarray], n: int) -> CharacterTable:
    chars = [Character(G, r, n) for r in rows]
    chars.sort(key=Character.sort_key)
    for i, chi in enumerate(chars):
        chi.index = i
    table = CharacterTable(G, tuple(chars), n)
    _validate_table(table)
    return table


def _validate_table(table: CharacterTable) -> None:
    G = table.group
    nc = len(G.classes)
    if len(table) != nc:
        raise InternalError(f"{len(table)} irreducibles for {nc} classes")
    if sum(d * d for d in table.degrees) != G.order:
        raise InternalError("sum of squared degrees differs from the group order")
    g = gram(table.matrix(), table.matrix(), G, table.conductor)
    if not np.array_equal(g, np.eye(nc, dtype=object)):
        raise InternalError("row orthogonality fails")


def character_table(G: PermGroup) -> CharacterTable:
    """Irr(G), ordered by degree then by values (trivial character first)."""
    table = G.cache.get("table")
    if table is not None:
        return table
    with G._lock:
        table = G.cache.get("table")
        if table is None:
            table = _load_cached(G)
            if table is None:
                table = _compute_table(G)
                _store_cached(table)
            G.cache["table"] = table
    return table


# -- disk cache -------------------------------------------------------------


def _cache_key(G: PermGroup) -> str:
    h = hashlib.sha256()
    h.update(str(G.degree).encode())
    for row in sorted(g.images for g in G.generators):
        h.update(b"|" + ",".join(map(str, row)).encode())
    return h.hexdigest()[:32]


def _load_cached(G: PermGroup) -> CharacterTable | None:
    root = _active_cache_dir()
    if root is None:
        return None
    path = root / f"{_cache_key(G)}.json"
    if not path.exists():
        return None
    try:
        data = json.loads(path.read_text())
        reps = [list(map(int, G.elements[r])) for r in G.classes.rep_index]
        if data["order"] != G.order or data["representatives"] != reps:
            return None
        n = data["conductor"]
        rows = [np.array(r, dtype=np.int64).reshape(len(reps), n) for r in data["rows"]]
        table = _finish_table(G, rows, n)
    except (OSError, ValueError, KeyError, InternalError) as exc:
        log.warning("ignoring table cache entry %s: %s", path, exc)
        return None
    log.debug("loaded table for %r from %s", G, path)
    return table


def _store_cached(table: CharacterTable) -> None:
    root = _active_cache_dir()
    if root is None:
        return
    G = table.group
    root.mkdir(parents=True, exist_ok=True)
    data = {
        "order": G.order,
        "degree": G.degree,
        "representatives": [list(map(int, G.elements[r])) for r in G.classes.rep_index],
        "conductor": table.conductor,
        "rows": [chi.coeffs.ravel().tolist() for chi in table],
    }
    tmp = root / f".{_cache_key(G)}.{os.getpid()}.tmp"
    tmp.write_text(json.dumps(data))
    tmp.replace(root / f"{_cache_key(G)}.json")


# -- inner products, restriction, induction --------------------------------


def gram(a: np.ndarray, b: np.ndarray, G: PermGroup, n: int) -> np.ndarray:
    """``[<a_i, b_j>]`` for stacks of characters at conductor ``n``.

    Uses the normalised trace, which is exact whenever each product is
    rational (true for characters).  Entries are returned as ints when
    integral, else ``Fraction``.
    """
    t, scale = trace_form(n)
    sizes = np.array(G.classes.sizes, dtype=np.int64)
    lhs = np.asarray(a, dtype=np.int64) @ t  # (ka, nc, n)
    rhs = conj_vec(np.asarray(b, dtype=np.int64), n) * sizes[None, :, None]
    raw = np.tensordot(lhs, rhs, axes=([1, 2], [1, 2]))
    den = scale * G.order
    out = np.empty(raw.shape, dtype=object)
    for idx, v in np.ndenumerate(raw):
        q = Fraction(int(v), den)
        out[idx] = int(q) if q.denominator == 1 else q
    return out


def inner_product(phi: Character, psi: Character):
    """``(1/|G|) sum_g phi(g) conj(psi(g))``, computed in full cyclotomic arithmetic.

    Returns a ``Fraction`` when the result is rational, else a
    :class:`Cyclotomic`.
    """
    a, b, n = phi._pair(psi)
    sizes = np.array(phi.group.classes.sizes, dtype=np.int64)
    prod = mul_vec(a, canon_vec(conj_vec(b, n), n), n)
    total = Cyclotomic.from_vec((prod * sizes[:, None]).sum(axis=0), n) / phi.group.order
    return total.to_rational() if total.is_rational() else total


def class_fusion(G: PermGroup, S: PermGroup) -> np.ndarray:
    """``fusion[c]`` = class of G containing class ``c`` of ``S``."""
    key = ("fusion", S)
    f = G.cache.get(key)
    if f is None:
        pos = G.indices(S.elements[S.classes.rep_index])
        f = G.classes.class_of[pos]
        f.setflags(write=False)
        G.cache[key] = f
    return f


def restrict_values(chi: Character, S: PermGroup) -> Character:
    """``chi_S`` as a class function on ``S``."""
    if S is chi.group:
        return chi
    return Character(S, chi.coeffs[class_fusion(chi.group, S)], chi.conductor)


def constituents(theta: Character) -> list[tuple[Character, int]]:
    """Decompose a character into Irr of its group: ``[(sigma, multiplicity)]``."""
    S = theta.group
    key = ("decomp", theta.conductor, theta.coeffs.tobytes())
    hit = S.cache.get(key)
    if hit is not None:
        return hit
    table = character_table(S)
    n = math.lcm(theta.conductor, table.conductor)
    g = gram(theta.lift(n)[None], table.matrix(n), S, n)[0]
    out = []
    for i, m in enumerate(g):
        if not isinstance(m, int) or m < 0:
            raise InternalError(f"multiplicity {m} is not a nonnegative integer")
        if m:
            out.append((table[i], m))
    if sum(sig.degree * m for sig, m in out) != theta.degree:
        raise InternalError("constituent degrees do not add up")
    S.cache[key] = out
    return out


@dataclass(frozen=True)
class Restriction:
    character: Character
    constituents: list[tuple[Character, int]]

    def constituent_indices(self) -> list[int]:
        return [sig.index for sig, _ in self.constituents]

    def constituent_chars(self) -> list[Character]:
        return [sig for sig, _ in self.constituents]


def restrict(chi: Character, S: PermGroup) -> Restriction:
    theta = restrict_values(chi, S)
    return Restriction(theta, constituents(theta))


def induce(tau: Character, G: PermGroup) -> Character:
    """``tau^G`` for a character ``tau`` of a subgroup of ``G``."""
    T = tau.group
    if T is G:
        return tau
    fusion = class_fusion(G, T)
    nG = len(G.classes)
    n = tau.conductor
    tsizes = np.array(T.classes.sizes, dtype=np.int64)
    acc = np.zeros((nG, n), dtype=np.int64)
    np.add.at(acc, fusion, tau.coeffs * tsizes[:, None])
    gsizes = np.array(G.classes.sizes, dtype=np.int64)
    num = acc * G.order
    den = (T.order * gsizes)[:, None]
    if (num % den).any():
        raise PreconditionError("induced class function is not integral; input is not a character")
    return Character(G, num // den, n)


# -- kernels, centres, determinants ----------------------------------------


def _class_union(G: PermGroup, classes: np.ndarray) -> PermGroup:
    mask = np.isin(G.classes.class_of, classes)
    if not np.array_equal(G.closure(np.nonzero(mask)[0]), mask):
        raise InternalError("class union is not a subgroup")
    return G.subgroup(mask)


def kernel(chi: Character) -> PermGroup:
    """``{g : chi(g) = chi(1)}``."""
    key = ("kernel", chi.conductor, chi.coeffs.tobytes())
    G = chi.group
    hit = G.cache.get(key)
    if hit is None:
        hit = _class_union(G, np.nonzero((chi.coeffs == chi.coeffs[0]).all(axis=1))[0])
        G.cache[key] = hit
    return hit


def center_of_character(chi: Character) -> PermGroup:
    """``{g : |chi(g)| = chi(1)}``."""
    n = chi.conductor
    sq = mul_vec(chi.coeffs, canon_vec(conj_vec(chi.coeffs, n), n), n)
    hits = np.nonzero((sq == rational_vec(chi.degree**2, n)).all(axis=1))[0]
    return _class_union(chi.group, hits)


def determinant_character(chi: Character) -> Character:
    """``det chi`` from power sums by Newton's identities."""
    G = chi.group
    key = ("det", chi.conductor, chi.coeffs.tobytes())
    hit = G.cache.get(key)
    if hit is not None:
        return hit
    n = chi.conductor
    d = chi.degree
    pm = G.classes.power_maps
    nc = len(G.classes)
    power_sums = [None] + [chi.coeffs[pm[k % (pm.shape[0] - 1)]] for k in range(1, d + 1)]
    elem = [np.tile(rational_vec(1, n), (nc, 1))]
    for i in range(1, d + 1):
        acc = np.zeros((nc, n), dtype=np.int64)
        for j in range(1, i + 1):
            term = mul_vec(elem[i - j], power_sums[j], n)
            acc += term if j % 2 else -term
        if (acc % i).any():
            raise InternalError("Newton recursion produced a non-integral coefficient")
        elem.append(acc // i)
    det = Character(G, elem[d], n)
    _check_linear(det)
    G.cache[key] = det
    return det


def _root_exponents(lam: Character) -> tuple[np.ndarray, int]:
    # lam(c) = zeta_N^k[c]
    N = None
    ks = []
    for v in lam.coeffs:
        hit = root_index(v, lam.conductor)
        if hit is None:
            raise InternalError("determinant value is not a root of unity")
        N, k = hit
        ks.append(k)
    return np.array(ks, dtype=np.int64), N


def _check_linear(lam: Character) -> None:
    G = lam.group
    ks, N = _root_exponents(lam)
    per_elem = ks[G.classes.class_of]
    for g in G.generator_indices():
        prod = np.asarray(G.mul(np.arange(G.order), g))
        if ((per_elem[prod] - per_elem - per_elem[g]) % N).any():
            raise InternalError("determinant is not multiplicative")


def determinantal_order(chi: Character) -> int:
    """Order of ``det chi`` in the group of linear characters."""
    ks, N = _root_exponents(determinant_character(chi))
    return math.lcm(1, *(N // math.gcd(N, int(k)) for k in ks))


# -- quotients and conjugation ---------------------------------------------


def inflate(chibar: Character, qm: QuotientMap) -> Character:
    """Lift a character of ``G/N`` to ``G`` (values at G's exponent)."""
    if chibar.group is not qm.target:
        raise PreconditionError("character is not on the quotient group")
    G = qm.source
    qclass = qm.target.classes.class_of[qm.projection[G.classes.rep_index]]
    n = math.lcm(G.exponent, chibar.conductor)
    return Character(G, chibar.lift(n)[qclass], n)


def deflate(chi: Character, qm: QuotientMap) -> Character:
    """The character of ``G/N`` whose inflation is ``chi``; needs ``N <= ker chi``."""
    if chi.group is not qm.source:
        raise PreconditionError("character is not on the source group")
    K = kernel(chi)
    if not K.contains_group(qm.kernel):
        raise PreconditionError("normal subgroup is not contained in the kernel")
    Q = qm.target
    pre = np.array([qm.lift(int(r)) for r in Q.classes.rep_index], dtype=np.int64)
    vals = chi.coeffs[chi.group.classes.class_of[pre]]
    out = Character(Q, vals, chi.conductor)
    table = character_table(Q)
    i = table.index_of(out)
    return table[i] if i is not None else out


def conjugate_character(chi: Character, H: PermGroup, g: int, ambient: PermGroup) -> Character:
    """``chi^g`` as a character of ``H = S^g``, where ``chi`` lives on ``S``.

    ``chi^g(h) = chi(g h g^-1)``; ``g`` is a position in ``ambient``.
    """
    S = chi.group
    reps = ambient.positions(H)[H.classes.rep_index]
    back = ambient.conjugation_map(int(ambient.inverse[g]))[reps]  # g h g^-1
    pos = S.indices(ambient.elements[back])
    return Character(H, chi.coeffs[S.classes.class_of[pos]], chi.conductor)
