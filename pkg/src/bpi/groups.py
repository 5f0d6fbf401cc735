"""Finite permutation groups by full element enumeration.

Elements of a group are kept as rows of an ``int32`` array sorted
lexicographically, so element 0 is always the identity and every derived
list (class representatives, subgroup element lists) is canonical.

Groups are interned by element set: building the same subgroup twice, from
any parent, returns the same :class:`PermGroup` object together with all of
its cached data (classes, character table, subgroup lattice).
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from bpi import kernels
from bpi.errors import PreconditionError, ResourceError
from bpi.perm import Permutation
from bpi.primes import PrimeSet, is_pi_number, prime_divisors

__all__ = [
    "PermGroup",
    "Subgroup",
    "ConjugacyClassData",
    "QuotientMap",
    "group_from_generators",
    "conjugacy_classes",
    "all_subgroups",
    "subnormal_subgroups",
    "normal_subgroups",
    "normal_closure",
    "subnormal_chain",
    "is_normal",
    "is_subnormal",
    "normalizer",
    "quotient_group",
    "chief_series",
    "chief_factor_orders",
    "is_solvable",
    "is_pi_separable",
    "conjugate_subgroup",
    "intersection",
    "settings",
]


@dataclass
class Settings:
    order_cap: int = 20_000
    table_cap: int = 6_000
    lattice_cap: int = 2_000


settings = Settings()

_DTYPE = np.int32
_registry: dict[tuple[int, bytes], "PermGroup"] = {}
_registry_lock = threading.RLock()


def _lex_sort(rows: np.ndarray) -> np.ndarray:
    if rows.shape[0] <= 1 or rows.shape[1] == 0:
        return rows
    return rows[np.lexsort(rows.T[::-1])]


@dataclass(frozen=True)
class ConjugacyClassData:
    representatives: tuple[Permutation, ...]
    rep_index: np.ndarray
    class_of: np.ndarray
    sizes: tuple[int, ...]
    orders: tuple[int, ...]
    # power_maps[k][c] = class of (rep_c)^k, for k = 0 .. exponent
    power_maps: np.ndarray
    inverse_class: np.ndarray

    def __len__(self):
        return len(self.sizes)

    def power_map(self, k: int) -> np.ndarray:
        return self.power_maps[k % (self.power_maps.shape[0] - 1)]


class PermGroup:
    """A finite group of permutations of ``range(degree)``.

    Build with :func:`group_from_generators` or :meth:`subgroup`; the
    constructor is internal.
    """

    def __init__(self, degree: int, elements: np.ndarray, generators: Sequence[Permutation]):
        self.degree = degree
        self.elements = elements
        self.elements.setflags(write=False)
        self.order = int(elements.shape[0])
        self.generators = tuple(generators)
        self.name: str | None = None
        self._index = {row.tobytes(): i for i, row in enumerate(elements)}
        self._lock = threading.RLock()
        self._table: np.ndarray | None = None
        self._masks: dict[PermGroup, np.ndarray] = {}
        self._parents: list[PermGroup] = []
        self.cache: dict = {}

    # -- construction

    @classmethod
    def _intern(cls, degree: int, elements: np.ndarray, generators=None, table=None) -> PermGroup:
        key = (degree, elements.tobytes())
        with _registry_lock:
            grp = _registry.get(key)
            if grp is None:
                if generators is None:
                    generators = _greedy_generators_perm(degree, elements)
                grp = cls(degree, elements, generators)
                _registry[key] = grp
            if table is not None and grp._table is None:
                table.setflags(write=False)
                grp._table = table
        return grp

    def subgroup(self, mask_or_indices) -> PermGroup:
        """The subgroup on a set of element positions (bool mask or indices)."""
        mask = np.asarray(mask_or_indices)
        if mask.dtype != bool:
            m = np.zeros(self.order, dtype=bool)
            m[mask] = True
            mask = m
        idx = np.nonzero(mask)[0]
        elements = np.ascontiguousarray(self.elements[idx])
        key = (self.degree, elements.tobytes())
        with _registry_lock:
            existing = _registry.get(key)
        if existing is not None:
            sub = existing
        else:
            table = None
            gens_idx = None
            if self.has_table:
                rank = np.cumsum(mask) - 1
                table = rank[self.table[np.ix_(idx, idx)]].astype(np.int32)
                gens_idx = _greedy_generators(self.table, idx)
            gens = [self.element(i) for i in gens_idx] if gens_idx is not None else None
            sub = PermGroup._intern(self.degree, elements, gens, table)
        with sub._lock:
            if self not in sub._parents and sub is not self:
                sub._parents.append(self)
        with self._lock:
            self._masks.setdefault(sub, mask.copy())
        return sub

    # -- elements

    def __len__(self):
        return self.order

    def __iter__(self):
        for i in range(self.order):
            yield self.element(i)

    def __contains__(self, perm: Permutation) -> bool:
        if perm.degree != self.degree:
            return False
        return np.asarray(perm.images, dtype=_DTYPE).tobytes() in self._index

    def __repr__(self):
        tag = f" {self.name}" if self.name else ""
        return f"<PermGroup{tag} order={self.order} degree={self.degree}>"

    def element(self, i: int) -> Permutation:
        return Permutation(tuple(int(x) for x in self.elements[i]))

    def index(self, perm: Permutation) -> int:
        return self._index[np.asarray(perm.images, dtype=_DTYPE).tobytes()]

    def find(self, rows: np.ndarray) -> np.ndarray:
        """Element positions of permutation rows, -1 where absent."""
        rows = np.ascontiguousarray(rows, dtype=_DTYPE)
        get = self._index.get
        return np.fromiter((get(r.tobytes(), -1) for r in rows), dtype=np.int64, count=len(rows))

    def indices(self, rows: np.ndarray) -> np.ndarray:
        out = self.find(rows)
        if (out < 0).any():
            raise KeyError("permutation not in group")
        return out

    @property
    def has_table(self) -> bool:
        return self.order <= settings.table_cap

    @property
    def table(self) -> np.ndarray:
        """Cayley table: ``table[i, j]`` is the position of ``e_i * e_j``."""
        if self._table is None:
            with self._lock:
                if self._table is None:
                    if not self.has_table:
                        raise ResourceError(
                            f"Cayley table for order {self.order} exceeds cap {settings.table_cap}"
                        )
                    t = self._build_table()
                    t.setflags(write=False)
                    self._table = t
        return self._table

    def _build_table(self) -> np.ndarray:
        n = self.order
        gens = [g for g in self.generators if not g.is_identity()]
        if n == 1:
            return np.zeros((1, 1), dtype=np.int32)
        right = [self.indices(np.asarray(g.images, dtype=_DTYPE)[self.elements]) for g in gens]
        table = np.empty((n, n), dtype=np.int32)
        table[:, 0] = np.arange(n)
        seen = np.zeros(n, dtype=bool)
        seen[0] = True
        queue = [0]
        for x in queue:
            for rg in right:
                y = int(rg[x])
                if not seen[y]:
                    seen[y] = True
                    table[:, y] = rg[table[:, x]]
                    queue.append(y)
        if not seen.all():
            raise PreconditionError("generators do not generate the stored element set")
        return table

    def mul(self, a, b):
        """Positions of products ``e_a * e_b`` (arrays broadcast)."""
        if self.has_table:
            return self.table[a, b]
        a, b = np.broadcast_arrays(np.asarray(a), np.asarray(b))
        ea = self.elements[a.ravel()]
        eb = self.elements[b.ravel()]
        prod = np.take_along_axis(eb, ea.astype(np.int64), axis=1)
        return self.indices(prod).reshape(a.shape)

    @cached_property
    def inverse(self) -> np.ndarray:
        if self.has_table:
            return np.argmax(self.table == 0, axis=1)
        inv = np.empty_like(self.elements)
        np.put_along_axis(inv, self.elements.astype(np.int64), np.arange(self.degree, dtype=_DTYPE)[None, :], axis=1)
        return self.indices(inv)

    def conjugation_map(self, g: int) -> np.ndarray:
        """``m[x]`` = position of ``g^-1 e_x g``."""
        ginv = int(self.inverse[g])
        if self.has_table:
            return self.table[self.table[ginv], g]
        gi = self.elements[g].astype(np.int64)
        ginvi = self.elements[ginv].astype(np.int64)
        return self.indices(gi[self.elements[:, ginvi]])

    def generator_indices(self) -> list[int]:
        return [self.index(g) for g in self.generators]

    def closure(self, gens: Iterable[int]) -> np.ndarray:
        """Mask of the subgroup generated by element positions ``gens``."""
        gens = np.asarray(sorted(set(int(g) for g in gens)), dtype=np.int64)
        return kernels.subgroup_closure(self.table, gens)

    def mask(self, sub: PermGroup) -> np.ndarray:
        """Membership mask of ``sub`` inside this group."""
        m = self._masks.get(sub)
        if m is None:
            pos = self.find(sub.elements)
            if (pos < 0).any():
                raise PreconditionError(f"{sub!r} is not contained in {self!r}")
            m = np.zeros(self.order, dtype=bool)
            m[pos] = True
            with self._lock:
                self._masks[sub] = m
        return m

    def positions(self, sub: PermGroup) -> np.ndarray:
        return np.nonzero(self.mask(sub))[0]

    def contains_group(self, sub: PermGroup) -> bool:
        if sub.degree != self.degree or self.order % sub.order:
            return False
        if sub in self._masks:
            return True
        return bool((self.find(sub.elements) >= 0).all())

    @cached_property
    def trivial(self) -> PermGroup:
        return self.subgroup(np.array([0]))

    @cached_property
    def classes(self) -> ConjugacyClassData:
        return _compute_classes(self)

    @cached_property
    def exponent(self) -> int:
        return math.lcm(*self.classes.orders)

    @cached_property
    def elements_key(self) -> tuple[tuple[int, ...], ...]:
        """Sorted element list as nested tuples, for lexicographic comparisons."""
        return tuple(tuple(int(x) for x in row) for row in self.elements)

    def fingerprint(self) -> tuple:
        return (self.order, tuple(sorted(self.classes.sizes)))


Subgroup = PermGroup


def _greedy_generators(table: np.ndarray, idx: np.ndarray) -> list[int]:
    gens: list[int] = []
    mask = np.zeros(table.shape[0], dtype=bool)
    mask[0] = True
    for i in idx:
        if not mask[i]:
            gens.append(int(i))
            mask = kernels.subgroup_closure(table, np.asarray(gens, dtype=np.int64))
    return gens


def _greedy_generators_perm(degree: int, elements: np.ndarray) -> list[Permutation]:
    gens: list[Permutation] = []
    have = {elements[0].tobytes()}
    for row in elements:
        if row.tobytes() in have:
            continue
        gens.append(Permutation(tuple(int(x) for x in row)))
        have = {r.tobytes() for r in _enumerate(degree, gens, None)}
    return gens


def _enumerate(degree: int, gens: Sequence[Permutation], cap: int | None) -> np.ndarray:
    ident = np.arange(degree, dtype=_DTYPE)
    g_arr = [np.asarray(g.images, dtype=np.int64) for g in gens]
    seen = {ident.tobytes()}
    rows = [ident]
    frontier = ident[None, :]
    while frontier.shape[0] and g_arr:
        new_rows = []
        for g in g_arr:
            prod = g[frontier].astype(_DTYPE)
            for r in prod:
                b = r.tobytes()
                if b not in seen:
                    seen.add(b)
                    new_rows.append(r)
                    if cap is not None and len(seen) > cap:
                        raise ResourceError(f"group order exceeds enumeration cap {cap}")
        frontier = np.array(new_rows, dtype=_DTYPE).reshape(-1, degree)
        rows.extend(new_rows)
    return np.array(rows, dtype=_DTYPE).reshape(-1, degree)


def group_from_generators(
    degree: int, generators: Sequence[Permutation | Sequence[int]], *, cap: int | None = None, name: str | None = None
) -> PermGroup:
    """Enumerate the group generated by ``generators`` on ``degree`` points."""
    gens = []
    for g in generators:
        if not isinstance(g, Permutation):
            g = Permutation(tuple(g))
        if g.degree != degree:
            raise PreconditionError(f"generator {g} has degree {g.degree}, expected {degree}")
        gens.append(g)
    cap = settings.order_cap if cap is None else cap
    elements = np.ascontiguousarray(_lex_sort(_enumerate(degree, gens, cap)))
    grp = PermGroup._intern(degree, elements, [g for g in gens if not g.is_identity()] or None)
    if name and grp.name is None:
        grp.name = name
    return grp


# -- classes ----------------------------------------------------------------


def _compute_classes(G: PermGroup) -> ConjugacyClassData:
    n = G.order
    gens = [i for i in G.generator_indices() if i != 0]
    if gens:
        maps = np.stack([G.conjugation_map(g) for g in gens]).astype(np.int64)
        labels = kernels.orbit_labels(maps)
    else:
        labels = np.arange(n, dtype=np.int64)
    reps = np.unique(labels)
    class_of = np.searchsorted(reps, labels)
    sizes = np.bincount(class_of, minlength=len(reps))
    # powers of representatives until every one returns to the identity
    powers = [np.zeros(len(reps), dtype=np.int64)]
    orders = np.zeros(len(reps), dtype=np.int64)
    k = 0
    while (orders == 0).any():
        k += 1
        cur = np.asarray(G.mul(powers[-1], reps), dtype=np.int64)
        powers.append(cur)
        orders[(cur == 0) & (orders == 0)] = k
    exponent = math.lcm(*(int(o) for o in orders))
    while len(powers) <= exponent:
        powers.append(np.asarray(G.mul(powers[-1], reps), dtype=np.int64))
    power_maps = class_of[np.stack(powers[: exponent + 1])]
    for arr in (reps, class_of, power_maps):
        arr.setflags(write=False)
    return ConjugacyClassData(
        representatives=tuple(G.element(int(r)) for r in reps),
        rep_index=reps,
        class_of=class_of,
        sizes=tuple(int(s) for s in sizes),
        orders=tuple(int(o) for o in orders),
        power_maps=power_maps,
        inverse_class=power_maps[exponent - 1],
    )


def conjugacy_classes(G: PermGroup) -> ConjugacyClassData:
    return G.classes


# -- subgroup structure -----------------------------------------------------


def _sort_groups(groups: Iterable[PermGroup]) -> list[PermGroup]:
    return sorted(groups, key=lambda H: (H.order, H.elements_key))


def all_subgroups(G: PermGroup) -> list[PermGroup]:
    """Every subgroup of ``G`` exactly once, sorted by (order, element list).

    Seeds are the cyclic subgroups; joins with cyclic subgroups are taken
    until nothing new appears.
    """
    cached = G.cache.get("subgroups")
    if cached is not None:
        return cached
    if G.order > settings.lattice_cap:
        raise ResourceError(f"subgroup lattice of order {G.order} exceeds cap {settings.lattice_cap}")
    for P in list(G._parents):
        plist = P.cache.get("subgroups")
        if plist is not None:
            pmask = P.mask(G)
            out = [H for H in plist if not (P.mask(H) & ~pmask).any()]
            G.cache["subgroups"] = out
            return out

    table = G.table
    found: dict[bytes, tuple[np.ndarray, list[int]]] = {}
    cyclic: list[tuple[np.ndarray, list[int]]] = []
    for x in range(G.order):
        m = kernels.subgroup_closure(table, np.array([x], dtype=np.int64))
        key = np.packbits(m).tobytes()
        if key not in found:
            found[key] = (m, [x] if x else [])
            cyclic.append(found[key])
    frontier = list(cyclic)
    while frontier:
        nxt = []
        for m, gens in frontier:
            for cm, cg in cyclic:
                if not (cm & ~m).any():
                    continue
                jg = gens + cg
                jm = kernels.subgroup_closure(table, np.asarray(jg, dtype=np.int64))
                key = np.packbits(jm).tobytes()
                if key not in found:
                    found[key] = (jm, jg)
                    nxt.append(found[key])
        frontier = nxt
    out = _sort_groups(G.subgroup(m) for m, _ in found.values())
    G.cache["subgroups"] = out
    return out


def _local_gens(G: PermGroup, S: PermGroup) -> list[int]:
    return [G.index(g) for g in S.generators]


def is_normal(G: PermGroup, S: PermGroup) -> bool:
    mask = G.mask(S)
    sg = _local_gens(G, S)
    for g in G.generator_indices():
        cm = G.conjugation_map(g)
        if not mask[cm[sg]].all():
            return False
    return True


def normal_closure(G: PermGroup, S: PermGroup) -> PermGroup:
    """Smallest normal subgroup of ``G`` containing ``S``."""
    gens = _local_gens(G, S)
    mask = G.closure(gens)
    maps = [G.conjugation_map(g) for g in G.generator_indices()]
    changed = True
    while changed:
        changed = False
        for cm in maps:
            for s in list(gens):
                c = int(cm[s])
                if not mask[c]:
                    gens.append(c)
                    mask = G.closure(gens)
                    changed = True
    return G.subgroup(mask)


def subnormal_chain(G: PermGroup, S: PermGroup) -> list[PermGroup]:
    """``G = H_0 ⊵ H_1 ⊵ ...`` with ``H_{i+1}`` the normal closure of ``S`` in ``H_i``.

    Stops when the chain reaches ``S`` or stabilises above it.
    """
    G.mask(S)
    chain = [G]
    H = G
    while H.order != S.order:
        N = normal_closure(H, S)
        if N.order == H.order:
            break
        chain.append(N)
        H = N
    return chain


def is_subnormal(G: PermGroup, S: PermGroup) -> bool:
    return subnormal_chain(G, S)[-1].order == S.order


def subnormal_subgroups(G: PermGroup) -> list[PermGroup]:
    cached = G.cache.get("subnormal")
    if cached is None:
        cached = [S for S in all_subgroups(G) if is_subnormal(G, S)]
        G.cache["subnormal"] = cached
    return cached


def normalizer(G: PermGroup, S: PermGroup) -> PermGroup:
    """``{g in G : S^g = S}``."""
    smask = G.mask(S)
    sg = _local_gens(G, S)
    keep = np.ones(G.order, dtype=bool)
    table, inv = G.table, G.inverse
    for s in sg:
        # g^-1 s g for every g
        conj = table[table[inv, s], np.arange(G.order)]
        keep &= smask[conj]
    return G.subgroup(keep)


def conjugate_subgroup(G: PermGroup, S: PermGroup, g: int) -> PermGroup:
    """``S^g = g^-1 S g`` for the element at position ``g``."""
    cm = G.conjugation_map(g)
    mask = np.zeros(G.order, dtype=bool)
    mask[cm[G.positions(S)]] = True
    return G.subgroup(mask)


def intersection(G: PermGroup, *subs: PermGroup) -> PermGroup:
    mask = np.ones(G.order, dtype=bool)
    for S in subs:
        mask &= G.mask(S)
    return G.subgroup(mask)


def normal_subgroups(G: PermGroup) -> list[PermGroup]:
    """All normal subgroups, sorted by (order, element list)."""
    cached = G.cache.get("normal")
    if cached is not None:
        return cached
    if G.order == 1:
        G.cache["normal"] = [G]
        return [G]
    table = G.table
    cls = G.classes
    seeds = []
    for r in cls.rep_index[1:]:
        N = normal_closure(G, G.subgroup(G.closure([int(r)])))
        seeds.append(G.mask(N))
    trivial = np.zeros(G.order, dtype=bool)
    trivial[0] = True
    found = {np.packbits(trivial).tobytes(): trivial}
    frontier = [trivial]
    while frontier:
        nxt = []
        for m in frontier:
            for s in seeds:
                if not (s & ~m).any():
                    continue
                gens = np.nonzero(m | s)[0]
                jm = kernels.subgroup_closure(table, gens.astype(np.int64))
                key = np.packbits(jm).tobytes()
                if key not in found:
                    found[key] = jm
                    nxt.append(jm)
        frontier = nxt
    out = _sort_groups(G.subgroup(m) for m in found.values())
    G.cache["normal"] = out
    return out


def chief_series(G: PermGroup) -> list[PermGroup]:
    """``1 = N_0 < N_1 < ... < N_r = G`` with each factor chief in ``G``."""
    normals = normal_subgroups(G)
    cur = normals[0]
    series = [cur]
    while cur.order != G.order:
        cmask = G.mask(cur)
        nxt = min(
            (M for M in normals if M.order > cur.order and not (cmask & ~G.mask(M)).any()),
            key=lambda M: (M.order, M.elements_key),
        )
        series.append(nxt)
        cur = nxt
    return series


def chief_factor_orders(G: PermGroup) -> list[int]:
    s = chief_series(G)
    return [b.order // a.order for a, b in zip(s, s[1:])]


def is_solvable(G: PermGroup) -> bool:
    return all(len(prime_divisors(f)) <= 1 for f in chief_factor_orders(G))


def is_pi_separable(G: PermGroup, pi: PrimeSet) -> bool:
    """Every chief factor has pi-order or pi'-order."""
    cpi = pi.complement()
    return all(is_pi_number(f, pi) or is_pi_number(f, cpi) for f in chief_factor_orders(G))


# -- quotients --------------------------------------------------------------


@dataclass(frozen=True)
class QuotientMap:
    """``source -> source/kernel`` realised on the right cosets of the kernel."""

    source: PermGroup
    kernel: PermGroup
    target: PermGroup
    projection: np.ndarray

    def image(self, S: PermGroup) -> PermGroup:
        mask = np.zeros(self.target.order, dtype=bool)
        mask[self.projection[self.source.positions(S)]] = True
        return self.target.subgroup(mask)

    def preimage(self, H: PermGroup) -> PermGroup:
        return self.source.subgroup(self.target.mask(H)[self.projection])

    def lift(self, q: int) -> int:
        """Some source position mapping to target position ``q``."""
        return int(np.argmax(self.projection == q))


def quotient_group(G: PermGroup, N: PermGroup) -> QuotientMap:
    if not is_normal(G, N):
        raise PreconditionError("quotient by a subgroup that is not normal")
    key = ("quotient", N)
    cached = G.cache.get(key)
    if cached is not None:
        return cached
    table = G.table
    npos = G.positions(N)
    # coset Nx labelled by its least element position
    labels = table[npos].min(axis=0)
    reps = np.unique(labels)
    coset_of = np.searchsorted(reps, labels)
    index = len(reps)
    gens = []
    for g in G.generator_indices():
        gens.append(Permutation(tuple(int(c) for c in coset_of[table[reps, g]])))
    Q = group_from_generators(index, gens)
    action = coset_of[table[reps]].T.astype(np.int32)
    projection = Q.indices(action)
    projection.setflags(write=False)
    qm = QuotientMap(G, N, Q, projection)
    G.cache[key] = qm
    return qm
