"""Integer kernels on Cayley tables and over prime fields.

Every kernel has two implementations with identical results: a loop version
compiled by numba (``*_nb``) and a vectorised numpy version (``*_np``).  The
public names dispatch on :data:`bpi._accel.USE_NUMBA`.
"""

import numpy as np

from bpi._accel import USE_NUMBA, njit

__all__ = [
    "subgroup_closure",
    "orbit_labels",
    "class_counts",
    "charpoly_mod",
    "nullspace_mod",
    "ring_mul",
    "poly_roots_mod",
    "inv_mod",
]


def inv_mod(a, p):
    """Inverse of ``a`` modulo the prime ``p`` (extended Euclid)."""
    a = a % p
    if a == 0:
        raise ZeroDivisionError("inverse of zero")
    t, new_t = 0, 1
    r, new_r = p, a
    while new_r != 0:
        q = r // new_r
        t, new_t = new_t, t - q * new_t
        r, new_r = new_r, r - q * new_r
    return t % p


_inv_mod_nb = njit(inv_mod)


# -- subgroup closure -------------------------------------------------------


@njit
def subgroup_closure_nb(table, gens):
    n = table.shape[0]
    mask = np.zeros(n, dtype=np.bool_)
    queue = np.empty(n, dtype=np.int64)
    mask[0] = True
    queue[0] = 0
    head = 0
    tail = 1
    while head < tail:
        x = queue[head]
        head += 1
        for g in gens:
            y = table[x, g]
            if not mask[y]:
                mask[y] = True
                queue[tail] = y
                tail += 1
    return mask


def subgroup_closure_np(table, gens):
    gens = np.asarray(gens, dtype=np.int64)
    mask = np.zeros(table.shape[0], dtype=bool)
    mask[0] = True
    frontier = np.zeros(1, dtype=np.int64)
    while frontier.size and gens.size:
        new = table[np.ix_(frontier, gens)].ravel()
        new = np.unique(new[~mask[new]])
        mask[new] = True
        frontier = new
    return mask


# -- orbits and class algebra ----------------------------------------------


@njit
def orbit_labels_nb(maps):
    # label of x = least point of its orbit under the permutations in ``maps``
    k, n = maps.shape
    labels = np.full(n, -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    for start in range(n):
        if labels[start] >= 0:
            continue
        labels[start] = start
        queue[0] = start
        head = 0
        tail = 1
        while head < tail:
            x = queue[head]
            head += 1
            for g in range(k):
                y = maps[g, x]
                if labels[y] < 0:
                    labels[y] = start
                    queue[tail] = y
                    tail += 1
    return labels


def orbit_labels_np(maps):
    n = maps.shape[1]
    labels = np.arange(n, dtype=np.int64)
    while True:
        new = labels.copy()
        for c in maps:
            np.minimum.at(new, c, labels)
            np.minimum(new, new[c], out=new)
        if np.array_equal(new, labels):
            return labels
        labels = new


@njit
def class_counts_nb(y, class_of, nc):
    # out[j, i, k] = #{x in C_i : y[x, k] in C_j}
    n = y.shape[0]
    out = np.zeros((nc, nc, nc), dtype=np.int64)
    for k in range(nc):
        for x in range(n):
            out[class_of[y[x, k]], class_of[x], k] += 1
    return out


def class_counts_np(y, class_of, nc):
    out = np.zeros((nc, nc, nc), dtype=np.int64)
    cols = np.broadcast_to(np.arange(nc), y.shape)
    rows = np.broadcast_to(class_of[:, None], y.shape)
    np.add.at(out, (class_of[y], rows, cols), 1)
    return out


# -- linear algebra over F_p ------------------------------------------------


@njit
def charpoly_mod_nb(a, p):
    """Characteristic polynomial (low degree first) via Hessenberg form."""
    n = a.shape[0]
    h = a.copy() % p
    for m in range(1, n - 1):
        piv = -1
        for i in range(m, n):
            if h[i, m - 1] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != m:
            for j in range(n):
                t = h[piv, j]
                h[piv, j] = h[m, j]
                h[m, j] = t
            for j in range(n):
                t = h[j, piv]
                h[j, piv] = h[j, m]
                h[j, m] = t
        tinv = _inv_mod_nb(h[m, m - 1], p)
        for i in range(m + 1, n):
            u = h[i, m - 1] * tinv % p
            if u == 0:
                continue
            for j in range(n):
                h[i, j] = (h[i, j] - u * h[m, j]) % p
            for j in range(n):
                h[j, m] = (h[j, m] + u * h[j, i]) % p
    polys = np.zeros((n + 1, n + 1), dtype=np.int64)
    polys[0, 0] = 1
    for m in range(1, n + 1):
        # (x - h[m-1, m-1]) * p_{m-1}
        for d in range(m):
            polys[m, d + 1] = (polys[m, d + 1] + polys[m - 1, d]) % p
            polys[m, d] = (polys[m, d] - h[m - 1, m - 1] * polys[m - 1, d]) % p
        t = 1
        for i in range(m - 1, 0, -1):
            t = t * h[i, i - 1] % p
            c = t * h[i - 1, m - 1] % p
            if c == 0:
                continue
            for d in range(i):
                polys[m, d] = (polys[m, d] - c * polys[i - 1, d]) % p
    return polys[n].copy()


def charpoly_mod_np(a, p):
    n = a.shape[0]
    h = np.array(a, dtype=np.int64) % p
    for m in range(1, n - 1):
        nz = np.nonzero(h[m:, m - 1])[0]
        if nz.size == 0:
            continue
        piv = m + nz[0]
        if piv != m:
            h[[piv, m], :] = h[[m, piv], :]
            h[:, [piv, m]] = h[:, [m, piv]]
        tinv = inv_mod(int(h[m, m - 1]), p)
        for i in range(m + 1, n):
            u = int(h[i, m - 1]) * tinv % p
            if u:
                h[i, :] = (h[i, :] - u * h[m, :]) % p
                h[:, m] = (h[:, m] + u * h[:, i]) % p
    polys = [np.array([1], dtype=np.int64)]
    for m in range(1, n + 1):
        prev = polys[m - 1]
        cur = np.zeros(m + 1, dtype=np.int64)
        cur[1:] += prev
        cur[:m] -= h[m - 1, m - 1] * prev
        t = 1
        for i in range(m - 1, 0, -1):
            t = t * int(h[i, i - 1]) % p
            c = t * int(h[i - 1, m - 1]) % p
            if c:
                cur[:i] -= c * polys[i - 1]
        polys.append(cur % p)
    return polys[n]


@njit
def nullspace_mod_nb(a, p):
    """Columns spanning {x : a x = 0} over F_p."""
    rows, cols = a.shape
    m = a.copy() % p
    pivcols = np.full(rows, -1, dtype=np.int64)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if m[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(cols):
                t = m[piv, j]
                m[piv, j] = m[r, j]
                m[r, j] = t
        f = _inv_mod_nb(m[r, c], p)
        for j in range(cols):
            m[r, j] = m[r, j] * f % p
        for i in range(rows):
            if i != r and m[i, c] != 0:
                u = m[i, c]
                for j in range(cols):
                    m[i, j] = (m[i, j] - u * m[r, j]) % p
        pivcols[r] = c
        r += 1
    ispiv = np.zeros(cols, dtype=np.bool_)
    for i in range(r):
        ispiv[pivcols[i]] = True
    free = cols - r
    out = np.zeros((cols, free), dtype=np.int64)
    k = 0
    for c in range(cols):
        if ispiv[c]:
            continue
        out[c, k] = 1
        for i in range(r):
            out[pivcols[i], k] = (p - m[i, c]) % p
        k += 1
    return out


def nullspace_mod_np(a, p):
    m = np.array(a, dtype=np.int64) % p
    rows, cols = m.shape
    pivcols = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            m[[piv, r], :] = m[[r, piv], :]
        m[r] = m[r] * inv_mod(int(m[r, c]), p) % p
        col = m[:, c].copy()
        col[r] = 0
        m = (m - np.outer(col, m[r])) % p
        pivcols.append(c)
        r += 1
    free = [c for c in range(cols) if c not in set(pivcols)]
    out = np.zeros((cols, len(free)), dtype=np.int64)
    for k, c in enumerate(free):
        out[c, k] = 1
        for i, pc in enumerate(pivcols):
            out[pc, k] = (-m[i, c]) % p
    return out


# -- group ring Z[x]/(x^n - 1) ----------------------------------------------


@njit
def ring_mul_nb(a, b):
    rows, n = a.shape
    out = np.zeros((rows, n), dtype=np.int64)
    for r in range(rows):
        for i in range(n):
            ai = a[r, i]
            if ai == 0:
                continue
            for j in range(n):
                bj = b[r, j]
                if bj != 0:
                    k = i + j
                    if k >= n:
                        k -= n
                    out[r, k] += ai * bj
    return out


def ring_mul_np(a, b):
    n = a.shape[1]
    out = np.zeros_like(a, dtype=np.int64)
    for i in np.nonzero(a.any(axis=0))[0]:
        out += a[:, i, None] * np.roll(b, i, axis=1)
    return out


def poly_roots_mod(coeffs, p):
    """All roots in F_p of a polynomial given low degree first."""
    xs = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    for c in np.asarray(coeffs, dtype=np.int64)[::-1]:
        acc = (acc * xs + c) % p
    return np.nonzero(acc == 0)[0]


if USE_NUMBA:
    subgroup_closure = subgroup_closure_nb
    orbit_labels = orbit_labels_nb
    class_counts = class_counts_nb
    charpoly_mod = charpoly_mod_nb
    nullspace_mod = nullspace_mod_nb
    ring_mul = ring_mul_nb
else:
    subgroup_closure = subgroup_closure_np
    orbit_labels = orbit_labels_np
    class_counts = class_counts_np
    charpoly_mod = charpoly_mod_np
    nullspace_mod = nullspace_mod_np
    ring_mul = ring_mul_np
