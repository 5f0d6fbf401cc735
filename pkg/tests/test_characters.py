import json
import os
import subprocess
import sys

import numpy as np
import pytest

from bpi import characters as ch
from bpi.characters import (
    Character,
    center_of_character,
    character_table,
    class_fusion,
    deflate,
    determinant_character,
    determinantal_order,
    gram,
    induce,
    inflate,
    inner_product,
    kernel,
    restrict,
    restrict_values,
    trivial_character,
)
from bpi.corpus import builtin_group
from bpi.cyclotomic import Cyclotomic, rational_vec, root_of_unity
from bpi.groups import all_subgroups, normal_subgroups, quotient_group

from conftest import ALL, SMALL, perm


def sub_from(G, *cycles):
    return G.subgroup(G.closure([G.index(perm(c, G.degree)) for c in cycles]))


def values(chi):
    return [str(v) for v in chi.values]


# -- fixed tables -----------------------------------------------------------


def test_s3_table(S3):
    t = character_table(S3)
    assert t.degrees == [1, 1, 2]
    # classes: identity, transpositions, 3-cycles
    assert S3.classes.orders == (1, 2, 3)
    assert values(t[2]) == ["2", "0", "-1"]
    assert values(t[1]) == ["1", "-1", "1"]
    assert t.trivial.is_principal()


def test_c2_table():
    t = character_table(builtin_group("C2"))
    assert [values(chi) for chi in t] == [["1", "1"], ["1", "-1"]]


def test_q8_table(Q8):
    t = character_table(Q8)
    assert t.degrees == [1, 1, 1, 1, 2]
    row = t[4]
    central = [c for c in range(5) if Q8.classes.sizes[c] == 1 and c]
    assert row.value(0) == 2 and row.value(central[0]) == -2
    assert all(row.value(c) == 0 for c in range(5) if Q8.classes.sizes[c] == 2)


def test_inner_product_examples(S3):
    t = character_table(S3)
    assert inner_product(t[2], t[2]) == 1
    assert inner_product(t.trivial, t.trivial) == 1
    assert inner_product(t[2], t.trivial) == 0
    assert inner_product(t[0] + t[2], t[0] + t[2]) == 2


# -- table invariants over the corpus ---------------------------------------


@pytest.mark.parametrize("name", ALL)
def test_orthogonality_and_degrees(name):
    G = builtin_group(name)
    t = character_table(G)
    nc = len(G.classes)
    assert len(t) == nc
    assert sum(d * d for d in t.degrees) == G.order
    n = t.conductor
    assert np.array_equal(gram(t.matrix(), t.matrix(), G, n), np.eye(nc, dtype=object))
    # columns: sum_chi chi(a) conj chi(b) = delta_ab |C_G(a)|
    sizes = G.classes.sizes
    for a in range(nc):
        for b in range(nc):
            s = sum((chi.value(a) * chi.value(b).conjugate() for chi in t), Cyclotomic.rational(0))
            assert s == (G.order // sizes[a] if a == b else 0)


@pytest.mark.parametrize("name", SMALL)
def test_rows_are_characters(name):
    G = builtin_group(name)
    t = character_table(G)
    # permutation character counts fixed points
    fixed = [sum(1 for i in range(G.degree) if rep(i) == i) for rep in G.classes.representatives]
    fix = Character(G, np.stack([rational_vec(f, t.conductor) for f in fixed]), t.conductor)
    mult = gram(fix.coeffs[None], t.matrix(), G, t.conductor)[0]
    assert all(isinstance(m, int) and m >= 0 for m in mult)
    for a in t:
        for b in t:
            m = gram((a * b).lift(t.conductor)[None], t.matrix(), G, t.conductor)[0]
            assert all(isinstance(x, int) and x >= 0 for x in m)
            assert sum(x * d for x, d in zip(m, t.degrees)) == a.degree * b.degree


@pytest.mark.parametrize("name", ["S4", "SL(2,3)", "3^1+2_exp9"])
def test_gram_matches_exact_inner_product(name):
    G = builtin_group(name)
    t = character_table(G)
    g = gram(t.matrix(), t.matrix(), G, t.conductor)
    for i, a in enumerate(t):
        for j, b in enumerate(t):
            assert inner_product(a, b) == g[i, j]
    assert inner_product(t[1] + t[1], t[1]) == 2


# -- restriction and induction ---------------------------------------------


def test_restriction_examples(S3, A4):
    A3 = sub_from(S3, "(1 2 3)")
    res = restrict(character_table(S3)[2], A3)
    degs = sorted((s.degree, m) for s, m in res.constituents)
    assert degs == [(1, 1), (1, 1)] and not any(s.is_principal() for s, _ in res.constituents)
    chi3 = character_table(A4)[3]
    V4 = sub_from(A4, "(1 2)(3 4)", "(1 3)(2 4)")
    res = restrict(chi3, V4)
    assert len(res.constituents) == 3 and all(m == 1 and not s.is_principal() for s, m in res.constituents)
    for chi in character_table(A4):
        r = restrict(chi, A4.trivial)
        assert r.constituents[0][1] == chi.degree


def test_induction_examples(S3, A4):
    A3 = sub_from(S3, "(1 2 3)")
    omega = character_table(A3)[1]
    assert induce(omega, S3) == character_table(S3)[2]
    assert induce(trivial_character(S3), S3) == trivial_character(S3)
    V4 = sub_from(A4, "(1 2)(3 4)", "(1 3)(2 4)")
    lam = character_table(V4)[1]
    assert induce(lam, A4) == character_table(A4)[3]


@pytest.mark.parametrize("name", SMALL)
def test_frobenius_reciprocity(name):
    G = builtin_group(name)
    rng = np.random.default_rng(7)
    subs = all_subgroups(G)
    tG = character_table(G)
    for _ in range(15):
        T = subs[rng.integers(len(subs))]
        tau = character_table(T)[rng.integers(len(character_table(T)))]
        chi = tG[rng.integers(len(tG))]
        assert inner_product(induce(tau, G), chi) == inner_product(tau, restrict_values(chi, T))


def test_class_fusion(S4):
    V4 = sub_from(S4, "(1 2)(3 4)", "(1 3)(2 4)")
    f = class_fusion(S4, V4)
    assert len(set(f[1:].tolist())) == 1


# -- kernels, centres, determinants ----------------------------------------


def test_kernel_center_examples(S3, Q8):
    t = character_table(S3)
    assert kernel(t[1]) is sub_from(S3, "(1 2 3)")
    assert kernel(t.trivial) is S3
    z = center_of_character(character_table(Q8)[4])
    assert z.order == 2


def det_by_eigenvalues(chi):
    """det via eigenvalue multiplicities on each class representative."""
    G = chi.group
    pm = G.classes.power_maps
    out = []
    for c, m in enumerate(G.classes.orders):
        vals = [chi.value(int(pm[t][c])) for t in range(m)]
        det = Cyclotomic.rational(1)
        for l in range(m):
            mult = sum((vals[t] * root_of_unity(m, -l * t) for t in range(m)), Cyclotomic.rational(0)) / m
            k = mult.to_rational()
            assert k.denominator == 1 and k >= 0
            det = det * root_of_unity(m, l) ** int(k)
        out.append(det)
    return out


@pytest.mark.parametrize("name", SMALL)
def test_determinant_by_eigenvalues(name):
    G = builtin_group(name)
    for chi in character_table(G):
        assert determinant_character(chi).values == det_by_eigenvalues(chi)


def test_determinant_examples(S3, Q8):
    t = character_table(S3)
    assert determinant_character(t[2]) == t[1]
    assert determinantal_order(t[2]) == 2
    for lam in character_table(builtin_group("C6")):
        assert determinant_character(lam) == lam
    assert determinantal_order(character_table(Q8)[4]) == 1


@pytest.mark.parametrize("name", SMALL)
def test_kernel_and_center_laws(name):
    G = builtin_group(name)
    for chi in character_table(G):
        K, Z = kernel(chi), center_of_character(chi)
        assert Z.contains_group(K)
        r = restrict(chi, K)
        assert len(r.constituents) == 1 and r.constituents[0][0].is_principal()
        lam = determinant_character(chi)
        cls = G.classes.class_of
        for a in range(G.order):
            for g in G.generator_indices():
                assert lam.value(int(cls[G.mul(a, g)])) == lam.value(int(cls[a])) * lam.value(int(cls[g]))


# -- quotients --------------------------------------------------------------


def test_inflation_examples(S3, A4):
    A3 = sub_from(S3, "(1 2 3)")
    qm = quotient_group(S3, A3)
    tq = character_table(qm.target)
    assert inflate(tq[1], qm) == character_table(S3)[1]
    assert inflate(tq[0], qm) == trivial_character(S3)
    V4 = sub_from(A4, "(1 2)(3 4)", "(1 3)(2 4)")
    qm = quotient_group(A4, V4)
    lifted = {character_table(A4).index_of(inflate(x, qm)) for x in character_table(qm.target)}
    assert lifted == {i for i, chi in enumerate(character_table(A4)) if chi.degree == 1}


@pytest.mark.parametrize("name", SMALL)
def test_inflate_deflate_bijection(name):
    G = builtin_group(name)
    t = character_table(G)
    for N in normal_subgroups(G):
        qm = quotient_group(G, N)
        tq = character_table(qm.target)
        over = [chi for chi in t if kernel(chi).contains_group(N)]
        assert len(over) == len(tq)
        for chi in over:
            psi = deflate(chi, qm)
            assert psi.index is not None
            assert inflate(psi, qm) == chi
            assert psi.degree == chi.degree


def test_deflate_requires_kernel(S3):
    from bpi.errors import PreconditionError

    A3 = sub_from(S3, "(1 2 3)")
    with pytest.raises(PreconditionError):
        deflate(character_table(S3)[2], quotient_group(S3, A3))


# -- caching and backends ---------------------------------------------------


def test_disk_cache_roundtrip(tmp_path):
    G = builtin_group("SL(2,3)")
    t = character_table(G)
    ch.set_cache_dir(tmp_path)
    try:
        ch._store_cached(t)
        files = list(tmp_path.glob("*.json"))
        assert len(files) == 1
        loaded = ch._load_cached(G)
        assert [values(a) for a in loaded] == [values(b) for b in t]
        data = json.loads(files[0].read_text())
        data["order"] = 1
        files[0].write_text(json.dumps(data))
        assert ch._load_cached(G) is None
    finally:
        ch.set_cache_dir(None)


SCRIPT = """
from bpi.corpus import builtin_group
from bpi.characters import character_table
from bpi.nucleus import bpi_set
from bpi.primes import PrimeSet
from bpi import kernels
G = builtin_group("{name}")
print(kernels.subgroup_closure.__name__)
for chi in character_table(G):
    print([str(v) for v in chi.values])
print([c.index for c in bpi_set(G, PrimeSet({{2}}))])
"""


@pytest.mark.parametrize("name", ["S4", "C3^2:C4"])
def test_numpy_fallback_matches(name):
    def run(flag):
        env = dict(os.environ, BPI_DISABLE_NUMBA=flag)
        env.pop("BPI_CACHE_DIR", None)
        res = subprocess.run([sys.executable, "-c", SCRIPT.format(name=name)], env=env, capture_output=True, text=True, check=True)
        return res.stdout.splitlines()

    fast, slow = run("0"), run("1")
    assert slow[0].endswith("_np")
    assert fast[1:] == slow[1:]
