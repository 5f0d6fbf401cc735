"""The numba and numpy paths of every kernel agree."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bpi import kernels
from bpi._accel import HAVE_NUMBA
from bpi.corpus import builtin_group

pytestmark = pytest.mark.skipif(not HAVE_NUMBA, reason="numba not installed")

P = 10007


@pytest.mark.parametrize("name", ["S4", "SL(2,3)", "C3:C4", "3^1+2_exp9"])
def test_closure_and_orbits(name):
    G = builtin_group(name)
    rng = np.random.default_rng(0)
    for _ in range(10):
        gens = rng.integers(0, G.order, size=2).astype(np.int64)
        a = kernels.subgroup_closure_nb(G.table, gens)
        b = kernels.subgroup_closure_np(G.table, gens)
        assert np.array_equal(a, b)
    maps = np.stack([G.conjugation_map(g) for g in G.generator_indices()]).astype(np.int64)
    assert np.array_equal(kernels.orbit_labels_nb(maps), kernels.orbit_labels_np(maps))


def test_class_counts_agree():
    G = builtin_group("S4")
    cls = G.classes
    inv = G.inverse
    y = G.table[inv][:, cls.rep_index].astype(np.int64)
    c = cls.class_of.astype(np.int64)
    assert np.array_equal(kernels.class_counts_nb(y, c, len(cls)), kernels.class_counts_np(y, c, len(cls)))


square = st.integers(1, 7).flatmap(
    lambda n: st.lists(st.integers(0, P - 1), min_size=n * n, max_size=n * n).map(
        lambda xs: np.array(xs, dtype=np.int64).reshape(n, n)
    )
)


@given(square)
def test_charpoly_agree(a):
    assert np.array_equal(kernels.charpoly_mod_nb(a.copy(), P), kernels.charpoly_mod_np(a.copy(), P))


@given(square, st.integers(0, 3))
def test_nullspace_agree(a, rank_drop):
    n = a.shape[0]
    a = a.copy()
    for i in range(min(rank_drop, n - 1)):
        a[:, n - 1 - i] = a[:, 0]
    x = kernels.nullspace_mod_nb(a.copy(), P)
    y = kernels.nullspace_mod_np(a.copy(), P)
    assert np.array_equal(x, y)
    assert not ((a @ y) % P).any()


@given(st.integers(1, 24).flatmap(lambda n: st.tuples(*[st.lists(st.integers(-9, 9), min_size=n, max_size=n)] * 2)))
def test_ring_mul_agree(pair):
    a = np.array([pair[0]], dtype=np.int64)
    b = np.array([pair[1]], dtype=np.int64)
    assert np.array_equal(kernels.ring_mul_nb(a, b), kernels.ring_mul_np(a, b))


def test_charpoly_roots():
    # (x - 2)(x - 5) over F_P
    a = np.array([[2, 1], [0, 5]], dtype=np.int64)
    coeffs = kernels.charpoly_mod(a, P)
    assert sorted(kernels.poly_roots_mod(coeffs, P).tolist()) == [2, 5]


def test_inv_mod():
    assert all(a * kernels.inv_mod(a, 97) % 97 == 1 for a in range(1, 97))
    with pytest.raises(ZeroDivisionError):
        kernels.inv_mod(0, 97)
