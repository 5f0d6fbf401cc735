import pytest
from hypothesis import given
from hypothesis import strategies as st

from bpi.characters import character_table, induce, kernel
from bpi.corpus import builtin_group
from bpi.groups import is_subnormal, normal_subgroups
from bpi.nucleus import (
    SubnormalPair,
    all_nuclei,
    bpi_set,
    clifford_correspondent,
    find_conjugator,
    maximal_pi_factored_pairs,
    pair_leq,
    pair_stabilizer,
    pi_nucleus,
    subnormal_pairs,
    verify_main_theorem,
    verify_quotient_nucleus,
)
from bpi.pitheory import is_pi_factored, is_pi_special
from bpi.primes import PrimeSet, prime_divisors

from conftest import SMALL, perm

P2, P3 = PrimeSet({2}), PrimeSet({3})


def sub_from(G, *cycles):
    return G.subgroup(G.closure([G.index(perm(c, G.degree)) for c in cycles]))


@pytest.fixture
def s3_setup(S3):
    t = character_table(S3)
    A3 = sub_from(S3, "(1 2 3)")
    ta = character_table(A3)
    return S3, t, A3, ta


@pytest.fixture
def a4_setup(A4):
    V4 = sub_from(A4, "(1 2)(3 4)", "(1 3)(2 4)")
    return A4, character_table(A4), V4, character_table(V4)


def test_pair_order(s3_setup):
    S3, t, A3, ta = s3_setup
    chi = t[2]
    bottom = SubnormalPair(S3.trivial, character_table(S3.trivial)[0], chi)
    omega = SubnormalPair(A3, ta[1], chi)
    omegabar = SubnormalPair(A3, ta[2], chi)
    top = SubnormalPair(S3, chi, chi)
    for p in subnormal_pairs(S3, chi):
        assert pair_leq(bottom, p)
    assert pair_leq(omega, top)
    assert not pair_leq(omega, omegabar)


def test_maximal_pairs_s3(s3_setup):
    S3, t, A3, ta = s3_setup
    pairs = maximal_pi_factored_pairs(S3, t[2], P3)
    assert [(p.S, p.sigma.index) for p in pairs] == [(A3, 1), (A3, 2)]
    g = find_conjugator(S3, A3, ta[1], A3, ta[2])
    assert S3.element(g).order() == 2
    top = maximal_pi_factored_pairs(S3, t[1], P3)
    assert [(p.S, p.sigma.index) for p in top] == [(S3, 1)]


def test_maximal_pairs_a4(a4_setup):
    A4, t, V4, tv = a4_setup
    pairs = maximal_pi_factored_pairs(A4, t[3], P2)
    assert [(p.S, p.sigma.index) for p in pairs] == [(V4, 1), (V4, 2), (V4, 3)]
    for p in pairs[1:]:
        g = find_conjugator(A4, V4, tv[1], V4, p.sigma)
        assert A4.element(g).order() == 3


def test_stabilizers(s3_setup, a4_setup):
    S3, t, A3, ta = s3_setup
    assert pair_stabilizer(S3, SubnormalPair(A3, ta[1], t[2])) is A3
    assert pair_stabilizer(S3, SubnormalPair(S3, t[1], t[1])) is S3
    A4, t4, V4, tv = a4_setup
    assert pair_stabilizer(A4, SubnormalPair(V4, tv[1], t4[3])) is V4


def test_clifford_correspondents(s3_setup, a4_setup):
    S3, t, A3, ta = s3_setup
    assert clifford_correspondent(S3, t[2], A3, ta[1]) is ta[1]
    assert clifford_correspondent(S3, t[1], S3, t[1]) is t[1]
    A4, t4, V4, tv = a4_setup
    assert clifford_correspondent(A4, t4[3], V4, tv[1]) is tv[1]


def test_nucleus_fixtures(s3_setup, a4_setup):
    S3, t, A3, ta = s3_setup
    tr = pi_nucleus(S3, t[2], P3)
    assert len(tr.steps) == 1
    assert tr.nucleus_group is A3 and tr.nucleus_character is ta[1]
    tr.verify()
    tr = pi_nucleus(S3, t[1], P3)
    assert tr.steps == () and tr.nucleus_character is t[1]
    A4, t4, V4, tv = a4_setup
    tr = pi_nucleus(A4, t4[3], P2)
    assert len(tr.steps) == 1 and tr.nucleus_group is V4 and tr.nucleus_character.degree == 1
    assert not tr.nucleus_character.is_principal()


def test_bpi_fixtures(S3):
    assert [c.index for c in bpi_set(S3, P3)] == [0, 2]
    assert [c.index for c in bpi_set(S3, P2)] == [0, 1]


def test_quotient_nucleus_examples(s3_setup, a4_setup):
    S3, t, A3, ta = s3_setup
    rec = verify_quotient_nucleus(S3, A3, t[1], P3)
    assert rec.passed and rec.nucleus_order == 6 and rec.quotient_nucleus_order == 2
    for chi in t:
        assert verify_quotient_nucleus(S3, S3.trivial, chi, P3).passed
    A4, t4, V4, tv = a4_setup
    rec = verify_quotient_nucleus(A4, V4, t4[1], P2)
    assert rec.passed and rec.nucleus_order == 12 and rec.quotient_nucleus_order == 3


def test_main_theorem_examples(s3_setup, a4_setup):
    S3, t, A3, ta = s3_setup
    rec = verify_main_theorem(S3, A3, P3)
    assert rec.quotient_side == rec.group_side == [0]
    A4, t4, V4, tv = a4_setup
    rec = verify_main_theorem(A4, V4, P2)
    assert rec.quotient_side == rec.group_side == [0]
    for G in (S3, A4):
        for pi in (P2, P3):
            rec = verify_main_theorem(G, G.trivial, pi)
            assert rec.group_side == [c.index for c in bpi_set(G, pi)]


@st.composite
def group_pi(draw):
    G = builtin_group(draw(st.sampled_from(SMALL)))
    primes = sorted(prime_divisors(G.order))
    return G, PrimeSet(draw(st.sets(st.sampled_from(primes))) if primes else ())


@given(group_pi())
def test_nucleus_invariants(gp):
    G, pi = gp
    t = character_table(G)
    members = bpi_set(G, pi)
    assert members[0] is t.trivial
    for chi in t:
        tr = pi_nucleus(G, chi, pi)
        orders = [T.order for T, _ in tr.chain]
        assert orders == sorted(orders, reverse=True) and len(set(orders)) == len(orders)
        for (T, tau), (U, ups) in zip(tr.chain, tr.chain[1:]):
            assert induce(ups, T) == tau
        assert is_pi_factored(tr.nucleus_group, tr.nucleus_character, pi)
        for step in tr.steps:
            assert is_subnormal(step.group, step.pair.S)
        # every choice of maximal pairs gives a conjugate nucleus
        for X, eta in all_nuclei(G, chi, pi):
            assert find_conjugator(G, tr.nucleus_group, tr.nucleus_character, X, eta) is not None
            assert is_pi_special(X, eta, pi) == (chi in members)


@given(group_pi())
def test_theorem_on_every_normal(gp):
    G, pi = gp
    for N in normal_subgroups(G):
        assert verify_main_theorem(G, N, pi).passed
        for chi in character_table(G):
            if kernel(chi).contains_group(N):
                assert verify_quotient_nucleus(G, N, chi, pi).passed


@pytest.mark.parametrize("name", SMALL)
def test_bpi_boundaries(name):
    G = builtin_group(name)
    t = character_table(G)
    full = PrimeSet(prime_divisors(G.order))
    assert bpi_set(G, full) == list(t)
    assert [c.index for c in bpi_set(G, PrimeSet())] == [0]
