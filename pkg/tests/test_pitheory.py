import pytest
from hypothesis import given
from hypothesis import strategies as st

from bpi.characters import character_table, inner_product, kernel
from bpi.corpus import builtin_group
from bpi.errors import NotPiSeparableError
from bpi.pitheory import (
    check_kernel_lemma,
    is_pi_factored,
    is_pi_number,
    is_pi_special,
    pi_factorization,
    pi_special_characters,
)
from bpi.primes import PrimeSet, prime_divisors

from conftest import SMALL


def test_pi_numbers():
    assert is_pi_number(8, PrimeSet({2}))
    assert not is_pi_number(12, PrimeSet({2}))
    assert is_pi_number(1, PrimeSet())
    assert is_pi_number(9, PrimeSet({2}).complement())


def test_prime_set_parsing():
    assert PrimeSet.parse("2,3") == PrimeSet({2, 3})
    assert PrimeSet.parse("none") == PrimeSet()
    assert str(PrimeSet({3}).complement()) == "{3}'"
    assert PrimeSet({2, 7}).normalized(12) == PrimeSet({2})
    assert PrimeSet({2}).complement().normalized(12) == PrimeSet({3})
    with pytest.raises(ValueError):
        PrimeSet({4})


def test_special_examples(S3, Q8):
    assert is_pi_special(Q8, character_table(Q8)[4], PrimeSet({2}))
    for G in (S3, Q8):
        for pi in (PrimeSet(), PrimeSet({2}), PrimeSet({3})):
            assert is_pi_special(G, character_table(G).trivial, pi)
    assert not is_pi_special(S3, character_table(S3)[2], PrimeSet({2}))


def test_factorization_examples(S3):
    C6 = builtin_group("C6")
    t = character_table(C6)
    pi = PrimeSet({2})
    for lam in t:
        f = pi_factorization(C6, lam, pi)
        assert f is not None and f.alpha * f.beta == lam
    faithful = next(lam for lam in t if kernel(lam).order == 1)
    f = pi_factorization(C6, faithful, pi)
    from bpi.characters import determinantal_order

    assert determinantal_order(f.alpha) == 2 and determinantal_order(f.beta) == 3
    rec = check_kernel_lemma(C6, f)
    assert rec.passed and rec.kernel_order == 1
    assert pi_factorization(S3, character_table(S3)[2], pi) is None


def test_special_has_trivial_beta(Q8):
    pi = PrimeSet({2})
    for a in pi_special_characters(Q8, pi):
        f = pi_factorization(Q8, a, pi)
        assert f.alpha is a and f.beta.is_principal()
        assert check_kernel_lemma(Q8, f).passed


def test_non_separable_rejected(A5):
    with pytest.raises(NotPiSeparableError):
        pi_special_characters(A5, PrimeSet({2}))


@st.composite
def group_and_pi(draw):
    G = builtin_group(draw(st.sampled_from(SMALL)))
    primes = sorted(prime_divisors(G.order))
    extra = draw(st.sets(st.sampled_from([2, 3, 5, 7, 11, 13])))
    chosen = draw(st.sets(st.sampled_from(primes))) if primes else set()
    return G, PrimeSet(chosen | extra)


@given(group_and_pi())
def test_duality_and_kernel_lemma(gp):
    G, pi = gp
    cpi = pi.complement()
    for chi in character_table(G):
        f = pi_factorization(G, chi, pi)
        g = pi_factorization(G, chi, cpi)
        assert (f is None) == (g is None)
        if f is not None:
            assert (f.alpha, f.beta) == (g.beta, g.alpha)
            assert f.alpha * f.beta == chi
            assert is_pi_special(G, f.alpha, pi) and is_pi_special(G, f.beta, cpi)
            assert check_kernel_lemma(G, f).passed
    for a in pi_special_characters(G, pi):
        for b in pi_special_characters(G, cpi):
            assert inner_product(a * b, a * b) == 1


@pytest.mark.parametrize("name", SMALL)
def test_boundary_laws(name):
    G = builtin_group(name)
    t = character_table(G)
    full = PrimeSet(prime_divisors(G.order))
    assert len(pi_special_characters(G, full)) == len(t)
    assert all(pi_factorization(G, chi, full).beta.is_principal() for chi in t)
    none = PrimeSet({101})
    assert [c.index for c in pi_special_characters(G, none)] == [0]
    assert all(is_pi_factored(G, chi, none) for chi in t)
