"""pi-special and pi-factored characters of a single group."""

from __future__ import annotations

from dataclasses import dataclass, field

from bpi.characters import (
    Character,
    center_of_character,
    character_table,
    determinantal_order,
    kernel,
    restrict,
)
from bpi.errors import NotPiSeparableError, PreconditionError, TheoremViolation
from bpi.groups import PermGroup, intersection, is_pi_separable, subnormal_subgroups
from bpi.primes import PrimeSet, is_pi_number

__all__ = [
    "PrimeSet",
    "Factorization",
    "KernelLemmaRecord",
    "is_pi_number",
    "require_pi_separable",
    "is_pi_special",
    "pi_special_characters",
    "pi_factorization",
    "is_pi_factored",
    "check_kernel_lemma",
]


def require_pi_separable(G: PermGroup, pi: PrimeSet) -> PrimeSet:
    """Normalise ``pi`` to the primes dividing ``|G|``; reject non-separable ``G``."""
    piN = pi.normalized(G.order)
    key = ("separable", piN)
    ok = G.cache.get(key)
    if ok is None:
        ok = is_pi_separable(G, piN)
        G.cache[key] = ok
    if not ok:
        raise NotPiSeparableError(f"{G!r} is not {pi}-separable")
    return piN


def _own(G: PermGroup, chi: Character) -> None:
    if chi.group is not G or chi.index is None:
        raise PreconditionError("expected an irreducible character from the table of G")


def _special_flags(G: PermGroup, pi: PrimeSet) -> list[bool]:
    piN = require_pi_separable(G, pi)
    key = ("pi_special", piN)
    flags = G.cache.get(key)
    if flags is not None:
        return flags
    table = character_table(G)
    subs = subnormal_subgroups(G)
    flags = []
    for chi in table:
        ok = is_pi_number(chi.degree, piN)
        if ok:
            for S in subs:
                if not all(is_pi_number(determinantal_order(sig), piN) for sig in restrict(chi, S).constituent_chars()):
                    ok = False
                    break
        flags.append(ok)
    G.cache[key] = flags
    return flags


def is_pi_special(G: PermGroup, chi: Character, pi: PrimeSet) -> bool:
    """``chi(1)`` is a pi-number and, for every subnormal ``S``, every
    irreducible constituent of ``chi_S`` has pi-number determinantal order."""
    _own(G, chi)
    return _special_flags(G, pi)[chi.index]


def pi_special_characters(G: PermGroup, pi: PrimeSet) -> list[Character]:
    table = character_table(G)
    return [chi for chi, ok in zip(table, _special_flags(G, pi)) if ok]


@dataclass(frozen=True)
class Factorization:
    """``chi = alpha * beta`` with ``alpha`` pi-special and ``beta`` pi'-special."""

    alpha: Character
    beta: Character
    pi: PrimeSet
    chi: Character = field(compare=False)


def _factorizations(G: PermGroup, pi: PrimeSet) -> list[Factorization | None]:
    piN = require_pi_separable(G, pi)
    key = ("pi_factor", piN)
    out = G.cache.get(key)
    if out is not None:
        return out
    table = character_table(G)
    alphas = pi_special_characters(G, piN)
    betas = pi_special_characters(G, piN.complement())
    found: list[list[tuple[Character, Character]]] = [[] for _ in table]
    for a in alphas:
        for b in betas:
            i = table.index_of(a * b)
            if i is None:
                raise TheoremViolation(
                    "product of a pi-special and a pi'-special irreducible is reducible",
                    group=repr(G),
                    pi=str(piN),
                    alpha=a.index,
                    beta=b.index,
                )
            found[i].append((a, b))
    out = []
    for chi, hits in zip(table, found):
        if len(hits) > 1:
            raise TheoremViolation(
                "pi-factorization is not unique",
                group=repr(G),
                pi=str(piN),
                chi=chi.index,
                pairs=[(a.index, b.index) for a, b in hits],
            )
        out.append(Factorization(hits[0][0], hits[0][1], piN, chi) if hits else None)
    G.cache[key] = out
    return out


def pi_factorization(G: PermGroup, chi: Character, pi: PrimeSet) -> Factorization | None:
    """The unique (alpha, beta) with chi = alpha*beta, or ``None``.

    All pi-special/pi'-special pairs are multiplied out, so a reducible
    product or a second factorization of ``chi`` raises
    :class:`TheoremViolation`.
    """
    _own(G, chi)
    return _factorizations(G, pi)[chi.index]


def is_pi_factored(G: PermGroup, chi: Character, pi: PrimeSet) -> bool:
    return pi_factorization(G, chi, pi) is not None


@dataclass
class KernelLemmaRecord:
    group: str
    pi: str
    chi: int
    alpha: int
    beta: int
    kernel_order: int
    intersection_order: int
    kernels_equal: bool
    kernel_in_centers: bool
    restriction_shape: bool
    passed: bool = field(init=False)

    def __post_init__(self):
        self.passed = self.kernels_equal and self.kernel_in_centers and self.restriction_shape


def check_kernel_lemma(G: PermGroup, f: Factorization, *, raise_on_failure: bool = True) -> KernelLemmaRecord:
    """Check ``ker chi = ker alpha ∩ ker beta`` and ``ker chi <= Z(alpha) ∩ Z(beta)``.

    Also checks that ``alpha`` and ``beta`` restrict to ``ker chi`` as a
    multiple of a single linear character each, of pi- and pi'-order, whose
    product is trivial.
    """
    chi = f.chi
    K = kernel(chi)
    meet = intersection(G, kernel(f.alpha), kernel(f.beta))
    zmeet = intersection(G, center_of_character(f.alpha), center_of_character(f.beta))
    equal = K is meet
    in_centers = zmeet.contains_group(K)
    shape = True
    mu_nu = []
    for part, primes in ((f.alpha, f.pi), (f.beta, f.pi.complement())):
        res = restrict(part, K).constituents
        if len(res) != 1 or res[0][0].degree != 1 or res[0][1] != part.degree:
            shape = False
            break
        lam = res[0][0]
        if not is_pi_number(determinantal_order(lam), primes):
            shape = False
        mu_nu.append(lam)
    if shape and not (mu_nu[0] * mu_nu[1]).is_principal():
        shape = False
    rec = KernelLemmaRecord(
        group=repr(G),
        pi=str(f.pi),
        chi=chi.index,
        alpha=f.alpha.index,
        beta=f.beta.index,
        kernel_order=K.order,
        intersection_order=meet.order,
        kernels_equal=equal,
        kernel_in_centers=in_centers,
        restriction_shape=shape,
    )
    if raise_on_failure and not rec.passed:
        raise TheoremViolation("kernel lemma fails", **vars(rec))
    return rec
