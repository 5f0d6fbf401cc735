"""Subnormal pairs, pi-nuclei and B_pi characters.

Background facts that the construction relies on are checked on every
instance instead of being assumed: maximal pi-factored pairs are conjugate,
the Clifford correspondent over a pair's stabiliser exists and is unique,
and the stabiliser is a proper subgroup whenever the character is not
pi-factored.  A failure raises :class:`~bpi.errors.TheoremViolation`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from bpi.characters import (
    Character,
    character_table,
    conjugate_character,
    deflate,
    induce,
    inflate,
    kernel,
    restrict,
)
from bpi.errors import InternalError, PreconditionError, TheoremViolation
from bpi.groups import (
    PermGroup,
    QuotientMap,
    conjugate_subgroup,
    is_normal,
    normalizer,
    quotient_group,
    subnormal_subgroups,
)
from bpi.pitheory import (
    Factorization,
    is_pi_factored,
    is_pi_special,
    pi_factorization,
    require_pi_separable,
)
from bpi.primes import PrimeSet

__all__ = [
    "SubnormalPair",
    "DescentStep",
    "NucleusTrace",
    "QuotientNucleusRecord",
    "MainTheoremRecord",
    "pair_leq",
    "subnormal_pairs",
    "maximal_pi_factored_pairs",
    "find_conjugator",
    "pair_stabilizer",
    "clifford_correspondent",
    "pi_nucleus",
    "all_nuclei",
    "in_bpi",
    "bpi_set",
    "verify_quotient_nucleus",
    "verify_main_theorem",
]


@dataclass(frozen=True, eq=False)
class SubnormalPair:
    """``(S, sigma)``: ``S`` subnormal in the ambient group, ``sigma`` in Irr(S)
    a constituent of ``chi_S``."""

    S: PermGroup
    sigma: Character
    chi: Character

    def __eq__(self, other):
        return isinstance(other, SubnormalPair) and self.S is other.S and self.sigma.index == other.sigma.index

    def __hash__(self):
        return hash((id(self.S), self.sigma.index))

    def sort_key(self) -> tuple:
        return (self.S.elements_key, self.sigma.sort_key())

    def describe(self) -> dict:
        return {"order": self.S.order, "generators": [str(g) for g in self.S.generators], "sigma": self.sigma.index}


def pair_leq(p: SubnormalPair, q: SubnormalPair) -> bool:
    """``(S, sigma) <= (T, tau)`` iff ``S <= T`` and ``sigma`` is a constituent of ``tau_S``."""
    if not q.S.contains_group(p.S):
        return False
    if p.S is q.S:
        return p.sigma.index == q.sigma.index
    return p.sigma.index in restrict(q.sigma, p.S).constituent_indices()


def subnormal_pairs(G: PermGroup, chi: Character, pi: PrimeSet | None = None) -> list[SubnormalPair]:
    """All subnormal pairs for ``chi``; only pi-factored ones when ``pi`` is given."""
    out = []
    for S in subnormal_subgroups(G):
        for sigma in restrict(chi, S).constituent_chars():
            if pi is None or is_pi_factored(S, sigma, pi):
                out.append(SubnormalPair(S, sigma, chi))
    return out


def find_conjugator(
    G: PermGroup, S: PermGroup, sigma: Character, S2: PermGroup, sigma2: Character
) -> int | None:
    """Position of some ``g`` in ``G`` with ``S^g = S2`` and ``sigma^g = sigma2``."""
    if S.order != S2.order:
        return None
    pos = G.positions(S)
    target = G.mask(S2)
    for g in range(G.order):
        if not target[G.conjugation_map(g)[pos]].all():
            continue
        if conjugate_character(sigma, S2, g, G) == sigma2:
            return g
    return None


def _maximal(pairs: list[SubnormalPair]) -> list[SubnormalPair]:
    out = []
    for p in pairs:
        if not any(q.S.order > p.S.order and pair_leq(p, q) for q in pairs):
            out.append(p)
    return sorted(out, key=SubnormalPair.sort_key)


def maximal_pi_factored_pairs(G: PermGroup, chi: Character, pi: PrimeSet) -> list[SubnormalPair]:
    """Maximal pi-factored subnormal pairs for ``chi``, canonical one first.

    Raises :class:`TheoremViolation` unless they are all conjugate in ``G``.
    """
    piN = require_pi_separable(G, pi)
    key = ("max_pairs", piN, chi.index)
    hit = G.cache.get(key) if chi.index is not None else None
    if hit is not None:
        return hit[0]
    pairs = _maximal(subnormal_pairs(G, chi, piN))
    first = pairs[0]
    witnesses = [0]
    for p in pairs[1:]:
        g = find_conjugator(G, first.S, first.sigma, p.S, p.sigma)
        if g is None:
            raise TheoremViolation(
                "maximal pi-factored subnormal pairs are not conjugate",
                group=repr(G),
                pi=str(piN),
                chi=chi.index,
                pairs=[q.describe() for q in pairs],
            )
        witnesses.append(g)
    if chi.index is not None:
        G.cache[key] = (pairs, witnesses)
    return pairs


def pair_witnesses(G: PermGroup, chi: Character, pi: PrimeSet) -> list[int]:
    """Conjugating elements from the canonical maximal pair to each of the others."""
    maximal_pi_factored_pairs(G, chi, pi)
    return G.cache[("max_pairs", pi.normalized(G.order), chi.index)][1]


def pair_stabilizer(G: PermGroup, p: SubnormalPair) -> PermGroup:
    """``{g in N_G(S) : sigma^g = sigma}``."""
    key = ("stabilizer", p.S, p.sigma.index)
    hit = G.cache.get(key)
    if hit is not None:
        return hit
    N = normalizer(G, p.S)
    mask = np.zeros(G.order, dtype=bool)
    for g in G.positions(N):
        if conjugate_character(p.sigma, p.S, int(g), G) == p.sigma:
            mask[g] = True
    T = G.subgroup(mask)
    G.cache[key] = T
    return T


def clifford_correspondent(G: PermGroup, chi: Character, T: PermGroup, sigma: Character) -> Character:
    """The unique ``tau`` in Irr(T | sigma) with ``tau^G = chi``."""
    S = sigma.group
    hits = []
    for tau in character_table(T):
        if sigma.index not in restrict(tau, S).constituent_indices():
            continue
        if induce(tau, G) == chi:
            hits.append(tau)
    if len(hits) != 1:
        raise TheoremViolation(
            "Clifford correspondent is not unique" if hits else "no Clifford correspondent",
            group=repr(G),
            chi=chi.index,
            stabilizer_order=T.order,
            sigma=sigma.index,
            matches=[t.index for t in hits],
        )
    return hits[0]


@dataclass(frozen=True)
class DescentStep:
    group: PermGroup
    character: Character
    pair: SubnormalPair
    stabilizer: PermGroup


@dataclass(frozen=True)
class NucleusTrace:
    """The chain ``(G, chi) = (T_0, tau_0) > (T_1, tau_1) > ... > (X, eta)``."""

    steps: tuple[DescentStep, ...]
    nucleus_group: PermGroup
    nucleus_character: Character
    factorization: Factorization
    pi: PrimeSet

    @property
    def chain(self) -> list[tuple[PermGroup, Character]]:
        return [(s.group, s.character) for s in self.steps] + [(self.nucleus_group, self.nucleus_character)]

    def verify(self) -> None:
        """Strict descent, induction back up the chain, factored end point."""
        chain = self.chain
        for (T, tau), (U, ups) in zip(chain, chain[1:]):
            if not U.order < T.order:
                raise TheoremViolation("nucleus chain does not descend strictly", orders=[c[0].order for c in chain])
            if induce(ups, T) != tau:
                raise TheoremViolation("inducing up the nucleus chain does not recover the character")
        if pi_factorization(self.nucleus_group, self.nucleus_character, self.pi) is None:
            raise TheoremViolation("nucleus character is not pi-factored")

    def to_dict(self) -> dict:
        return {
            "pi": self.pi.label(),
            "steps": [
                {
                    "group_order": s.group.order,
                    "character": s.character.index,
                    "degree": s.character.degree,
                    "pair": s.pair.describe(),
                    "stabilizer_order": s.stabilizer.order,
                    "stabilizer_generators": [str(g) for g in s.stabilizer.generators],
                }
                for s in self.steps
            ],
            "nucleus": {
                "order": self.nucleus_group.order,
                "generators": [str(g) for g in self.nucleus_group.generators],
                "character": self.nucleus_character.index,
                "degree": self.nucleus_character.degree,
                "values": [str(v) for v in self.nucleus_character.values],
                "alpha": self.factorization.alpha.index,
                "beta": self.factorization.beta.index,
            },
        }


def _descend(G: PermGroup, chi: Character, pi: PrimeSet, pair: SubnormalPair) -> tuple[PermGroup, Character]:
    T = pair_stabilizer(G, pair)
    if T.order == G.order:
        raise TheoremViolation(
            "stabilizer of a maximal pi-factored pair is the whole group",
            group=repr(G),
            pi=str(pi),
            chi=chi.index,
            pair=pair.describe(),
        )
    return T, clifford_correspondent(G, chi, T, pair.sigma)


def pi_nucleus(G: PermGroup, chi: Character, pi: PrimeSet) -> NucleusTrace:
    """Descend through canonical maximal pairs until the character is pi-factored."""
    piN = require_pi_separable(G, pi)
    key = ("nucleus", piN, chi.index)
    hit = G.cache.get(key)
    if hit is not None:
        return hit
    bound = max(1, math.floor(math.log2(G.order))) if G.order > 1 else 0
    steps = []
    T, tau = G, chi
    while True:
        f = pi_factorization(T, tau, piN)
        if f is not None:
            break
        pair = maximal_pi_factored_pairs(T, tau, piN)[0]
        U, ups = _descend(T, tau, piN, pair)
        steps.append(DescentStep(T, tau, pair, U))
        if len(steps) > bound:
            raise InternalError(f"nucleus recursion deeper than log2|G| = {bound}")
        T, tau = U, ups
    trace = NucleusTrace(tuple(steps), T, tau, f, piN)
    G.cache[key] = trace
    return trace


def all_nuclei(G: PermGroup, chi: Character, pi: PrimeSet) -> list[tuple[PermGroup, Character]]:
    """Nuclei reached by every choice of maximal pair at every level."""
    piN = require_pi_separable(G, pi)
    key = ("all_nuclei", piN, chi.index)
    hit = G.cache.get(key)
    if hit is not None:
        return hit
    if pi_factorization(G, chi, piN) is not None:
        out = [(G, chi)]
    else:
        seen = {}
        for pair in maximal_pi_factored_pairs(G, chi, piN):
            T, tau = _descend(G, chi, piN, pair)
            for X, eta in all_nuclei(T, tau, piN):
                seen[(id(X), eta.index)] = (X, eta)
        out = list(seen.values())
    G.cache[key] = out
    return out


def in_bpi(G: PermGroup, chi: Character, pi: PrimeSet) -> bool:
    trace = pi_nucleus(G, chi, pi)
    return is_pi_special(trace.nucleus_group, trace.nucleus_character, pi)


def bpi_set(G: PermGroup, pi: PrimeSet, *, check_choices: bool = True) -> list[Character]:
    """B_pi(G) in table order.

    With ``check_choices`` every nucleus reachable by any choice of maximal
    pairs is computed; all must be conjugate in ``G`` to the canonical one
    and agree on membership.
    """
    piN = require_pi_separable(G, pi)
    key = ("bpi", piN, check_choices)
    hit = G.cache.get(key)
    if hit is not None:
        return hit
    out = []
    for chi in character_table(G):
        trace = pi_nucleus(G, chi, piN)
        trace.verify()
        X, eta = trace.nucleus_group, trace.nucleus_character
        member = is_pi_special(X, eta, piN)
        if check_choices:
            for Y, theta in all_nuclei(G, chi, piN):
                if find_conjugator(G, X, eta, Y, theta) is None:
                    raise TheoremViolation(
                        "nuclei from different pair choices are not conjugate",
                        group=repr(G),
                        pi=str(piN),
                        chi=chi.index,
                    )
                if is_pi_special(Y, theta, piN) != member:
                    raise TheoremViolation(
                        "B_pi membership depends on the choice of maximal pairs",
                        group=repr(G),
                        pi=str(piN),
                        chi=chi.index,
                    )
        if member:
            out.append(chi)
    G.cache[key] = out
    return out


# -- quotient verification --------------------------------------------------


def _push_forward(qm: QuotientMap, X: PermGroup, eta: Character) -> tuple[PermGroup, Character]:
    """``(X/N, eta)`` realised inside the quotient group."""
    Q = qm.target
    Xbar = qm.image(X)
    xpos = qm.source.positions(X)
    proj = qm.projection[xpos]
    qpos = Q.positions(Xbar)[Xbar.classes.rep_index]
    vals = []
    for q in qpos:
        x = int(xpos[np.argmax(proj == q)])
        vals.append(eta.coeffs[X.classes.class_of[X.index(qm.source.element(x))]])
    out = Character(Xbar, np.array(vals), eta.conductor)
    table = character_table(Xbar)
    i = table.index_of(out)
    if i is None:
        raise InternalError("pushed-forward nucleus character is not irreducible")
    return Xbar, table[i]


@dataclass
class QuotientNucleusRecord:
    chi: int
    nucleus_order: int
    quotient_nucleus_order: int
    normal_in_nucleus: bool
    normal_in_kernel: bool
    normal_in_maximal_pairs: bool
    conjugate: bool
    witness: str | None
    passed: bool = field(init=False)

    def __post_init__(self):
        self.passed = self.normal_in_nucleus and self.normal_in_kernel and self.normal_in_maximal_pairs and self.conjugate


def verify_quotient_nucleus(
    G: PermGroup, N: PermGroup, chi: Character, pi: PrimeSet, *, raise_on_failure: bool = True
) -> QuotientNucleusRecord:
    """Compare the nucleus of ``chi`` with that of ``chi`` read in ``G/N``."""
    piN = require_pi_separable(G, pi)
    if not is_normal(G, N):
        raise PreconditionError("N is not normal in G")
    if not kernel(chi).contains_group(N):
        raise PreconditionError("N is not contained in ker chi")
    qm = quotient_group(G, N)
    trace = pi_nucleus(G, chi, piN)
    X, eta = trace.nucleus_group, trace.nucleus_character
    in_x = X.contains_group(N)
    in_ker = in_x and kernel(eta).contains_group(N)
    in_pairs = trace.steps == () or all(
        p.S.contains_group(N) for p in maximal_pi_factored_pairs(G, chi, piN)
    )
    conj = False
    witness = None
    qtrace = pi_nucleus(qm.target, deflate(chi, qm), piN)
    if in_ker:
        Xbar, etabar = _push_forward(qm, X, eta)
        g = find_conjugator(qm.target, qtrace.nucleus_group, qtrace.nucleus_character, Xbar, etabar)
        conj = g is not None
        witness = str(qm.target.element(g)) if conj else None
    rec = QuotientNucleusRecord(
        chi=chi.index,
        nucleus_order=X.order,
        quotient_nucleus_order=qtrace.nucleus_group.order,
        normal_in_nucleus=in_x,
        normal_in_kernel=in_ker,
        normal_in_maximal_pairs=in_pairs,
        conjugate=conj,
        witness=witness,
    )
    if raise_on_failure and not rec.passed:
        raise TheoremViolation("quotient nucleus does not match", group=repr(G), pi=str(piN), **vars(rec))
    return rec


@dataclass
class MainTheoremRecord:
    pi: str
    normal_order: int
    quotient_side: list[int]
    group_side: list[int]
    symmetric_difference: list[int]
    passed: bool = field(init=False)

    def __post_init__(self):
        self.passed = not self.symmetric_difference


def verify_main_theorem(
    G: PermGroup, N: PermGroup, pi: PrimeSet, *, raise_on_failure: bool = True
) -> MainTheoremRecord:
    """Compare inflated B_pi(G/N) with ``{chi in B_pi(G) : N <= ker chi}``."""
    piN = require_pi_separable(G, pi)
    qm = quotient_group(G, N)
    table = character_table(G)
    lhs = []
    for psi in bpi_set(qm.target, piN):
        i = table.index_of(inflate(psi, qm))
        if i is None:
            raise InternalError("inflated irreducible not found in Irr(G)")
        lhs.append(i)
    rhs = [chi.index for chi in bpi_set(G, piN) if kernel(chi).contains_group(N)]
    lhs.sort()
    diff = sorted(set(lhs) ^ set(rhs))
    rec = MainTheoremRecord(
        pi=piN.label(), normal_order=N.order, quotient_side=lhs, group_side=rhs, symmetric_difference=diff
    )
    if raise_on_failure and not rec.passed:
        raise TheoremViolation("B_pi(G/N) differs from Irr(G/N) ∩ B_pi(G)", group=repr(G), **vars(rec))
    return rec
