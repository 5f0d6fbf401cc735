"""Prime sets pi and pi-numbers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from sympy import isprime, primefactors

__all__ = ["PrimeSet", "is_pi_number", "prime_divisors"]


def prime_divisors(n: int) -> frozenset[int]:
    return frozenset(int(p) for p in primefactors(n))


@dataclass(frozen=True)
class PrimeSet:
    """A set of primes, or (``cofinite=True``) the complement of one.

    ``PrimeSet({2}).complement()`` is 2' = every prime except 2.
    """

    primes: frozenset[int] = frozenset()
    cofinite: bool = False

    def __init__(self, primes: Iterable[int] = (), cofinite: bool = False):
        ps = frozenset(int(p) for p in primes)
        for p in ps:
            if not isprime(p):
                raise ValueError(f"{p} is not prime")
        object.__setattr__(self, "primes", ps)
        object.__setattr__(self, "cofinite", bool(cofinite))

    @classmethod
    def parse(cls, text: str) -> PrimeSet:
        """``"2,3"``, ``"none"`` or ``""`` for the empty set."""
        text = text.strip().lower()
        if text in ("", "none", "{}", "empty"):
            return cls()
        return cls(int(tok) for tok in text.replace(" ", "").split(",") if tok)

    def __contains__(self, p: int) -> bool:
        return (p in self.primes) != self.cofinite

    def complement(self) -> PrimeSet:
        return PrimeSet(self.primes, not self.cofinite)

    def normalized(self, order: int) -> PrimeSet:
        """The finite set ``pi ∩ primes(order)``."""
        return PrimeSet(p for p in prime_divisors(order) if p in self)

    def sorted(self) -> tuple[int, ...]:
        return tuple(sorted(self.primes))

    def __str__(self):
        body = "{" + ",".join(str(p) for p in self.sorted()) + "}"
        return body + "'" if self.cofinite else body

    def label(self) -> str:
        """CLI spelling: ``2,3`` / ``none``; complements get a trailing ``'``."""
        body = ",".join(str(p) for p in self.sorted()) or "none"
        return body + "'" if self.cofinite else body


def is_pi_number(n: int, pi: PrimeSet) -> bool:
    """True iff every prime divisor of ``n`` lies in ``pi``."""
    if n < 1:
        raise ValueError("n must be positive")
    return all(p in pi for p in prime_divisors(n))
