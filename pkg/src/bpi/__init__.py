"""Exact character theory of finite solvable permutation groups, with the
pi-nucleus construction and B_pi characters."""

from bpi.characters import Character, CharacterTable, character_table, induce, inflate, deflate, restrict
from bpi.corpus import builtin_corpus, builtin_group
from bpi.cyclotomic import Cyclotomic, E
from bpi.errors import BpiError, NotPiSeparableError, PreconditionError, ResourceError, TheoremViolation
from bpi.groups import PermGroup, group_from_generators, normal_subgroups, quotient_group
from bpi.nucleus import bpi_set, pi_nucleus, verify_main_theorem, verify_quotient_nucleus
from bpi.perm import Permutation
from bpi.pitheory import is_pi_factored, is_pi_special, pi_factorization
from bpi.primes import PrimeSet

__version__ = "0.1.0"

__all__ = [
    "BpiError",
    "Character",
    "CharacterTable",
    "Cyclotomic",
    "E",
    "NotPiSeparableError",
    "PermGroup",
    "Permutation",
    "PreconditionError",
    "PrimeSet",
    "ResourceError",
    "TheoremViolation",
    "bpi_set",
    "builtin_corpus",
    "builtin_group",
    "character_table",
    "deflate",
    "group_from_generators",
    "induce",
    "inflate",
    "is_pi_factored",
    "is_pi_special",
    "normal_subgroups",
    "pi_factorization",
    "pi_nucleus",
    "quotient_group",
    "restrict",
    "verify_main_theorem",
    "verify_quotient_nucleus",
]
