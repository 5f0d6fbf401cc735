"""Batch verification over the builtin corpus."""

from __future__ import annotations

import itertools
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable

from bpi.characters import character_table, conjugate_character, induce, kernel
from bpi.corpus import CorpusEntry, builtin_corpus
from bpi.errors import ResourceError, TheoremViolation
from bpi.groups import PermGroup, conjugate_subgroup, normal_subgroups, quotient_group
from bpi.nucleus import (
    maximal_pi_factored_pairs,
    pair_witnesses,
    pi_nucleus,
    verify_main_theorem,
    verify_quotient_nucleus,
)
from bpi.pitheory import check_kernel_lemma, pi_factorization, require_pi_separable
from bpi.primes import PrimeSet, prime_divisors

__all__ = [
    "SCHEMA_VERSION",
    "VerificationReport",
    "default_pi_policy",
    "verify_group",
    "corpus_run",
    "validate_report",
    "dump_reports",
    "load_reports",
]

SCHEMA_VERSION = 1


@dataclass
class VerificationReport:
    group: str
    group_order: int
    pi: str
    normal_subgroup: dict
    quotient_side: list[int] = field(default_factory=list)
    group_side: list[int] = field(default_factory=list)
    symmetric_difference: list[int] = field(default_factory=list)
    kernel_lemma: dict = field(default_factory=dict)
    quotient_nucleus: dict = field(default_factory=dict)
    background: dict = field(default_factory=dict)
    violation: dict | None = None
    skipped: str | None = None
    seconds: float = 0.0
    passed: bool = False

    def recompute_passed(self) -> bool:
        if self.skipped is not None:
            return False
        return (
            self.violation is None
            and not self.symmetric_difference
            and self.kernel_lemma.get("failed", 1) == 0
            and self.quotient_nucleus.get("failed", 1) == 0
            and self.background.get("failed", 1) == 0
        )

    def to_dict(self) -> dict:
        return asdict(self)


def default_pi_policy(order: int) -> list[PrimeSet]:
    """Every subset of the primes dividing ``order``, empty and full included."""
    primes = prime_divisors(order)
    return [PrimeSet(c) for r in range(len(primes) + 1) for c in itertools.combinations(primes, r)]


def _normal_id(G: PermGroup, N: PermGroup, i: int) -> dict:
    return {"index": i, "order": N.order, "generators": [str(g) for g in N.generators]}


def _tally(results: Iterable[bool]) -> dict:
    results = list(results)
    return {"checked": len(results), "failed": results.count(False)}


def _witness_ok(G: PermGroup, first, other, g: int) -> bool:
    S2 = conjugate_subgroup(G, first.S, g)
    return S2 is other.S and conjugate_character(first.sigma, S2, g, G) == other.sigma


def _background(Q: PermGroup, pi: PrimeSet) -> dict:
    """Per-instance checks of the facts the nucleus recursion relies on.

    The recursion raises on any failure; this tallies what was exercised
    and re-applies every stored conjugacy witness.
    """
    results = []
    witnesses = descents = 0
    for psi in character_table(Q):
        trace = pi_nucleus(Q, psi, pi)
        chain = trace.chain
        for k, step in enumerate(trace.steps):
            T, tau = step.group, step.character
            pairs = maximal_pi_factored_pairs(T, tau, pi)
            gs = pair_witnesses(T, tau, pi)
            results.extend(_witness_ok(T, pairs[0], p, g) for p, g in zip(pairs[1:], gs[1:]))
            witnesses += len(pairs) - 1
            results.append(step.stabilizer.order < T.order)
            results.append(induce(chain[k + 1][1], T) == tau)
            descents += 1
    out = _tally(results)
    out.update(conjugacy_witnesses=witnesses, clifford_correspondents=descents, strict_descents=descents)
    return out


def _kernel_lemma_checks(Q: PermGroup, pi: PrimeSet) -> dict:
    """Kernel lemma on every pi-factored irreducible of ``Q`` and every nucleus."""
    results = []
    seen = set()
    targets = [(Q, chi) for chi in character_table(Q)]
    for chi in character_table(Q):
        tr = pi_nucleus(Q, chi, pi)
        targets.append((tr.nucleus_group, tr.nucleus_character))
    for H, chi in targets:
        key = (id(H), chi.index)
        if key in seen:
            continue
        seen.add(key)
        f = pi_factorization(H, chi, pi)
        if f is not None:
            results.append(check_kernel_lemma(H, f, raise_on_failure=False).passed)
    return _tally(results)


def verify_group(
    G: PermGroup, name: str, pis: Iterable[PrimeSet] | None = None, *, fail_fast: bool = False
) -> list[VerificationReport]:
    """Reports for every ``(pi, N)`` with ``N`` normal in ``G``."""
    pis = default_pi_policy(G.order) if pis is None else list(pis)
    reports = []
    for pi in pis:
        for i, N in enumerate(normal_subgroups(G)):
            t0 = time.perf_counter()
            rep = VerificationReport(name, G.order, pi.normalized(G.order).label(), _normal_id(G, N, i))
            try:
                piN = require_pi_separable(G, pi)
                main = verify_main_theorem(G, N, piN, raise_on_failure=False)
                rep.quotient_side = main.quotient_side
                rep.group_side = main.group_side
                rep.symmetric_difference = main.symmetric_difference
                qrecs = [
                    verify_quotient_nucleus(G, N, chi, piN, raise_on_failure=False).passed
                    for chi in character_table(G)
                    if kernel(chi).contains_group(N)
                ]
                rep.quotient_nucleus = _tally(qrecs)
                Q = quotient_group(G, N).target
                rep.kernel_lemma = _kernel_lemma_checks(Q, piN)
                rep.background = _background(Q, piN)
            except TheoremViolation as exc:
                if fail_fast:
                    raise
                rep.violation = {"message": exc.args[0], **{k: str(v) for k, v in exc.context.items()}}
            except ResourceError as exc:
                rep.skipped = str(exc)
            rep.seconds = round(time.perf_counter() - t0, 6)
            rep.passed = rep.recompute_passed()
            reports.append(rep)
    return reports


def _run_entry(args: tuple[CorpusEntry, str | None, bool]) -> list[VerificationReport]:
    entry, pi_text, fail_fast = args
    t0 = time.perf_counter()
    try:
        G = entry.build()
        pis = None if pi_text is None else [PrimeSet.parse(pi_text)]
        return verify_group(G, entry.name, pis, fail_fast=fail_fast)
    except ResourceError as exc:
        rep = VerificationReport(entry.name, entry.expected_order, pi_text or "all", {}, skipped=str(exc))
        rep.seconds = round(time.perf_counter() - t0, 6)
        return [rep]


def corpus_run(
    max_order: int = 100,
    pi: str | None = None,
    *,
    workers: int = 1,
    fail_fast: bool = False,
    entries: Iterable[CorpusEntry] | None = None,
    progress: Callable[[str, list[VerificationReport]], None] | None = None,
) -> list[VerificationReport]:
    """Verify every corpus group of order at most ``max_order``.

    ``pi`` fixes a single prime set (``"2,3"``, ``"none"``); ``None`` uses
    the default policy.  Reports are merged in corpus order.
    """
    chosen = [e for e in (builtin_corpus() if entries is None else entries) if e.expected_order <= max_order]
    jobs = [(e, pi, fail_fast) for e in chosen]
    out: list[VerificationReport] = []
    if workers <= 1:
        for job in jobs:
            reps = _run_entry(job)
            if progress:
                progress(job[0].name, reps)
            out.extend(reps)
        return out
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for job, reps in zip(jobs, pool.map(_run_entry, jobs)):
            if progress:
                progress(job[0].name, reps)
            out.extend(reps)
    return out


def validate_report(data: dict) -> bool:
    """Re-derive the pass flag from a report's JSON form; True iff it agrees."""
    fields = {k: v for k, v in data.items() if k in VerificationReport.__dataclass_fields__}
    rep = VerificationReport(**fields)
    return rep.recompute_passed() == data["passed"]


def dump_reports(reports: list[VerificationReport], path=None) -> str:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "passed": all(r.passed for r in reports),
        "reports": [r.to_dict() for r in reports],
    }
    text = json.dumps(doc, indent=2, sort_keys=True)
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    return text


def load_reports(text: str) -> list[VerificationReport]:
    doc = json.loads(text)
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported report schema {doc.get('schema_version')!r}")
    return [VerificationReport(**r) for r in doc["reports"]]
