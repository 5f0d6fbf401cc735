"""Command line entry point: ``bpi <command> --group SRC [options]``."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict

from bpi.characters import character_table, kernel, set_cache_dir
from bpi.errors import BpiError, TheoremViolation
from bpi.groups import PermGroup, normal_subgroups
from bpi.harness import corpus_run, default_pi_policy, dump_reports
from bpi.nucleus import bpi_set, pi_nucleus, verify_main_theorem, verify_quotient_nucleus
from bpi.primes import PrimeSet
from bpi.sources import load_group


def _prime_sets(text: str, G: PermGroup) -> list[PrimeSet]:
    if text.strip().lower() == "all":
        return default_pi_policy(G.order)
    return [PrimeSet.parse(text)]


def _emit(doc, path: str | None) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True, default=str)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _subgroup_doc(H: PermGroup) -> dict:
    return {"order": H.order, "generators": [str(g) for g in H.generators]}


def cmd_table(args) -> int:
    G = load_group(args.group)
    table = character_table(G)
    cls = G.classes
    if args.json:
        _emit(
            {
                "order": G.order,
                "classes": [
                    {"representative": str(G.element(int(r))), "size": int(s), "element_order": int(o)}
                    for r, s, o in zip(cls.rep_index, cls.sizes, cls.orders)
                ],
                "conductor": table.conductor,
                "characters": [
                    {
                        "index": chi.index,
                        "degree": chi.degree,
                        "values": [str(v) for v in chi.values],
                        "coefficients": [
                            [[e, str(c)] for e, c in sorted(v.coefficients.items())] for v in chi.values
                        ],
                    }
                    for chi in table
                ],
            },
            args.json,
        )
        return 0
    print(f"order {G.order}, {len(table)} classes")
    rows = [["class"] + [str(i) for i in range(len(cls.sizes))]]
    rows.append(["size"] + [str(int(s)) for s in cls.sizes])
    rows.append(["order"] + [str(int(o)) for o in cls.orders])
    rows.append(["rep"] + [str(G.element(int(r))) for r in cls.rep_index])
    rows += [[f"chi_{chi.index}"] + [str(v) for v in chi.values] for chi in table]
    widths = [max(len(r[c]) for r in rows) for c in range(len(rows[0]))]
    for r in rows:
        print("  ".join(x.rjust(w) if c else x.ljust(w) for c, (x, w) in enumerate(zip(r, widths))))
    return 0


def cmd_bpi(args) -> int:
    G = load_group(args.group)
    out = []
    for pi in _prime_sets(args.pi, G):
        chars = bpi_set(G, pi)
        out.append({"pi": pi.normalized(G.order).label(), "indices": [c.index for c in chars], "degrees": [c.degree for c in chars]})
    if args.json:
        _emit(out, args.json)
    else:
        for rec in out:
            pairs = ", ".join(f"chi_{i}({d})" for i, d in zip(rec["indices"], rec["degrees"]))
            print(f"B_{{{rec['pi']}}}: {pairs}")
    return 0


def cmd_nucleus(args) -> int:
    G = load_group(args.group)
    table = character_table(G)
    if not 0 <= args.char < len(table):
        raise BpiError(f"character index {args.char} outside 0..{len(table) - 1}")
    pis = _prime_sets(args.pi, G)
    docs = []
    for pi in pis:
        trace = pi_nucleus(G, table[args.char], pi)
        trace.verify()
        docs.append(trace.to_dict())
    if args.json:
        _emit(docs if len(docs) > 1 else docs[0], args.json)
        return 0
    for doc in docs:
        print(f"pi = {doc['pi']}")
        for k, step in enumerate(doc["steps"]):
            print(
                f"  T_{k}: order {step['group_order']}, tau_{k} = chi_{step['character']} (degree {step['degree']})"
            )
            print(f"    maximal pair: S of order {step['pair']['order']}, sigma = chi_{step['pair']['sigma']} of S")
            print(f"    stabilizer order {step['stabilizer_order']}")
        nuc = doc["nucleus"]
        print(f"  nucleus X of order {nuc['order']} generated by {' '.join(nuc['generators']) or '()'}")
        print(f"  eta = chi_{nuc['character']} of X, degree {nuc['degree']}: ({', '.join(nuc['values'])})")
        print(f"  eta = alpha * beta with alpha = chi_{nuc['alpha']}, beta = chi_{nuc['beta']}")
    return 0


def _minimal_normals(G: PermGroup) -> list[PermGroup]:
    nontrivial = [N for N in normal_subgroups(G) if N.order > 1]
    out = [N for N in nontrivial if not any(M.order < N.order and N.contains_group(M) for M in nontrivial)]
    return out or [G.trivial]


def cmd_verify_quotient(args) -> int:
    G = load_group(args.group)
    normals = normal_subgroups(G) if args.all_normals else _minimal_normals(G)
    records = []
    ok = True
    for pi in _prime_sets(args.pi, G):
        for N in normals:
            main = verify_main_theorem(G, N, pi, raise_on_failure=False)
            qn = [
                asdict(verify_quotient_nucleus(G, N, chi, pi, raise_on_failure=False))
                for chi in character_table(G)
                if kernel(chi).contains_group(N)
            ]
            passed = main.passed and all(r["passed"] for r in qn)
            ok &= passed
            records.append(
                {"pi": main.pi, "normal_subgroup": _subgroup_doc(N), "main_theorem": asdict(main), "quotient_nucleus": qn, "passed": passed}
            )
    _emit({"schema_version": 1, "passed": ok, "records": records}, args.json)
    return 0 if ok else 1


def cmd_corpus_run(args) -> int:
    pi = None if args.pi.strip().lower() == "all" else args.pi

    def progress(name, reps):
        bad = sum(not r.passed for r in reps)
        secs = sum(r.seconds for r in reps)
        print(f"{name:<12} {len(reps):>4} reports  {bad} failed  {secs:.2f}s", file=sys.stderr)

    reports = corpus_run(args.max_order, pi, workers=args.workers, fail_fast=args.fail_fast, progress=progress)
    text = dump_reports(reports, args.json)
    if not args.json:
        print(text)
    failed = [r for r in reports if not r.passed]
    print(f"{len(reports)} reports, {len(failed)} failed", file=sys.stderr)
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bpi", description=__doc__)
    parser.add_argument("--cache-dir", help="directory for cached character tables (also BPI_CACHE_DIR)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text, pi_default="all"):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=fn)
        p.add_argument("--json", metavar="PATH", help="write JSON to PATH")
        p.add_argument("--pi", default=pi_default, help="prime set: '2,3', 'none' or 'all'")
        return p

    p = add("table", cmd_table, "print the character table")
    p.add_argument("--group", required=True, help="group file or builtin:NAME")
    p = add("bpi", cmd_bpi, "list B_pi characters")
    p.add_argument("--group", required=True)
    p = add("nucleus", cmd_nucleus, "trace the pi-nucleus of one character")
    p.add_argument("--group", required=True)
    p.add_argument("--char", type=int, required=True, help="index in the character table")
    p = add("verify-quotient", cmd_verify_quotient, "check B_pi(G/N) against B_pi(G)")
    p.add_argument("--group", required=True)
    p.add_argument("--all-normals", action="store_true", help="every normal subgroup, not only minimal ones")
    p = add("corpus-run", cmd_corpus_run, "verify the builtin corpus")
    p.add_argument("--max-order", type=int, default=100)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--fail-fast", action="store_true", help="stop at the first theorem violation")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.cache_dir:
        set_cache_dir(args.cache_dir)
    try:
        return args.func(args)
    except TheoremViolation as exc:
        print(f"THEOREM VIOLATION: {exc}", file=sys.stderr)
        return 3
    except BpiError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
