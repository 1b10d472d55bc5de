"""Command-line front end: verify, expand, brute and report.

Every command prints either a JSON object (one per run) or TSV (one row per
record).  Rationals are written as "num/den" strings.  The exit code is 0
when every record passed, 1 when any failed and 2 on a usage error.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

from . import __version__
from . import brute
from .degrees import (REGISTRY, GroupSpec, fgs_involution_series, group_order,
                      indicators_o_rhs, indicators_so_rhs, involution_count,
                      j_count, sigma_O, sigma_SO, sigma_Sp, verify_identity, _check_q)
from .series import DEFAULT_ORDER, euler_product
from .symbols import SERIES, enumerate_symbols, enumerate_symbols_oracle, FAMILIES

log = logging.getLogger("orthocount")

EXPANDABLE = ("T", "G", "R", "W", "fgs-O", "fgs-SO", "fgs-OminusSO",
              "genfunO-rhs", "genfunSO-rhs", "euler-rhs")
ORACLE_RANK = 8
EXPLICIT_RANK = 3


def fmt(x) -> str:
    """Exact value as a string; Fractions print as num/den, integers bare."""
    return "" if x is None else str(x)


# ---------------------------------------------------------------------------
# report plumbing

@dataclass
class Record:
    check: str
    params: tuple                 # ((key, value), ...) in a fixed order
    status: str                   # "pass", "fail" or "n/a"
    left: str = ""
    right: str = ""
    note: str = ""
    elapsed: float = 0.0

    @property
    def failed(self) -> bool:
        return self.status == "fail"

    def sort_key(self):
        return (self.check, tuple(str(k) for k, _ in self.params),
                tuple((0, v, "") if isinstance(v, int) else (1, 0, str(v))
                      for _, v in self.params))

    def canonical(self) -> dict:
        return {"check": self.check, "params": {k: v for k, v in self.params},
                "status": self.status, "left": self.left, "right": self.right,
                "note": self.note}

    def params_str(self) -> str:
        return ";".join(f"{k}={v}" for k, v in self.params)


@dataclass
class Report:
    command: str
    meta: dict
    records: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not any(r.failed for r in self.records)

    def sorted_records(self) -> list:
        return sorted(self.records, key=Record.sort_key)

    def digest(self) -> str:
        """sha256 of the canonical content; elapsed times are left out."""
        body = {"command": self.command, "meta": self.meta,
                "records": [r.canonical() for r in self.sorted_records()]}
        text = json.dumps(body, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(text.encode()).hexdigest()

    def to_json(self) -> str:
        recs = []
        for r in self.sorted_records():
            d = r.canonical()
            d["elapsed"] = round(r.elapsed, 4)
            recs.append(d)
        n_fail = sum(r.failed for r in self.records)
        out = {"command": self.command, "meta": self.meta, "records": recs,
               "summary": {"records": len(recs), "failed": n_fail,
                           "status": "pass" if self.ok else "fail"},
               "digest": self.digest()}
        return json.dumps(out, indent=2, sort_keys=False)

    def to_tsv(self) -> str:
        lines = ["check\tparams\tstatus\tleft\tright\tnote\telapsed"]
        for r in self.sorted_records():
            lines.append("\t".join([r.check, r.params_str(), r.status, r.left, r.right,
                                    r.note, f"{r.elapsed:.3f}"]))
        return "\n".join(lines)


def _timed(check: str, params: tuple, fn: Callable[[], tuple]) -> Record:
    """Run fn() -> (status, left, right, note) and wrap it in a Record."""
    start = time.perf_counter()
    try:
        status, left, right, note = fn()
    except ArithmeticError as exc:
        # a non-integral extraction is a check failure, not a usage error
        status, left, right, note = "fail", "", "", str(exc)
    rec = Record(check, params, status, fmt(left), fmt(right), note)
    rec.elapsed = time.perf_counter() - start
    return rec


def run_checks(jobs: list, threads: int) -> list:
    """jobs are (check, params, fn) triples; results come back in job order."""
    if threads <= 1 or len(jobs) <= 1:
        return [_timed(*job) for job in jobs]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(_timed, *job) for job in jobs]
        return [f.result() for f in futures]


def default_threads() -> int:
    env = os.environ.get("ORTHOCOUNT_THREADS")
    if env:
        try:
            value = int(env)
        except ValueError:
            raise ValueError(f"ORTHOCOUNT_THREADS must be an integer, got {env!r}")
        if value < 1:
            raise ValueError("ORTHOCOUNT_THREADS must be positive")
        return value
    return os.cpu_count() or 1


def _equal(left, right, note: str = "") -> tuple:
    return ("pass" if left == right else "fail", left, right, note)


def _sign(tau: int) -> str:
    return "+" if tau == 1 else "-"


# ---------------------------------------------------------------------------
# checks

def identity_check(name: str, q: int, order: int | None):
    def run():
        res = verify_identity(name, q, order)
        if res.status == "n/a":
            return "n/a", "", "", res.note
        if res.mismatch:
            label, i, left, right = res.mismatch
            where = f"{label} " if label else ""
            return "fail", left, right, f"{where}z^{i}"
        _, left, right = res.parts[0]
        return "pass", left[res.order], right[res.order], f"z^{res.order}"
    return ("identity:" + name, (("q", q), ("order", order if order is not None
                                             else REGISTRY[name].default_order)), run)


def oracle_check(n: int, family: str):
    def run():
        fast = enumerate_symbols(n, family)
        slow = enumerate_symbols_oracle(n, family)
        return _equal(len(fast), len(slow)) if set(fast) == set(slow) else \
            ("fail", len(fast), len(slow), "symbol sets differ")
    return ("symbol-oracle", (("family", family), ("n", n)), run)


def sigma_fgs_check(kind: str, n: int, q: int, tau: int):
    """Sigma from the degree DP against the involution generating function."""
    def run():
        if kind == "O":
            return _equal(sigma_O(n, q, tau), involution_count("O", n, q, tau))
        return _equal(sigma_SO(n, q, tau), j_count(n, q, tau))
    return (f"sigma-vs-fgs:{kind}", (("q", q), ("n", n), ("type", _sign(tau))), run)


def dp_explicit_check(kind: str, n: int, q: int, tau: int):
    def run():
        if kind == "Sp":
            return _equal(sigma_Sp(n, q), sigma_Sp(n, q, method="explicit"))
        f = sigma_O if kind == "O" else sigma_SO
        return _equal(f(n, q, tau), f(n, q, tau, method="explicit"))
    params = (("q", q), ("n", n)) if kind == "Sp" else (("q", q), ("n", n), ("type", _sign(tau)))
    return (f"dp-vs-explicit:{kind}", params, run)


def sp_chain_check(n: int, q: int):
    def run():
        if q % 2 == 0:
            return "n/a", "", "", "odd q only"
        return _equal(sigma_Sp(n, q), group_order(GroupSpec("Sp", n, q)) // gl_order(n, q))
    return ("sp-chain", (("q", q), ("n", n)), run)


def gl_order(n: int, q: int) -> int:
    out = 1
    for i in range(n):
        out *= q ** n - q ** i
    return out


@lru_cache(maxsize=None)
def _group(kind: str, n: int, q: int, tau: int) -> brute.MatrixGroup:
    return brute.build_group(GroupSpec(kind, n, q, tau))


def feasible(kind: str, n: int, q: int, tau: int = 1) -> bool:
    """Inside the brute-force envelope: prime q and a small enough group."""
    try:
        brute._prime(q)
    except ValueError:
        return False
    o_kind = "Sp" if kind == "Sp" else "O"
    return group_order(GroupSpec(o_kind, n, q, tau)) <= brute.ORDER_LIMIT


def _check_feasible(kind: str, n: int, q: int, tau: int) -> None:
    brute._prime(q)
    o_kind = "Sp" if kind == "Sp" else "O"
    spec = GroupSpec(o_kind, n, q, tau)
    size = group_order(spec)
    if size > brute.ORDER_LIMIT:
        raise ValueError(f"{spec} has {size} elements, beyond the brute-force "
                         f"limit of {brute.ORDER_LIMIT}")


def brute_involution_check(kind: str, n: int, q: int, tau: int, against: str = "fgs"):
    """Brute-force involution count against the FGS extraction or the degree sum."""
    def run():
        o = _group("O", n, q, tau)
        if kind == "O":
            count = brute.count_involutions(o)
        else:
            count = brute.count_involutions(o, "SO" if kind == "SO" else "O-minus-SO")
        if against == "sigma":
            if kind == "O":
                return _equal(count, sigma_O(n, q, tau))
            return _equal(count, sigma_SO(n, q, tau))
        return _equal(count, involution_count(kind, n, q, tau))
    return (f"brute-involutions:{kind}:{against}",
            (("q", q), ("n", n), ("type", _sign(tau))), run)


def twisted_sp_check(n: int, q: int):
    def run():
        count = brute.count_twisted_involutions_sp(_group("Sp", n, q, 1))
        return _equal(count, group_order(GroupSpec("Sp", n, q)) // gl_order(n, q))
    return ("brute-twisted-sp", (("q", q), ("n", n)), run)


def sigma_real_check(n: int, q: int, tau: int):
    def run():
        o = _group("O", n, q, tau)
        so = o.subgroup(o.so_mask, GroupSpec("SO", n, q, tau))
        ok, failures = brute.check_strongly_sigma_real(so, o)
        note = "" if ok else "witness " + json.dumps(failures[0].tolist())
        return ("pass" if ok else "fail", len(so), len(so) - len(failures), note)
    return ("brute-sigma-real", (("q", q), ("n", n), ("type", _sign(tau))), run)


# ---------------------------------------------------------------------------
# commands

def _need_even_dim(dim: int) -> int:
    if dim < 2 or dim % 2:
        raise ValueError(f"dimension must be a positive even integer, got {dim}")
    return dim // 2


def cmd_verify(args) -> Report:
    names = _identity_names(args)
    for q in args.q:
        _check_q(q)
    jobs = [identity_check(name, q, args.order) for name in names for q in args.q]
    report = Report("verify", {"identities": sorted(names), "q": args.q,
                               "order": args.order})
    report.records = run_checks(jobs, args.threads)
    return report


def _identity_names(args) -> list:
    if args.all:
        return list(REGISTRY)
    if not args.id:
        raise ValueError("give --id NAME (repeatable or comma separated) or --all")
    names = [n for item in args.id for n in item.split(",") if n]
    for n in names:
        if n not in REGISTRY:
            raise KeyError(f"unknown identity {n!r}; choose from {', '.join(REGISTRY)}")
    return names


def expand_series(name: str, q: int, order: int) -> dict:
    """Named columns of coefficients for one of the EXPANDABLE series."""
    _check_q(q)
    if order < 0:
        raise ValueError("order must be non-negative")
    if name in SERIES:
        return {name: SERIES[name][0](q, order)}
    if name == "fgs-O":
        plus, minus = fgs_involution_series("O-odd-q" if q % 2 else "O-even-q", q, order)
        return {"plus": plus, "minus": minus}
    if name == "fgs-SO":
        plus, minus = fgs_involution_series("SO", q, order)
        return {"plus": plus, "minus": minus}
    if name == "fgs-OminusSO":
        return {name: fgs_involution_series("O-minus-SO", q, order)[0]}
    if name == "genfunO-rhs":
        return {name: indicators_o_rhs(q, order)}
    if name == "genfunSO-rhs":
        return {name: indicators_so_rhs(q, order)}
    if name == "euler-rhs":
        return {name: euler_product(q, order)}
    raise KeyError(f"unknown series {name!r}; choose from {', '.join(EXPANDABLE)}")


def cmd_expand(args) -> str:
    cols = expand_series(args.series, args.q, args.order)
    if args.format == "json":
        out = {"command": "expand", "series": args.series, "q": args.q,
               "order": args.order,
               "coefficients": {k: [fmt(c) for c in s] for k, s in cols.items()}}
        return json.dumps(out, indent=2)
    lines = ["n\t" + "\t".join(cols)]
    for i in range(args.order + 1):
        lines.append(f"{i}\t" + "\t".join(fmt(s[i]) for s in cols.values()))
    return "\n".join(lines)


def cmd_brute(args) -> Report:
    n = _need_even_dim(args.dim)
    q = args.q
    tau = args.type
    meta = {"action": args.action, "dim": args.dim, "q": q,
            "order_limit": brute.ORDER_LIMIT}
    if args.action == "twisted-sp":
        if q % 2 == 0:
            raise ValueError("twisted-sp needs odd q")
        _check_feasible("Sp", n, q, 1)
        job = twisted_sp_check(n, q)
    elif args.action == "count-involutions":
        _check_feasible("O", n, q, tau)
        meta.update(kind=args.kind, type=_sign(tau))
        job = brute_involution_check(args.kind, n, q, tau)
    elif args.action == "sigma-real":
        if n % 2 == 0:
            raise ValueError("sigma-real needs dimension 2 mod 4")
        _check_feasible("O", n, q, tau)
        meta["type"] = _sign(tau)
        job = sigma_real_check(n, q, tau)
    else:
        raise ValueError(f"unknown brute action {args.action!r}")
    report = Report("brute", meta)
    report.records = run_checks([job], 1)
    return report


def report_jobs(max_n: int, qs: list, order: int | None, skip_brute: bool) -> list:
    """Every check of the cross-check matrix for ranks up to max_n."""
    jobs = []
    for name in REGISTRY:
        for q in qs:
            jobs.append(identity_check(name, q, order))
    for n in range(min(max_n, ORACLE_RANK) + 1):
        for family in FAMILIES:
            jobs.append(oracle_check(n, family))
    for q in qs:
        for n in range(1, max_n + 1):
            for tau in (1, -1):
                for kind in ("O", "SO"):
                    jobs.append(sigma_fgs_check(kind, n, q, tau))
                    if n <= EXPLICIT_RANK and q <= 3:
                        jobs.append(dp_explicit_check(kind, n, q, tau))
            jobs.append(sp_chain_check(n, q))
            if n <= EXPLICIT_RANK and q <= 3:
                jobs.append(dp_explicit_check("Sp", n, q, 1))
    if skip_brute:
        return jobs
    for q in qs:
        for n in range(1, max_n + 1):
            for tau in (1, -1):
                if not feasible("O", n, q, tau):
                    continue
                for kind in ("O", "SO", "O-minus-SO"):
                    jobs.append(brute_involution_check(kind, n, q, tau))
                jobs.append(brute_involution_check("O", n, q, tau, against="sigma"))
                jobs.append(brute_involution_check("SO" if n % 2 == 0 else "O-minus-SO",
                                                   n, q, tau, against="sigma"))
                if n % 2 == 1:
                    jobs.append(sigma_real_check(n, q, tau))
            if q % 2 and feasible("Sp", n, q):
                jobs.append(twisted_sp_check(n, q))
    return jobs


def cmd_report(args) -> Report:
    if args.max_n < 1:
        raise ValueError("--max-n must be at least 1")
    for q in args.q:
        _check_q(q)
    # identities are checked to the same rank as everything else unless told otherwise
    order = args.max_n if args.order is None else args.order
    meta = {"max_n": args.max_n, "q": args.q, "order": order,
            "skip_brute": args.skip_brute,
            "envelope": {"prime_q_only": True, "order_limit": brute.ORDER_LIMIT}}
    report = Report("report", meta)
    report.records = run_checks(report_jobs(args.max_n, args.q, order,
                                            args.skip_brute), args.threads)
    return report


# ---------------------------------------------------------------------------
# argument parsing

def _q_list(text: str) -> list:
    try:
        qs = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed q list {text!r}")
    if not qs:
        raise argparse.ArgumentTypeError("empty q list")
    return qs


def _q_single(text: str) -> int:
    qs = _q_list(text)
    if len(qs) != 1:
        raise argparse.ArgumentTypeError("expected a single q")
    return qs[0]


def _type(text: str) -> int:
    if text in ("+", "plus", "1", "+1"):
        return 1
    if text in ("-", "minus", "-1"):
        return -1
    raise argparse.ArgumentTypeError(f"type must be + or -, got {text!r}")


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    fmt_group = common.add_mutually_exclusive_group()
    fmt_group.add_argument("--json", dest="format", action="store_const", const="json",
                           help="one JSON object per run")
    fmt_group.add_argument("--tsv", dest="format", action="store_const", const="tsv",
                           help="one TSV row per record (default)")
    common.add_argument("--threads", type=_positive, default=None,
                        help="bound on concurrent checks (default: ORTHOCOUNT_THREADS "
                             "or the number of processors)")
    common.add_argument("-v", "--verbose", action="store_true")
    common.set_defaults(format="tsv")

    parser = argparse.ArgumentParser(
        prog="orthocount",
        description="Exact degree sums and involution counts for finite orthogonal "
                    "and symplectic groups.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="check generating-function identities")
    p.add_argument("--id", action="append", help="identity name; repeat or comma-separate")
    p.add_argument("--all", action="store_true", help="every registered identity")
    p.add_argument("--q", type=_q_list, default=[2, 3, 5])
    p.add_argument("--order", type=int, default=None,
                   help="truncation order (default: per identity)")

    p = sub.add_parser("expand", parents=[common], help="print series coefficients")
    p.add_argument("--series", required=True, choices=EXPANDABLE)
    p.add_argument("--q", type=_q_single, required=True)
    p.add_argument("--order", type=int, default=DEFAULT_ORDER)

    p = sub.add_parser("brute", parents=[common], help="brute-force group computations")
    p.add_argument("action", choices=("count-involutions", "twisted-sp", "sigma-real"))
    p.add_argument("--kind", choices=("O", "SO", "O-minus-SO"), default="O")
    p.add_argument("--type", type=_type, default=1)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--q", type=_q_single, required=True)

    p = sub.add_parser("report", parents=[common], help="the full cross-check matrix")
    p.add_argument("--max-n", type=int, default=3)
    p.add_argument("--q", type=_q_list, default=[2, 3])
    p.add_argument("--order", type=int, default=None,
                   help="identity truncation order (default: --max-n)")
    p.add_argument("--skip-brute", action="store_true")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        if args.threads is None:
            args.threads = default_threads()
        if args.command == "expand":
            print(cmd_expand(args))
            return 0
        handler = {"verify": cmd_verify, "brute": cmd_brute, "report": cmd_report}
        report = handler[args.command](args)
    except (ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"orthocount: error: {msg}", file=sys.stderr)
        return 2
    print(report.to_json() if args.format == "json" else report.to_tsv())
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
