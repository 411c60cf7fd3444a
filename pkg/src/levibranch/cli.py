"""Command line front end.

Subcommands: branch, compare, search, autos, u, mfun, lr, verify.  Output is
deterministic: identical configuration yields byte-identical primary output
(wall-clock fields appear only in summary metadata).

Exit codes: 0 success, 2 validation error, 3 group/size guard exceeded,
4 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import kernels
from .branching import (branch_by_restriction, branch_multiplicity, branch_row,
                        build_m)
from .equivalence import classify_pair, replay_resume_state, search_box
from .rootsys import (LeviDatum, RootDatum, RootSystemError, Weight,
                      WeightError, build_levi, build_root_system)
from .typea_lr import Partition, lr_coefficient, multi_lr, polarisation_branch
from .weightpoly import BudgetError, levi_table
from .weylgrp import (DEFAULT_GROUP_GUARD, GroupSizeError,
                      diagram_automorphisms, transversal)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_GUARD = 3
EXIT_IO = 4

_CONFIG_FIELDS = {"family", "rank", "levi", "cache_dir", "threads", "guard", "seed"}


@dataclass
class JobConfig:
    datum: RootDatum
    levi: LeviDatum | None
    cache_dir: str | None = None
    threads: int = 1
    guard: int = DEFAULT_GROUP_GUARD
    seed: int = 0

    def require_levi(self) -> LeviDatum:
        if self.levi is None:
            raise RootSystemError("this command needs --levi (or a levi config entry)")
        return self.levi


def _load_config(args) -> JobConfig:
    data = {}
    if args.config:
        with open(args.config) as fh:
            data = json.load(fh)
        unknown = set(data) - _CONFIG_FIELDS
        if unknown:
            raise RootSystemError(f"unknown config fields: {sorted(unknown)}")
    if args.system:
        fam, _, rk = args.system.partition(":")
        data["family"] = fam
        data["rank"] = int(rk) if rk else None
    if getattr(args, "levi", None) is not None:
        data["levi"] = [int(x) for x in args.levi.split(",")] if args.levi else []
    if "family" not in data or data.get("rank") is None:
        raise RootSystemError("no root system given; use --system FAMILY:RANK or --config")
    datum = build_root_system(str(data["family"]).upper(), int(data["rank"]))
    levi = build_levi(datum, data["levi"]) if "levi" in data else None
    cache_dir = args.cache_dir or data.get("cache_dir") or \
        os.environ.get("LEVIBRANCH_CACHE_DIR")
    threads = int(getattr(args, "threads", 0) or data.get("threads", 1) or 1)
    guard = int(getattr(args, "guard", 0) or data.get("guard", 0) or DEFAULT_GROUP_GUARD)
    seed = int(getattr(args, "seed", 0) or data.get("seed", 0) or 0)
    return JobConfig(datum, levi, cache_dir, threads, guard, seed)


def _emit(payload, out_path=None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _table_cache_path(cfg: JobConfig, table) -> str | None:
    if not cfg.cache_dir:
        return None
    os.makedirs(cfg.cache_dir, exist_ok=True)
    return os.path.join(cfg.cache_dir, f"kpf-{table.cache_token()}.txt")


def _with_table_cache(cfg: JobConfig, table):
    path = _table_cache_path(cfg, table)
    if path and os.path.exists(path):
        table.load_text(path)
    return path


# -- subcommands ---------------------------------------------------------------

def cmd_branch(args) -> int:
    cfg = _load_config(args)
    levi = cfg.require_levi()
    mu = Weight.parse(args.mu)
    cache_path = _with_table_cache(cfg, levi_table(levi))
    if args.lam:
        lam = Weight.parse(args.lam)
        value = branch_multiplicity(levi, lam, mu, cfg.guard)
        if args.oracle:
            row = branch_by_restriction(levi, lam)
            oracle_value = row.get(mu, 0)
            diff = [] if oracle_value == value else [
                {"lam": lam.to_json(), "mu": mu.to_json(),
                 "sum": value, "oracle": oracle_value}]
            _emit({"multiplicity": value, "oracle": oracle_value,
                   "oracle_diff": diff}, args.out)
        else:
            sys.stdout.write(f"{value}\n")
    else:
        row = branch_row(levi, mu, args.box_k, cfg.guard)
        if args.oracle:
            diffs = []
            for lam in row.box:
                oracle = branch_by_restriction(levi, lam).get(mu, 0)
                if oracle != row.entries[lam]:
                    diffs.append({"lam": lam.to_json(), "sum": row.entries[lam],
                                  "oracle": oracle})
            payload = row.to_json()
            payload["oracle_diff"] = diffs
            _emit(payload, args.out)
        elif args.format == "csv":
            text = row.to_csv()
            if args.out:
                with open(args.out, "w") as fh:
                    fh.write(text)
            else:
                sys.stdout.write(text)
        else:
            _emit(row.to_json(), args.out)
    if cache_path:
        levi_table(levi).save_text(cache_path)
    return EXIT_OK


def cmd_compare(args) -> int:
    cfg = _load_config(args)
    levi = cfg.require_levi()
    mu = Weight.parse(args.mu)
    nu = Weight.parse(args.nu)
    verdict = classify_pair(levi, mu, nu, cfg.guard)
    _emit(verdict.to_json(), args.out)
    return EXIT_OK


def cmd_search(args) -> int:
    cfg = _load_config(args)
    levi = cfg.require_levi()
    resume = set()
    if args.resume and args.certificates:
        resume, offset = replay_resume_state(args.certificates)
        if os.path.exists(args.certificates):
            with open(args.certificates, "r+b") as fh:
                fh.truncate(offset)
    sink = open(args.certificates, "a") if args.certificates else None
    try:
        summary = search_box(levi, args.bound, sink=sink, threads=cfg.threads,
                             guard=cfg.guard, resume_keys=resume)
    finally:
        if sink:
            sink.close()
    _emit(summary.to_json(), args.out)
    return EXIT_OK


def cmd_autos(args) -> int:
    cfg = _load_config(args)
    levi = cfg.require_levi()
    autos = diagram_automorphisms(levi, cfg.guard)
    _emit({"count": len(autos), "elements": [u.to_json() for u in autos]}, args.out)
    return EXIT_OK


def cmd_u(args) -> int:
    cfg = _load_config(args)
    levi = cfg.require_levi()
    trans = transversal(levi, cfg.guard)
    payload = {"count": len(trans)}
    if args.full:
        payload["elements"] = [u.to_json() for u in trans]
    _emit(payload, args.out)
    return EXIT_OK


def cmd_mfun(args) -> int:
    cfg = _load_config(args)
    levi = cfg.require_levi()
    mu = Weight.parse(args.mu)
    fn = build_m(levi, mu, guard=cfg.guard)
    lam, sign = fn.leading()
    payload = {"mu": mu.to_json(), "leading": {"w": lam.to_json(), "sign": sign}}
    if args.compact:
        payload["coeffs"] = fn.to_json()["coeffs"]
    else:
        payload["terms"] = fn.poly().to_json()
    _emit(payload, args.out)
    return EXIT_OK


def cmd_lr(args) -> int:
    if args.polar:
        fam, _, rk = args.polar.partition(":")
        mu = Weight.parse(args.mu)
        lam = Partition(int(x) for x in args.lam.split(",") if x.strip())
        value = polarisation_branch(fam.upper(), int(rk), mu, lam)
        sys.stdout.write(f"{value}\n")
        return EXIT_OK
    lam = Partition(int(x) for x in args.lam.split(",") if x.strip())
    if args.multi:
        mus = [Partition(int(x) for x in blk.split(",") if x.strip())
               for blk in args.multi.split(";")]
        sys.stdout.write(f"{multi_lr(lam, mus)}\n")
        return EXIT_OK
    mu = Partition(int(x) for x in args.mu.split(",") if x.strip())
    nu = Partition(int(x) for x in args.nu.split(",") if x.strip())
    sys.stdout.write(f"{lr_coefficient(lam, mu, nu)}\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verifysuite import run_suite

    seed = int(getattr(args, "seed", 0) or 0)
    failures = run_suite(seed=seed, stream=sys.stdout)
    return EXIT_OK if failures == 0 else 1


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="levibranch",
        description="Exact branching to Levi subalgebras and induced-character "
                    "equality for the classical families")
    parser.add_argument("--backend-info", action="store_true",
                        help="print the active kernel backend and exit")
    sub = parser.add_subparsers(dest="command")

    def common(p, needs_levi=True):
        p.add_argument("--system", help="root system FAMILY:RANK, e.g. C:6")
        p.add_argument("--levi", help="retained simple-root indices, e.g. 1,2,4,5,6")
        p.add_argument("--config", help="JSON config file")
        p.add_argument("--cache-dir", help="partition-table cache directory")
        p.add_argument("--threads", type=int, default=0)
        p.add_argument("--guard", type=int, default=0,
                       help="Weyl-group enumeration guard (default 2e6)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", help="write primary output to this file")

    p = sub.add_parser("branch", help="branching multiplicity or a whole row")
    common(p)
    p.add_argument("--lam", help="ambient highest weight")
    p.add_argument("--mu", required=True, help="Levi highest weight")
    p.add_argument("--oracle", action="store_true",
                   help="also run the restriction oracle and report diffs")
    p.add_argument("--box-k", type=int, default=2,
                   help="row box: lambda <= mu + k * highest root")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_branch)

    p = sub.add_parser("compare", help="decide equality of two induced characters")
    common(p)
    p.add_argument("--mu", required=True)
    p.add_argument("--nu", required=True)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("search", help="scan a dominant box for equal pairs")
    common(p)
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--certificates", help="append JSONL verdicts to this file")
    p.add_argument("--resume", action="store_true",
                   help="skip groups already completed in the certificate file")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("autos", help="diagram automorphisms inside the Weyl group")
    common(p)
    p.set_defaults(func=cmd_autos)

    p = sub.add_parser("u", help="minimal-length coset transversal")
    common(p)
    p.add_argument("--full", action="store_true", help="list the elements")
    p.set_defaults(func=cmd_u)

    p = sub.add_parser("mfun", help="the finite M-function of a Levi weight")
    common(p)
    p.add_argument("--mu", required=True)
    p.add_argument("--compact", action="store_true",
                   help="emit orbit-sum coefficients instead of the expansion")
    p.set_defaults(func=cmd_mfun)

    p = sub.add_parser("lr", help="Littlewood-Richardson and polarisation numbers")
    p.add_argument("--lam", required=True)
    p.add_argument("--mu", default="")
    p.add_argument("--nu", default="")
    p.add_argument("--multi", help="semicolon-separated factors, e.g. '1;1;1'")
    p.add_argument("--polar", help="polarisation family:rank, e.g. C:2")
    p.add_argument("--out")
    p.set_defaults(func=cmd_lr)

    p = sub.add_parser("verify", help="run the built-in invariant suite")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    if args.backend_info:
        sys.stdout.write(f"kernel backend: {kernels.BACKEND}\n")
        return EXIT_OK
    if not getattr(args, "command", None):
        parser.print_help()
        return EXIT_VALIDATION
    try:
        return args.func(args)
    except (WeightError, RootSystemError, ValueError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_VALIDATION
    except (GroupSizeError, BudgetError) as exc:
        sys.stderr.write(f"guard: {exc}\n")
        return EXIT_GUARD
    except OSError as exc:
        sys.stderr.write(f"io error: {exc}\n")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
