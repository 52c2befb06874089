"""Command-line surface: search, classification, generation, verification.

Every subcommand writes structured records to stdout (jsonl by default,
csv or human on request) and diagnostics to stderr.  Exit codes: 0 ok,
1 verification failure (a counterexample was found), 2 usage error,
3 resource limit.  Records are buffered and emitted after all work is
done, in an order that does not depend on the thread count.

The sieve is cached on disk: a 32-byte header (magic "DFL1", uint32
version, uint64 limit, uint32 CRC-32 of the payload, 12 zero bytes)
followed by the smallest-prime-factor array as little-endian uint32
entries for indices 0..limit (entries 0 and 1 are zero).
"""

import argparse
import csv
import dataclasses
import json
import math
import os
import random
import struct
import sys
import zlib
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .core import (
    PrimeTable,
    SieveRangeError,
    analyze_block,
    sieve_primes,
)
from .equation import (
    EquationInstance,
    NotASolutionError,
    ResourceLimitError,
    SolutionRecord,
    classify,
    generate_trivial_even,
    generate_trivial_odd,
    odd_gap_obstruction,
    search,
    verify_known_factorial_solutions,
)
from . import bounds
from . import abc_triples as abct

__all__ = [
    "CommandConfig",
    "OutputRecord",
    "load_or_build_sieve",
    "run",
    "main",
    "CACHE_ENV_VAR",
]

SCHEMA_VERSION = 1
CACHE_ENV_VAR = "DFLAB_CACHE_DIR"
CACHE_FILENAME = "sieve.dfl"
CACHE_MAGIC = b"DFL1"
CACHE_FORMAT_VERSION = 1
_HEADER = struct.Struct("<4sIQI12x")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


@dataclass
class CommandConfig:
    sieve_limit: int = 10**6
    cache_dir: Path = None
    output_format: str = "jsonl"
    threads: int = 0  # 0 = auto
    node_budget: int = 10**8

    def __post_init__(self):
        if self.cache_dir is None:
            env = os.environ.get(CACHE_ENV_VAR)
            base = Path(env) if env else Path.home() / ".cache" / "dflab"
            self.cache_dir = base
        self.cache_dir = Path(self.cache_dir)
        if self.sieve_limit < 2:
            raise ValueError("sieve limit must be >= 2")
        if self.node_budget < 1:
            raise ValueError("node budget must be >= 1")
        if self.output_format not in ("jsonl", "csv", "human"):
            raise ValueError(f"unknown output format {self.output_format!r}")

    def effective_threads(self) -> int:
        return self.threads if self.threads > 0 else max(1, os.cpu_count() or 1)


@dataclass
class OutputRecord:
    kind: str  # solution | bound_check | triple | scan_summary
    payload: dict
    schema_version: int = SCHEMA_VERSION


class _CacheInvalid(Exception):
    pass


def _cache_path(config: CommandConfig) -> Path:
    return config.cache_dir / CACHE_FILENAME


def _read_cache(path: Path, need_limit: int) -> PrimeTable | None:
    """Cached table if intact and large enough; None if merely too small."""
    data = path.read_bytes()
    if len(data) < _HEADER.size:
        raise _CacheInvalid("truncated header")
    magic, version, limit, crc = _HEADER.unpack_from(data)
    if magic != CACHE_MAGIC:
        raise _CacheInvalid("bad magic")
    if version != CACHE_FORMAT_VERSION:
        raise _CacheInvalid(f"unsupported cache version {version}")
    payload = data[_HEADER.size :]
    if len(payload) != 4 * (limit + 1):
        raise _CacheInvalid("payload length does not match limit")
    if zlib.crc32(payload) & 0xFFFFFFFF != crc:
        raise _CacheInvalid("checksum mismatch")
    if limit < need_limit:
        return None
    spf = np.frombuffer(payload, dtype="<u4")
    return PrimeTable(int(limit), spf)


def _write_cache(path: Path, table: PrimeTable):
    payload = table.spf.astype("<u4").tobytes()
    header = _HEADER.pack(
        CACHE_MAGIC, CACHE_FORMAT_VERSION, table.limit, zlib.crc32(payload) & 0xFFFFFFFF
    )
    tmp = path.with_suffix(".tmp")
    tmp.write_bytes(header + payload)
    tmp.replace(path)


def load_or_build_sieve(config: CommandConfig) -> PrimeTable:
    """Load the cached sieve when valid and big enough, else build and persist."""
    path = _cache_path(config)
    if path.exists():
        try:
            table = _read_cache(path, config.sieve_limit)
            if table is not None:
                return table
        except (_CacheInvalid, OSError) as exc:
            print(f"dflab: rebuilding sieve cache ({exc})", file=sys.stderr)
    table = sieve_primes(config.sieve_limit)
    try:
        config.cache_dir.mkdir(parents=True, exist_ok=True)
        _write_cache(path, table)
    except OSError as exc:
        print(f"dflab: cannot persist sieve cache: {exc}", file=sys.stderr)
    return table


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, Path):
        return str(obj)
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else repr(obj)
    if dataclasses.is_dataclass(obj):
        return _jsonable(dataclasses.asdict(obj))
    return repr(obj)


def _solution_record(rec: SolutionRecord) -> OutputRecord:
    dec = None
    if rec.decomposition is not None:
        d = rec.decomposition
        dec = {"x1": d.x1, "l1": d.l1, "x2": d.x2, "l2": d.l2}
    return OutputRecord(
        "solution",
        {
            "n": rec.instance.n,
            "a": list(rec.instance.a),
            "t": rec.instance.t,
            "r": rec.instance.r,
            "classification": rec.classification,
            "witness": rec.witness,
            "decomposition": dec,
        },
    )


def _bound_record(res: bounds.BoundCheckResult) -> OutputRecord:
    return OutputRecord(
        "bound_check",
        {
            "name": res.name,
            "domain_checked": res.domain_checked,
            "passed": res.passed,
            "margin": _jsonable(res.margin),
            "counterexamples": _jsonable(res.counterexamples),
            "details": _jsonable(res.details),
        },
    )


def _triple_record(t: abct.AbcTriple, extra: dict | None = None) -> OutputRecord:
    payload = {
        "a": t.a,
        "b": t.b,
        "c": t.c,
        "rad": t.rad,
        "quality": t.quality,
        "explicit_ok": t.explicit_ok,
        "explicit_margin": t.explicit_margin,
    }
    if extra:
        payload.update(extra)
    return OutputRecord("triple", payload)


def _emit_jsonl(records, out):
    for rec in records:
        obj = {
            "kind": rec.kind,
            "schema_version": rec.schema_version,
            "payload": _jsonable(rec.payload),
        }
        out.write(json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n")


def _emit_csv(records, out):
    keys = sorted({k for rec in records for k in rec.payload})
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["kind", "schema_version"] + [f"payload.{k}" for k in keys])
    for rec in records:
        row = [rec.kind, rec.schema_version]
        payload = _jsonable(rec.payload)
        for k in keys:
            if k not in payload:
                row.append("")
                continue
            v = payload[k]
            if isinstance(v, (dict, list)):
                row.append(json.dumps(v, sort_keys=True, separators=(",", ":")))
            else:
                row.append(v)
        writer.writerow(row)


def _emit_human(records, out):
    for rec in records:
        p = rec.payload
        if rec.kind == "solution":
            dec = p.get("decomposition")
            dec_s = f" decomposition={dec}" if dec else ""
            out.write(
                f"solution n={p['n']} a={p['a']} t={p['t']} r={p['r']} "
                f"{p['classification']} ({p['witness']}){dec_s}\n"
            )
        elif rec.kind == "bound_check":
            status = "pass" if p["passed"] else "FAIL"
            out.write(
                f"bound_check {p['name']} [{p['domain_checked']}] {status} "
                f"margin={p['margin']} counterexamples={len(p['counterexamples'])}\n"
            )
        elif rec.kind == "triple":
            out.write(
                f"triple {p['a']} + {p['b']} = {p['c']} rad={p['rad']} "
                f"quality={p['quality']:.4f} explicit_ok={p['explicit_ok']}\n"
            )
        else:
            body = " ".join(f"{k}={_jsonable(v)}" for k, v in sorted(p.items()))
            out.write(f"scan_summary {body}\n")


def _emit(records, fmt, out=None):
    out = out or sys.stdout
    if fmt == "jsonl":
        _emit_jsonl(records, out)
    elif fmt == "csv":
        _emit_csv(records, out)
    else:
        _emit_human(records, out)


def _parse_int_list(text: str) -> list:
    try:
        return [int(v) for v in text.split(",") if v != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _parse_k_range(text: str) -> list:
    """'2..7' -> [2..7], '3' -> [3], '2,5,7' -> [2, 5, 7]."""
    try:
        if ".." in text:
            lo, hi = text.split("..")
            return list(range(int(lo), int(hi) + 1))
        if "," in text:
            return [int(v) for v in text.split(",")]
        return [int(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse k range {text!r}")


# ----------------------------------------------------------------------
# Subcommand handlers: each returns (records, exit_code).


def _cmd_search(args, config, table):
    records = search(
        args.n_max,
        args.t_max,
        args.mode,
        table,
        threads=config.effective_threads(),
        node_budget=config.node_budget,
    )
    return [_solution_record(r) for r in records], EXIT_OK


def _cmd_classify(args, config, table):
    inst = EquationInstance(args.n, tuple(args.a))
    rec = classify(inst, table)
    return [_solution_record(rec)], EXIT_OK


def _cmd_generate(args, config, table):
    if args.family == "trivial-even":
        inst = generate_trivial_even(args.evens, max_n=args.max_n)
    else:
        inst = generate_trivial_odd(args.a1, args.evens or (), max_n=args.max_n)
    rec = classify(inst, table)
    return [_solution_record(rec)], EXIT_OK


def _verdict(results):
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAILED


def _cmd_verify_lemma21(args, config, table):
    results = [
        bounds.verify_theta_bound(args.nu_max, table),
        bounds.verify_mertens_bound(args.nu_max, table),
    ]
    return [_bound_record(r) for r in results], _verdict(results)


def _geometry_scan(k_max, table):
    bad = []
    checked = 0
    for k in range(2, k_max + 1):
        for x in range(2, k):
            checked += 1
            if not bounds.check_composite_block_geometry(x, k, table):
                bad.append((x, k))
    return bounds.BoundCheckResult(
        name="all_composite_block_geometry",
        domain_checked=f"2 <= x < k <= {k_max}",
        counterexamples=bad,
        margin=math.inf,
        details={"blocks_checked": checked},
    )


def _cmd_verify_lemma22(args, config, table):
    results = [_geometry_scan(args.k_max, table)]
    for rec in search(args.n_max, args.t_max, "r0", table, threads=config.effective_threads()):
        results.append(bounds.sandwich_check(rec.instance, table))
    return [_bound_record(r) for r in results], _verdict(results)


def _cmd_verify_lemma23(args, config, table):
    results = []
    for rec in search(args.n_max, args.t_max, "r1", table, threads=config.effective_threads()):
        results.append(bounds.sandwich_check(rec.instance, table))
    if not results:
        return [
            OutputRecord(
                "scan_summary",
                {"checked": 0, "note": f"no single-odd-part solutions with n <= {args.n_max}"},
            )
        ], EXIT_OK
    return [_bound_record(r) for r in results], _verdict(results)


def _cmd_verify_thm24(args, config, table):
    _, result = bounds.theorem24_scan(args.k, args.x_max, table)
    return [_bound_record(result)], _verdict([result])


def _cmd_verify_val2(args, config, table):
    results = [bounds.valuation2_factorial_lower_check(args.m_max)]
    rng = random.Random(args.seed)
    worst = math.inf
    bad = []
    for _ in range(args.samples):
        x = rng.randint(2, args.x_max)
        k = rng.randint(1, args.k_max)
        res = bounds.valuation2_block_bound_check(x, k, table)
        worst = min(worst, res.margin)
        bad.extend(res.counterexamples)
    results.append(
        bounds.BoundCheckResult(
            name="block_power_of_two_upper_sweep",
            domain_checked=f"{args.samples} samples, x <= {args.x_max}, k <= {args.k_max}, seed={args.seed}",
            counterexamples=bad,
            margin=worst,
            details={},
        )
    )
    return [_bound_record(r) for r in results], _verdict(results)


def _cmd_verify_dusart(args, config, table):
    if args.y is None and args.y_max is None:
        raise ValueError("give --y or --y-max")
    if args.y is not None:
        results = [bounds.dusart_check(args.y, table)]
        return [_bound_record(r) for r in results], _verdict(results)
    worst = math.inf
    bad = []
    literal_fail = 0
    for y in range(bounds.DUSART_MIN_Y, args.y_max + 1):
        res = bounds.dusart_check(y, table)
        if res.margin < worst:
            worst = res.margin
        bad.extend(res.counterexamples)
        if not res.details["literal_form_ok"]:
            literal_fail += 1
    summary = bounds.BoundCheckResult(
        name="short_prime_gap_interval_sweep",
        domain_checked=f"{bounds.DUSART_MIN_Y} <= y <= {args.y_max}",
        counterexamples=bad,
        margin=worst,
        details={"literal_form_failures": literal_fail},
    )
    return [_bound_record(summary)], _verdict([summary])


def _cmd_verify_known(args, config, table):
    rows = verify_known_factorial_solutions()
    payload = {
        "identities": [{"identity": label, "holds": ok} for label, ok in rows],
        "all_hold": all(ok for _, ok in rows),
    }
    return [OutputRecord("scan_summary", payload)], (
        EXIT_OK if payload["all_hold"] else EXIT_FAILED
    )


def _cmd_bound_thm12ii(args, config, table):
    value = bounds.thm12ii_bound(args.l1)
    return [OutputRecord("scan_summary", {"l1": args.l1, "a1_upper_bound": value})], EXIT_OK


def _cmd_bound_ineq3(args, config, table):
    rhs, holds = abct.inequality3_rhs(args.k, args.a2, args.m)
    payload = {
        "k": args.k,
        "a2": args.a2,
        "m": args.m,
        "lhs": args.k * math.log(args.m),
        "rhs": rhs,
        "holds": holds,
    }
    return [OutputRecord("scan_summary", payload)], EXIT_OK


def _cmd_abc_triple(args, config, table):
    return [_triple_record(abct.make_triple(args.a, args.b, table))], EXIT_OK


def _proof_extra(res):
    return {
        "x": res.x,
        "j1": res.j1,
        "j2": res.j2,
        "d": res.d,
        "x_over_d": res.x_over_d,
        "bound": res.bound,
        "holds": res.holds,
    }


def _cmd_abc_proof_triple(args, config, table):
    res = abct.proof_triple(args.x, args.j1, args.j2, table)
    return [_triple_record(res.triple, _proof_extra(res))], EXIT_OK


def _cmd_abc_scan(args, config, table):
    res = abct.scan_block_triples(args.x, args.k, table)
    return [_triple_record(res.triple, _proof_extra(res))], EXIT_OK


def _cmd_block_analyze(args, config, table):
    rep = analyze_block(args.x, args.k, table)
    payload = {
        "x": rep.x,
        "k": rep.k,
        "lpf": rep.lpf,
        "val2": rep.val2,
        "all_composite": rep.all_composite,
        "term_radicals": list(rep.term_radicals),
    }
    return [OutputRecord("scan_summary", payload)], EXIT_OK


def _cmd_ratio_erdos_graham(args, config, table):
    value = bounds.erdos_graham_ratio(args.n, table)
    return [OutputRecord("scan_summary", {"n": args.n, "ratio": value})], EXIT_OK


def _cmd_ratio_erdos_block(args, config, table):
    value = bounds.erdos_ratio(args.x, args.k, table)
    payload = {"x": args.x, "k": args.k, "ratio": value, "all_composite": value is not None}
    return [OutputRecord("scan_summary", payload)], EXIT_OK


def _cmd_gap_witness(args, config, table):
    p = odd_gap_obstruction(args.n, args.l, table)
    payload = {"n": args.n, "l": args.l, "witness": p}
    return [OutputRecord("scan_summary", payload)], EXIT_OK


# ----------------------------------------------------------------------


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--sieve-limit", type=int, default=10**6, metavar="N")
    common.add_argument("--cache-dir", type=Path, default=None, metavar="PATH")
    common.add_argument(
        "--format", choices=("jsonl", "csv", "human"), default="jsonl", dest="output_format"
    )
    common.add_argument("--threads", type=int, default=0, metavar="N", help="0 = auto")
    common.add_argument("--node-budget", type=int, default=10**8, metavar="N")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(
        prog="dflab",
        description="Double-factorial product equations: search, classify, verify bounds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("search", parents=[common], help="exhaustive solution search")
    p.add_argument("--mode", choices=("r0", "r1"), required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--t-max", type=int, required=True)
    p.set_defaults(handler=_cmd_search)

    p = sub.add_parser("classify", parents=[common], help="classify one candidate solution")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=_parse_int_list, required=True, metavar="LIST")
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("generate", help="construct a trivial-family solution")
    gsub = p.add_subparsers(dest="family", required=True)
    ge = gsub.add_parser("trivial-even", parents=[common])
    ge.add_argument("--evens", type=_parse_int_list, required=True, metavar="LIST")
    ge.add_argument("--max-n", type=int, default=10**9)
    ge.set_defaults(handler=_cmd_generate, family="trivial-even")
    go = gsub.add_parser("trivial-odd", parents=[common])
    go.add_argument("--a1", type=int, required=True)
    go.add_argument("--evens", type=_parse_int_list, default=[], metavar="LIST")
    go.add_argument("--max-n", type=int, default=10**9)
    go.set_defaults(handler=_cmd_generate, family="trivial-odd")

    p = sub.add_parser("verify", help="run a verification scan")
    vsub = p.add_subparsers(dest="check", required=True)
    v = vsub.add_parser("lemma21", parents=[common])
    v.add_argument("--nu-max", type=int, default=10**6)
    v.set_defaults(handler=_cmd_verify_lemma21)
    v = vsub.add_parser("lemma22", parents=[common])
    v.add_argument("--k-max", type=int, default=50)
    v.add_argument("--n-max", type=int, default=400)
    v.add_argument("--t-max", type=int, default=3)
    v.set_defaults(handler=_cmd_verify_lemma22)
    v = vsub.add_parser("lemma23", parents=[common])
    v.add_argument("--n-max", type=int, default=400)
    v.add_argument("--t-max", type=int, default=3)
    v.set_defaults(handler=_cmd_verify_lemma23)
    v = vsub.add_parser("thm24", parents=[common])
    v.add_argument("--k", type=_parse_k_range, default=list(range(2, 8)), metavar="RANGE")
    v.add_argument("--x-max", type=int, default=5000)
    v.set_defaults(handler=_cmd_verify_thm24)
    v = vsub.add_parser("val2", parents=[common])
    v.add_argument("--m-max", type=int, default=10**6)
    v.add_argument("--x-max", type=int, default=10**4)
    v.add_argument("--k-max", type=int, default=50)
    v.add_argument("--samples", type=int, default=10**4)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(handler=_cmd_verify_val2)
    v = vsub.add_parser("dusart", parents=[common])
    v.add_argument("--y", type=int, default=None)
    v.add_argument("--y-max", type=int, default=None)
    v.set_defaults(handler=_cmd_verify_dusart)
    v = vsub.add_parser("known-factorials", parents=[common])
    v.set_defaults(handler=_cmd_verify_known)

    p = sub.add_parser("bound", help="evaluate a closed-form bound")
    bsub = p.add_subparsers(dest="which", required=True)
    b = bsub.add_parser("thm12ii", parents=[common])
    b.add_argument("--l1", type=int, required=True)
    b.set_defaults(handler=_cmd_bound_thm12ii)
    b = bsub.add_parser("ineq3", parents=[common])
    b.add_argument("--k", type=int, required=True)
    b.add_argument("--a2", type=int, required=True)
    b.add_argument("--m", type=int, required=True)
    b.set_defaults(handler=_cmd_bound_ineq3)

    p = sub.add_parser("abc", help="coprime sum triples")
    asub = p.add_subparsers(dest="which", required=True)
    a = asub.add_parser("triple", parents=[common])
    a.add_argument("--a", type=int, required=True)
    a.add_argument("--b", type=int, required=True)
    a.set_defaults(handler=_cmd_abc_triple)
    a = asub.add_parser("proof-triple", parents=[common])
    a.add_argument("--x", type=int, required=True)
    a.add_argument("--j1", type=int, required=True)
    a.add_argument("--j2", type=int, required=True)
    a.set_defaults(handler=_cmd_abc_proof_triple)
    a = asub.add_parser("scan", parents=[common])
    a.add_argument("--x", type=int, required=True)
    a.add_argument("--k", type=int, required=True)
    a.set_defaults(handler=_cmd_abc_scan)

    p = sub.add_parser("block", help="consecutive-integer block anatomy")
    ksub = p.add_subparsers(dest="which", required=True)
    k = ksub.add_parser("analyze", parents=[common])
    k.add_argument("--x", type=int, required=True)
    k.add_argument("--k", type=int, required=True)
    k.set_defaults(handler=_cmd_block_analyze)

    p = sub.add_parser("ratio", help="largest-prime growth ratios")
    rsub = p.add_subparsers(dest="which", required=True)
    r = rsub.add_parser("erdos-graham", parents=[common])
    r.add_argument("--n", type=int, required=True)
    r.set_defaults(handler=_cmd_ratio_erdos_graham)
    r = rsub.add_parser("erdos-block", parents=[common])
    r.add_argument("--x", type=int, required=True)
    r.add_argument("--k", type=int, required=True)
    r.set_defaults(handler=_cmd_ratio_erdos_block)

    p = sub.add_parser(
        "gap-witness", parents=[common], help="prime dividing (n-l)!! but not n!!"
    )
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.set_defaults(handler=_cmd_gap_witness)

    return parser


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        config = CommandConfig(
            sieve_limit=args.sieve_limit,
            cache_dir=args.cache_dir,
            output_format=args.output_format,
            threads=args.threads,
            node_budget=args.node_budget,
        )
        table = load_or_build_sieve(config)
        records, code = args.handler(args, config, table)
    except ResourceLimitError as exc:
        print(f"dflab: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (
        SieveRangeError,
        NotASolutionError,
        bounds.HypothesisViolationError,
        ValueError,
        OverflowError,
    ) as exc:
        print(f"dflab: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(records, config.output_format)
    return code


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
