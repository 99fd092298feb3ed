"""Command-line entry point: ``coxalt <command> ...``.

Exit codes: 0 success, 1 assertion failure, 2 hypothesis refusal,
3 resource cap, 4 input error.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional

from coxalt import cache
from coxalt.coxeter import (
    APPENDIX_ROWS,
    GraphSyntaxError,
    catalog_types,
    check_odd_prime,
    classify,
    components,
    name,
    parse_graph,
    type_order,
    type_rule,
    validate,
)
from coxalt.report import (
    EXIT_CAP,
    EXIT_FAIL,
    EXIT_INPUT,
    EXIT_OK,
    EXIT_REFUSED,
    Record,
    Report,
    render_table,
)

FORMATS = ("json", "md", "csv")


@dataclass(frozen=True)
class RunConfig:
    group_cap: int = 60_000
    memory: int = 4 << 30
    primes: tuple = (5,)
    fmt: str = "json"
    cache_dir: Optional[str] = None
    kmax: int = 2

    def __post_init__(self):
        if self.group_cap < 1 or self.memory < 1 or self.kmax < 0:
            raise ValueError("caps must be positive")
        for p in self.primes:
            check_odd_prime(p)
        if self.fmt not in FORMATS:
            raise ValueError(f"format must be one of {', '.join(FORMATS)}")

    def limits(self):
        from coxalt.cohomology import Limits
        return Limits(group_cap=self.group_cap, memory=self.memory,
                      cache_dir=str(self.cache_dir) if self.cache_dir else None)


def _primes(text: str) -> tuple:
    try:
        return tuple(int(x) for x in str(text).split(",") if x.strip())
    except ValueError:
        raise ValueError(f"bad prime list {text!r}") from None


def read_config(path: str) -> dict:
    """Simple ``key = value`` file; ``#`` starts a comment."""
    keys = {"cap": ("group_cap", int), "mem": ("memory", int), "p": ("primes", _primes),
            "primes": ("primes", _primes), "format": ("fmt", str),
            "cache_dir": ("cache_dir", str), "kmax": ("kmax", int)}
    out = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value")
        k, v = (x.strip() for x in line.split("=", 1))
        if k not in keys:
            raise ValueError(f"{path}:{lineno}: unknown key {k!r}")
        field_name, conv = keys[k]
        out[field_name] = conv(v)
    return out


def build_config(args) -> RunConfig:
    values = read_config(args.config) if getattr(args, "config", None) else {}
    if args.cap is not None:
        values["group_cap"] = args.cap
    if args.mem is not None:
        values["memory"] = args.mem
    if getattr(args, "p", None) is not None:
        values["primes"] = _primes(args.p)
    if args.format is not None:
        values["fmt"] = args.format
    if getattr(args, "kmax", None) is not None:
        values["kmax"] = args.kmax
    cdir = args.cache_dir if args.cache_dir is not None else values.get("cache_dir")
    values["cache_dir"] = cache.resolve(cdir)
    return RunConfig(**values)


# --------------------------------------------------------------------------
# commands

def catalog_rows() -> list:
    return [tuple(r) for r in APPENDIX_ROWS]


def cmd_catalog(cfg: RunConfig, instances: bool = False) -> tuple:
    if instances:
        rows = [(t.name, type_order(t), str(type_rule(t))) for t in catalog_types(8, 12)]
    else:
        rows = catalog_rows()
    return EXIT_OK, render_table(("type", "order", "p_free"), rows, cfg.fmt)


def _load_graph(text: str):
    M = parse_graph(text)
    problems = validate(M)
    if problems:
        raise ValueError("; ".join(problems))
    return M


def _describe(M) -> str:
    return " + ".join(classify(c.matrix).name for c in components(M))


def cmd_verify(cfg: RunConfig, graph: str, twisted: bool = False, h1: bool = False,
               sign_split: bool = False) -> tuple:
    from coxalt.cohomology import (
        verify_h1,
        verify_main_theorem,
        verify_sign_split,
        verify_twisted_theorem,
    )
    M = _load_graph(graph)
    rep = Report(notes=[f"graph {graph}: {_describe(M)}"])
    lim = cfg.limits()
    for p in cfg.primes:
        if h1:
            rep.extend(verify_h1(M, p, lim))
            continue
        rep.extend(verify_main_theorem(M, p, lim))
        if twisted:
            rep.extend(verify_twisted_theorem(M, p, lim))
        if sign_split:
            rep.extend(verify_sign_split(M, p, cfg.kmax, lim))
    return rep.exit_code, rep.render(cfg.fmt)


def cmd_complex(cfg: RunConfig, graph: str, orbit: bool = False,
                export: Optional[str] = None) -> tuple:
    from coxalt.complex import build_coxeter_complex
    from coxalt.groups import alternating_subgroup, enumerate_group
    from coxalt.linalg import betti, cochain_complex, invariant_cochain_complex

    M = _load_graph(graph)
    G = enumerate_group(M, cfg.group_cap, cfg.cache_dir)
    X = build_coxeter_complex(G)
    if export:
        Path(export).write_text(X.export_text())
    rows, ok = [], True
    nm = name(M)
    for p in cfg.primes:
        prof = betti(cochain_complex(X, p))
        ok &= prof.is_sphere()
        rows.append((f"X({nm})", p, list(prof.dims), list(prof.betti), prof.label()))
        if orbit:
            A = alternating_subgroup(G)
            oprof = betti(invariant_cochain_complex(X, A, p))
            ok &= oprof.is_sphere()
            rows.append((f"X({nm})/A_W", p, list(oprof.dims), list(oprof.betti), oprof.label()))
    text = render_table(("space", "p", "cells", "betti", "profile"), rows, cfg.fmt)
    return (EXIT_OK if ok else EXIT_FAIL), text


def cmd_ss_check(cfg: RunConfig, graph: str) -> tuple:
    from coxalt.cohomology import ss_bottom_row
    from coxalt.complex import build_coxeter_complex
    from coxalt.groups import alternating_subgroup, enumerate_group

    M = _load_graph(graph)
    G = enumerate_group(M, cfg.group_cap, cfg.cache_dir)
    X = build_coxeter_complex(G)
    rows = []
    for p in cfg.primes:
        row = ss_bottom_row(X, alternating_subgroup(G), p)
        rows.append((name(M), p, list(row.e1_dims), list(row.e2_dims),
                     list(row.invariant_betti), "match" if row.match else "mismatch"))
    text = render_table(("group", "p", "E1", "E2", "orbit_betti", "status"), rows, cfg.fmt)
    return EXIT_OK, text


def cmd_scan(cfg: RunConfig) -> tuple:
    from coxalt.coxeter import scan_low_rank_p_torsion
    rows, ok = [], True
    for p in cfg.primes:
        rep = scan_low_rank_p_torsion(p)
        ok &= rep.ok
        rows += [(p, t, rank, order, "divides" if div else "coprime")
                 for t, rank, order, _, div in rep.rows]
    text = render_table(("p", "type", "rank", "order", "p_vs_order"), rows, cfg.fmt)
    return (EXIT_OK if ok else EXIT_FAIL), text


def cmd_verify_all(cfg: RunConfig) -> tuple:
    from coxalt.acceptance import run_all

    def progress(res):
        print(f"{res.line()} ({res.seconds:.1f}s)", file=sys.stderr)

    results = run_all(progress)
    rows = [(r.number, r.title, "pass" if r.passed else "fail", r.detail) for r in results]
    text = render_table(("criterion", "title", "status", "detail"), rows, cfg.fmt)
    return (EXIT_OK if all(r.passed for r in results) else EXIT_FAIL), text


# --------------------------------------------------------------------------
# argument parsing

def _common() -> argparse.ArgumentParser:
    c = argparse.ArgumentParser(add_help=False)
    c.add_argument("--format", choices=FORMATS, default=None)
    c.add_argument("--cache-dir", default=None,
                   help=f"cache directory (default ${cache.ENV_VAR}; 'off' disables)")
    c.add_argument("--cap", type=int, default=None, help="largest group to realize")
    c.add_argument("--mem", type=int, default=None, help="cocycle memory budget in bytes")
    c.add_argument("--config", default=None, help="key=value configuration file")
    return c


def make_parser() -> argparse.ArgumentParser:
    common = _common()
    ap = argparse.ArgumentParser(prog="coxalt", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("catalog", parents=[common], help="table of finite irreducible types")
    c.add_argument("--instances", action="store_true",
                   help="one row per instantiated type (rank <= 8, m <= 12)")

    v = sub.add_parser("verify", parents=[common], help="check the vanishing theorems")
    v.add_argument("graph")
    v.add_argument("--p", default=None, help="odd prime or comma-separated list")
    v.add_argument("--kmax", type=int, default=None)
    v.add_argument("--twisted", action="store_true", help="also the sign-twisted statement")
    v.add_argument("--h1", action="store_true", help="H^1(A_W) from the presentation")
    v.add_argument("--sign-split", action="store_true", help="dimension additivity check")

    x = sub.add_parser("complex", parents=[common], help="Betti numbers of the Coxeter complex")
    x.add_argument("graph")
    x.add_argument("--p", default=None)
    x.add_argument("--orbit", action="store_true", help="also the quotient by A_W")
    x.add_argument("--export", default=None, help="write simplices to this file")

    s = sub.add_parser("ss-check", parents=[common], help="spectral-sequence bottom row")
    s.add_argument("graph")
    s.add_argument("--p", default=None)

    sc = sub.add_parser("scan", parents=[common], help="low-rank p-torsion scan")
    sc.add_argument("--p", default=None)

    sub.add_parser("verify-all", parents=[common], help="run every acceptance check")
    return ap


def run(argv=None) -> tuple:
    """Parse and dispatch; returns ``(exit_code, output_text)``."""
    from coxalt.cohomology import HypothesisViolation, ResourceLimit
    from coxalt.complex import ComplexTooLarge
    from coxalt.groups import CapExceeded
    from coxalt.linalg import IntegrityError

    args = make_parser().parse_args(argv)
    fmt = args.format or "json"

    def failure(code, kind, message):
        rep = Report([Record(getattr(args, "graph", "") or "", None, "", None, None, kind,
                             {EXIT_REFUSED: "refused", EXIT_CAP: "unverified"}.get(code, "fail"))],
                     [message])
        return code, rep.render(fmt)

    try:
        cfg = build_config(args)
        fmt = cfg.fmt
        if args.command == "catalog":
            return cmd_catalog(cfg, args.instances)
        if args.command == "verify":
            return cmd_verify(cfg, args.graph, args.twisted, args.h1, args.sign_split)
        if args.command == "complex":
            return cmd_complex(cfg, args.graph, args.orbit, args.export)
        if args.command == "ss-check":
            return cmd_ss_check(cfg, args.graph)
        if args.command == "scan":
            if args.p is None:
                cfg = replace(cfg, primes=(5, 7, 11))
            return cmd_scan(cfg)
        return cmd_verify_all(cfg)
    except HypothesisViolation as e:
        return failure(EXIT_REFUSED, "hypothesis-check", str(e))
    except (CapExceeded, ResourceLimit, ComplexTooLarge) as e:
        return failure(EXIT_CAP, "resource-cap", str(e))
    except IntegrityError as e:
        return failure(EXIT_FAIL, "integrity", str(e))
    except GraphSyntaxError as e:
        return failure(EXIT_INPUT, "input", f"syntax error: {e}")
    except (ValueError, OSError) as e:
        return failure(EXIT_INPUT, "input", str(e))


def main(argv=None) -> int:
    code, text = run(argv)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
