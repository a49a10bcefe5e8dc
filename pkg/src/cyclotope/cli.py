"""``cyclotope`` command line.

Exit codes: 0 all checks pass, 1 a verification failed, 2 usage error,
3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import random
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from . import complex as cxmod
from .complex import MAX_COMPLEX_N, build_cp, cellular_chain_complex, order_complex
from .homology import homology_of, predicted_betti
from .morse import (
    build_matching,
    classify_critical,
    critical_count_formula,
    morse_boundary,
    morse_complex,
)
from .report import VerificationReport
from .volume import (
    Segment,
    SegmentFamily,
    convex_hull_volume,
    cp_volume_determinant_route,
    cp_volume_forest_route,
    enumerate_decorated_forests,
    q_n_routes,
    reduce_forest,
    rooted_forest_counts,
    zonotope_volume,
)

log = logging.getLogger("cyclotope")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3
MAX_ABEL_N = 200


@dataclass
class RunConfig:
    command: str
    n: int
    method: str = "both"
    route: str = "both"
    export: str = "json"
    report: str = "critical"
    fmt: str = "json"
    out: Path | None = None
    verbose: int = 0
    threads: int = 1
    seed: int = 0
    long: bool = False
    check: str | None = None


class UsageError(Exception):
    pass


def _threads(flag: int | None) -> int:
    if flag is not None:
        return max(1, flag)
    env = os.environ.get("CYCLOTOPE_THREADS")
    try:
        return max(1, int(env)) if env else 1
    except ValueError:
        raise UsageError(f"CYCLOTOPE_THREADS must be an integer, got {env!r}")


def _check_n(cfg: RunConfig, low: int = 3, high: int = MAX_COMPLEX_N) -> None:
    if not low <= cfg.n <= high:
        raise UsageError(f"--n must lie in [{low}, {high}] for '{cfg.command}', got {cfg.n}")


# ------------------------------------------------------------------ verify

def run_verify(cfg: RunConfig) -> VerificationReport:
    """Betti numbers (both methods), volume (both routes), critical counts, acyclicity, vanishing boundaries."""
    _check_n(cfg)
    n = cfg.n
    rep = VerificationReport(n, cfg.seed)
    ranks = list(predicted_betti(n))

    cx = build_cp(n)
    rep.run("euler_characteristic_matches_critical_sum",
            sum((-1) ** k * critical_count_formula(n, k) for k in range(n - 1)),
            cx.euler_characteristic)
    built = {}

    def matching_ok() -> bool:
        built["m"] = build_matching(cx)
        return True

    rep.run("matching_involutive_and_acyclic", True, matching_ok)
    if "m" not in built:
        return rep
    m = built["m"]
    rep.run("critical_counts", ranks, lambda: list(m.critical_counts()))
    rep.run("critical_classification", True,
            lambda: all((classify_critical(cx.labels[i]) != "not-critical") == m.is_critical(i) for i in range(len(cx))))
    if n <= 5 or cfg.long:
        rep.run("morse_boundary_vanishes", True,
                lambda: all(morse_boundary(m, k).is_zero() for k in range(1, n - 1)))
    else:
        rep.skip("morse_boundary_vanishes", "n >= 6 needs --long")

    def betti(h):
        return {"betti": list(h.betti), "free": h.is_free}

    expected = {"betti": ranks, "free": True}
    rep.run("betti_morse", expected, lambda: betti(homology_of(morse_complex(m))))
    if n <= 5:
        rep.run("betti_order_complex", expected,
                lambda: betti(homology_of(cellular_chain_complex(order_complex(cx)))))
    else:
        rep.skip("betti_order_complex", "order complex too large beyond n = 5")

    if n <= 6 or cfg.long:
        rep.run("volume_det_route", 0, lambda: cp_volume_determinant_route(n, workers=cfg.threads).coefficient)
        rep.run("volume_forest_route", 0, lambda: cp_volume_forest_route(n).coefficient)
    else:
        rep.skip("volume_det_route", "n >= 7 needs --long")
        rep.skip("volume_forest_route", "n >= 7 needs --long")
    rep.run("abel_q_n", {"abel_sum": 0, "p_direct": 0, "p_recursion": 0}, lambda: q_n_routes(n))

    rng = random.Random(cfg.seed)

    def reduction_order_free():
        forests = list(enumerate_decorated_forests(min(n, 5)))
        for f in rng.sample(forests, min(50, len(forests))):
            if reduce_forest(f, random.Random(rng.random())) != reduce_forest(f):
                return False
        return True

    rep.run("reduction_order_independent", True, reduction_order_free)

    def hull_agrees():
        for _ in range(5):
            d = rng.choice((2, 3))
            fam = SegmentFamily(d, [Segment(tuple(rng.randint(-4, 4) for _ in range(d)), rng.randint(1, 3))
                                    for _ in range(rng.randint(d, d + 3))])
            exact = float(zonotope_volume(fam, hyperplane=False))
            hull = convex_hull_volume(fam) if exact else 0.0
            if abs(exact - hull) > 1e-9 * max(1.0, abs(exact)):
                return False
        return True

    rep.run("zonotope_matches_convex_hull", True, hull_agrees)
    return rep


# ------------------------------------------------------------------ export

def _write(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        out.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise IOError(f"cannot write {out}: {exc}") from exc


def _critical_rows(m) -> list[dict]:
    cx = m.complex
    return [{"id": i, "dim": cx.dim_of(i), "type": classify_critical(cx.labels[i]), "label": str(cx.labels[i])}
            for i in m.critical]


def _critical_csv(m) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["id", "dim", "type", "label"])
    for r in _critical_rows(m):
        w.writerow([r["id"], r["dim"], r["type"], r["label"]])
    return buf.getvalue()


def _matching_json(m) -> str:
    return json.dumps({"n": m.complex.n, "pairs": m.pairs(), "critical": m.critical}, separators=(",", ":")) + "\n"


def run_export(cfg: RunConfig) -> list[Path]:
    """Write the complex (json/dot/csv), matching, critical cells and Morse boundaries into ``cfg.out``."""
    _check_n(cfg)
    out = cfg.out or Path(f"cp{cfg.n + 1}")
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise IOError(f"cannot create {out}: {exc}") from exc
    cx = build_cp(cfg.n)
    m = build_matching(cx)
    files = {
        "complex.json": cxmod.to_json(cx),
        "skeleton.dot": cxmod.to_dot(cx),
        "fvector.csv": cxmod.to_csv(cx),
        "matching.json": _matching_json(m),
        "critical.csv": _critical_csv(m),
    }
    for k in range(1, cfg.n - 1):
        files[f"morse_boundary_{k}.txt"] = morse_boundary(m, k).to_triplets()
    written = []
    for name, text in files.items():
        _write(text, out / name)
        written.append(out / name)
    return written


# ------------------------------------------------------------- subcommands

def cmd_complex(cfg: RunConfig) -> int:
    _check_n(cfg)
    cx = build_cp(cfg.n)
    render = {"json": cxmod.to_json, "dot": cxmod.to_dot, "csv": cxmod.to_csv}[cfg.export]
    _write(render(cx), cfg.out)
    return EXIT_OK


def cmd_morse(cfg: RunConfig) -> int:
    _check_n(cfg)
    cx = build_cp(cfg.n)
    if cfg.check == "acyclic":
        from .morse import MorseError

        try:
            build_matching(cx)
        except MorseError as exc:
            print(f"cyclic: {exc}", file=sys.stderr)
            return EXIT_FAIL
        print("acyclic")
        return EXIT_OK
    m = build_matching(cx)
    if cfg.report == "critical":
        if cfg.fmt == "jsonl":
            text = "".join(json.dumps(r) + "\n" for r in _critical_rows(m))
        elif cfg.fmt == "json":
            text = json.dumps(_critical_rows(m)) + "\n"
        else:
            text = _critical_csv(m)
    elif cfg.report == "matching":
        text = _matching_json(m)
    else:
        mats = {str(k): morse_boundary(m, k) for k in range(1, cfg.n - 1)}
        text = json.dumps({
            "n": cfg.n,
            "boundaries": {k: {"shape": list(d.shape), "nonzero": len(d.entries)} for k, d in mats.items()},
            "all_zero": all(d.is_zero() for d in mats.values()),
        }) + "\n"
    _write(text, cfg.out)
    return EXIT_OK


def cmd_betti(cfg: RunConfig) -> int:
    _check_n(cfg, high=MAX_COMPLEX_N if cfg.method == "morse" else 5)
    cx = build_cp(cfg.n)
    rows = []
    methods = ["morse", "order-complex"] if cfg.method == "both" else [cfg.method]
    for meth in methods:
        if meth == "morse":
            h = homology_of(morse_complex(build_matching(cx)))
        else:
            h = homology_of(cellular_chain_complex(order_complex(cx)))
        rows.append({"method": meth, "betti": list(h.betti), "torsion": [list(t) for t in h.torsion]})
    expected = list(predicted_betti(cfg.n))
    ok = all(r["betti"] == expected and not any(r["torsion"]) for r in rows)
    if cfg.fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["method", "k", "betti", "torsion"])
        for r in rows:
            for k, b in enumerate(r["betti"]):
                w.writerow([r["method"], k, b, " ".join(map(str, r["torsion"][k]))])
        text = buf.getvalue()
    elif cfg.fmt == "jsonl":
        text = "".join(json.dumps({"n": cfg.n, **r}) + "\n" for r in rows)
    else:
        text = json.dumps({"n": cfg.n, "expected": expected, "results": rows}) + "\n"
    _write(text, cfg.out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_volume(cfg: RunConfig) -> int:
    _check_n(cfg, high=8)
    routes = ["det", "forest"] if cfg.route == "both" else [cfg.route]
    results = []
    for r in routes:
        t0 = time.perf_counter()
        res = cp_volume_determinant_route(cfg.n, workers=cfg.threads) if r == "det" else cp_volume_forest_route(cfg.n)
        results.append({
            "n": cfg.n,
            "route": r,
            "coefficient": str(res.coefficient),
            "terms_evaluated": res.terms_evaluated,
            "elapsed_ms": round((time.perf_counter() - t0) * 1e3, 3),
        })
    if cfg.fmt == "jsonl" or len(results) > 1:
        text = "".join(json.dumps(r) + "\n" for r in results)
    else:
        text = json.dumps(results[0]) + "\n"
    _write(text, cfg.out)
    return EXIT_OK if all(r["coefficient"] == "0" for r in results) else EXIT_FAIL


def cmd_abel(cfg: RunConfig) -> int:
    _check_n(cfg, high=MAX_ABEL_N)
    routes = q_n_routes(cfg.n)
    doc = {
        "n": cfg.n,
        "rooted_forest_counts": [str(t) for t in rooted_forest_counts(cfg.n)],
        "q_n": {k: str(v) for k, v in routes.items()},
    }
    _write(json.dumps(doc) + "\n", cfg.out)
    return EXIT_OK if set(routes.values()) == {0} else EXIT_FAIL


def cmd_verify(cfg: RunConfig) -> int:
    rep = run_verify(cfg)
    print(f"seed={cfg.seed}", file=sys.stderr)
    for c in rep.checks:
        print(f"{c.status.upper():7s} {c.name}", file=sys.stderr)
    _write(rep.to_json(), cfg.out)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_export(cfg: RunConfig) -> int:
    for p in run_export(cfg):
        log.info("wrote %s", p)
    return EXIT_OK


COMMANDS = {
    "complex": cmd_complex,
    "morse": cmd_morse,
    "betti": cmd_betti,
    "volume": cmd_volume,
    "abel": cmd_abel,
    "verify": cmd_verify,
    "export": cmd_export,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, required=True)
    common.add_argument("--out", type=Path, default=None)
    common.add_argument("--threads", type=int, default=None, help="worker pool width (default: $CYCLOTOPE_THREADS or 1)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("-v", "--verbose", action="count", default=0)

    p = argparse.ArgumentParser(prog="cyclotope", description="Cyclopermutohedron volume and homology checks.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("complex", parents=[common], help="build CP_{n+1} and export it")
    s.add_argument("--export", choices=["json", "dot", "csv"], default="json")

    s = sub.add_parser("morse", parents=[common], help="the discrete Morse function")
    s.add_argument("--report", choices=["critical", "matching", "boundary"], default="critical")
    s.add_argument("--format", dest="fmt", choices=["csv", "json", "jsonl"], default="csv")
    s.add_argument("--check", choices=["acyclic"], default=None)

    s = sub.add_parser("betti", parents=[common], help="integer homology")
    s.add_argument("--method", choices=["morse", "order-complex", "both"], default="both")
    s.add_argument("--format", dest="fmt", choices=["csv", "json", "jsonl"], default="json")

    s = sub.add_parser("volume", parents=[common], help="volume coefficient of 1/sqrt(n)")
    s.add_argument("--route", choices=["det", "forest", "both"], default="both")
    s.add_argument("--format", dest="fmt", choices=["json", "jsonl"], default="json")

    sub.add_parser("abel", parents=[common], help="Abel polynomial identities")

    s = sub.add_parser("verify", parents=[common], help="run every check for one n")
    s.add_argument("--long", action="store_true", help="include long-running checks")

    sub.add_parser("export", parents=[common], help="write all artifacts into --out DIR")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), format="%(levelname)s %(message)s")
    try:
        cfg = RunConfig(
            command=args.command,
            n=args.n,
            method=getattr(args, "method", "both"),
            route=getattr(args, "route", "both"),
            export=getattr(args, "export", "json"),
            report=getattr(args, "report", "critical"),
            fmt=getattr(args, "fmt", "json"),
            out=args.out,
            verbose=args.verbose,
            threads=_threads(args.threads),
            seed=args.seed,
            long=getattr(args, "long", False),
            check=getattr(args, "check", None),
        )
        return COMMANDS[args.command](cfg)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"cyclotope: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"cyclotope: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
