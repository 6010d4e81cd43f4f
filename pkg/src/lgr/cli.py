"""lgr command line: gen, circuit, route, verify, bench.

Exit codes: 0 ok, 1 usage or input error, 2 coupling graph is not a line
graph, 3 verification failed.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from .circuit_ir import Circuit, CircuitError, heis_circuit, random_circuit
from .graph_core import Graph, GraphError, NotALineGraph, colored, edge_coloring
from .lattices import PatchSpec, parse_size
from .qasm_io import QasmError, read_circuit, write_circuit
from .router import RoutingResult, Side, heavy_labeling, line_graph_route, naive_route
from .sim_verify import verify_equivalence

EXIT_OK, EXIT_ERR, EXIT_NOT_LINE, EXIT_VERIFY = 0, 1, 2, 3

COLUMNS = ["method", "av. n_swaps", "min. n_swap", "av. depth", "min. depth", "av. n_qubits",
           "min. qubits", "total time", "av. time", "min. time", "time ci"]
TIMING = {"total time", "av. time", "min. time", "time ci"}
DETERMINISTIC = {"line-graph", "naive"}


def bootstrap_ci(samples, resamples: int = 10000, seed: int = 0) -> float | None:
    """Symmetrised 95% percentile-bootstrap half-width of the mean; None for one sample."""
    x = np.asarray(samples, dtype=float)
    if x.size < 2:
        return None
    if np.all(x == x[0]):
        return 0.0
    rng = np.random.Generator(np.random.PCG64(seed))
    means = x[rng.integers(0, x.size, size=(resamples, x.size))].mean(axis=1)
    lo, hi = np.percentile(means, [2.5, 97.5])
    return float(hi - lo) / 2


@dataclass
class BenchConfig:
    family: str = "kagome"
    size: str = "1x1"
    circuit_type: str = "quantum_simulation"
    p: int = 1
    repetitions: int = 1
    seed: int = 0
    methods: list[str] = field(default_factory=lambda: ["line-graph"])
    out: str | None = None
    side: str = "first"
    lone_leaf: bool = True
    timing: bool = True
    jobs: int = 1


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as f:
        return f.read()


def _write(path: str | None, text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        return
    with open(path, "w") as f:
        f.write(text)


def _bindings(items) -> dict:
    out = {}
    for it in items or []:
        k, v = it.split("=", 1)
        out[k] = float(v)
    return out


def build_graph(family: str, size: str, seed: int) -> Graph:
    return PatchSpec(family, parse_size(size), seed).build()


def build_circuit(g: Graph, ctype: str, p: int, seed: int, alpha: float | None = None) -> Circuit:
    if ctype in ("quantum_simulation", "heis"):
        ec = edge_coloring(g, require_perfect=True)
        return heis_circuit(colored(g, ec), p, alpha)
    if ctype == "random":
        return random_circuit(g, p, seed)
    raise ValueError(f"unknown circuit type {ctype}")


# ---------------------------------------------------------------- subcommands

def cmd_gen(a) -> int:
    g = build_graph(a.family, a.size, a.seed)
    _write(a.out, g.dumps())
    return EXIT_OK


def cmd_circuit(a) -> int:
    g = Graph.parse(_read(a.graph))
    c = build_circuit(g, a.type, a.p, a.seed, a.alpha)
    fmt = "qasm" if (a.out or "").endswith(".qasm") or a.format == "qasm" else "json"
    _write(a.out, write_circuit(c, fmt))
    return EXIT_OK


def cmd_route(a) -> int:
    c = read_circuit(_read(a.input), _bindings(a.bind), symbolic=True)
    if a.method == "naive":
        if not a.target:
            raise ValueError("naive routing needs --target")
        r = naive_route(c, Graph.parse(_read(a.target)))
    else:
        virtual = Graph.parse(_read(a.virtual)) if a.virtual else None
        r = line_graph_route(c, Side(a.side), lone_leaf=not a.no_lone_leaf,
                             elide_boundary=a.elide_boundary, virtual=virtual)
    _write(a.out, json.dumps(r.to_json()))
    m = r.metrics
    print(f"n_swap={m.n_swap} depth={m.opt_depth} n_qubit={m.n_qubit} wall_time={m.wall_time:.2f}s",
          file=sys.stderr)
    return EXIT_OK


def cmd_verify(a) -> int:
    c = read_circuit(_read(a.original), _bindings(a.bind), symbolic=True)
    r = RoutingResult.from_json(json.loads(_read(a.routed)))
    rep = verify_equivalence(c, r, a.trials, a.seed)
    _write(a.out, json.dumps(rep.to_json()))
    if not rep.passed:
        print(f"verification failed: min fidelity {rep.min_fidelity:.3e}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def _run_method(method: str, c: Circuit, g: Graph, cfg: BenchConfig):
    if method == "line-graph":
        return line_graph_route(c, Side(cfg.side), lone_leaf=cfg.lone_leaf, virtual=g)
    if method == "naive":
        return naive_route(c, heavy_labeling(c, cfg.lone_leaf, g).heavy_graph)
    raise ValueError(f"unknown method {method}")


def run_bench(cfg: BenchConfig) -> list[dict]:
    g = build_graph(cfg.family, cfg.size, cfg.seed)
    c = build_circuit(g, cfg.circuit_type, cfg.p, cfg.seed)
    rows = []
    for method in cfg.methods:
        reps = 1 if method in DETERMINISTIC else cfg.repetitions
        if reps != cfg.repetitions:
            print(f"{method} is deterministic, running once", file=sys.stderr)
        res = [_run_method(method, c, g, cfg) for _ in range(reps)]
        sw = [r.metrics.n_swap for r in res]
        dp = [r.metrics.opt_depth for r in res]
        nq = [r.metrics.n_qubit for r in res]
        tm = [r.metrics.wall_time for r in res]
        if max(sw) > 2 * c.lam:
            print(f"warning: {method} exceeds 2*lambda ({max(sw)} > {2 * c.lam})", file=sys.stderr)
        rows.append({"method": method, "av. n_swaps": float(np.mean(sw)), "min. n_swap": min(sw),
                     "av. depth": float(np.mean(dp)), "min. depth": min(dp),
                     "av. n_qubits": float(np.mean(nq)), "min. qubits": min(nq),
                     "total time": sum(tm), "av. time": float(np.mean(tm)), "min. time": min(tm),
                     "time ci": bootstrap_ci(tm, seed=cfg.seed), "lambda": c.lam})
    return rows


def _cell(v) -> str:
    if v is None:
        return "nan"
    if isinstance(v, float):
        return f"{v:.1f}" if v == int(v) else f"{v:.2f}"
    return str(v)


def format_rows(rows: list[dict], timing: bool = True) -> tuple[str, str]:
    cols = [c for c in COLUMNS if timing or c not in TIMING]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for r in rows:
        w.writerow([_cell(r[c]) for c in cols])
    table = [cols] + [[_cell(r[c]) for c in cols] for r in rows]
    widths = [max(len(row[i]) for row in table) for i in range(len(cols))]
    text = "\n".join("  ".join(s.rjust(wd) for s, wd in zip(row, widths)) for row in table)
    return text, buf.getvalue()


def cmd_bench(a) -> int:
    cfg = BenchConfig()
    if a.config:
        with open(a.config) as f:
            for k, v in json.load(f).items():
                setattr(cfg, k, v)
    flags = {"family": a.family, "size": a.size, "circuit_type": a.type, "p": a.p,
             "repetitions": a.repetitions, "seed": a.seed, "out": a.out, "side": a.side,
             "jobs": a.jobs}
    for k, v in flags.items():
        if v is not None:
            setattr(cfg, k, v)
    if a.methods:
        cfg.methods = [m.strip() for m in a.methods.split(",")]
    if a.no_lone_leaf:
        cfg.lone_leaf = False
    if a.no_timing:
        cfg.timing = False
    rows = run_bench(cfg)
    text, csv_text = format_rows(rows, cfg.timing)
    print(text)
    if cfg.out:
        _write(cfg.out, csv_text)
    return EXIT_OK


# ---------------------------------------------------------------- entry point

def _parser() -> argparse.ArgumentParser:
    default_seed = int(os.environ.get("LGR_SEED", "0"))
    ap = argparse.ArgumentParser(prog="lgr", description="line-graph qubit routing")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("gen", help="generate a lattice patch")
    p.add_argument("--family", required=True)
    p.add_argument("--size", required=True)
    p.add_argument("--seed", type=int, default=default_seed)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("circuit", help="build a circuit on a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--type", default="quantum_simulation", choices=["quantum_simulation", "random"])
    p.add_argument("--p", type=int, default=1, help="cycles, or gate count for random circuits")
    p.add_argument("--seed", type=int, default=default_seed)
    p.add_argument("--alpha", type=float, help="fixed HEIS angle instead of free parameters")
    p.add_argument("--format", choices=["json", "qasm"], default="json")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_circuit)

    p = sub.add_parser("route", help="route a circuit")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--side", choices=["first", "second"], default="first")
    p.add_argument("--no-lone-leaf", action="store_true")
    p.add_argument("--elide-boundary", action="store_true")
    p.add_argument("--method", choices=["line-graph", "naive"], default="line-graph")
    p.add_argument("--target", help="target graph for naive routing")
    p.add_argument("--virtual", help="line graph containing every gate pair, recognised instead of the coupling graph")
    p.add_argument("--bind", action="append", metavar="NAME=VALUE")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_route)

    p = sub.add_parser("verify", help="check a routed circuit against its source")
    p.add_argument("--original", required=True)
    p.add_argument("--routed", required=True)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=default_seed)
    p.add_argument("--bind", action="append", metavar="NAME=VALUE")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("bench", help="benchmark routing methods")
    p.add_argument("--config")
    p.add_argument("--family")
    p.add_argument("--size")
    p.add_argument("--type", choices=["quantum_simulation", "random"])
    p.add_argument("--p", type=int)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--side", choices=["first", "second"])
    p.add_argument("--no-lone-leaf", action="store_true")
    p.add_argument("--methods")
    p.add_argument("--repetitions", type=int)
    p.add_argument("--jobs", type=int)
    p.add_argument("--out")
    p.add_argument("--no-timing", action="store_true")
    p.set_defaults(fn=cmd_bench)
    return ap


def main(argv: list[str] | None = None) -> int:
    a = _parser().parse_args(argv)
    if a.cmd == "bench" and a.seed is None and "LGR_SEED" in os.environ:
        a.seed = int(os.environ["LGR_SEED"])
    try:
        return a.fn(a)
    except NotALineGraph as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NOT_LINE
    except (GraphError, CircuitError, QasmError, ValueError, OSError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERR


if __name__ == "__main__":
    sys.exit(main())
