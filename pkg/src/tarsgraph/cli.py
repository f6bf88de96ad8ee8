"""Command-line front end: ``tarsgraph <subcommand> ...``.

Exit codes: 0 success, 1 a non-pancyclic graph or failed verification,
2 inconclusive (budget exhausted or construction defect), 3 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

from .constructions import ConstructionError, SearchVerdictError, construct_certificate
from .domination import domination_number, enumerate_dominating_sets
from .graph import Graph, GraphError, format_set, parse_edge_list, parse_graph6, to_graph6
from .gray import (
    HypercubeError,
    bipan_cycle_with_edge,
    brgc_cycle,
    brgc_table,
    format_word,
    hamiltonian_path_between_adjacent,
)
from .recon import MODES, ReconGraph, build_recon_graph, component_count, to_dot
from .search import (
    PancyclicCertificate,
    check_pancyclic,
    default_budget,
    find_hamilton_cycle,
    searched_certificate,
    validate_certificate,
)

OK, NEGATIVE, INCONCLUSIVE, USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    input: str = "-"
    fmt: str = "auto"
    mode: str = "TARS"
    budget: Optional[int] = None
    threads: int = 1
    output: Optional[str] = None
    dot: bool = False
    json: bool = False
    trace: bool = False
    deterministic: bool = False

    def __post_init__(self):
        if self.deterministic:
            self.threads = 1
        if self.mode not in MODES:
            raise UsageError(f"unknown mode {self.mode!r}")
        if self.threads < 1:
            raise UsageError("--threads must be at least 1")


# input ---------------------------------------------------------------------


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _looks_like_graph6(text: str) -> bool:
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        return line.startswith(">>graph6<<") or len(line.split()) == 1
    return False


def read_graphs(cfg: RunConfig) -> list[Graph]:
    text = _read(cfg.input)
    fmt = cfg.fmt
    if fmt == "auto":
        fmt = "graph6" if _looks_like_graph6(text) else "edgelist"
    if fmt == "edgelist":
        return [parse_edge_list(text)]
    graphs = [parse_graph6(line) for line in text.splitlines() if line.strip() and not line.startswith("#")]
    if not graphs:
        raise GraphError("no graph in input")
    return graphs


def read_one(cfg: RunConfig) -> Graph:
    graphs = read_graphs(cfg)
    if len(graphs) != 1:
        raise UsageError(f"expected one graph, got {len(graphs)}")
    return graphs[0]


def _write(cfg: RunConfig, text: str) -> None:
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _verdict_code(verdict: str) -> int:
    """``defect`` (a construction bug) counts as inconclusive, not as a negative result."""
    if verdict == "pancyclic":
        return OK
    if verdict.startswith("fails-at"):
        return NEGATIVE
    return INCONCLUSIVE


def _gamma_view(r: ReconGraph) -> ReconGraph:
    """The reconfiguration graph restricted to minimum dominating sets."""
    from .domination import DominatingFamily

    gamma = domination_number(r.seed)
    keep = [i for i, s in enumerate(r.family) if s.bit_count() == gamma]
    pos = {old: new for new, old in enumerate(keep)}

    def squeeze(rows):
        out = []
        for i in keep:
            row = 0
            for j in keep:
                if rows[i] >> j & 1:
                    row |= 1 << pos[j]
            out.append(row)
        return tuple(out)

    fam = DominatingFamily(r.seed, tuple(r.family[i] for i in keep))
    return ReconGraph(r.seed, fam, squeeze(r.tar_adj), squeeze(r.ts_adj), r.mode)


# subcommands ----------------------------------------------------------------


def cmd_enumerate(cfg: RunConfig, args) -> int:
    g = read_one(cfg)
    fam = enumerate_dominating_sets(g)
    sets = list(fam)
    if args.gamma:
        gamma = domination_number(g)
        sets = [s for s in sets if s.bit_count() == gamma]
    lines = [format_set(s) for s in sets]
    odd = "yes" if len(sets) % 2 else "no"
    _write(cfg, "\n".join(lines + [f"count: {len(sets)} (odd: {odd})"]) + "\n")
    return OK


def cmd_build(cfg: RunConfig, args) -> int:
    g = read_one(cfg)
    r = build_recon_graph(g, cfg.mode)
    if args.gamma:
        r = _gamma_view(r)
    tar, ts = r.edge_counts()
    comps = component_count(r)
    if cfg.dot:
        _write(cfg, to_dot(r))
        return OK
    if cfg.json:
        data = {"N": r.order, "tar": tar, "ts": ts, "components": comps, "mode": cfg.mode,
                "sets": [format_set(s) for s in r.family]}
        if args.edges:
            data["edges"] = [[i, j, k] for i, j, k in r.edges()]
        _write(cfg, json.dumps(data) + "\n")
        return OK
    lines = [f"N={r.order} tar={tar} ts={ts} components={comps}"]
    if args.edges:
        lines += [f"{i} {j} {k}" for i, j, k in r.edges()]
    _write(cfg, "\n".join(lines) + "\n")
    return OK


def _parse_word(text: str, n: int) -> int:
    w = int(text, 2)
    if len(text) != n or w >> n:
        raise UsageError(f"word {text!r} is not an {n}-bit binary string")
    return w


def cmd_graycode(cfg: RunConfig, args) -> int:
    if args.list:
        _write(cfg, "".join(format_word(w, args.n) + "\n" for w in brgc_cycle(args.n)))
    else:
        _write(cfg, brgc_table(args.n, args.rows))
    return OK


def cmd_bipan(cfg: RunConfig, args) -> int:
    a, b = _parse_word(args.a, args.n), _parse_word(args.b, args.n)
    if args.length is None:
        words = hamiltonian_path_between_adjacent(args.n, a, b)
    else:
        words = bipan_cycle_with_edge(args.n, a, b, args.length)
    _write(cfg, "".join(format_word(w, args.n) + "\n" for w in words))
    return OK


def _construct_one(g: Graph, cfg: RunConfig) -> tuple[Optional[PancyclicCertificate], str, str]:
    """Returns (certificate or None, verdict, message); verdict ``defect`` marks a construction bug."""
    try:
        if cfg.mode == "TARS":
            cert = construct_certificate(g, cfg.budget)
        else:
            rep, cert = searched_certificate(g, cfg.budget, cfg.mode)
            if cert is None:
                return None, rep.verdict, f"search verdict {rep.verdict}"
    except SearchVerdictError as exc:
        return None, exc.report.verdict, str(exc)
    except ConstructionError as exc:
        return None, "defect", f"construction defect: {exc}"
    bad = validate_certificate(build_recon_graph(g, cert.mode), cert)
    if bad is not None:
        return None, "defect", f"construction defect: {bad}"
    return cert, "pancyclic", cert.strategy


def cmd_construct(cfg: RunConfig, args) -> int:
    graphs = read_graphs(cfg)
    out, worst = [], OK
    for g in graphs:
        cert, verdict, msg = _construct_one(g, cfg)
        if cert is None:
            print(f"{to_graph6(g)}: {msg}", file=sys.stderr)
            worst = max(worst, _verdict_code(verdict))
            continue
        out.append(cert.dumps())
        if cfg.trace:
            print(f"# {to_graph6(g)} strategy={cert.strategy}", file=sys.stderr)
            for line in cert.trace:
                print(f"#   {line}", file=sys.stderr)
    if out:
        _write(cfg, "\n".join(out) + "\n")
    return worst


def cmd_check(cfg: RunConfig, args) -> int:
    g = read_one(cfg)
    r = build_recon_graph(g, cfg.mode)
    if r.order < 3:
        print(f"N={r.order}: no cycles possible")
        return OK
    if args.hamilton_only:
        res = find_hamilton_cycle(r, cfg.budget)
        if cfg.json:
            print(json.dumps({"N": r.order, "status": res.status, "expansions": res.expansions,
                              "cycle": list(res.cycle) if res.cycle else None}))
        else:
            print(f"N={r.order} hamilton: {res.status} (expansions={res.expansions})")
            if res.cycle:
                print(" ".join(map(str, res.cycle)))
        return {"found": OK, "absent": NEGATIVE}.get(res.status, INCONCLUSIVE)
    rep = check_pancyclic(r, cfg.budget)
    if cfg.json:
        print(json.dumps({"N": rep.N, "mode": cfg.mode, "verdict": rep.verdict,
                          "status": {str(k): v for k, v in rep.status.items()},
                          "expansions": {str(k): v for k, v in rep.expansions.items()}}))
    else:
        print("length status expansions")
        for k in sorted(rep.status):
            print(f"{k} {rep.status[k]} {rep.expansions[k]}")
        print(f"verdict: {rep.verdict}")
    return _verdict_code(rep.verdict)


def cmd_verify(cfg: RunConfig, args) -> int:
    try:
        with open(args.certificate) as fh:
            text = fh.read()
        certs = [PancyclicCertificate.loads(line) for line in text.splitlines() if line.strip()]
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read certificate: {exc}") from None
    if not certs:
        raise UsageError("certificate file is empty")
    against = read_one(cfg) if args.graph else None
    code = OK
    for k, cert in enumerate(certs):
        seed = against if against is not None else cert.seed
        bad = validate_certificate(build_recon_graph(seed, cert.mode), cert)
        label = f"[{k}] " if len(certs) > 1 else ""
        if bad is None:
            print(f"{label}ok N={cert.N} lengths=3..{cert.N}")
        else:
            print(f"{label}violation: {bad}")
            code = NEGATIVE
    return code


def survey_row(line: str, mode: str, budget: Optional[int], search_only: bool) -> dict:
    t0 = time.perf_counter()
    try:
        g = parse_graph6(line)
        n = len(enumerate_dominating_sets(g))
    except GraphError as exc:
        return {"input": line, "error": str(exc)}
    if search_only or mode != "TARS":
        rep, _ = searched_certificate(g, budget, mode)
        verdict = rep.verdict
        strategy = "searched" if n >= 3 else "trivial"
    else:
        cert, verdict, _ = _construct_one(g, RunConfig(mode=mode, budget=budget))
        strategy = cert.strategy if cert is not None else "defect" if verdict == "defect" else "searched"
    return {"input": line, "order": g.order, "N": n, "strategy": strategy, "verdict": verdict,
            "seconds": time.perf_counter() - t0}


def _survey_job(job):
    return survey_row(*job)


def cmd_survey(cfg: RunConfig, args) -> int:
    lines = [ln.strip() for ln in _read(cfg.input).splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#") and not ln.startswith(">>")]
    jobs = [(ln, cfg.mode, cfg.budget, args.search_only) for ln in lines]
    if cfg.threads > 1:
        with ProcessPoolExecutor(max_workers=cfg.threads) as pool:
            rows = list(pool.map(_survey_job, jobs, chunksize=4))
    else:
        rows = [_survey_job(j) for j in jobs]
    out = ["graph6 order N strategy verdict seconds"]
    tally = {"pancyclic": 0, "fails": 0, "inconclusive": 0, "errors": 0}
    for row in rows:
        if "error" in row:
            tally["errors"] += 1
            out.append(f"{row['input']} - - - parse-error -")
            print(f"{row['input']}: {row['error']}", file=sys.stderr)
            continue
        v = row["verdict"]
        key = {OK: "pancyclic", NEGATIVE: "fails"}.get(_verdict_code(v), "inconclusive")
        tally[key] += 1
        secs = "-" if cfg.deterministic else f"{row['seconds']:.3f}"
        out.append(f"{row['input']} {row['order']} {row['N']} {row['strategy']} {v} {secs}")
    out.append(f"total={len(rows)} " + " ".join(f"{k}={v}" for k, v in tally.items()))
    _write(cfg, "\n".join(out) + "\n")
    if tally["fails"]:
        return NEGATIVE
    if tally["inconclusive"]:
        return INCONCLUSIVE
    return USAGE if tally["errors"] else OK


# argument parsing ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=["auto", "edgelist", "graph6"], default="auto")
    common.add_argument("--mode", choices=MODES, default="TARS")
    common.add_argument("--budget", type=int, default=None,
                        help="node expansions per length (default $TARS_RECON_BUDGET or 1e8)")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--deterministic", action="store_true",
                        help="single worker, no timings in output")
    common.add_argument("--json", action="store_true")
    common.add_argument("--trace", action="store_true", help="print the construction path to stderr")
    common.add_argument("-o", "--output")
    common.add_argument("-v", "--verbose", action="store_true")

    p = _Parser(prog="tarsgraph", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_input(name, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("input", nargs="?", default="-", help="graph file, '-' for stdin")
        return sp

    sp = with_input("enumerate", "list the dominating sets")
    sp.add_argument("--gamma", action="store_true", help="minimum dominating sets only")
    sp = with_input("build", "summarise the reconfiguration graph")
    sp.add_argument("--edges", action="store_true", help="list edges as 'i j TAR|TS'")
    sp.add_argument("--dot", action="store_true", help="Graphviz output")
    sp.add_argument("--gamma", action="store_true", help="restrict to minimum dominating sets")

    sp = sub.add_parser("graycode", parents=[common], help="binary-reflected Gray code")
    sp.add_argument("n", type=int)
    sp.add_argument("--rows", type=int, default=8)
    sp.add_argument("--list", action="store_true", help="one word per line")
    sp = sub.add_parser("bipan", parents=[common], help="hypercube cycle through an edge")
    sp.add_argument("n", type=int)
    sp.add_argument("a")
    sp.add_argument("b")
    sp.add_argument("length", type=int, nargs="?", help="cycle length; omit for a Hamilton path a..b")

    with_input("construct", "build a certificate from the graph's structure")
    sp = with_input("check", "pancyclicity by search alone")
    sp.add_argument("--hamilton-only", action="store_true")
    sp = sub.add_parser("verify", parents=[common], help="validate a certificate file")
    sp.add_argument("certificate")
    sp.add_argument("--graph", help="validate against this graph instead of the embedded seed")
    sp = with_input("survey", "verdict for every graph in a graph6 stream")
    sp.add_argument("--search-only", action="store_true", help="skip constructions")
    return p


COMMANDS = {
    "enumerate": cmd_enumerate,
    "build": cmd_build,
    "graycode": cmd_graycode,
    "bipan": cmd_bipan,
    "construct": cmd_construct,
    "check": cmd_check,
    "verify": cmd_verify,
    "survey": cmd_survey,
}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # argparse already printed the message
        return exc.code
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        budget = args.budget if args.budget is not None else default_budget()
        cfg = RunConfig(input=getattr(args, "graph", None) or getattr(args, "input", "-"), fmt=args.fmt,
                        mode=args.mode, budget=budget, threads=args.threads, output=args.output,
                        dot=getattr(args, "dot", False), json=args.json, trace=args.trace,
                        deterministic=args.deterministic)
        return COMMANDS[args.command](cfg, args)
    except (UsageError, GraphError, HypercubeError, OSError) as exc:
        print(f"tarsgraph: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
