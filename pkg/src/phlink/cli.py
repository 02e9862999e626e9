"""Command-line entry point: ``phlink {pd,features,split,evaluate}``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .graph import Graph, GraphError, induce, load_edge_list
from .persistence import PdConfig, PersistenceError, get_pd
from .ranking import DEFAULT_HITS, METHODS, POOLS, holdout_split, hits_at_n, rank_targets

log = logging.getLogger("phlink")


class CliError(Exception):
    pass


def _csv(kind):
    def parse(text):
        try:
            return [kind(x) for x in text.split(",") if x.strip()]
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad list {text!r}") from None

    return parse


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", required=True, help="edge-list file ('-' for stdin)")
    common.add_argument("--directed", action="store_true")
    common.add_argument("--weighted", action="store_true", help="read a third weight column")
    common.add_argument("--tau", type=float, default=None, help="persistence threshold (default 1.5 x sentinel)")
    common.add_argument("--output", default=None)
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="phlink", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    pd = sub.add_parser("pd", parents=[common], help="persistence diagram of a graph")
    pd.add_argument("--nodes", type=_csv(str), default=None, help="restrict to these node labels")
    pd.add_argument("--format", choices=("text", "json"), default="text")

    ft = sub.add_parser("features", parents=[common], help="eight-distance vector for a pair")
    ft.add_argument("--u", required=True)
    ft.add_argument("--v", required=True)
    ft.add_argument("--k", type=int, default=2)

    for name, helptext in (("split", "write a train/test edge split"), ("evaluate", "Hits@N evaluation")):
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("--test-fraction", type=float, default=0.05)
        sp.add_argument("--seed", type=int, default=0)
        if name == "evaluate":
            sp.add_argument("--methods", type=_csv(str), default=list(METHODS))
            sp.add_argument("--k", type=int, default=2)
            sp.add_argument("--hits", type=_csv(int), default=list(DEFAULT_HITS))
            sp.add_argument("--pool", choices=POOLS, default="all")
            sp.add_argument("--filtered", action="store_true", help="drop train neighbors of the source")
            sp.add_argument("--workers", type=int, default=1)
            sp.add_argument("--no-figure", action="store_true")
    return p


def _load(args) -> Graph:
    try:
        if args.input == "-":
            text = sys.stdin.read()
        else:
            text = Path(args.input).read_bytes()
    except OSError as exc:
        raise CliError(f"cannot read {args.input}: {exc.strerror or exc}") from None
    g = load_edge_list(text, directed=args.directed, weighted=args.weighted)
    log.info("loaded %s: %d nodes, %d edges", args.input, g.n, g.m)
    return g


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text, encoding="utf-8")


def cmd_pd(args) -> None:
    g = _load(args)
    if args.nodes:
        g = induce(g, [g.index(x) for x in args.nodes])
    pd = get_pd(g, PdConfig(tau=args.tau))
    text = pd.to_text() if args.format == "text" else json.dumps(pd.to_json()) + "\n"
    _emit(text, args.output)


def cmd_features(args) -> None:
    from .features import link_feature_vector

    g = _load(args)
    vec = link_feature_vector(g, g.index(args.u), g.index(args.v), args.k, PdConfig(tau=args.tau))
    _emit(json.dumps(vec.to_record()) + "\n", args.output)


def _edge_lines(g: Graph, edges, weighted: bool) -> str:
    out = []
    for i, j in edges:
        w = g.edges[(i, j)]
        out.append(f"{g.labels[i]} {g.labels[j]} {w:.17g}" if weighted else f"{g.labels[i]} {g.labels[j]}")
    return "\n".join(out) + "\n"


def cmd_split(args) -> None:
    g = _load(args)
    split = holdout_split(g, args.test_fraction, args.seed)
    out = Path(args.output or ".")
    out.mkdir(parents=True, exist_ok=True)
    (out / "train.txt").write_text(_edge_lines(g, split.train.edges, args.weighted))
    (out / "test.txt").write_text(_edge_lines(g, split.test_edges, args.weighted))
    log.info("wrote %d train / %d test edges to %s", split.train.m, len(split.test_edges), out)


# Worker state is set once per process so the train graph is pickled once.
_STATE: dict = {}


def _init_worker(train, k, tau, pool, filtered):
    _STATE.clear()
    _STATE.update(train=train, k=k, cfg=PdConfig(tau=tau), pool=pool, filtered=filtered, extractor=None)


def _rank_job(job):
    method, source = job
    st = _STATE
    extractor = None
    if method == "topology":
        if st["extractor"] is None:
            from .features import FeatureExtractor

            st["extractor"] = FeatureExtractor(st["train"], st["k"], st["cfg"])
        extractor = st["extractor"]
    return rank_targets(
        st["train"], source, method, st["k"], st["cfg"], st["pool"], st["filtered"], extractor
    )


def evaluate(g: Graph, methods, *, k=2, tau=None, fraction=0.05, seed=0, hits=DEFAULT_HITS,
             pool="all", filtered=False, workers=1):
    """Run the hold-out protocol; returns ``(split, {method: EvalReport})``."""
    unknown = [m for m in methods if m not in METHODS]
    if unknown or not methods:
        raise CliError(f"unknown method(s) {unknown}; choose from {', '.join(METHODS)}")
    if k < 1:
        raise CliError("--k must be >= 1")
    split = holdout_split(g, fraction, seed)
    sources = sorted({s for s, _ in split.test_edges})
    init = (split.train, k, tau, pool, filtered)
    reports = {}
    for method in methods:
        t0 = time.perf_counter()
        jobs = [(method, s) for s in sources]
        if workers > 1:
            with ProcessPoolExecutor(workers, initializer=_init_worker, initargs=init) as ex:
                ranked = list(ex.map(_rank_job, jobs))
        else:
            _init_worker(*init)
            ranked = [_rank_job(j) for j in jobs]
        rankings = {r.source: r for r in ranked}
        rep = hits_at_n(split, rankings, hits, method=method, pool=pool, m=8 if method == "topology" else 1)
        rep.extra = {"k": k, "filtered": filtered}
        reports[method] = rep
        log.info("%s: %s (%.1fs)", method, rep.hits, time.perf_counter() - t0)
    return split, reports


def cmd_evaluate(args) -> None:
    if args.methods and any(m not in METHODS for m in args.methods):
        raise CliError(f"unknown method(s) in {args.methods}; choose from {', '.join(METHODS)}")
    g = _load(args)
    _, reports = evaluate(
        g, args.methods, k=args.k, tau=args.tau, fraction=args.test_fraction, seed=args.seed,
        hits=args.hits, pool=args.pool, filtered=args.filtered, workers=max(1, args.workers),
    )
    if args.output is None:
        for rep in reports.values():
            sys.stdout.write(json.dumps(rep.to_json()) + "\n")
        return
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    for method, rep in reports.items():
        (out / f"{method}.json").write_text(json.dumps(rep.to_json(), indent=2) + "\n")
    cutoffs = sorted(args.hits)
    rows = ["method\t" + "\t".join(f"hits@{n}" for n in cutoffs) + "\tnum_test"]
    for method, rep in reports.items():
        rows.append(method + "\t" + "\t".join(f"{rep.hits[n]:.6f}" for n in cutoffs) + f"\t{rep.num_test}")
    (out / "hits.tsv").write_text("\n".join(rows) + "\n")
    if not args.no_figure:
        from .plotting import plot_hits

        plot_hits(reports.values(), out / "hits.png", title=Path(args.input).name)


COMMANDS = {"pd": cmd_pd, "features": cmd_features, "split": cmd_split, "evaluate": cmd_evaluate}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        COMMANDS[args.command](args)
    except (CliError, GraphError, PersistenceError, ValueError, KeyError, OSError) as exc:
        print(f"phlink {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
