"""Command-line interface: ``qalcove {chain,enumerate,graph,verify,report}``.

Exit codes: 0 success, 1 a verification counterexample, 2 usage error,
3 a resource bound was hit.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from . import alcove_model as am
from . import fillmap_bridge as fb
from . import qbg
from . import tableaux as tb
from .root_core import ResourceLimitError, RootSystem, letter_str

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    kind: str
    n: int
    lam: tuple[int, ...]
    command: str
    fmt: Optional[str]
    max_group_order: int
    max_chain_length: int
    max_vertices: int
    workers: int
    output: Optional[str]
    overline: bool

    @property
    def rs(self) -> RootSystem:
        return RootSystem(self.kind, self.n)


def _parse_lambda(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad partition {text!r}; expected e.g. 3,2,0")


def _parse_subset(text: str) -> tuple[int, ...]:
    text = text.strip().strip("{}")
    try:
        return tuple(sorted(int(x) for x in text.split(",") if x.strip()))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad subset {text!r}; expected e.g. 1,2,3,5")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", dest="kind", choices=["A", "C"], required=True)
    common.add_argument("--n", type=int, required=True,
                        help="type A: permutations of 1..n; type C: rank n")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--max-group-order", type=int, default=qbg.DEFAULT_MAX_GROUP_ORDER)
    common.add_argument("--max-chain-length", type=int, default=am.DEFAULT_MAX_CHAIN_LENGTH)
    common.add_argument("--max-vertices", type=int, default=tb.DEFAULT_MAX_VERTICES)
    common.add_argument("--output", "-o", help="write to this file instead of stdout")
    common.add_argument("--overline", action="store_true",
                        help="render barred letters with overlines instead of minus signs")
    with_lam = argparse.ArgumentParser(add_help=False)
    with_lam.add_argument("--lambda", dest="lam", type=_parse_lambda, required=True,
                          help="partition, comma separated, e.g. 3,2,0")

    parser = argparse.ArgumentParser(prog="qalcove", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("chain", parents=[common, with_lam], help="print the lambda-chain")
    p.add_argument("--format", dest="fmt", choices=["table", "json"], default="table")

    p = sub.add_parser("enumerate", parents=[common, with_lam],
                       help="stream admissible subsets as NDJSON")
    p.add_argument("--format", dest="fmt", choices=["ndjson", "table"], default="ndjson")

    p = sub.add_parser("graph", parents=[common], help="export a graph")
    p.add_argument("which", choices=["qbg", "alcove", "tensor"])
    p.add_argument("--lambda", dest="lam", type=_parse_lambda, default=())
    p.add_argument("--format", dest="fmt", choices=["json", "dot", "table"], default="json")
    p.add_argument("--energy", action="store_true", help="tensor graph: attach the energy")

    p = sub.add_parser("verify", parents=[common, with_lam],
                       help="run the exhaustive checks; exit 1 on any counterexample")
    p.add_argument("--format", dest="fmt", choices=["json", "table"], default="json")
    p.add_argument("--all-subsets-limit", type=int, default=14,
                   help="check the weight/height lemmas on all subsets when the chain "
                        "has at most this many positions")
    p.add_argument("--skip-qbg", action="store_true")

    p = sub.add_parser("report", parents=[common, with_lam],
                       help="TSV of admissible subsets plus figures")
    p.add_argument("--figures", default="figures", help="directory for the PNG files")
    p.add_argument("--subset", type=_parse_subset, default=None,
                   help="subset whose g-profiles are plotted (default: the largest height)")
    p.set_defaults(fmt="tsv")
    return parser


def _config(args) -> RunConfig:
    if args.workers < 1:
        raise UsageError("--workers must be at least 1")
    return RunConfig(args.kind, args.n, tuple(getattr(args, "lam", ())), args.command, args.fmt,
                     args.max_group_order, args.max_chain_length, args.max_vertices,
                     args.workers, args.output, args.overline)


def _cols(b, overline=False) -> str:
    return " (x) ".join("/".join(letter_str(x, overline) for x in col) for col in b)


def _num(x):
    return x if isinstance(x, int) else str(x)


# -- commands --------------------------------------------------------------------


def cmd_chain(cfg: RunConfig) -> tuple[str, int]:
    chain = am.lambda_chain(cfg.rs, cfg.lam)
    if cfg.fmt == "json":
        doc = {"type": cfg.kind, "n": cfg.n, "lambda": list(chain.lam),
               "roots": [b.label() for b in chain.roots], "levels": list(chain.levels),
               "colevels": list(chain.colevels), "segments": [list(s) for s in chain.segments]}
        return json.dumps(doc, indent=1, sort_keys=True) + "\n", EXIT_OK
    lines = ["k\troot\tlevel\tcolevel\tsegment"]
    for k, beta, l, lt, q in chain.rows():
        lines.append(f"{k}\t{beta.label()}\t{l}\t{lt}\t{q}")
    return "\n".join(lines) + "\n", EXIT_OK


def _subset_record(chain, J, overline=False) -> dict:
    F = am.fold(chain, J)
    rec = F.to_dict()
    rec["fill"] = [list(c) for c in fb.fill(chain, J).columns]
    rec["sfill"] = [list(c) for c in fb.sfill(chain, J)]
    if chain.rs.kind == "C":
        rec["sfill_doubled"] = [list(c) for c in fb.sfill_columns(chain, J)]
    rec["label"] = _cols(fb.sfill(chain, J), overline)
    return rec


def cmd_enumerate(cfg: RunConfig) -> tuple[str, int]:
    chain = am.lambda_chain(cfg.rs, cfg.lam)
    subsets = am.enumerate_admissible(chain, workers=cfg.workers,
                                      max_chain_length=cfg.max_chain_length)
    out = []
    if cfg.fmt == "table":
        out.append("J\tmu\theight\tsfill")
    for J in subsets:
        rec = _subset_record(chain, J, cfg.overline)
        if cfg.fmt == "table":
            out.append("{%s}\t(%s)\t%d\t%s" % (",".join(map(str, J)),
                                              ",".join(map(str, rec["mu"])),
                                              rec["height"], rec["label"]))
        else:
            out.append(json.dumps(rec, sort_keys=True, ensure_ascii=not cfg.overline))
    return "\n".join(out) + "\n", EXIT_OK


def _table_graph(vertices: Sequence[str], edges) -> str:
    lines = ["from\tto\tlabel"]
    lines += [f"{vertices[s]}\t{vertices[t]}\t{lab}" for s, t, lab in edges]
    return "\n".join(lines) + "\n"


def cmd_graph(cfg: RunConfig, which: str, with_energy: bool = False) -> tuple[str, int]:
    rs = cfg.rs
    if which == "qbg":
        g = qbg.build_graph(rs, cfg.max_group_order, cfg.workers)
        if cfg.fmt == "dot":
            return g.to_dot(cfg.overline), EXIT_OK
        if cfg.fmt == "table":
            names = [v.label(cfg.overline) for v in g.vertices]
            return _table_graph(names, [(s, t, f"{b.label()} {k.value}")
                                        for s, t, b, k in g.edges()]), EXIT_OK
        return g.to_json(cfg.overline) + "\n", EXIT_OK
    if not cfg.lam:
        raise UsageError(f"graph {which} needs --lambda")
    if which == "alcove":
        chain = am.lambda_chain(rs, cfg.lam)
        g = am.alcove_crystal(chain, cfg.workers, cfg.max_chain_length)
        if cfg.fmt == "dot":
            return g.to_dot(), EXIT_OK
        if cfg.fmt == "table":
            names = ["{" + ",".join(map(str, J)) + "}" for J in g.vertices]
            return _table_graph(names, [(s, t, str(p)) for s, t, p in g.edges]), EXIT_OK
        return g.to_json() + "\n", EXIT_OK
    am.check_partition(rs, cfg.lam)
    g = tb.build_tensor_crystal(rs, cfg.lam, cfg.max_vertices)
    status = EXIT_OK
    if with_energy:
        res = tb.energy(g)
        status = EXIT_FAIL if res.conflicts else EXIT_OK
    if cfg.fmt == "dot":
        return g.to_dot(cfg.overline), status
    if cfg.fmt == "table":
        names = [g.label(b, cfg.overline) for b in g.vertices]
        return _table_graph(names, [(e.source, e.target, f"{e.i} dual_demazure={e.dual_demazure}")
                                    for e in g.edges]), status
    return g.to_json(cfg.overline) + "\n", status


def _subset_lemma_checks(chain, limit: int) -> tuple[str, list, list]:
    if chain.m <= limit:
        scope = "all"
        subsets = (J for r in range(chain.m + 1)
                   for J in itertools.combinations(range(1, chain.m + 1), r))
    else:
        scope = "admissible"
        subsets = iter(am.enumerate_admissible(chain))
    weight_bad, height_bad = [], []
    for J in subsets:
        if not fb.verify_weight_lemma(chain, J):
            weight_bad.append({"J": list(J), "mu": am._jsonable(am.fold(chain, J).mu),
                               "content": am._jsonable(fb.content(chain.rs,
                                                                  fb.fill(chain, J).columns))})
        height_bad.extend(fb.height_counting_failures(chain, J))
    return scope, weight_bad, height_bad


def verify_report(cfg: RunConfig, all_subsets_limit: int = 14, skip_qbg: bool = False) -> dict:
    rs = cfg.rs
    report = fb.verify_isomorphism(rs, cfg.lam, workers=cfg.workers,
                                   max_chain_length=cfg.max_chain_length,
                                   max_vertices=cfg.max_vertices)
    chain = am.lambda_chain(rs, cfg.lam)
    extra: dict[str, list] = {}
    scope, wb, hb = _subset_lemma_checks(chain, all_subsets_limit)
    report["counts"]["lemma_subset_scope"] = scope
    extra["weight_lemma"] = wb
    extra["height_counting"] = hb
    if not skip_qbg:
        if rs.group_order() > cfg.max_group_order:
            raise ResourceLimitError(
                f"group of order {rs.group_order()} exceeds bound {cfg.max_group_order}")
        extra["qbg_fast_predicates"] = qbg.check_fast_predicates(rs)
        extra["qbg_theta_lemma"] = qbg.check_lemma_theta(rs)
        extra["qbg_diamonds"] = qbg.check_diamond_lemmas(rs)
    for name, bad in extra.items():
        report["checks"].append({"name": name, "pass": not bad,
                                 "counterexamples": sorted(bad, key=lambda d: json.dumps(d, sort_keys=True))})
    report["checks"].sort(key=lambda c: c["name"])
    report["pass"] = fb.report_passed(report)
    return report


def cmd_verify(cfg: RunConfig, all_subsets_limit: int = 14, skip_qbg: bool = False) -> tuple[str, int]:
    report = verify_report(cfg, all_subsets_limit, skip_qbg)
    status = EXIT_OK if report["pass"] else EXIT_FAIL
    if cfg.fmt == "table":
        lines = [f"type {cfg.kind}{cfg.n} lambda={list(report['lambda'])} "
                 f"admissible={report['counts']['admissible']} "
                 f"tensor={report['counts']['tensor_vertices']}"]
        for c in report["checks"]:
            lines.append(f"{'PASS' if c['pass'] else 'FAIL'}\t{c['name']}\t{len(c['counterexamples'])}")
        return "\n".join(lines) + "\n", status
    return json.dumps(report, indent=1, sort_keys=True) + "\n", status


def cmd_report(cfg: RunConfig, figures: str, subset=None) -> tuple[str, int]:
    from . import plotting

    chain = am.lambda_chain(cfg.rs, cfg.lam)
    subsets = am.enumerate_admissible(chain, workers=cfg.workers,
                                      max_chain_length=cfg.max_chain_length)
    folded = [am.fold(chain, J) for J in subsets]
    lines = ["J\tmu\theight\tJ_minus\tsfill"]
    for F in folded:
        lines.append("{%s}\t(%s)\t%d\t{%s}\t%s" % (
            ",".join(map(str, F.J)), ",".join(str(_num(x)) for x in F.mu), F.height,
            ",".join(map(str, F.j_minus)), _cols(fb.sfill(chain, F.J), cfg.overline)))
    if subset is None:
        # first subset of maximal height, a representative with folds of both signs
        subset = max(folded, key=lambda F: F.height).J
    elif not am.is_admissible(chain, subset):
        raise UsageError(f"subset {set(subset)} is not admissible")
    out = Path(figures)
    out.mkdir(parents=True, exist_ok=True)
    stem = f"{cfg.kind}{cfg.n}_" + "-".join(map(str, chain.lam))
    plotting.plot_profiles(chain, subset, out / f"{stem}_profiles.png")
    plotting.plot_heights(chain, [F.height for F in folded], out / f"{stem}_heights.png")
    return "\n".join(lines) + "\n", EXIT_OK


# -- entry point -----------------------------------------------------------------


def run(argv: Optional[Sequence[str]] = None) -> tuple[str, int, Optional[str]]:
    """Parse argv and execute; returns (text, exit status, output path)."""
    args = build_parser().parse_args(argv)
    cfg = _config(args)
    if cfg.command == "chain":
        text, status = cmd_chain(cfg)
    elif cfg.command == "enumerate":
        text, status = cmd_enumerate(cfg)
    elif cfg.command == "graph":
        text, status = cmd_graph(cfg, args.which, args.energy)
    elif cfg.command == "verify":
        text, status = cmd_verify(cfg, args.all_subsets_limit, args.skip_qbg)
    else:
        text, status = cmd_report(cfg, args.figures, args.subset)
    return text, status, cfg.output


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        text, status, output = run(argv)
    except SystemExit as exc:  # argparse usage errors and --help
        return int(exc.code or 0)
    except ResourceLimitError as exc:
        print(f"qalcove: resource bound: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (UsageError, ValueError) as exc:
        print(f"qalcove: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
