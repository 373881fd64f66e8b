"""Command-line entry point.

Exit codes: 0 success, 1 a theorem check failed or a sweep found
counterexamples, 2 bad input, 3 the mathematics rejects the input.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path
from typing import Optional

from .cache import ResultCache, cached
from .errors import CritPairError, HypothesisViolation, InputError, NoWitnessFound, ParseError
from .graphs import Digraph, as_vertex_bits, cayley_graph, graph_kappa1, sip2_matching, sipg_matching
from .groups import AbelianGroup, default_order_cap, parse_group, parse_subset
from .isoperimetry import iso_profile
from .lemmas import LEMMA_IDS, check_lemma
from .report import VerificationReport
from .structure import classify_extremal_pair
from .sweep import THEOREMS, SweepConfig, groups_in_range, run_sweep

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_PRECONDITION = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def _orders(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"\s*(\d+)\s*\.\.\s*(\d+)\s*", text)
    if not m:
        raise ParseError(f"order range must look like 2..10, got {text!r}")
    return int(m.group(1)), int(m.group(2))


def _group(args, spec: str) -> AbelianGroup:
    return parse_group(spec, max_order=args.order_cap)


def _cache(args) -> Optional[ResultCache]:
    return ResultCache(args.cache) if args.cache else None


def _emit(data: dict, as_json: bool, text: str) -> None:
    print(json.dumps(data, indent=2, sort_keys=True) if as_json else text)


# -- commands -----------------------------------------------------------------

def cmd_profile(args) -> int:
    G = _group(args, args.group)
    S = parse_subset(G, args.S)

    def compute():
        return iso_profile(S).to_dict(sample=args.sample)

    data, _ = cached(_cache(args), "profile", {"group": G.name, "S": S.literal(),
                                               "sample": args.sample},
                     compute, verify=args.verify_cache)
    lines = [f"{data['group']}  S={data['S']}"]
    for k in (1, 2):
        d = data[f"k{k}"]
        if not d["separable"]:
            lines.append(f"kappa_{k}: not {k}-separable")
            continue
        lines.append(f"kappa_{k} = {d['kappa']}")
        lines.append(f"  {k}-fragments: {d['fragment_count']}  sample: {' '.join(d['fragments_sample'])}")
        lines.append(f"  {k}-atoms: {d['atom_count']}  sample: {' '.join(d['atoms'])}")
    lines.append("hyper-atoms: " + (" ".join(data["hyper_atoms"]) or "none"))
    _emit(data, args.json, "\n".join(lines))
    return EXIT_OK


def cmd_classify(args) -> int:
    G = _group(args, args.group)
    S, T = parse_subset(G, args.S), parse_subset(G, args.T)

    def compute():
        return classify_extremal_pair(S, T).to_dict()

    try:
        data, _ = cached(_cache(args), "classify",
                         {"group": G.name, "S": S.literal(), "T": T.literal()},
                         compute, verify=args.verify_cache)
    except HypothesisViolation as exc:
        _emit({"error": "HypothesisViolation", "clause": exc.clause, "message": str(exc)},
              args.json, f"hypothesis clause failed: {exc.clause}")
        return EXIT_PRECONDITION
    except NoWitnessFound as exc:
        _emit({"error": "NoWitnessFound", "message": str(exc)}, args.json, f"COUNTEREXAMPLE: {exc}")
        return EXIT_FAIL
    certified = all(data["checks"].values())
    text = (f"case {data['case']}  H={data['H']}  (source: {data['witness_source']})\n"
            f"S_empty={data['S_empty']}  T_empty={data['T_empty']}\n"
            f"cases holding: {', '.join(data['cases_holding'])}\n"
            f"reconstructed |S+T| = {data['reconstructed_size']}\n"
            f"certified: {certified}")
    _emit(data, args.json, text)
    return EXIT_OK if certified else EXIT_FAIL


def _sweep_config(args) -> SweepConfig:
    specs = list(args.group or [])
    if args.orders:
        lo, hi = _orders(args.orders)
        specs.extend(G.name for G in groups_in_range(lo, hi, args.order_cap))
    if not specs and THEOREMS.get(args.theorem) and THEOREMS[args.theorem].space == "sets":
        raise InputError("give --group and/or --orders")
    return SweepConfig(args.theorem, tuple(specs), args.workers, args.order_cap,
                       args.automorphisms, args.seed, args.graphs,
                       args.output, args.cache)


def cmd_sweep(args) -> int:
    cfg = _sweep_config(args)
    data, _ = cached(_cache(args), "sweep", cfg.snapshot(),
                     lambda: run_sweep(cfg).to_dict(),
                     verify=args.verify_cache,
                     strip=lambda d: {k: v for k, v in d.items() if k != "elapsed_ms"})
    report = VerificationReport.from_dict(data)
    if cfg.output:
        out = Path(cfg.output)
        out.mkdir(parents=True, exist_ok=True)
        (out / f"{cfg.theorem}.json").write_text(report.to_json() + "\n")
        (out / f"{cfg.theorem}.csv").write_text(report.to_csv())
    if args.json:
        print(report.to_json())
    elif args.csv:
        print(report.to_csv(), end="")
    else:
        print(report.summary())
        for c in report.counterexamples[:10]:
            print(f"  {c['group']}  S={c['S']}  T={c['T']}  {c['detail']}")
    return EXIT_OK if report.ok else EXIT_FAIL


def _read_graph(args) -> Digraph:
    if args.graph:
        text = sys.stdin.read() if args.graph == "-" else Path(args.graph).read_text()
        return Digraph.parse(text)
    if not (args.cayley_group and args.cayley_set):
        raise InputError("give --graph FILE or --cayley GROUP SET")
    G = _group(args, args.cayley_group)
    return cayley_graph(G, parse_subset(G, args.cayley_set))


def _vertices(text: str) -> int:
    body = text.strip()
    if not (body.startswith("{") and body.endswith("}")):
        raise ParseError(f"vertex set must look like {{0,2}}, got {text!r}")
    try:
        return as_vertex_bits(int(v) for v in body[1:-1].split(",") if v.strip())
    except ValueError:
        raise ParseError(f"bad vertex set {text!r}") from None


def cmd_graph_sipg(args) -> int:
    graph = _read_graph(args)
    X = _vertices(args.X)
    k = graph_kappa1(graph)
    if args.x is None:
        pairs = list(sipg_matching(graph, X, k).pairs)
        form = "first"
    else:
        pairs = sip2_matching(graph, X, args.x, k)
        form = "second"
    data = {"vertices": graph.n, "kappa_1": k, "form": form, "pairs": [list(p) for p in pairs]}
    _emit(data, args.json, f"kappa_1 = {k}\n" + "\n".join(f"{c} -> {y}" for c, y in pairs))
    return EXIT_OK


def _instance_value(G: AbelianGroup, key: str, raw: str):
    raw = raw.strip()
    if raw.startswith("{"):
        return parse_subset(G, raw)
    if re.fullmatch(r"-?\d+", raw):
        return int(raw)
    if raw.startswith("("):
        return next(iter(parse_subset(G, "{" + raw + "}")))
    raise ParseError(f"cannot read value of {key!r}: {raw!r}")


def cmd_lemma_check(args) -> int:
    G = _group(args, args.group)
    inst = {"G": G}
    for item in args.values:
        key, sep, raw = item.partition("=")
        if not sep:
            raise ParseError(f"expected NAME=VALUE, got {item!r}")
        inst[key.strip()] = _instance_value(G, key, raw)
    r = check_lemma(args.lemma, inst)
    data = {"lemma": r.lemma, "holds": r.holds, "applicable": r.applicable,
            "detail": r.detail, "observations": r.observations}
    status = "holds" if r.holds else "FAILS"
    if not r.applicable:
        status = "vacuous (" + r.detail + ")"
    _emit(data, args.json, f"{r.lemma}: {status}" + (f"\n{r.detail}" if r.detail and r.applicable else ""))
    return EXIT_OK if r.holds else EXIT_FAIL


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="print JSON instead of text")
    common.add_argument("--order-cap", type=int, default=None,
                        help="largest group order accepted (default: $CPW_ORDER_CAP or 24)")
    common.add_argument("--cache", metavar="DIR", help="content-addressed result cache")
    common.add_argument("--verify-cache", action="store_true",
                        help="recompute cache hits and fail on any difference")

    p = _Parser(prog="critpair", description="Critical pair theory on finite abelian groups.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("profile", parents=[common], help="connectivities, fragments, atoms, hyper-atoms")
    s.add_argument("group")
    s.add_argument("S")
    s.add_argument("--sample", type=int, default=10, help="how many fragments/atoms to list")
    s.set_defaults(func=cmd_profile)

    s = sub.add_parser("classify", parents=[common], help="structure case of an extremal pair")
    s.add_argument("group")
    s.add_argument("S")
    s.add_argument("T")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("sweep", parents=[common], help="exhaustive theorem sweep")
    s.add_argument("--theorem", default="kneser", help=", ".join(THEOREMS))
    s.add_argument("--group", action="append", help="group spec such as Z2xZ4 (repeatable)")
    s.add_argument("--orders", help="inclusive order range a..b")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--automorphisms", action="store_true",
                   help="only one set per automorphism orbit")
    s.add_argument("--seed", type=int, default=0, help="seed for random digraph sweeps")
    s.add_argument("--graphs", type=int, default=200, help="number of random digraphs")
    s.add_argument("--csv", action="store_true", help="print the CSV summary")
    s.add_argument("--output", metavar="DIR", help="write <theorem>.json and <theorem>.csv here")
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("graph-sipg", parents=[common], help="boundary matching on a digraph")
    s.add_argument("--graph", metavar="FILE", help="vertex count, then one 'u v' arc per line ('-' for stdin)")
    s.add_argument("--cayley", nargs=2, metavar=("GROUP", "SET"), dest="cayley_args")
    s.add_argument("--X", required=True, help="vertex set such as {0,2}")
    s.add_argument("--x", type=int, default=None, help="repeated vertex (second form)")
    s.set_defaults(func=cmd_graph_sipg)

    s = sub.add_parser("lemma-check", parents=[common], help="check one statement on one instance")
    s.add_argument("lemma", help=", ".join(LEMMA_IDS))
    s.add_argument("group")
    s.add_argument("values", nargs="*", help="NAME=VALUE, e.g. S={0,1,3} k=2")
    s.set_defaults(func=cmd_lemma_check)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "cayley_args", None):
            args.cayley_group, args.cayley_set = args.cayley_args
        else:
            args.cayley_group = args.cayley_set = None
        if args.order_cap is None:
            args.order_cap = default_order_cap()
        return args.func(args)
    except CritPairError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return getattr(exc, "exit_code", EXIT_FAIL)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
