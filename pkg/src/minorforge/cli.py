"""Command-line front end.

Graphs are read as graph6 or JSON files, ``-`` for stdin, or a named pattern
(``K5``, ``C4``, ``P3``, ``K3,3``, ``petersen``). Results go to stdout as JSON
with sorted keys, except ``gen`` which writes graph6 unless asked for a
certificate.
"""
from __future__ import annotations

import argparse
import os
import re
import sys
import warnings
from fractions import Fraction

from . import config
from .errors import BudgetExceeded, MinorforgeError
from .graph import Graph
from .io import dumps, from_graph6, graph_from_dict, graph_to_dict, load_graph, read_graph6_lines, to_graph6

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

_NAMED = re.compile(r"^(K|C|P)(\d+)$|^K(\d+),(\d+)$|^petersen$", re.IGNORECASE)


class InputError(Exception):
    pass


def read_graph(arg: str) -> Graph:
    from . import generators as gen

    if arg != "-" and not os.path.exists(arg):
        m = _NAMED.match(arg)
        if not m:
            raise InputError(f"no such file or named graph: {arg}")
        if arg.lower() == "petersen":
            return gen.petersen()
        if m.group(3):
            return gen.complete_bipartite(int(m.group(3)), int(m.group(4)))
        kind, n = m.group(1).upper(), int(m.group(2))
        return {"K": gen.complete, "C": gen.cycle, "P": gen.path}[kind](n)
    try:
        return load_graph(arg)
    except (ValueError, KeyError, IndexError) as exc:
        raise InputError(f"cannot parse graph {arg}: {exc}") from exc


def emit(obj) -> None:
    sys.stdout.write(dumps(obj) + "\n")


# ------------------------------------------------------------------- gen


def cmd_gen(args) -> int:
    from . import constructions as con
    from . import generators as gen

    fam = args.family
    claimed = {}
    p = args.params
    need = lambda *names: [p[n] for n in names]  # noqa: E731
    try:
        if fam == "complete":
            g = gen.complete(*need("t"))
        elif fam == "cycle":
            g = gen.cycle(*need("n"))
        elif fam == "path":
            g = gen.path(*need("n"))
        elif fam == "petersen":
            g = gen.petersen()
        elif fam == "grid":
            g = gen.grid(*need("rows", "cols"))
        elif fam == "friendship":
            g = gen.friendship(*need("k"))
        elif fam == "gnp":
            g = gen.gnp(p["n"], float(args.p), seed=args.seed)
        elif fam == "kst-blocker":
            s, t = need("s", "t")
            g = con.construct_kst_blocker(s, t, seed=args.seed)
            claimed = {"no_minor": f"K{s},{t}", "min_degree_at_least": f"2s+t-2sqrt(2s)-2 = {2*s+t-2-2*(2*s)**0.5:.4f}"}
        elif fam == "sk7-blocker":
            (s,) = need("s")
            g = con.construct_sk7_blocker(s)
            claimed = {"no_minor": f"{s}K7", "min_degree": g.min_degree(), "min_degree_at_least": str(Fraction(22 * s, 3) - 2)}
        elif fam == "sktt-blocker":
            s, t, k = need("s", "t", "k")
            g = con.construct_sktt_blocker(s, t, k)
            claimed = {"no_minor": f"{s}K{t},{t}", "v": k * t + s * t - 1}
        elif fam == "bipartite-expand":
            h = read_graph(args.base)
            r = con.bipartite_expand(h, p["delta"])
            g = r.graph
            claimed = {"max_degree_at_most": p["delta"], "bipartite": True,
                       "v_at_most": str(Fraction(4 * h.e, p["delta"] - 2) + 2 * h.n)}
        else:
            raise InputError(f"unknown family {fam}")
    except KeyError as exc:
        raise InputError(f"family {fam} needs --{exc.args[0]}") from exc
    if args.certificate:
        patterns = []
        if fam == "sk7-blocker" and p["s"] == 1:
            patterns = [gen.complete(7), gen.complete(6)]
        elif fam == "sktt-blocker" and p["s"] == 1:
            patterns = [gen.complete_bipartite(p["t"], p["t"])]
        elif fam == "kst-blocker":
            patterns = [gen.complete_bipartite(p["s"], p["t"])]
        emit(con.certify_no_minor(g, patterns, claimed))
    else:
        sys.stdout.write(to_graph6(g) + "\n")
    return EXIT_OK


# ----------------------------------------------------------------- checks


def cmd_minor(args) -> int:
    from .models import test_minor, test_minor_oracle2

    h, g = read_graph(args.H), read_graph(args.G)
    out = {"pattern": graph_to_dict(h), "host_n": g.n}
    model = found2 = None
    if args.oracle in ("both", "bb"):
        model = test_minor(h, g, cap=args.cap)
        out["branch_sets"] = {str(k): sorted(v) for k, v in model.branch_sets.items()} if model else None
    if args.oracle in ("both", "recursive"):
        found2 = test_minor_oracle2(h, g, cap=args.cap)
    found = model is not None if args.oracle != "recursive" else found2
    out["verdict"] = "found" if found else "absent"
    out["oracle_agreement"] = (model is not None) == found2 if args.oracle == "both" else None
    emit(out)
    if args.oracle == "both" and not out["oracle_agreement"]:
        return EXIT_NEGATIVE
    return EXIT_NEGATIVE if args.strict and not found else EXIT_OK


def cmd_densepair(args) -> int:
    from .separations import extract_dense_pair_with_ids, is_dense_pair

    g = read_graph(args.G)
    gp, X, old = extract_dense_pair_with_ids(g, args.k)
    dense = len(X) < gp.n and bool(is_dense_pair(gp, X, g.min_degree(), args.k))
    emit({"graph6": to_graph6(gp), "X": sorted(X), "old_ids": old, "dense": dense, "d": g.min_degree(), "k": args.k})
    return EXIT_NEGATIVE if args.strict and not dense else EXIT_OK


def cmd_menger(args) -> int:
    from .separations import menger_paths

    g = read_graph(args.G)
    r = menger_paths(g, args.U, args.W, args.l)
    if r.found_paths:
        emit({"paths": r.paths})
        return EXIT_OK
    emit({"separation": r.separation.to_dict()})
    return EXIT_NEGATIVE if args.strict else EXIT_OK


def cmd_embed(args) -> int:
    from .embedding import hall_embed

    h, g = read_graph(args.H), read_graph(args.G)
    delta = args.delta if args.delta is not None else max(1, h.max_degree())
    phi, tr = hall_embed(h, delta, g, args.X or (), trace=True)
    emit({
        "phi": {str(k): v for k, v in phi.items()},
        "X0": sorted(tr.X0),
        "A0": list(tr.A0),
        "bipartition": {"A": sorted(tr.bipartition.A), "B": sorted(tr.bipartition.B)},
    })
    return EXIT_OK


def cmd_decompose(args) -> int:
    from .decomposition import bounded_decomposition

    emit(bounded_decomposition(read_graph(args.H), args.C).to_dict())
    return EXIT_OK


def cmd_expand(args) -> int:
    from .decomposition import bounded_decomposition, expand_for_component_size

    h = read_graph(args.H)
    dec = bounded_decomposition(h, args.C)
    r = expand_for_component_size(h, dec)
    emit({
        "decomposition": dec.to_dict(),
        "h_prime": graph_to_dict(r.h_prime),
        "F": [list(e) for e in r.F],
        "copy_paths": {str(k): v for k, v in r.copy_paths.items()},
        "component_map": r.component_map,
        "growth": Fraction(r.h_prime.n, h.n) if h.n else None,
    })
    return EXIT_OK


def cmd_density_run(args) -> int:
    from .density import extract_pieces

    g = read_graph(args.G)
    D = args.D if args.D is not None else g.min_degree()
    out = extract_pieces(g, D, args.K, eps=Fraction(args.eps), gamma=Fraction(args.gamma), cap=args.cap)
    emit(out.to_dict())
    return EXIT_NEGATIVE if args.strict and out.tag == "inconclusive" else EXIT_OK


def _spec_graph(obj) -> Graph:
    if isinstance(obj, str):
        return from_graph6(obj)
    return graph_from_dict(obj)


def cmd_assemble(args) -> int:
    import json

    from .assembly import assemble_minor_from_pieces, pieces_pipeline

    if args.spec == "-":
        raw = sys.stdin.read()
    else:
        with open(args.spec) as fh:
            raw = fh.read()
    try:
        spec = json.loads(raw)
        h, G = _spec_graph(spec["h"]), _spec_graph(spec["G"])
        F, pieces, hosts = spec.get("F", []), spec["pieces"], spec["hosts"]
    except (ValueError, KeyError) as exc:
        raise InputError(f"bad assembly spec: {exc}") from exc
    run = pieces_pipeline if spec.get("pipeline") else assemble_minor_from_pieces
    res = run(h, F, pieces, G, hosts)
    emit({
        "branch_sets": {str(k): sorted(v) for k, v in res.model.branch_sets.items()},
        "trace": {k: v for k, v in res.trace.items() if k in ("F", "U", "W", "menger_paths", "P", "Q")},
    })
    return EXIT_OK


def cmd_ha_falsify(args) -> int:
    from .constructions import certify_no_minor, ha_falsify

    h = read_graph(args.H)
    corpus = None
    if args.corpus:
        with open(args.corpus) as fh:
            corpus = list(read_graph6_lines(fh))
    g = ha_falsify(h, args.max_n, args.source, corpus=corpus)
    if g is None:
        emit({"counterexample": None, "max_n": args.max_n, "source": args.source})
        return EXIT_OK
    cert = certify_no_minor(g, [h], {"min_degree_at_least": h.n - 1, "no_minor": h.label})
    emit({"counterexample": to_graph6(g), "certificate": cert})
    return EXIT_NEGATIVE if args.strict else EXIT_OK


def cmd_accept(args) -> int:
    from .acceptance import run_acceptance

    res = run_acceptance(quick=args.quick, only=args.only, report=lambda r: print(r.line(), flush=True))
    passed = sum(r.passed for r in res)
    print(f"{passed}/{len(res)} criteria passed")
    return EXIT_OK if passed == len(res) else EXIT_NEGATIVE


# ----------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--cap", type=int, default=None, help="search cap (vertices of the host)")
    common.add_argument("--config", default=None, help="key = value settings file")
    common.add_argument("--jobs", type=int, default=None, help="worker threads (runs single-threaded)")
    common.add_argument("--strict", action="store_true", help="exit 1 on a negative verdict")

    p = argparse.ArgumentParser(prog="minorforge", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gen", parents=[common], help="generate a graph or construction")
    s.add_argument("family", choices=["complete", "cycle", "path", "petersen", "grid", "friendship", "gnp",
                                      "kst-blocker", "sk7-blocker", "sktt-blocker", "bipartite-expand"])
    for name in ("t", "n", "s", "k", "rows", "cols", "delta"):
        s.add_argument(f"--{name}", type=int, default=None)
    s.add_argument("--p", type=float, default=0.5)
    s.add_argument("--base", default=None, help="pattern for bipartite-expand")
    s.add_argument("--certificate", action="store_true", help="emit certificate JSON instead of graph6")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("minor", parents=[common], help="test whether H is a minor of G")
    s.add_argument("H")
    s.add_argument("G")
    s.add_argument("--oracle", choices=["both", "bb", "recursive"], default="both")
    s.set_defaults(func=cmd_minor)

    s = sub.add_parser("densepair", parents=[common], help="extract a dense pair")
    s.add_argument("G")
    s.add_argument("--k", type=int, required=True)
    s.set_defaults(func=cmd_densepair)

    s = sub.add_parser("menger", parents=[common], help="disjoint paths or a small separation")
    s.add_argument("G")
    s.add_argument("--U", type=int, nargs="+", required=True)
    s.add_argument("--W", type=int, nargs="+", required=True)
    s.add_argument("--l", type=int, required=True)
    s.set_defaults(func=cmd_menger)

    s = sub.add_parser("embed", parents=[common], help="Hall-matching embedding of a bipartite pattern")
    s.add_argument("H")
    s.add_argument("G")
    s.add_argument("--X", type=int, nargs="*", default=[])
    s.add_argument("--delta", type=int, default=None)
    s.set_defaults(func=cmd_embed)

    for name, fn, text in (("decompose", cmd_decompose, "bounded decomposition"),
                           ("expand", cmd_expand, "expand into bounded pieces")):
        s = sub.add_parser(name, parents=[common], help=text)
        s.add_argument("H")
        s.add_argument("--C", type=int, required=True)
        s.set_defaults(func=fn)

    s = sub.add_parser("density-run", parents=[common], help="dense piece extraction ledger")
    s.add_argument("G")
    s.add_argument("--D", type=int, default=None)
    s.add_argument("--K", type=int, default=2)
    s.add_argument("--eps", default="1/20")
    s.add_argument("--gamma", default="1/5")
    s.set_defaults(func=cmd_density_run)

    s = sub.add_parser("assemble", parents=[common], help="assemble a model from pieces (JSON spec)")
    s.add_argument("spec")
    s.set_defaults(func=cmd_assemble)

    s = sub.add_parser("ha-falsify", parents=[common], help="search for a degree-forcing counterexample")
    s.add_argument("H")
    s.add_argument("--max-n", type=int, required=True)
    s.add_argument("--source", choices=["all", "constructions"], default="all")
    s.add_argument("--corpus", default=None, help="graph6 file of candidates")
    s.set_defaults(func=cmd_ha_falsify)

    s = sub.add_parser("accept", parents=[common], help="run the acceptance battery")
    s.add_argument("--quick", action="store_true")
    s.add_argument("--only", type=int, nargs="*", default=None)
    s.set_defaults(func=cmd_accept)
    return p


def _apply_settings(args) -> None:
    config.reset_config()
    overrides = {}
    if args.config:
        overrides.update(config.load_config_file(args.config))
    for key in ("seed", "cap", "jobs"):
        if getattr(args, key) is not None:
            overrides[key] = getattr(args, key)
    cfg = config.set_config(**overrides)
    args.seed = cfg.seed
    if args.cap is None:
        args.cap = cfg.cap
    if getattr(args, "family", None):
        args.params = {k: getattr(args, k) for k in ("t", "n", "s", "k", "rows", "cols", "delta")
                       if getattr(args, k) is not None}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _apply_settings(args)
        with warnings.catch_warnings():
            warnings.simplefilter("default")
            return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InputError, MinorforgeError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
