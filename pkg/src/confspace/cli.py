"""Command-line front end.

All output is deterministic: JSON is written with sorted keys and fixed
separators, and parallel checks report in enumeration order.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .config import PRESETS, RunConfig, load_config_file, preset_config
from .confmod import build_space, codegeneracy_matrix, coface_matrix
from .errors import ConfspaceError, ParseError
from .exactlin import format_rational, parse_rational
from .symbols import KINDS, LinComb, parse_comb, parse_symbol
from .theta import parse_index, theta, theta_rank_for, theta_vector
from .tower import rank_of_family
from .verify import SUITES
from .whprod import build_N, whitehead


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def threads_from_env() -> int:
    raw = os.environ.get("CONFSPACE_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise ConfspaceError(f"CONFSPACE_THREADS must be an integer, got {raw!r}") from None
    return max(1, n)


def _config(args) -> RunConfig:
    if args.config:
        cfg = load_config_file(args.config)
        if args.window is not None:
            cfg = _rewindow(cfg, args.window)
        return cfg
    return preset_config(args.preset, args.window or 1)


def _rewindow(cfg: RunConfig, window: int) -> RunConfig:
    from .config import load_config

    data = json.loads(cfg.canonical)
    data["window"] = window
    return load_config(data)


def _comb_json(v: LinComb) -> dict:
    return {str(s): format_rational(c) for s, c in v}


def read_classes(path: str, group) -> list[LinComb]:
    """Read a JSON array of ``{"coeff": "p/q", "symbol": "..."}`` entries.

    Each array entry is one class; an entry may instead be a list of such
    terms to describe a linear combination.
    """
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc.msg}", exc.lineno, exc.colno) from None
    if not isinstance(data, list):
        raise ParseError(f"{path}: expected a JSON array of classes", 1, 1)
    classes = []
    for pos, entry in enumerate(data):
        terms = entry if isinstance(entry, list) else [entry]
        acc = []
        for term in terms:
            if not isinstance(term, dict) or set(term) != {"coeff", "symbol"}:
                raise ParseError(f"{path}: class {pos} needs exactly the keys coeff and symbol")
            try:
                coeff = parse_rational(term["coeff"])
            except ValueError as exc:
                raise ParseError(f"{path}: class {pos}: {exc}") from None
            acc.append((parse_symbol(str(term["symbol"]), group), coeff))
        classes.append(LinComb("pi5C3", acc))
    return classes


def cmd_basis(cfg: RunConfig, args, out) -> int:
    space = build_space(cfg.spec, args.kind)
    for i, sym in enumerate(space.symbols):
        print(f"{i}\t{sym}", file=out)
    return 0


def cmd_map(cfg: RunConfig, args, out) -> int:
    if args.op == "coface":
        mat = coface_matrix(cfg.spec, args.degree, args.n, args.index, mode=args.mode)
    else:
        mat = codegeneracy_matrix(cfg.spec, args.degree, args.n, args.index)
    cols = {}
    for j, v in sorted(mat.columns.items()):
        cols[str(mat.domain.symbols[j])] = {str(mat.codomain.symbols[i]): format_rational(c) for i, c in v.entries.items()}
    print(_dumps({"domain": mat.domain.kind, "codomain": mat.codomain.kind, "columns": cols}), file=out)
    return 0


def cmd_wh(cfg: RunConfig, args, out) -> int:
    kind = f"pi3C{args.level}"
    u = parse_comb(args.u, kind, cfg.spec.group)
    v = parse_comb(args.v, kind, cfg.spec.group)
    print(_dumps(_comb_json(whitehead(u, v, args.mode, cfg.spec))), file=out)
    return 0


def cmd_reduce(cfg: RunConfig, args, out) -> int:
    v = parse_comb(args.vector, "pi5C3", cfg.spec.group)
    n = build_N(build_space(cfg.spec, "pi5C3"))
    q = n.reduce(v)
    coords = {n.quotient.text(i): format_rational(c) for i, c in sorted(q.entries.items())}
    print(_dumps({"chart_dim": n.chart_dim, "coordinates": coords, "in_N": not q}), file=out)
    return 0


def cmd_verify(cfg: RunConfig, args, out) -> int:
    threads = threads_from_env()
    ok = True
    for name in args.suite:
        result = SUITES[name](cfg.spec, threads=threads)
        print(result.line(), file=out)
        ok &= result.passed
    return 0 if ok else 1


def cmd_rank(cfg: RunConfig, args, out) -> int:
    classes = read_classes(args.classes, cfg.spec.group)
    threads = threads_from_env()
    if args.mode == "quotient":
        rank, cert = rank_of_family(classes, cfg.spec, cfg.config_hash, threads)
    else:
        for c in classes:
            build_space(cfg.spec, "pi5C3").vector(c)
        rank, cert = theta_rank_for(classes, cfg.spec, args.mode == "theta-restricted", cfg.config_hash)
    text = cert.to_json()
    print(text, file=out)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return 0


def cmd_theta(cfg: RunConfig, args, out) -> int:
    v = parse_comb(args.vector, "pi5C3", cfg.spec.group)
    if args.index:
        print(format_rational(theta(parse_index(args.index), v)), file=out)
    else:
        print(_dumps({str(k): format_rational(c) for k, c in theta_vector(v).items()}), file=out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="confspace", description=__doc__.splitlines()[0])
    src = p.add_mutually_exclusive_group()
    src.add_argument("--config", help="JSON run configuration")
    src.add_argument("--preset", choices=sorted(PRESETS), default="s1xd3")
    p.add_argument("--window", type=int, help="truncation window L (overrides the config)")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("basis", help="list a truncated canonical basis")
    b.add_argument("--kind", required=True, choices=KINDS)
    b.set_defaults(func=cmd_basis)

    m = sub.add_parser("map", help="print a coface or codegeneracy matrix")
    m.add_argument("--op", choices=("coface", "codegeneracy"), required=True)
    m.add_argument("--degree", type=int, choices=(3, 4, 5), required=True)
    m.add_argument("--n", type=int, required=True, help="source level")
    m.add_argument("--index", type=int, required=True)
    m.add_argument("--mode", choices=("exact", "mod_n5"), default="exact")
    m.set_defaults(func=cmd_map)

    w = sub.add_parser("wh", help="Whitehead product of two degree-3 expressions")
    w.add_argument("u")
    w.add_argument("v")
    w.add_argument("--level", type=int, choices=(2, 3), default=3)
    w.add_argument("--mode", choices=("exact", "mod_n5"), default="exact")
    w.set_defaults(func=cmd_wh)

    r = sub.add_parser("reduce-mod-n", help="reduce a pi5C3 expression modulo N")
    r.add_argument("vector")
    r.set_defaults(func=cmd_reduce)

    v = sub.add_parser("verify", help="run property suites over the window")
    v.add_argument("--suite", action="append", choices=sorted(SUITES), required=True)
    v.set_defaults(func=cmd_verify)

    k = sub.add_parser("rank", help="rank certificate for a classes file")
    k.add_argument("--classes", required=True)
    k.add_argument("--mode", choices=("quotient", "theta", "theta-restricted"), default="quotient")
    k.add_argument("--out", help="also write the certificate here")
    k.set_defaults(func=cmd_rank)

    t = sub.add_parser("theta", help="evaluate linking functionals")
    t.add_argument("--index", help='e.g. "composite(1,2)" or "square(1,2,1,2)"; omit for the full vector')
    t.add_argument("--vector", required=True)
    t.set_defaults(func=cmd_theta)
    return p


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        return args.func(cfg, args, out)
    except ConfspaceError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
