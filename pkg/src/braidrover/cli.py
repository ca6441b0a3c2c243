"""Command-line front end.

Exit codes: 0 equal/identity/pass, 1 unequal/non-identity/fail, 2 unknown,
3 usage or parse error. ``--format machine`` prints one JSON object per line.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from . import cloning, complexes, grigsolver, recursion, render, tables, thompson
from .braid import BraidError
from .config import DEFAULTS
from .forest import ForestError, matching_to_forest, parse_forest
from .verdict import EqVerdict

EXIT_OK, EXIT_NO, EXIT_UNKNOWN, EXIT_USAGE = 0, 1, 2, 3

# The two identities whose sigma-images give the strict kernel series.
KSERIES_WORDS = {
    "w": "a^-1 d^-1 a d a d a^-1 d^-1",
    "w~": "d a d^-1 a^-1 d^-1 a^-1 d a",
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class Output:
    def __init__(self, fmt: str, stream=None):
        self.machine = fmt == "machine"
        self.stream = stream or sys.stdout

    def text(self, line: str) -> None:
        if not self.machine:
            print(line, file=self.stream)

    def record(self, **fields: Any) -> None:
        if self.machine:
            print(json.dumps(fields, sort_keys=True, ensure_ascii=False), file=self.stream)


def _verdict_code(v: EqVerdict) -> int:
    return EXIT_OK if v.is_equal else EXIT_NO if v.is_unequal else EXIT_UNKNOWN


def _path_str(path: tuple[int, ...]) -> str:
    return ".".join(map(str, path)) if path else "∅"


# ---------------------------------------------------------------------------
# Subcommands


def cmd_wp(args, out: Output) -> int:
    table = tables.get_table(args.table)
    w = table.parse(args.word)
    res = recursion.is_identity(w, args.budget)
    if res is True:
        out.text(f"{w}: identity")
        out.record(cmd="wp", table=table.name, word=str(w), verdict="identity")
        return EXIT_OK
    if res is None:
        out.text(f"{w}: unknown (budget {args.budget})")
        out.record(cmd="wp", table=table.name, word=str(w), verdict="unknown", budget=args.budget)
        return EXIT_UNKNOWN
    cert = recursion.nonidentity_certificate(w, args.depth)
    cert_txt = _path_str(cert) if cert is not None else f"none within depth {args.depth}"
    out.text(f"{w}: non-identity")
    out.text(f"certificate: {cert_txt}")
    out.record(cmd="wp", table=table.name, word=str(w), verdict="non-identity",
               certificate=list(cert) if cert is not None else None)
    return EXIT_NO


def _root_str(r) -> str:
    return r.word_str() if hasattr(r, "word_str") else str(r)


def _section_tree(w, depth: int, path: tuple[int, ...], out: Output, lines: list) -> None:
    r, secs = recursion.wreath_recursion(w)
    label = str(w) or "1"
    shown = ", ".join(str(s) or "1" for s in secs)
    lines.append((path, label, _root_str(r), [str(s) for s in secs]))
    out.text(f"{'  ' * len(path)}{label} = {_root_str(r)}({shown})")
    if len(path) + 1 >= depth:
        return
    for i, s in enumerate(secs, 1):
        if s.letters:
            _section_tree(s, depth, path + (i,), out, lines)


def cmd_sections(args, out: Output) -> int:
    table = tables.get_table(args.table)
    w = table.parse(args.word)
    lines: list = []
    _section_tree(w, args.depth, (), out, lines)
    for path, label, root, secs in lines:
        out.record(cmd="sections", path=list(path), word=label, root=root, sections=secs)
    return EXIT_OK


def _system(name: str, d: int, mutation: str | None) -> cloning.CloningSystem:
    if name in ("perm", "permutation"):
        sys_ = cloning.permutation_system(d)
    elif name == "braid":
        sys_ = cloning.braid_system(d)
    else:
        table = tables.get_table(name)
        if table.degree != d and name not in ("trivial",):
            raise UsageError(f"table {table.name} has degree {table.degree}, not {d}")
        if name == "trivial":
            table = tables.trivial(d)
        kappa = cloning.MUTATIONS[mutation] if mutation else cloning.wreath_kappa
        return cloning.wreath_system(table, kappa=kappa,
                                     name=f"{table.name}" + (f"/{mutation}" if mutation else ""))
    if mutation:
        raise UsageError("mutations apply to wreath systems only")
    return sys_


def cmd_axioms(args, out: Output) -> int:
    code = EXIT_OK
    for d in args.d:
        sys_ = _system(args.system, d, args.mutation)
        rep = cloning.check_axioms(sys_, args.samples, args.seed, args.n_max)
        for ax, t in rep.tallies.items():
            label = sys_.name if f"d={d}" in sys_.name else f"{sys_.name} d={d}"
            out.text(f"[{label}] {ax} pass={t.passed} fail={t.failed} unknown={t.unknown} seed={rep.seed}")
            out.record(cmd="axioms", system=sys_.name, d=d, axiom=ax, passed=t.passed, failed=t.failed,
                       unknown=t.unknown, seed=rep.seed, samples=rep.samples)
            if t.failed:
                code = EXIT_NO
            elif t.unknown and code == EXIT_OK:
                code = EXIT_UNKNOWN
    return code


def _triple_arg(text: str, table) -> thompson.Triple:
    inv = False
    stripped = text.strip()
    for suffix in ("^-1", "⁻¹"):
        if stripped.endswith(suffix):
            inv, stripped = True, stripped[: -len(suffix)]
    t = thompson.parse_triple(stripped, table)
    return thompson.invert(t) if inv else t


def cmd_thomp(args, out: Output) -> int:
    table = tables.get_table(args.table)
    xs = [_triple_arg(t, table) for t in args.triples]
    op = args.op
    need = {"eq": 2, "eqmodz": 2, "reduce": 1, "pi": 1, "purify": 1}
    if op in need and len(xs) != need[op]:
        raise UsageError(f"thomp {op} takes {need[op]} triple(s), got {len(xs)}")
    if not xs:
        raise UsageError("thomp eval needs at least one triple")

    if op == "eval":
        prod = xs[0]
        for y in xs[1:]:
            prod = thompson.multiply(prod, y)
        v = thompson.identity_test(prod)
        label = "identity" if v.is_equal else "non-identity"
        out.text(f"product: {thompson.format_triple(prod)}")
        out.text(label)
        out.record(cmd="thomp", op=op, result=thompson.format_triple(prod), verdict=label)
        return _verdict_code(v)
    if op in ("eq", "eqmodz"):
        v = thompson.eq(*xs) if op == "eq" else thompson.eq_mod_z(*xs)
        out.text(str(v))
        out.record(cmd="thomp", op=op, verdict=v.kind)
        return _verdict_code(v)
    if op == "reduce":
        t, complete = thompson.reduce_fully(xs[0])
        out.text(thompson.format_triple(t))
        if not complete:
            out.text("(reduction stopped where an oracle gave up)")
        out.record(cmd="thomp", op=op, result=thompson.format_triple(t), complete=complete)
        return EXIT_OK if complete else EXIT_UNKNOWN
    if op == "pi":
        t = thompson.project_pi(xs[0])
        out.text(thompson.format_triple(t))
        out.record(cmd="thomp", op=op, result=thompson.format_triple(t))
        return EXIT_OK
    # purify: the argument's middle group element
    forest, res = thompson.purify(xs[0].middle)
    out.text(f"F = {forest}")
    out.text(f"[1,g,1][F,1,1] = {thompson.format_triple(res)}")
    out.record(cmd="thomp", op=op, forest=str(forest), result=thompson.format_triple(res))
    return EXIT_OK


def cmd_homology(args, out: Output) -> int:
    if args.source == "matching":
        if len(args.params) != 2:
            raise UsageError("homology matching takes D M")
        d, m = (int(p) for p in args.params)
        x = complexes.matching_complex(d, m)
        label = f"matching d={d} m={m}"
    else:
        if len(args.params) != 1:
            raise UsageError("homology file takes a path")
        x = complexes.parse_complex(Path(args.params[0]).read_text())
        label = args.params[0]
    groups = complexes.reduced_homology(x)
    out.text(f"{label}: f-vector {x.f_vector()}, reduced Euler characteristic {x.reduced_euler_characteristic()}")
    for g in groups:
        if not g.is_zero():
            out.text(f"  H~ {g}")
    if all(g.is_zero() for g in groups):
        out.text("  acyclic")
    out.record(cmd="homology", complex=label, f_vector=x.f_vector(),
               groups=[{"dim": g.dim, "rank": g.rank, "torsion": list(g.torsion)} for g in groups if not g.is_zero()])
    return EXIT_OK


def _parse_paths(texts: Sequence[str]) -> list[tuple[int, ...]]:
    paths = []
    for t in texts:
        try:
            a, b = (int(v) for v in t.split("-"))
        except ValueError as e:
            raise UsageError(f"bad path {t!r}; write it as FIRST-LAST") from e
        paths.append(tuple(range(a, b + 1)))
    return paths


def cmd_render(args, out: Output) -> int:
    if args.object == "triple":
        table = tables.get_table(args.table)
        dot = render.triple_dot(_triple_arg(args.target[0], table))
    elif args.object == "forest":
        dot = render.forest_dot(parse_forest(args.target[0], args.d))
    else:
        m = int(args.target[0])
        paths = _parse_paths(args.target[1:])
        matching_to_forest(paths, m, args.d)  # validates the matching
        dot = render.matching_dot(paths, m)
    if args.output:
        Path(args.output).write_text(dot)
        out.text(f"wrote {args.output}")
    else:
        sys.stdout.write(dot)
    out.record(cmd="render", object=args.object, output=args.output)
    return EXIT_OK


def cmd_kseries(args, out: Output) -> int:
    table = tables.brgrig()
    code = EXIT_OK
    for n in range(args.n_max + 1):
        for name, text in KSERIES_WORDS.items():
            s = grigsolver.sigma_endo(table.parse(text), n)
            try:
                level = grigsolver.k_level(s, args.depth)
                shown = str(level) if level is not None else f"> {args.depth}"
            except grigsolver.NotInKernel:
                level, shown = None, "not in kernel"
            expected = n + 1
            status = "ok" if level == expected else "differs"
            if level != expected:
                code = EXIT_NO
            out.text(f"n={n} sigma^n({name}): length {len(s.letters)}, level {shown} (expected {expected}, {status})")
            out.record(cmd="kseries", n=n, word=name, length=len(s.letters), level=level, expected=expected)
    return code


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="braidrover", description="Braided self-similar groups and Thompson-like groups.")
    p.add_argument("--format", choices=("text", "machine"), default="text")
    p.add_argument("--machine", dest="format", action="store_const", const="machine",
                   help="shorthand for --format machine")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("wp", help="decide whether a word is the identity")
    s.add_argument("table", help="built-in table name or table file")
    s.add_argument("word")
    s.add_argument("--depth", type=int, default=DEFAULTS.depth)
    s.add_argument("--budget", type=int, default=DEFAULTS.search_budget)
    s.set_defaults(func=cmd_wp)

    s = sub.add_parser("sections", help="print the recursion tree of a word")
    s.add_argument("table")
    s.add_argument("word", nargs="?", default="")
    s.add_argument("--depth", type=int, default=2)
    s.set_defaults(func=cmd_sections)

    s = sub.add_parser("axioms", help="randomized check of the cloning axioms")
    s.add_argument("system", help="perm, braid, or a table name for the wreath system")
    s.add_argument("-d", type=int, action="append", help="arity (repeatable, default 2)")
    s.add_argument("--n-max", type=int, default=6)
    s.add_argument("--samples", type=int, default=DEFAULTS.samples)
    s.add_argument("--seed", type=int, default=DEFAULTS.seed)
    s.add_argument("--mutation", choices=sorted(cloning.MUTATIONS))
    s.set_defaults(func=cmd_axioms)

    s = sub.add_parser("thomp", help="arithmetic on triples [left; top; (entries); right]")
    s.add_argument("op", choices=("eval", "eq", "reduce", "pi", "purify", "eqmodz"))
    s.add_argument("triples", nargs="*", help="triple literals; suffix ^-1 inverts")
    s.add_argument("--table", default="brgrig")
    s.set_defaults(func=cmd_thomp)

    s = sub.add_parser("homology", help="reduced integral homology")
    s.add_argument("source", choices=("matching", "file"))
    s.add_argument("params", nargs="+")
    s.set_defaults(func=cmd_homology)

    s = sub.add_parser("render", help="DOT diagram of a triple, forest or matching")
    s.add_argument("object", choices=("triple", "forest", "matching"))
    s.add_argument("target", nargs="+", help="triple literal, forest, or M followed by paths like 1-2")
    s.add_argument("--table", default="brgrig")
    s.add_argument("-d", type=int, default=2)
    s.add_argument("--dot", action="store_true", help="DOT output (the only format)")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_render)

    s = sub.add_parser("kseries", help="kernel levels of sigma^n of the two basic identities")
    s.add_argument("--n-max", type=int, default=3)
    s.add_argument("--depth", type=int, default=DEFAULTS.depth)
    s.set_defaults(func=cmd_kseries)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "axioms" and not args.d:
        args.d = [2]
    out = Output(args.format)
    if args.command == "axioms":
        out.text(f"seed: {args.seed}")
    try:
        return args.func(args, out)
    except recursion.WordSyntaxError as e:
        print(f"parse error: {e}", file=sys.stderr)
    except (UsageError, recursion.TableError, thompson.TripleError, ForestError, BraidError,
            cloning.WreathError, complexes.ComplexError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
