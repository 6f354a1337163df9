"""Command line interface: ``lietriad list|classify|verify|render``.

Exit status is 0 on success, 1 when a verification fails and 2 for usage
errors (bad algebra names, parameters out of bounds, unreadable input).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import List, Optional

from . import classify as cl
from .catalog import (
    CatalogError,
    check_snapshot,
    find_class,
    involution_classes,
    parse_algebra,
    snapshot_hash,
)
from .double import DoubleSatakeDiagram
from .render import double_to_dot, double_to_text, satake_to_dot, satake_to_text
from .rootsys import RootSystemError
from .sigma import SatakeDiagram, reconstruct_sigma

SNAPSHOT_ENV = "LIETRIAD_SNAPSHOT"
TWISTS = ("id", "kappa", "kappa2", "tau")
SCOPES = ("catalog", "roundtrip", "table2", "oracle", "special-iso", "self-duality", "ds-sets")


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


def _algebra(text: str, max_rank: Optional[int]):
    alg = parse_algebra(text)
    if not cl.in_bounds(alg, max_rank):
        raise UsageError(f"{alg.name} is outside the configured bounds "
                         f"(raise them with --max-rank)")
    return alg


def split_twist(k: str):
    """``"kappa(so3+so5)"`` -> ("so3+so5", "kappa"); ``"u6'"`` -> ("u6", "tau")."""
    k = k.strip()
    if k.startswith("k:"):
        k = k[2:]
    for name in ("kappa2", "kappa", "tau"):
        if k.startswith(name + "(") and k.endswith(")"):
            return k[len(name) + 1:-1], name
    if k.endswith("'") or k.endswith("′"):
        return k[:-1], "tau"
    return k, None


def _snapshot(args) -> Optional[Path]:
    path = args.snapshot or os.environ.get(SNAPSHOT_ENV)
    return Path(path) if path else None


# -- subcommands -------------------------------------------------------------------


def cmd_list(args) -> int:
    alg = _algebra(args.algebra, args.max_rank)
    classes = involution_classes(alg)
    if args.format == "json":
        print(_dump([c.to_json() for c in classes]))
    elif args.format == "dot":
        for c in classes:
            print(satake_to_dot(c.diagram, name=c.label), end="")
    else:
        for c in classes:
            params = f"({','.join(map(str, c.params))})" if c.params else ""
            name = c.label + params
            print(f"{name:<12} {c.k_label:<18} rank {c.rank}  {satake_to_text(c.diagram)}")
    return 0


def _report(args, alg):
    twist = args.twist
    pair = None
    if args.pair:
        parts = args.pair.split(",")
        if len(parts) != 2:
            raise UsageError("--pair expects k1,k2")
        k1, t1 = split_twist(parts[0])
        k2, t2 = split_twist(parts[1])
        if t1:
            raise UsageError("put the twist on the second class")
        if t2:
            if twist and twist != t2:
                raise UsageError("conflicting twists")
            twist = t2
        pair = (k1, k2)
    rep = cl.classify_algebra(alg, pair)
    if twist:
        rep.triads = [t for t in rep.triads if t.twist == twist]
    return rep


def cmd_classify(args) -> int:
    if args.table or not args.algebra:
        if args.pair:
            raise UsageError("--pair needs an algebra")
        algs = cl.default_algebras() if not args.algebra else [_algebra(args.algebra, args.max_rank)]
        reports = [cl.classify_algebra(a) for a in algs]
    else:
        reports = [_report(args, _algebra(args.algebra, args.max_rank))]
    fmt = args.format
    if fmt == "json":
        print(_dump([row for r in reports for row in r.to_json()]))
    elif fmt == "markdown":
        print(cl.to_markdown(reports), end="")
    elif fmt == "dot":
        for r in reports:
            for i, t in enumerate(r.triads):
                print(f"// {t.display_name}")
                print(double_to_dot(t.diagram, name=f"triad{i}"), end="")
    else:
        for r in reports:
            print(cl.to_text(r), end="")
    return 0


def _scope_checks(scope: str, args) -> List[cl.Check]:
    if scope == "catalog":
        problems = check_snapshot(_snapshot(args))
        return [cl.Check("catalog snapshot", not problems, "; ".join(problems))]
    if scope == "roundtrip":
        return cl.verify_round_trip()
    if scope == "table2":
        return cl.verify_table()
    if scope == "oracle":
        return cl.verify_rank_oracle(weyl_cap=args.weyl_cap)
    if scope == "special-iso":
        return cl.verify_special_isomorphisms()
    if scope == "self-duality":
        return cl.verify_self_duality()
    if scope == "ds-sets":
        return cl.verify_ds_sizes()
    raise UsageError(f"unknown scope {scope!r}; choose from {', '.join(SCOPES)} or all")


def cmd_verify(args) -> int:
    scopes = args.scopes or ["all"]
    if "all" in scopes:
        scopes = list(SCOPES)
    results = {}
    for s in scopes:
        results[s] = _scope_checks(s, args)
    failed = sum(not c.ok for checks in results.values() for c in checks)
    if args.format == "json":
        print(_dump({s: [{"name": c.name, "ok": c.ok, "detail": c.detail} for c in checks]
                     for s, checks in results.items()}))
    else:
        for s, checks in results.items():
            bad = [c for c in checks if not c.ok]
            print(f"{s}: {len(checks) - len(bad)}/{len(checks)} passed")
            for c in bad:
                print(f"  FAIL {c.name}: {c.detail}")
        try:
            print(f"catalog sha256 {snapshot_hash(_snapshot(args))}")
        except OSError:
            pass
    return 1 if failed else 0


def _load_diagram(ref: str, args):
    path = Path(ref)
    text = None
    if ref.lstrip().startswith("{"):
        text = ref
    elif path.suffix == ".json" or path.exists():
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot read {ref}: {exc}") from None
    if text is not None:
        try:
            data = json.loads(text)
        except ValueError as exc:
            raise UsageError(f"invalid JSON: {exc}") from None
        if "s1" in data:
            dd = DoubleSatakeDiagram.from_json(data)
            reconstruct_sigma(dd.s1)
            reconstruct_sigma(dd.s2)
            return dd
        sd = SatakeDiagram.from_json(data)
        reconstruct_sigma(sd)
        return sd
    if ":" not in ref:
        raise UsageError("expected g:k, g:k1,k2 or a JSON diagram")
    g, ks = ref.split(":", 1)
    alg = _algebra(g, args.max_rank)
    parts = ks.split(",")
    if len(parts) == 1:
        return find_class(alg, parts[0]).diagram
    if len(parts) != 2:
        raise UsageError("expected at most two classes")
    k2, twist = split_twist(parts[1])
    twist = twist or args.twist or "id"
    c1, c2 = find_class(alg, parts[0]), find_class(alg, k2)
    for name, d in cl.ds_set(c1.diagram, c2.diagram, shortcut=False):
        if name == twist:
            return d
    raise UsageError(f"twist {twist} gives no further class for this pair")


def cmd_render(args) -> int:
    d = _load_diagram(args.ref, args)
    double = isinstance(d, DoubleSatakeDiagram)
    if args.format == "json":
        print(_dump(d.to_json()))
    elif args.format == "text":
        print(double_to_text(d) if double else satake_to_text(d))
    else:
        print(double_to_dot(d) if double else satake_to_dot(d), end="")
    return 0


# -- entry point ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-rank", type=int, default=None,
                        help="allow any algebra of at most this rank")
    common.add_argument("--weyl-cap", type=int, default=200_000,
                        help="largest Weyl group to search exhaustively")
    common.add_argument("--snapshot", default=None,
                        help=f"catalog snapshot file (default: ${SNAPSHOT_ENV} or the packaged one)")

    p = argparse.ArgumentParser(prog="lietriad", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("list", parents=[common], help="involution classes of an algebra")
    q.add_argument("algebra")
    q.add_argument("--format", choices=("text", "json", "dot"), default="text")
    q.set_defaults(func=cmd_list)

    q = sub.add_parser("classify", parents=[common], help="triad classes with rank and order")
    q.add_argument("algebra", nargs="?")
    q.add_argument("--pair", help="restrict to one pair k1,k2 (e.g. so3+so5,kappa(so3+so5))")
    q.add_argument("--twist", choices=TWISTS)
    q.add_argument("--table", action="store_true", help="all algebras within the default bounds")
    q.add_argument("--format", choices=("text", "json", "markdown", "dot"), default="text")
    q.set_defaults(func=cmd_classify)

    q = sub.add_parser("verify", parents=[common], help="run consistency checks")
    q.add_argument("scopes", nargs="*", help=f"any of {', '.join(SCOPES)}, or all")
    q.add_argument("--format", choices=("text", "json"), default="text")
    q.set_defaults(func=cmd_verify)

    q = sub.add_parser("render", parents=[common], help="draw a (double) Satake diagram")
    q.add_argument("ref", help="g:k, g:k1,k2 or a JSON diagram (inline or file)")
    q.add_argument("--twist", choices=TWISTS)
    q.add_argument("--format", choices=("dot", "text", "json"), default="dot")
    q.set_defaults(func=cmd_render)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, CatalogError, RootSystemError, ValueError, KeyError) as exc:
        print(f"lietriad: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
