"""Command-line front end: group ingestion, checks, JSON reports.

Exit codes: 0 success, 1 hard theorem violation, 2 input error,
3 cap exceeded.  Reports are deterministic; pass --stable to zero the
elapsed_ms fields for byte-identical artifacts.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import catalog as cat
from . import verify
from .core import Group, GroupMap, Subgroup, exponent, factorize, p_rank, sylow_subgroup
from .errors import (
    CapExceededError,
    ExprParseError,
    GroupInvariantError,
    ParentMismatchError,
    PreconditionError,
)
from .fusion import FusionSystem, check_saturation
from .report import VerificationReport

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2
EXIT_CAP = 3

_INPUT_ERRORS = (
    ExprParseError,
    GroupInvariantError,
    PreconditionError,
    ParentMismatchError,
    FileNotFoundError,
    json.JSONDecodeError,
    KeyError,
    ValueError,
)


# -- group ingestion -----------------------------------------------------------


def load_group_file(path: str | Path, max_order: int) -> Group:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    kind = data["kind"]
    name = data.get("name", Path(path).stem)
    payload = data["payload"]
    if kind == "expr":
        g = cat.build(payload, max_order=max_order)
        g.name = name
        return g
    if kind == "cayley":
        table = np.asarray(payload, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1]:
            raise GroupInvariantError("cayley payload must be a square table")
        n = table.shape[0]
        for i in range(n):
            if sorted(table[i].tolist()) != list(range(n)) or sorted(
                table[:, i].tolist()
            ) != list(range(n)):
                raise GroupInvariantError(f"cayley payload is not a Latin square at line {i}")
        if n > max_order:
            raise CapExceededError("max_order", max_order)
        return Group(table, name=name)
    if kind == "perm":
        return _group_from_permutations(payload, name, max_order)
    raise ExprParseError(f"unknown group file kind {kind!r}")


def _group_from_permutations(gens: Sequence[Sequence[int]], name: str, max_order: int) -> Group:
    if not gens:
        raise ExprParseError("perm payload needs at least one generator")
    degree = len(gens[0])
    norm: list[tuple[int, ...]] = []
    for g in gens:
        t = tuple(int(x) for x in g)
        if sorted(t) != list(range(degree)):
            raise GroupInvariantError(f"{list(g)} is not a permutation of 0..{degree - 1}")
        norm.append(t)
    ident = tuple(range(degree))
    elems = {ident}
    frontier = [ident]
    while frontier:
        cur = frontier.pop()
        for g in norm:
            nxt = tuple(cur[g[i]] for i in range(degree))
            if nxt not in elems:
                if len(elems) >= max_order:
                    raise CapExceededError("max_order", max_order)
                elems.add(nxt)
                frontier.append(nxt)
    ordered = sorted(elems)
    ordered.remove(ident)
    ordered.insert(0, ident)
    index = {e: i for i, e in enumerate(ordered)}
    n = len(ordered)
    table = np.zeros((n, n), dtype=np.int32)
    for i, a in enumerate(ordered):
        for j, b in enumerate(ordered):
            table[i, j] = index[tuple(a[b[k]] for k in range(degree))]
    return Group(table, name=name, elem_names=[repr(e) for e in ordered])


def resolve_group(spec: str, max_order: int) -> Group:
    """expr:<text>, file:<path>, or a bare expression / catalog name."""
    if spec.startswith("file:"):
        return load_group_file(spec[5:], max_order)
    if spec.startswith("expr:"):
        spec = spec[5:]
    return cat.build(spec, max_order=max_order)


def resolve_pair(spec: str, max_order: int) -> tuple[Group, Subgroup]:
    """A bundled pair name, an <expr>-in-<expr> form, or a whole group."""
    try:
        return cat.named_pair(spec)
    except ExprParseError:
        pass
    g = resolve_group(spec, max_order)
    return g, g.whole


# -- report output ---------------------------------------------------------------


def write_reports(
    reports: Sequence[VerificationReport],
    out: Optional[str],
    stable: bool,
) -> None:
    doc = {
        "schema_version": "1",
        "reports": [r.to_dict(stable=stable) for r in reports],
    }
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _exit_code(reports: Sequence[VerificationReport]) -> int:
    for r in reports:
        if r.check_name in verify.THEOREM_CHECKS and r.is_violation:
            return EXIT_VIOLATION
    return EXIT_OK


# -- subcommands -------------------------------------------------------------------


def cmd_build(args: argparse.Namespace) -> int:
    g = resolve_group(args.spec, args.max_order)
    whole = g.whole
    print(f"name: {g.name}")
    print(f"order: {g.order}")
    print(f"exponent: {exponent(whole)}")
    print(f"center_order: {whole.center().order}")
    for p in sorted(factorize(g.order)):
        print(f"p_rank[{p}]: {p_rank(g, p)}")
    return EXIT_OK


def cmd_catalog(args: argparse.Namespace) -> int:
    if args.action == "list":
        for name in cat.catalog_names():
            print(name)
        for name in cat.pair_names():
            print(f"pair:{name}")
        for name in cat.generated_demo_names():
            print(f"generated:{name}")
        return EXIT_OK
    name = args.name
    if name is None:
        raise ExprParseError("catalog emit needs a name")
    if name not in cat.catalog_names():
        cat.parse_expr(name)  # raises on garbage; any valid expression may be emitted
    doc = {"kind": "expr", "name": name, "payload": name}
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _check_control(args) -> list[VerificationReport]:
    if args.H is None or args.p is None:
        raise ExprParseError("control needs --H and --p")
    G_pair, H = resolve_pair(args.H, args.max_order)
    if args.G is not None:
        G_named = resolve_group(args.G, args.max_order)
        if not np.array_equal(G_named.mul_table, G_pair.mul_table):
            raise PreconditionError("--G does not match the ambient group of --H")
    rep = verify.control_p_fusion(H, G_pair, args.p)
    rep.inputs = [f"H={args.H}", f"G={args.G or args.H}"] + rep.inputs
    return [rep]


def _check_theorem12(args) -> list[VerificationReport]:
    p = _need_p(args)
    if args.sweep:
        return verify.sweep_theorem12(p, family=args.family, max_order=args.max_order)
    G, H = resolve_pair(_need_pair(args), args.max_order)
    pair = cat.CatalogPair(args.pair, G, H, cat.common_sylow_primes(G, H))
    if p not in pair.primes:
        raise PreconditionError(f"pair has no common Sylow {p}-subgroup")
    F, Fsub = verify.pair_systems(pair, p)
    return [verify.theorem12_instance(F, Fsub, family=args.family, inputs=[f"pair={args.pair}"])]


def _check_theorem14(args) -> list[VerificationReport]:
    p = _need_p(args)
    if args.sweep:
        return verify.sweep_theorem14(p, max_order=args.max_order)
    G, H = resolve_pair(_need_pair(args), args.max_order)
    phi = GroupMap(H, G.whole, tuple(int(x) for x in H.arr))
    return [verify.theorem14_instance(phi, p, inputs=[f"pair={args.pair}"])]


def _check_saturation(args) -> list[VerificationReport]:
    if args.generated:
        system = cat.generated_demo(args.generated)
        rep = check_saturation(system)
        rep.inputs = [f"generated={args.generated}"] + rep.inputs
        return [rep]
    if args.sweep:
        return verify.sweep_saturation(max_order=args.max_order)
    p = _need_p(args)
    G, H = resolve_pair(_need_pair(args), args.max_order)
    S = sylow_subgroup(H, p)
    F = FusionSystem.transporter(S, G, p=p)
    rep = check_saturation(F)
    rep.inputs = [f"pair={args.pair}"] + rep.inputs
    return [rep]


def _check_thompson(args) -> list[VerificationReport]:
    if args.sweep:
        p = _need_p(args)
        return verify.sweep_thompson(p, args.max_p_order)
    if args.P is None:
        raise ExprParseError("thompson needs --P or --sweep")
    g = resolve_group(args.P, args.max_order)
    return [verify.thompson_check(g.whole, inputs=[f"P={args.P}"])]


def _check_lemma_small(args) -> list[VerificationReport]:
    p = _need_p(args)
    if args.n is None:
        raise ExprParseError("lemma-small needs --n")
    G, H = resolve_pair(_need_pair(args), args.max_order)
    phi = GroupMap(H, G.whole, tuple(int(x) for x in H.arr))
    return [verify.lemma_small_instance(phi, p, args.n, inputs=[f"pair={args.pair}"])]


def _check_main_lemma(args) -> list[VerificationReport]:
    p = _need_p(args)
    if args.sweep:
        return verify.sweep_main_lemma(p, max_order=args.max_order)
    G, H = resolve_pair(_need_pair(args), args.max_order)
    pair = cat.CatalogPair(args.pair, G, H, cat.common_sylow_primes(G, H))
    if p not in pair.primes:
        raise PreconditionError(f"pair has no common Sylow {p}-subgroup")
    F, Fsub = verify.pair_systems(pair, p)
    reports = []
    from .core import normalizer

    parent = F.S.parent
    for P in F.subgroups:
        if not (F.is_centric(P) and F.is_fully_normalized(P)):
            continue
        for Q in F.subgroups:
            if Q <= P and normalizer(parent, P, Q).order == P.order:
                reports.append(
                    verify.main_lemma_instance(F, Fsub, P, Q, inputs=[f"pair={args.pair}"])
                )
    return reports


def _check_sylowiso(args) -> list[VerificationReport]:
    p = _need_p(args)
    if args.sweep:
        return verify.sweep_sylowiso(p, max_order=args.max_order)
    G, H = resolve_pair(_need_pair(args), args.max_order)
    pair = cat.CatalogPair(args.pair, G, H, cat.common_sylow_primes(G, H))
    if p not in pair.primes:
        raise PreconditionError(f"pair has no common Sylow {p}-subgroup")
    F, Fsub = verify.pair_systems(pair, p)
    return [verify.sylowiso_instance(F, Fsub, inputs=[f"pair={args.pair}"])]


def _check_extraspecial(args) -> list[VerificationReport]:
    p = _need_p(args)
    return [verify.extraspecial_note_check(p)]


def _check_rep_count(args) -> list[VerificationReport]:
    if args.G is None:
        raise ExprParseError("rep-count needs --G")
    g = resolve_group(args.G, args.max_order)
    if args.zpn is not None:
        p = _need_p(args)
        return [
            verify.rep_count_report(
                None, g, n=args.zpn, p=p, inputs=[f"G={args.G}", f"n={args.zpn}", f"p={p}"]
            )
        ]
    if args.A is None:
        raise ExprParseError("rep-count needs --A or --zpn")
    a = resolve_group(args.A, args.max_order)
    return [verify.rep_count_report(a, g, inputs=[f"A={args.A}", f"G={args.G}"])]


_CHECKS = {
    "control": _check_control,
    "theorem12": _check_theorem12,
    "theorem14": _check_theorem14,
    "saturation": _check_saturation,
    "thompson": _check_thompson,
    "lemma-small": _check_lemma_small,
    "main-lemma": _check_main_lemma,
    "sylowiso": _check_sylowiso,
    "extraspecial-note": _check_extraspecial,
    "rep-count": _check_rep_count,
}


def _need_p(args) -> int:
    if args.p is None:
        raise ExprParseError("this check needs --p")
    return args.p


def _need_pair(args) -> str:
    if args.pair is None:
        raise ExprParseError("this check needs --pair or --sweep")
    return args.pair


def cmd_check(args: argparse.Namespace) -> int:
    if args.id not in _CHECKS:
        raise ExprParseError(
            f"unknown check id {args.id!r}; choose from {sorted(_CHECKS)}"
        )
    reports = _CHECKS[args.id](args)
    for r in reports:
        print(r.summary(), file=sys.stderr)
    write_reports(reports, args.out, args.stable)
    return _exit_code(reports)


# -- entry point ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pfusion",
        description="Finite-group fusion computations: control of p-fusion, "
        "saturation axioms, detection subgroups, Rep-class counts.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build", help="summarize a group from a spec or file")
    p_build.add_argument("spec", help="expr:<text>, file:<path>, or a bare expression")
    _add_caps(p_build)
    p_build.set_defaults(func=cmd_build)

    p_check = sub.add_parser("check", help="run a verification check")
    p_check.add_argument("id", help=f"one of {sorted(_CHECKS)}")
    p_check.add_argument("--H", help="subgroup spec (pair name or expression)")
    p_check.add_argument("--G", help="ambient group spec")
    p_check.add_argument("--P", help="p-group spec (thompson)")
    p_check.add_argument("--A", help="abelian source group expression (rep-count)")
    p_check.add_argument("--pair", help="bundled pair name")
    p_check.add_argument("--sweep", choices=["catalog"], help="sweep the bundled catalog")
    p_check.add_argument("--generated", help="bundled generated fusion system name")
    p_check.add_argument("--p", type=int, help="the prime")
    p_check.add_argument("--n", type=int, help="tuple rank (lemma-small)")
    p_check.add_argument("--zpn", type=int, help="tuple rank (rep-count)")
    p_check.add_argument("--family", help="subgroup family override (theorem12)")
    p_check.add_argument("--max-p-order", type=int, default=64, help="group order cap for thompson sweeps")
    p_check.add_argument("--out", help="write the JSON report file here")
    p_check.add_argument("--stable", action="store_true", help="zero elapsed_ms for byte-stable output")
    _add_caps(p_check)
    p_check.set_defaults(func=cmd_check)

    p_cat = sub.add_parser("catalog", help="list or emit bundled groups")
    p_cat.add_argument("action", choices=["list", "emit"])
    p_cat.add_argument("name", nargs="?", help="expression to emit")
    p_cat.add_argument("--out", help="write the group file here")
    _add_caps(p_cat)
    p_cat.set_defaults(func=cmd_catalog)
    return parser


def _add_caps(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-order", type=int, default=cat.DEFAULT_MAX_BUILD_ORDER)
    p.add_argument("--max-subgroups", type=int, default=20_000)
    p.add_argument("--max-morphisms", type=int, default=500_000)
    p.add_argument("--budget-secs", type=float, default=60.0)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
