"""Command-line interface.

    quandlekit check dihedral:3
    quandlekit free --model FQ --gens a,b --bound 2
    quandlekit knot --fixture 3_1
    quandlekit colorings --fixture 3_1 --target dihedral:3
    quandlekit alexander --pd "X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)"
    quandlekit homology --rack dihedral:3 --quandle --max 3
    quandlekit ring --lift "1, A"

Every subcommand accepts ``--json``.  Exit status is 2 for bad input and 1
when a computation exceeds its size limits.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import alex, free, homology, present, racks
from .exceptions import CapacityError, QuandleKitError

__all__ = ["main", "run", "build_parser"]


class InputError(Exception):
    pass


def _read_source(src: str) -> str:
    if src == "-":
        return sys.stdin.read()
    try:
        with open(src, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {src!r}: {exc.strerror}") from None


def _load_rack(src: str) -> racks.FiniteRack:
    text = src
    if src == "-" or os.path.exists(src):
        text = _read_source(src)
    elif not src.lstrip().startswith("{"):
        try:
            return racks.rack_from_spec(src)
        except ValueError as exc:
            raise InputError(f"{exc} (and no file named {src!r})") from None
    try:
        return racks.FiniteRack.from_json(json.loads(text))
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid rack JSON: {exc}") from None


def _load_presentation(args) -> tuple[present.QuandlePresentation, present.KnotDiagram | None]:
    if args.fixture is not None:
        d = present.knot_fixture(args.fixture)
    elif args.pd is not None:
        d = present.import_pd(args.pd)
    else:
        try:
            data = json.loads(_read_source(args.presentation))
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid presentation JSON: {exc}") from None
        return present.QuandlePresentation.from_json(data), None
    return present.wirtinger(d), d


def _emit(args, text: str, payload) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False))
    else:
        print(text)


# -- subcommands ------------------------------------------------------------


def cmd_check(args) -> int:
    R = _load_rack(args.rack)
    rr, qr = R.rack_report, R.quandle_report
    payload = {
        "size": R.size,
        "rack": rr.ok,
        "quandle": R.is_quandle,
        "bijectivity_failures": [list(w) for w in rr.bijectivity_failures],
        "distributivity_failures": [list(w) for w in rr.distributivity_failures],
        "non_idempotent": list(qr.non_idempotent),
    }
    lines = [f"size: {R.size}", f"rack: {'yes' if rr.ok else 'no'}"]
    for i, j, k in rr.bijectivity_failures:
        lines.append(f"  row {i} is not a bijection: {i}▷{j} = {i}▷{k} = {R.op(i, j)}")
    for i, j, k in rr.distributivity_failures:
        lines.append(f"  not self-distributive at ({i}, {j}, {k})")
    lines.append(f"quandle: {'yes' if R.is_quandle else 'no'}")
    if rr.ok and not qr.ok:
        lines.append(f"  i▷i != i for i in {list(qr.non_idempotent)}")
    if R.basepoint is not None:
        payload["basepoint"] = R.basepoint
        payload["basepoint_ok"] = R.basepoint_ok
        lines.append(f"basepoint: {R.basepoint} ({'ok' if R.basepoint_ok else 'p▷p != p'})")
    if rr.ok:
        perm = racks.canonical_automorphism(R)
        payload["canonical_automorphism"] = list(perm)
        lines.append(f"canonical automorphism: {list(perm)}")
        preds = [racks.element_predicates(R, i) for i in range(R.size)]
        payload["elements"] = [
            {"element": i, "fixed": p.is_fixed, "fixing": p.is_fixing, "unit": p.is_unit,
             "pointable": p.is_pointable}
            for i, p in enumerate(preds)
        ]
        lines.append("element  fixed  fixing  unit  pointable")
        for i, p in enumerate(preds):
            flags = [p.is_fixed, p.is_fixing, p.is_unit, p.is_pointable]
            cells = "  ".join(f"{'yes' if f else 'no':<5}" for f in flags)
            lines.append(f"{R.label(i):<8} {cells}".rstrip())
    _emit(args, "\n".join(lines), payload)
    return 0


def cmd_free(args) -> int:
    gens = [g for g in args.gens.replace(",", " ").split() if g]
    model = free.free_model(args.model, gens, args.basepoint)
    elements = model.enumerate(args.bound)
    by_gen: dict[str, int] = {}
    for el in elements:
        by_gen[el.gen] = by_gen.get(el.gen, 0) + 1
    payload = {
        "model": model.name,
        "generators": gens,
        "basepoint": args.basepoint,
        "bound": args.bound,
        "count": len(elements),
        "count_by_generator": by_gen,
        "elements": [model.format(el) for el in elements],
    }
    lines = [f"{model.name} on {{{', '.join(gens)}}}"
             + (f", basepoint {args.basepoint}" if args.basepoint else "")
             + f", word bound {args.bound}: {len(elements)} elements"]
    lines.extend(f"  second coordinate {g}: {c}" for g, c in by_gen.items())
    if not args.count_only:
        lines.extend(model.format(el) for el in elements)
    _emit(args, "\n".join(lines), payload)
    return 0


def cmd_knot(args) -> int:
    P, d = _load_presentation(args)
    G = present.associated_group(P)
    payload = {"presentation": P.to_json(), "group_relators": [str(r) for r in G.relators]}
    lines = ["Wirtinger presentation:", str(P), f"associated group: {G}"]
    if d is not None:
        payload["crossings"] = [[c.over, c.under_in, c.under_out, c.sign] for c in d.crossings]
        if d.pd is not None:
            payload["pd"] = present.export_pd(d)
    _emit(args, "\n".join(lines), payload)
    return 0


def cmd_colorings(args) -> int:
    P, _ = _load_presentation(args)
    T = _load_rack(args.target)
    n = present.count_colorings(P, T)
    _emit(args, str(n), {"colorings": n, "target_size": T.size})
    return 0


def cmd_alexander(args) -> int:
    P, _ = _load_presentation(args)
    M = alex.alexander_matrix(P)
    poly = alex.alexander_polynomial(M)
    payload = {"polynomial": poly.to_json(), "pretty": str(poly)}
    text = str(poly)
    if args.matrix:
        payload["matrix"] = M.to_json()
        text = f"{M}\n{poly}"
    _emit(args, text, payload)
    return 0


def cmd_homology(args) -> int:
    R = _load_rack(args.rack)
    N = args.max
    if N < 1:
        raise InputError("--max must be at least 1")
    build = homology.quandle_chain_complex if args.quandle else homology.rack_chain_complex
    C = build(R, N + 1)
    groups = {n: homology.homology(C, n) for n in range(1, N + 1)}
    kind = "quandle" if args.quandle else "rack"
    lines = [f"{kind} homology of a {R.size}-element {'quandle' if R.is_quandle else 'rack'}"]
    for n, H in groups.items():
        lines.append(f"H_{n} = {H}    (Quillen H_{n - 1})")
    payload = {
        "kind": kind,
        "max_degree": N,
        "chain_ranks": [C.rank(n) for n in range(N + 2)],
        "groups": {str(n): H.to_json() for n, H in groups.items()},
    }
    if args.export_matrices:
        os.makedirs(args.export_matrices, exist_ok=True)
        for n in range(1, C.max_degree + 1):
            path = os.path.join(args.export_matrices, f"boundary_{n}.txt")
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(C.boundary(n).to_triplets())
    _emit(args, "\n".join(lines), payload)
    return 0


def cmd_ring(args) -> int:
    parts = args.lift.split(",")
    if len(parts) != 2:
        raise InputError('--lift expects "p,q", two Laurent polynomials separated by a comma')
    p, q = (alex.LaurentPoly.parse(s) for s in parts)
    u = alex.pullback_lift(p, q)
    pz, pq = alex.project_zero(u), alex.project_quandle(u)
    lines = [f"p = {p}", f"q = {q}", f"lift = {u}",
             f"E -> 0      : {pz}", f"E -> 1 - A  : {pq}", f"augmentation: {p.eval_at_1()}"]
    payload = {"p": p.to_json(), "q": q.to_json(), "lift": u.to_json(),
               "project_zero": pz.to_json(), "project_quandle": pq.to_json()}
    _emit(args, "\n".join(lines), payload)
    return 0


# -- parser -----------------------------------------------------------------


def _add_knot_source(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--fixture", "--knot", dest="fixture", choices=present.KNOT_FIXTURES,
                   help="built-in knot diagram")
    g.add_argument("--pd", help='PD code, e.g. "X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)"')
    g.add_argument("--presentation", metavar="PATH",
                   help="presentation JSON file ('-' for stdin)")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    parser = argparse.ArgumentParser(prog="quandlekit", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="rack/quandle axioms and element predicates")
    p.add_argument("rack", help="rack JSON path, '-', inline JSON, or fixture like dihedral:3")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("free", parents=[common], help="enumerate a free rack/quandle model")
    p.add_argument("--model", default="FR", help=f"one of {', '.join(free.MODEL_NAMES)}")
    p.add_argument("--gens", required=True, help="comma-separated generator names")
    p.add_argument("--basepoint", help="basepoint generator (pointed and fixed models)")
    p.add_argument("--bound", type=int, default=1, help="maximal word length")
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(func=cmd_free)

    p = sub.add_parser("knot", parents=[common], help="Wirtinger presentation of a diagram")
    _add_knot_source(p)
    p.set_defaults(func=cmd_knot)

    p = sub.add_parser("colorings", parents=[common], help="count colorings by a finite quandle")
    _add_knot_source(p)
    p.add_argument("--target", required=True, help="target quandle: fixture or JSON path")
    p.set_defaults(func=cmd_colorings)

    p = sub.add_parser("alexander", parents=[common], help="normalized Alexander polynomial")
    _add_knot_source(p)
    p.add_argument("--matrix", action="store_true", help="also print the Alexander matrix")
    p.set_defaults(func=cmd_alexander)

    p = sub.add_parser("homology", parents=[common], help="integer rack or quandle homology")
    p.add_argument("--rack", required=True, help="rack JSON path, '-', or fixture like dihedral:3")
    p.add_argument("--quandle", action="store_true", help="quandle (normalized) homology")
    p.add_argument("--max", type=int, default=3, help="highest degree to report")
    p.add_argument("--export-matrices", metavar="DIR",
                   help="write boundary matrices as triplet text files")
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("ring", parents=[common], help="pullback description of the rack ring")
    p.add_argument("--lift", required=True, help='"p,q" with p(1) = q(1)')
    p.set_defaults(func=cmd_ring)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (InputError, QuandleKitError, ValueError, KeyError, IndexError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
