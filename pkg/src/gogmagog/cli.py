"""Command-line front end: enumerate, convert, verify, render, count."""

from __future__ import annotations

import argparse
import json
import sys
from collections import deque
from typing import Any, Callable, Iterator

from . import asm as asm_mod
from . import catalan as cat
from . import checks
from . import definetti as fin
from . import poset as pc
from . import pyramids as pyr
from . import triangles as tri
from .errors import GogmagogError, Infeasible, ValidationError

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# largest n each enumerator accepts without --force
GUARDS = {
    "kagog": 6, "magog": 6, "omagog": 6, "gog": 6, "ogog": 6,
    "asm": asm_mod.MAX_ENUMERATE_N,
    "fn21": 7,
    "le-fn2": 6,
    "definetti-bn": fin.MAX_TOTAL_ORDER_N,
    "monotone": 10,
    "coin": 10,
}


class UsageError(Exception):
    pass


def _order_json(n: int, order) -> dict:
    return {"n": n, "order": [sorted(s) for s in order]}


def _order_ascii(order) -> str:
    return " < ".join(pc.subset_label(tuple(sorted(s))) for s in order)


def _coins_ascii(c: cat.CoinPyramid) -> str:
    lines = []
    for r in range(len(c.rows) - 1, -1, -1):
        cells = [" "] * (2 * c.n - 1)
        for p in c.rows[r]:
            cells[2 * p + r] = "o"
        lines.append("".join(cells).rstrip())
    return "\n".join(lines)


def _poset_ascii(p: pc.Poset) -> str:
    label = [pc.subset_label(e) for e in p.elements]
    return ", ".join(f"{label[a]}<{label[b]}" for a, b in pc.hasse_covers(p))


def _stream(family: str, n: int, force: bool) -> Iterator[tuple[dict, str]]:
    """Yield (json, ascii) pairs for every object of a family, in canonical order."""
    if family in tri.FAMILIES:
        for t in tri.enumerate_family(family, n):
            yield tri.triangle_to_json(t), tri.render_flat(t)
    elif family == "asm":
        for a in asm_mod.enumerate_asm(n, force=force):
            yield asm_mod.asm_to_json(a), str(a)
    elif family == "fn21":
        for p in fin.enumerate_fn21(n):
            yield pc.poset_to_json(p), _poset_ascii(p)
    elif family == "le-fn2":
        for order in fin.fn2_linear_extension_orders(n):
            yield _order_json(n, order), _order_ascii(order)
    elif family == "definetti-bn":
        for order in fin.enumerate_definetti_total_orders(n, force=force):
            yield _order_json(n, order), _order_ascii(order)
    elif family == "monotone":
        for s in cat.monotone_sequences(n):
            yield cat.sequence_to_json(s), " ".join(map(str, s.values))
    elif family == "coin":
        for c in cat.coin_pyramids(n):
            yield cat.coins_to_json(c), _coins_ascii(c)
    else:  # pragma: no cover - argparse restricts the choices
        raise UsageError(f"unknown family {family!r}")


def count_family(family: str, n: int, force: bool = False) -> int:
    if family == "le-fn2":
        return pc.count_linear_extensions(fin.build_fn2(n))
    return sum(1 for _ in _stream(family, n, force))


def formula_count(family: str, n: int) -> int | None:
    """Closed-form size of a family, where one is known."""
    if family in tri.FAMILIES or family == "asm":
        return tri.asm_count_formula(n)
    if family == "fn21":
        return tri.asm_count_formula(n - 1)
    if family == "le-fn2":
        return tri.ballot_number(n)
    if family in ("monotone", "coin"):
        return tri.catalan(n)
    return None


def _guard(family: str, n: int, force: bool) -> None:
    if n < 1:
        raise UsageError("--n must be positive")
    if family == "fn21" and n < 2:
        raise UsageError("fn21 needs --n of at least 2")
    limit = GUARDS[family]
    if n > limit:
        if not force:
            raise Infeasible(f"{family} enumeration is limited to n <= {limit}; pass --force to override")
        print(f"warning: {family} at n={n} is beyond the usual limit of {limit}", file=sys.stderr)


# conversion graph ---------------------------------------------------------

def _triangle_node(family: str):
    def load(data: dict) -> tri.Triangle:
        t = tri.triangle_from_json(data)
        if t.family != family:
            raise ValidationError(f"expected a {family} triangle, got {t.family}")
        return tri.validate(t)
    return load, tri.triangle_to_json


def _pyramid_node(family: str):
    def load(data: dict) -> pyr.TwoColorPyramid:
        p = pyr.pyramid_from_json(data)
        if p.family != family:
            raise ValidationError(f"expected a {family} pyramid, got {p.family}")
        return pyr.check_pyramid(p)
    return load, pyr.pyramid_to_json


def _load_asm(data: dict) -> asm_mod.Asm:
    a = asm_mod.asm_from_json(data)
    if not asm_mod.validate_asm(a):
        raise ValidationError("not an alternating sign matrix")
    return a


def _load_fn21(data: dict) -> pc.Poset:
    p = pc.poset_from_json(data)
    fin.refinement_to_kagog(p)  # raises unless p is a member
    return p.with_kind("fn21-member")


def _load_path(data: dict) -> cat.SubDiagonalPath:
    try:
        return cat.SubDiagonalPath(int(data["n"]), str(data["steps"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed path JSON: {exc}") from exc


NODES: dict[str, tuple[Callable[[dict], Any], Callable[[Any], dict]]] = {
    **{f: _triangle_node(f) for f in tri.FAMILIES},
    **{f"{f}-pyramid": _pyramid_node(f) for f in tri.FAMILIES},
    "asm": (_load_asm, asm_mod.asm_to_json),
    "fn21": (_load_fn21, pc.poset_to_json),
    "le": (fin.order_from_json, lambda v: fin.order_to_json(v[1], v[0])),
    "syt": (fin.shifted_tableau_from_json, fin.shifted_tableau_to_json),
    "sequence": (cat.sequence_from_json, cat.sequence_to_json),
    "coin": (cat.coins_from_json, cat.coins_to_json),
    "path": (_load_path, lambda p: {"n": p.n, "steps": p.steps}),
}


def _le_to_syt(v):
    n, order = v
    return fin.le_to_tableau(order, n)


def _syt_to_le(tab):
    return tab.n, fin.tableau_to_le(tab)


EDGES: list[tuple[str, str, Callable]] = [
    ("magog", "omagog", tri.magog_to_omagog),
    ("omagog", "magog", tri.omagog_to_magog),
    ("omagog", "kagog", pyr.psi_triangle),
    ("kagog", "omagog", pyr.psi_inverse_triangle),
    ("gog", "ogog", tri.gog_to_ogog),
    ("ogog", "gog", tri.ogog_to_gog),
    ("asm", "gog", asm_mod.asm_to_gog),
    ("gog", "asm", asm_mod.gog_to_asm),
    ("fn21", "kagog", fin.refinement_to_kagog),
    ("kagog", "fn21", fin.kagog_to_refinement),
    ("le", "syt", _le_to_syt),
    ("syt", "le", _syt_to_le),
    ("sequence", "coin", cat.sigma),
    ("coin", "sequence", cat.sigma_inverse),
    ("sequence", "path", cat.sequence_to_path),
    ("path", "sequence", cat.path_to_sequence),
    ("sequence", "omagog", cat.rho),
    ("omagog", "sequence", cat.rho_inverse),
    ("coin", "kagog", cat.tau),
    ("kagog", "coin", cat.tau_inverse),
    ("omagog-pyramid", "kagog-pyramid", pyr.psi),
    ("kagog-pyramid", "omagog-pyramid", pyr.psi_inverse),
]
for _f in tri.FAMILIES:
    EDGES.append((_f, f"{_f}-pyramid", pyr.to_pyramid))
    EDGES.append((f"{_f}-pyramid", _f, pyr.from_pyramid))

# maps from a representation to itself, requested as --to NAME
ENDOMORPHISMS: dict[tuple[str, str], tuple[str, Callable]] = {
    ("ogog", "phi"): ("ogog", pyr.phi_triangle),
    ("ogog-pyramid", "phi"): ("ogog-pyramid", lambda p: pyr.check_pyramid(pyr.phi(p))),
    ("omagog", "psi"): ("kagog", pyr.psi_triangle),
    ("omagog-pyramid", "psi"): ("kagog-pyramid", pyr.psi),
    ("gog", "gog-involution"): ("gog", asm_mod.gog_involution),
    ("asm", "row-reverse"): ("asm", asm_mod.row_reverse),
}


def conversion_path(src: str, dst: str) -> list[tuple[str, str, Callable]]:
    """Shortest chain of edges from ``src`` to ``dst`` (breadth-first, edge order breaks ties)."""
    if src not in NODES or dst not in NODES:
        raise UsageError(f"no conversion from {src!r} to {dst!r}")
    prev: dict[str, tuple[str, str, Callable] | None] = {src: None}
    queue = deque([src])
    while queue:
        node = queue.popleft()
        if node == dst:
            break
        for edge in EDGES:
            if edge[0] == node and edge[1] not in prev:
                prev[edge[1]] = edge
                queue.append(edge[1])
    if dst not in prev:
        raise UsageError(f"no conversion from {src!r} to {dst!r}")
    path = []
    node = dst
    while prev[node] is not None:
        edge = prev[node]
        path.append(edge)
        node = edge[0]
    return path[::-1]


def convert(src: str, dst: str, data: dict) -> dict:
    """Parse ``data`` as ``src``, convert it and serialize the result."""
    if (src, dst) in ENDOMORPHISMS:
        out_node, fn = ENDOMORPHISMS[(src, dst)]
        value = fn(NODES[src][0](data))
        return NODES[out_node][1](value)
    if dst in {name for _, name in ENDOMORPHISMS}:
        raise UsageError(f"{dst} does not apply to {src}")
    steps = conversion_path(src, dst)
    value = NODES[src][0](data)
    for _, _, fn in steps:
        value = fn(value)
    return NODES[dst][1](value)


def _read_json_objects(path: str | None) -> list[dict]:
    text = sys.stdin.read() if path in (None, "-") else open(path, encoding="utf-8").read()
    text = text.strip()
    if not text:
        raise ValidationError("empty input")
    try:
        return [json.loads(text)]
    except json.JSONDecodeError:
        return [json.loads(line) for line in text.splitlines() if line.strip()]


# subcommands --------------------------------------------------------------

def _open_out(path: str | None):
    return sys.stdout if path in (None, "-") else open(path, "w", encoding="utf-8")


def cmd_enumerate(args) -> int:
    _guard(args.family, args.n, args.force)
    out = _open_out(args.out)
    try:
        if args.count_only:
            print(count_family(args.family, args.n, args.force), file=out)
        elif args.format == "ascii":
            first = True
            for _, text in _stream(args.family, args.n, args.force):
                if not first:
                    out.write("\n")
                out.write(text + "\n")
                first = False
        else:
            for obj, _ in _stream(args.family, args.n, args.force):
                out.write(json.dumps(obj, separators=(",", ":")) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def cmd_convert(args) -> int:
    objects = _read_json_objects(args.infile)
    out = _open_out(args.out)
    try:
        for data in objects:
            out.write(json.dumps(convert(args.src, args.dst, data), separators=(",", ":")) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def cmd_verify(args) -> int:
    result = checks.run_check(args.check, args.n, force=args.force)
    if result.passed:
        extra = "".join(f", {k} {v}" for k, v in result.details.items())
        print(f"PASS {result.check} n={result.n}: {result.cases} cases{extra}")
        return EXIT_OK
    print(f"FAIL {result.check} n={result.n}")
    print(json.dumps(result.counterexample, separators=(",", ":")))
    return EXIT_FAIL


def cmd_render(args) -> int:
    for data in _read_json_objects(args.infile):
        if "cubes" in data:
            p = pyr.check_pyramid(pyr.pyramid_from_json(data))
            t = pyr.from_pyramid(p)
        else:
            t = tri.validate(tri.triangle_from_json(data))
            p = pyr.to_pyramid(t)
        print(pyr.render_layers(p) if args.style == "layers" else tri.render_flat(t))
    return EXIT_OK


def cmd_count(args) -> int:
    if args.formula:
        value = formula_count(args.family, args.n)
        if value is None:
            raise UsageError(f"no closed form is known for {args.family}")
        print(value)
        return EXIT_OK
    _guard(args.family, args.n, args.force)
    print(count_family(args.family, args.n, args.force))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gogmagog",
                                     description="Gog, magog and kagog triangles, de Finetti lattices and ASMs.")
    sub = parser.add_subparsers(dest="command", required=True)
    families = sorted(GUARDS)

    p = sub.add_parser("enumerate", help="list every object of a family")
    p.add_argument("--family", required=True, choices=families)
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--count-only", action="store_true", help="print only the number of objects")
    p.add_argument("--format", choices=["json", "ascii"], default="json")
    p.add_argument("--out", help="write to a file instead of stdout")
    p.add_argument("--force", action="store_true", help="lift the size guard")
    p.set_defaults(func=cmd_enumerate)

    targets = sorted(set(NODES) | {name for _, name in ENDOMORPHISMS})
    p = sub.add_parser("convert", help="carry objects along the bijections")
    p.add_argument("--from", dest="src", required=True, choices=sorted(NODES))
    p.add_argument("--to", dest="dst", required=True, choices=targets)
    p.add_argument("--in", dest="infile", help="JSON or NDJSON input (default stdin)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("verify", help="run an exhaustive check")
    p.add_argument("--check", required=True, choices=sorted(checks.SUITES))
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--force", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", help="draw a triangle or pyramid")
    p.add_argument("--in", dest="infile", help="triangle or pyramid JSON (default stdin)")
    p.add_argument("--style", choices=["layers", "flat"], default="flat")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("count", help="size of a family")
    p.add_argument("--family", required=True, choices=families)
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--formula", action="store_true", help="use the closed form instead of enumerating")
    p.add_argument("--force", action="store_true")
    p.set_defaults(func=cmd_count)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValidationError as exc:
        where = f" at {exc.cell}" if exc.cell is not None else ""
        tag = f" [{exc.axiom}{where}]" if exc.axiom else ""
        print(f"error: {exc}{tag}", file=sys.stderr)
        return EXIT_FAIL
    except (GogmagogError, ValueError, KeyError, json.JSONDecodeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
