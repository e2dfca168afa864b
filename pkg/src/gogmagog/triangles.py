"""Kagog, magog, omagog, gog and ogog triangles.

All triangles are left-justified and indexed from 1: row ``i`` holds the
entries ``T(i, 1) .. T(i, i)``.  Every family axiom relates a cell to its
neighbours above, to the left, or diagonally up-left, so the same local
checks drive both validation and row-major enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial, prod
from typing import Callable, Iterator, NamedTuple

from .errors import ShapeError, ValidationError

FAMILIES = ("kagog", "magog", "omagog", "gog", "ogog")


def row_count(family: str, n: int) -> int:
    """Number of rows of a triangle of the given family and index/size."""
    if family not in FAMILIES:
        raise ValueError(f"unknown triangle family {family!r}")
    return n if family in ("magog", "gog") else max(n - 1, 0)


@dataclass(frozen=True)
class Triangle:
    family: str
    index: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(tuple(int(x) for x in r) for r in self.rows))

    def __getitem__(self, cell: tuple[int, int]) -> int:
        i, j = cell
        return self.rows[i - 1][j - 1]

    def cells(self) -> Iterator[tuple[int, int]]:
        for i, row in enumerate(self.rows, 1):
            for j in range(1, len(row) + 1):
                yield i, j

    def flat(self) -> tuple[int, ...]:
        return tuple(x for r in self.rows for x in r)

    def __str__(self) -> str:
        return "(" + "; ".join(" ".join(map(str, r)) for r in self.rows) + ")"


def triangle(family: str, index: int, text: str) -> Triangle:
    """Build a triangle from the compact ``"1; 0 1; 0 0 2"`` notation."""
    text = text.strip().strip("()")
    rows = [tuple(int(x) for x in part.split()) for part in text.split(";")] if text else []
    return Triangle(family, index, tuple(rows))


class Violation(NamedTuple):
    axiom: str
    cell: tuple[int, int]
    message: str


# Per-family cell bounds (inclusive) as functions of (n, i, j).
_BOUNDS: dict[str, Callable[[int, int, int], tuple[int, int]]] = {
    "kagog": lambda n, i, j: (0, j),
    "magog": lambda n, i, j: (1, j),
    "omagog": lambda n, i, j: (0, j),
    "gog": lambda n, i, j: (1, n - i + j),
    "ogog": lambda n, i, j: (0, n - i),
}

_BOUND_TAG = {"kagog": "K2", "magog": "M2", "omagog": "OM2", "gog": "G2", "ogog": "OG2"}


def _local_violation(family: str, get, i: int, j: int, v: int) -> str | None:
    """First violated axiom between cell (i, j) = v and its earlier neighbours."""
    left = get(i, j - 1) if j > 1 else None
    above = get(i - 1, j) if j <= i - 1 else None
    diag = get(i - 1, j - 1) if i > 1 and j > 1 else None
    if family == "kagog":
        if above is not None and above < v:
            return "K3"
        if left is not None and left > 0 and v <= left:
            return "K4"
    elif family in ("magog", "omagog"):
        tag = "M" if family == "magog" else "OM"
        if above is not None and above > v:
            return tag + "3"
        if left is not None and left > v:
            return tag + "4"
    elif family == "gog":
        if left is not None and left >= v:
            return "G3"
        if above is not None and above < v:
            return "G4"
        if diag is not None and diag > v:
            return "G5"
    elif family == "ogog":
        if left is not None and left > v:
            return "OG3"
        if above is not None and above < v:
            return "OG4"
        if diag is not None and diag > v + 1:
            return "OG5"
    return None


def _check_shape(t: Triangle) -> None:
    expected = row_count(t.family, t.index)
    if t.index < 1:
        raise ShapeError(f"index must be positive, got {t.index}")
    if len(t.rows) != expected:
        raise ShapeError(f"{t.family} of index {t.index} needs {expected} rows, got {len(t.rows)}")
    for i, row in enumerate(t.rows, 1):
        if len(row) != i:
            raise ShapeError(f"row {i} has {len(row)} entries, expected {i}", cell=(i, len(row)))


def first_violation(t: Triangle) -> Violation | None:
    """Return the first axiom violation in row-major order, or None.

    Raises :class:`ShapeError` when the rows are not triangular.
    """
    _check_shape(t)
    lo_hi = _BOUNDS[t.family]
    for i, j in t.cells():
        v = t[i, j]
        lo, hi = lo_hi(t.index, i, j)
        if not lo <= v <= hi:
            tag = _BOUND_TAG[t.family]
            return Violation(tag, (i, j), f"{tag}: entry {v} at ({i},{j}) outside [{lo},{hi}]")
        tag = _local_violation(t.family, lambda a, b: t[a, b], i, j, v)
        if tag is not None:
            return Violation(tag, (i, j), f"{tag} violated at ({i},{j})")
    return None


def is_valid(t: Triangle) -> bool:
    return first_violation(t) is None


def validate(t: Triangle) -> Triangle:
    """Return ``t`` unchanged or raise :class:`ValidationError` naming the axiom."""
    v = first_violation(t)
    if v is not None:
        raise ValidationError(f"invalid {t.family} triangle {t}: {v.message}", v.axiom, v.cell)
    return t


def enumerate_family(family: str, n: int) -> Iterator[Triangle]:
    """All triangles of a family, in lexicographic order of the flattened rows."""
    rows = row_count(family, n)
    cells = [(i, j) for i in range(1, rows + 1) for j in range(1, i + 1)]
    grid = [[0] * i for i in range(1, rows + 1)]
    lo_hi = _BOUNDS[family]

    def get(a: int, b: int) -> int:
        return grid[a - 1][b - 1]

    def fill(pos: int) -> Iterator[Triangle]:
        if pos == len(cells):
            yield Triangle(family, n, tuple(tuple(r) for r in grid))
            return
        i, j = cells[pos]
        lo, hi = lo_hi(n, i, j)
        for v in range(lo, hi + 1):
            if _local_violation(family, get, i, j, v) is None:
                grid[i - 1][j - 1] = v
                yield from fill(pos + 1)

    yield from fill(0)


def min_triangle(family: str, n: int) -> Triangle:
    rows = row_count(family, n)
    if family == "magog":
        cell = lambda i, j: 1
    elif family == "gog":
        cell = lambda i, j: j
    else:
        cell = lambda i, j: 0
    return Triangle(family, n, tuple(tuple(cell(i, j) for j in range(1, i + 1)) for i in range(1, rows + 1)))


def max_triangle(family: str, n: int) -> Triangle:
    rows = row_count(family, n)
    hi = _BOUNDS[family]
    return Triangle(family, n, tuple(tuple(hi(n, i, j)[1] for j in range(1, i + 1))
                                     for i in range(1, rows + 1)))


def entrywise_min(a: Triangle, b: Triangle) -> Triangle:
    return Triangle(a.family, a.index, tuple(tuple(map(min, r, s)) for r, s in zip(a.rows, b.rows)))


def entrywise_max(a: Triangle, b: Triangle) -> Triangle:
    return Triangle(a.family, a.index, tuple(tuple(map(max, r, s)) for r, s in zip(a.rows, b.rows)))


def _expect(t: Triangle, family: str) -> None:
    if t.family != family:
        raise ValidationError(f"expected a {family} triangle, got {t.family}")
    validate(t)


def magog_to_omagog(m: Triangle) -> Triangle:
    """Subtract the all-ones minimum and drop the forced first column and row.

    ``omagog(i, j) = magog(i + 1, j + 1) - 1``.
    """
    _expect(m, "magog")
    n = m.index
    return Triangle("omagog", n, tuple(tuple(m[i + 1, j + 1] - 1 for j in range(1, i + 1))
                                       for i in range(1, n)))


def omagog_to_magog(o: Triangle) -> Triangle:
    _expect(o, "omagog")
    n = o.index
    rows = [(1,)]
    for i in range(1, n):
        rows.append((1,) + tuple(o[i, j] + 1 for j in range(1, i + 1)))
    return Triangle("magog", n, tuple(rows))


def gog_to_ogog(g: Triangle) -> Triangle:
    """Subtract the minimum gog triangle and drop the all-zero last row."""
    _expect(g, "gog")
    n = g.index
    return Triangle("ogog", n, tuple(tuple(g[i, j] - j for j in range(1, i + 1)) for i in range(1, n)))


def ogog_to_gog(o: Triangle) -> Triangle:
    _expect(o, "ogog")
    n = o.index
    rows = [tuple(o[i, j] + j for j in range(1, i + 1)) for i in range(1, n)]
    rows.append(tuple(range(1, n + 1)))
    return Triangle("gog", n, tuple(rows))


def ballot_number(n: int) -> int:
    """Strict-sense ballot number: shifted staircase SYT of shape (n, ..., 1)."""
    if n < 1:
        raise ValueError("n must be positive")
    num = factorial(comb(n + 1, 2)) * prod(factorial(k) for k in range(1, n))
    den = prod(factorial(2 * k - 1) for k in range(1, n + 1))
    q, r = divmod(num, den)
    assert r == 0
    return q


def asm_count_formula(n: int) -> int:
    """Number of n x n alternating sign matrices, prod (3k+1)!/(n+k)!."""
    if n < 0:
        raise ValueError("n must be non-negative")
    num = prod(factorial(3 * k + 1) for k in range(n))
    den = prod(factorial(n + k) for k in range(n))
    q, r = divmod(num, den)
    assert r == 0
    return q


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def triangle_to_json(t: Triangle) -> dict:
    return {"family": t.family, "index": t.index, "rows": [list(r) for r in t.rows]}


def triangle_from_json(data: dict) -> Triangle:
    try:
        family = str(data["family"])
        index = int(data["index"])
        rows = tuple(tuple(int(x) for x in r) for r in data["rows"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed triangle JSON: {exc}") from exc
    if family not in FAMILIES:
        raise ValidationError(f"unknown triangle family {family!r}")
    return Triangle(family, index, rows)


def render_flat(t: Triangle) -> str:
    """Left-justified rows, one per line, entries right-aligned to a common width."""
    if not t.rows:
        return ""
    width = max(len(str(x)) for r in t.rows for x in r)
    return "\n".join(" ".join(str(x).rjust(width) for x in r) for r in t.rows)
