"""Alternating sign matrices, their monotone (gog) triangles, and row reversal."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from . import pyramids as pyr
from . import triangles as tri
from .errors import Infeasible, ShapeError, ValidationError
from .triangles import Triangle

MAX_ENUMERATE_N = 7
MAX_ROWREV_N = 6


@dataclass(frozen=True)
class Asm:
    n: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(tuple(int(x) for x in r) for r in self.rows))

    @classmethod
    def of(cls, rows: Sequence[Sequence[int]]) -> "Asm":
        return cls(len(rows), tuple(map(tuple, rows)))

    def __str__(self) -> str:
        return "\n".join(" ".join(f"{x:2d}" for x in r) for r in self.rows)


def _lines_alternate(line: Sequence[int]) -> bool:
    # partial sums of an alternating line starting with +1 stay in {0, 1}
    total = 0
    for x in line:
        if x not in (-1, 0, 1):
            return False
        total += x
        if total not in (0, 1):
            return False
    return total == 1


def validate_asm(a: Asm | Sequence[Sequence[int]]) -> bool:
    """True iff every row and column sums to 1 with alternating nonzero signs."""
    rows = a.rows if isinstance(a, Asm) else tuple(tuple(r) for r in a)
    n = len(rows)
    if isinstance(a, Asm) and a.n != n:
        raise ShapeError(f"declared size {a.n} but {n} rows")
    if any(len(r) != n for r in rows):
        raise ShapeError("matrix is not square")
    return all(_lines_alternate(r) for r in rows) and all(_lines_alternate(c) for c in zip(*rows))


def _require(a: Asm) -> Asm:
    if not validate_asm(a):
        raise ValidationError("not an alternating sign matrix")
    return a


def asm_to_gog(a: Asm) -> Triangle:
    """Row i lists the 1-positions in the sum of the first i rows."""
    _require(a)
    total = [0] * a.n
    rows = []
    for r in a.rows:
        total = [s + x for s, x in zip(total, r)]
        rows.append(tuple(j for j, s in enumerate(total, 1) if s))
    return tri.validate(Triangle("gog", a.n, tuple(rows)))


def gog_to_asm(g: Triangle) -> Asm:
    """Row i is the indicator of gog row i minus the indicator of row i - 1."""
    if g.family != "gog":
        raise ValidationError("expected a gog triangle")
    tri.validate(g)
    n = g.index
    prev = [0] * n
    rows = []
    for row in g.rows:
        cur = [0] * n
        for j in row:
            cur[j - 1] = 1
        diff = [c - p for c, p in zip(cur, prev)]
        if any(x not in (-1, 0, 1) for x in diff):  # pragma: no cover - impossible for valid gogs
            raise ValidationError(f"row difference {diff} leaves {{-1, 0, 1}}")
        rows.append(tuple(diff))
        prev = cur
    return _require(Asm(n, tuple(rows)))


def row_reverse(a: Asm) -> Asm:
    return Asm(a.n, a.rows[::-1])


def gog_involution(g: Triangle) -> Triangle:
    """Carry the ogog pyramid involution back to gog triangles."""
    if g.family != "gog":
        raise ValidationError("expected a gog triangle")
    if g.index == 1:
        return tri.validate(g)
    return tri.ogog_to_gog(pyr.phi_triangle(tri.gog_to_ogog(g)))


def enumerate_asm(n: int, force: bool = False) -> Iterator[Asm]:
    """ASMs of size n in the order of their gog triangles."""
    if n > MAX_ENUMERATE_N and not force:
        raise Infeasible(f"ASM enumeration is limited to n <= {MAX_ENUMERATE_N}")
    for g in tri.enumerate_family("gog", n):
        yield gog_to_asm(g)


def row_reversal_failures(n: int) -> Iterator[Asm]:
    """ASMs of size n where row reversal and the gog involution disagree."""
    if n > MAX_ROWREV_N:
        raise Infeasible(f"row-reversal verification is limited to n <= {MAX_ROWREV_N}")
    for a in enumerate_asm(n):
        if asm_to_gog(row_reverse(a)) != gog_involution(asm_to_gog(a)):
            yield a


def verify_row_reversal_correspondence(n: int) -> bool:
    return next(row_reversal_failures(n), None) is None


def asm_to_json(a: Asm) -> dict:
    return {"n": a.n, "rows": [list(r) for r in a.rows]}


def asm_from_json(data: dict) -> Asm:
    try:
        a = Asm(int(data["n"]), tuple(tuple(int(x) for x in r) for r in data["rows"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed ASM JSON: {exc}") from exc
    return a
