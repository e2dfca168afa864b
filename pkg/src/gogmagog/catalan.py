"""Catalan-sized corners of the magog/kagog world.

Monotone sequences ``S_n``, coin pyramids ``C_n``, and their embeddings
``S'_n`` (omagog) and ``C'_n`` (kagog), tied together by sigma, rho and tau.

A monotone sequence ``s`` colours cell ``(x, y)`` of the staircase
``0 <= y <= x < n`` white when ``y >= s_x``, i.e. when it lies between the
lattice path and the diagonal.  Reading the staircase along anti-diagonals
turns white cells into coins: cell ``(x, y)`` is the coin at row ``x - y``,
position ``y``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from . import pyramids as pyr
from .errors import Infeasible, ValidationError
from .triangles import Triangle, validate

MAX_COMMUTE_N = 10


@dataclass(frozen=True)
class MonotoneSequence:
    n: int
    values: tuple[int, ...]

    def __post_init__(self):
        v = tuple(int(x) for x in self.values)
        object.__setattr__(self, "values", v)
        if len(v) != self.n:
            raise ValidationError(f"expected {self.n} values, got {len(v)}")
        if any(not 0 <= x <= i for i, x in enumerate(v)):
            raise ValidationError(f"{v} breaks 0 <= s_i <= i")
        if any(a > b for a, b in zip(v, v[1:])):
            raise ValidationError(f"{v} is not nondecreasing")


@dataclass(frozen=True)
class SubDiagonalPath:
    """Unit E/N steps from (0,0) to (n,n) that never rise above y = x."""

    n: int
    steps: str

    def __post_init__(self):
        if sorted(self.steps) != sorted("E" * self.n + "N" * self.n):
            raise ValidationError(f"path {self.steps!r} does not end at ({self.n},{self.n})")
        east = north = 0
        for step in self.steps:
            east += step == "E"
            north += step == "N"
            if north > east:
                raise ValidationError(f"path {self.steps!r} rises above the diagonal")


@dataclass(frozen=True)
class CoinPyramid:
    """Occupied positions per row, bottom row first; empty top rows are dropped.

    Row ``r`` has room for positions ``0 .. n-1-r``.  The bottom row is
    full and every higher coin rests on the two adjacent coins below it.
    """

    n: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = [tuple(sorted(set(int(p) for p in r))) for r in self.rows]
        while rows and not rows[-1]:
            rows.pop()
        object.__setattr__(self, "rows", tuple(rows))
        if self.n < 1 or not rows or rows[0] != tuple(range(self.n)):
            raise ValidationError("bottom row must hold n consecutive coins")
        for r in range(1, len(rows)):
            below = set(rows[r - 1])
            for p in rows[r]:
                if not 0 <= p <= self.n - 1 - r or p not in below or p + 1 not in below:
                    raise ValidationError(f"coin at row {r}, position {p} is unsupported")

    def has(self, r: int, p: int) -> bool:
        return r < len(self.rows) and p in self.rows[r]

    def coin_count(self) -> int:
        return sum(len(r) for r in self.rows)


def monotone_sequences(n: int) -> Iterator[MonotoneSequence]:
    """S_n in lexicographic order."""
    def extend(prefix: list[int]) -> Iterator[MonotoneSequence]:
        i = len(prefix)
        if i == n:
            yield MonotoneSequence(n, tuple(prefix))
            return
        for v in range(prefix[-1] if prefix else 0, i + 1):
            prefix.append(v)
            yield from extend(prefix)
            prefix.pop()

    yield from extend([])


def coin_pyramids(n: int) -> Iterator[CoinPyramid]:
    """C_n, built row by row from the supported positions."""
    def extend(rows: list[tuple[int, ...]]) -> Iterator[CoinPyramid]:
        below = rows[-1]
        support = [p for p in below if p + 1 in below]
        yield CoinPyramid(n, tuple(rows))
        # every nonempty subset of the supported spots, in increasing bitmask order
        for mask in range(1, 1 << len(support)):
            rows.append(tuple(p for b, p in enumerate(support) if mask >> b & 1))
            yield from extend(rows)
            rows.pop()

    yield from extend([tuple(range(n))])


def sequence_to_path(s: MonotoneSequence) -> SubDiagonalPath:
    """The path whose k-th east step runs at height s_k."""
    steps, height = [], 0
    for v in s.values:
        steps.append("N" * (v - height) + "E")
        height = v
    steps.append("N" * (s.n - height))
    return SubDiagonalPath(s.n, "".join(steps))


def path_to_sequence(p: SubDiagonalPath) -> MonotoneSequence:
    values, height = [], 0
    for step in p.steps:
        if step == "N":
            height += 1
        else:
            values.append(height)
    return MonotoneSequence(p.n, tuple(values))


def _white_cells(s: MonotoneSequence) -> Iterator[tuple[int, int]]:
    for x, v in enumerate(s.values):
        for y in range(v, x + 1):
            yield x, y


def sigma(s: MonotoneSequence) -> CoinPyramid:
    """White cell (x, y) becomes the coin at row x - y, position y."""
    rows: list[list[int]] = [[] for _ in range(s.n)]
    for x, y in _white_cells(s):
        rows[x - y].append(y)
    return CoinPyramid(s.n, tuple(map(tuple, rows)))


def sigma_inverse(c: CoinPyramid) -> MonotoneSequence:
    # column x of the staircase holds x + 1 cells, the top s_x of them gray
    return MonotoneSequence(c.n, tuple(x + 1 - sum(c.has(x - y, y) for y in range(x + 1))
                                       for x in range(c.n)))


def rho(s: MonotoneSequence) -> Triangle:
    """Omagog whose last row is (s_1, ..., s_{n-1}) and whose other rows vanish."""
    n = s.n
    rows = [(0,) * i for i in range(1, n - 1)]
    if n > 1:
        rows.append(s.values[1:])
    return validate(Triangle("omagog", n, tuple(rows)))


def in_s_prime(t: Triangle) -> bool:
    return t.family == "omagog" and all(not any(r) for r in t.rows[:-1])


def rho_inverse(t: Triangle) -> MonotoneSequence:
    validate(t)
    if not in_s_prime(t):
        raise ValidationError(f"{t} has a nonzero entry outside its last row")
    last = t.rows[-1] if t.rows else ()
    return MonotoneSequence(t.index, (0,) + tuple(last))


def tau(c: CoinPyramid) -> Triangle:
    """K(i, j) = j - 1, plus one when the coin at row i + 1 - j, position n - 1 - i is present."""
    n = c.n
    rows = tuple(tuple(j - 1 + c.has(i + 1 - j, n - 1 - i) for j in range(1, i + 1))
                 for i in range(1, n))
    return validate(Triangle("kagog", n, rows))


def in_c_prime(t: Triangle) -> bool:
    return t.family == "kagog" and all(t[i, j] in (j - 1, j) for i, j in t.cells())


def tau_inverse(t: Triangle) -> CoinPyramid:
    validate(t)
    if not in_c_prime(t):
        raise ValidationError(f"{t} has an entry other than j-1 or j in column j")
    n = t.index
    rows: list[list[int]] = [list(range(n))] + [[] for _ in range(n - 1)]
    for i, j in t.cells():
        if t[i, j] == j:
            rows[i + 1 - j].append(n - 1 - i)
    return CoinPyramid(n, tuple(map(tuple, rows)))


def commutation_failures(n: int) -> Iterator[MonotoneSequence]:
    """Sequences where sigma disagrees with tau^-1 . psi . rho."""
    if n > MAX_COMMUTE_N:
        raise Infeasible(f"commutation check is limited to n <= {MAX_COMMUTE_N}")
    for s in monotone_sequences(n):
        k = pyr.psi_triangle(rho(s))
        if not in_c_prime(k) or tau_inverse(k) != sigma(s):
            yield s


def check_commutation(n: int) -> bool:
    return next(commutation_failures(n), None) is None


def sequence_to_json(s: MonotoneSequence) -> dict:
    return {"n": s.n, "values": list(s.values)}


def sequence_from_json(data: dict) -> MonotoneSequence:
    try:
        return MonotoneSequence(int(data["n"]), tuple(data["values"]))
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed sequence JSON: {exc}") from exc


def coins_to_json(c: CoinPyramid) -> dict:
    return {"n": c.n, "rows": [list(r) for r in c.rows]}


def coins_from_json(data: dict) -> CoinPyramid:
    try:
        return CoinPyramid(int(data["n"]), tuple(tuple(r) for r in data["rows"]))
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed coin pyramid JSON: {exc}") from exc
