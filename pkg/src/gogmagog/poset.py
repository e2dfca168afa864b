"""Finite posets over subsets of [n].

Relations are stored as one integer bitmask per element: bit ``b`` of
``up[a]`` is set when ``elements[a] <= elements[b]``.  Element counts are
tiny (at most 29 for B_{7,2}), so closure and enumeration work directly on
Python ints.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import CycleError, ValidationError

Subset = tuple[int, ...]


def canonical_key(s: Subset) -> tuple[int, Subset]:
    """Sort key: cardinality first, then the member list."""
    return (len(s), s)


def subset_label(s: Subset) -> str:
    """Label in the ``21`` style, larger member first."""
    if not s:
        return "∅"
    sep = "" if all(x < 10 for x in s) else ","
    return sep.join(str(x) for x in reversed(s))


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _warshall(rows: Sequence[int]) -> list[int]:
    out = list(rows)
    for k in range(len(out)):
        bk = 1 << k
        rk = out[k]
        for i, ri in enumerate(out):
            if ri & bk:
                out[i] = ri | rk
    return out


def close_bits(rows: Sequence[int]) -> list[int]:
    """Reflexive-transitive closure of a relation given as bitmask rows."""
    return _warshall([r | (1 << a) for a, r in enumerate(rows)])


def transitive_closure(relation) -> list[list[bool]]:
    """Smallest transitive superset of a square boolean matrix."""
    m = len(relation)
    rows = []
    for a in range(m):
        if len(relation[a]) != m:
            raise ValidationError("relation matrix is not square")
        rows.append(sum(1 << b for b in range(m) if relation[a][b]))
    closed = _warshall(rows)
    return [[bool(closed[a] >> b & 1) for b in range(m)] for a in range(m)]


@dataclass(frozen=True)
class Poset:
    """A finite relation over subset elements.

    ``up[a]`` is the bitmask of elements ``b`` with ``a <= b``.  Instances
    built through :meth:`from_pairs` are always valid posets; the raw
    constructor does not check anything, so :func:`is_valid_poset` can be
    used on hand-built relations.
    """

    n: int
    elements: tuple[Subset, ...]
    up: tuple[int, ...]
    kind: str | None = None

    @classmethod
    def from_pairs(cls, n: int, elements: Iterable[Subset], pairs: Iterable[tuple[int, int]],
                   kind: str | None = None) -> "Poset":
        elements = tuple(tuple(e) for e in elements)
        rows = [0] * len(elements)
        for a, b in pairs:
            rows[a] |= 1 << b
        p = cls(n, elements, tuple(close_bits(rows)), kind)
        _check_antisymmetric(p)
        return p

    @classmethod
    def from_matrix(cls, n: int, elements: Iterable[Subset], leq, kind: str | None = None) -> "Poset":
        elements = tuple(tuple(e) for e in elements)
        m = len(elements)
        up = tuple(sum(1 << b for b in range(m) if leq[a][b]) for a in range(m))
        return cls(n, elements, up, kind)

    def __len__(self) -> int:
        return len(self.elements)

    @cached_property
    def _index(self) -> dict[Subset, int]:
        return {e: a for a, e in enumerate(self.elements)}

    def index(self, s: Iterable[int]) -> int:
        return self._index[tuple(sorted(s))]

    def le(self, a: int, b: int) -> bool:
        return bool(self.up[a] >> b & 1)

    def lt(self, a: int, b: int) -> bool:
        return a != b and self.le(a, b)

    def le_sets(self, x: Iterable[int], y: Iterable[int]) -> bool:
        return self.le(self.index(x), self.index(y))

    def comparable(self, a: int, b: int) -> bool:
        return self.le(a, b) or self.le(b, a)

    @property
    def leq(self) -> list[list[bool]]:
        m = len(self.elements)
        return [[bool(self.up[a] >> b & 1) for b in range(m)] for a in range(m)]

    @cached_property
    def down(self) -> tuple[int, ...]:
        """``down[b]`` is the bitmask of ``a`` with ``a <= b``."""
        m = len(self.elements)
        rows = [0] * m
        for a in range(m):
            for b in _bits(self.up[a]):
                rows[b] |= 1 << a
        return tuple(rows)

    def with_kind(self, kind: str | None) -> "Poset":
        return Poset(self.n, self.elements, self.up, kind)


def _check_antisymmetric(p: Poset) -> None:
    for a, row in enumerate(p.up):
        for b in _bits(row & ~(1 << a)):
            if p.up[b] >> a & 1:
                raise CycleError(
                    f"{subset_label(p.elements[a])} and {subset_label(p.elements[b])} lie on a cycle"
                )


def is_valid_poset(p: Poset) -> bool:
    """True iff the relation is reflexive, antisymmetric and transitive."""
    m = len(p.elements)
    if len(set(p.elements)) != m or len(p.up) != m:
        return False
    for a, row in enumerate(p.up):
        if not row >> a & 1:
            return False
        for b in _bits(row):
            if b != a and p.up[b] >> a & 1:
                return False
            if p.up[b] & ~row:
                return False
    return True


def refine_with(p: Poset, extra: Iterable[tuple[int, int]]) -> Poset:
    """Close ``p`` together with the extra ``a <= b`` pairs.

    Raises :class:`CycleError` when the result is not antisymmetric.
    """
    rows = list(p.up)
    for a, b in extra:
        rows[a] |= 1 << b
    q = Poset(p.n, p.elements, tuple(close_bits(rows)), p.kind)
    _check_antisymmetric(q)
    return q


def hasse_covers(p: Poset) -> list[tuple[int, int]]:
    """All pairs (a, b) such that b covers a, sorted."""
    covers = []
    for a, row in enumerate(p.up):
        strict = row & ~(1 << a)
        for b in _bits(strict):
            # b covers a unless some c strictly between exists
            between = strict & p.down[b] & ~(1 << b)
            if not between:
                covers.append((a, b))
    return sorted(covers)


def incomparable_pairs(p: Poset) -> list[tuple[int, int]]:
    m = len(p.elements)
    return [(a, b) for a in range(m) for b in range(a + 1, m) if not p.comparable(a, b)]


def linear_extensions(p: Poset) -> Iterator[tuple[int, ...]]:
    """Yield every linear extension as a tuple of element indices.

    Sequences come out in lexicographic order: at each step the candidates
    (elements whose strict predecessors are all placed) are tried in
    increasing index order.
    """
    m = len(p.elements)
    preds = [d & ~(1 << b) for b, d in enumerate(p.down)]
    full = (1 << m) - 1
    seq: list[int] = []

    def extend(placed: int) -> Iterator[tuple[int, ...]]:
        if placed == full:
            yield tuple(seq)
            return
        for e in _bits(full & ~placed):
            if preds[e] & ~placed == 0:
                seq.append(e)
                yield from extend(placed | 1 << e)
                seq.pop()

    yield from extend(0)


def count_linear_extensions(p: Poset) -> int:
    """Number of linear extensions, by dynamic programming over order ideals."""
    m = len(p.elements)
    preds = [d & ~(1 << b) for b, d in enumerate(p.down)]
    full = (1 << m) - 1

    @lru_cache(maxsize=None)
    def count(placed: int) -> int:
        if placed == full:
            return 1
        return sum(count(placed | 1 << e) for e in _bits(full & ~placed) if preds[e] & ~placed == 0)

    return count(0)


@dataclass(frozen=True)
class LatticeCheck:
    is_lattice: bool
    meet: tuple[tuple[int, ...], ...] | None = None
    join: tuple[tuple[int, ...], ...] | None = None


def _least(bound: int, rows: Sequence[int]) -> int | None:
    # the element of `bound` lying below (in `rows` sense) every other member
    for c in _bits(bound):
        if rows[c] & bound == bound:
            return c
    return None


def lattice_check(p: Poset) -> LatticeCheck:
    """Decide whether every pair has a join and a meet; return both tables if so."""
    m = len(p.elements)
    meet = [[0] * m for _ in range(m)]
    join = [[0] * m for _ in range(m)]
    for a in range(m):
        for b in range(a, m):
            j = _least(p.up[a] & p.up[b], p.up)
            mt = _least(p.down[a] & p.down[b], p.down)
            if j is None or mt is None:
                return LatticeCheck(False)
            join[a][b] = join[b][a] = j
            meet[a][b] = meet[b][a] = mt
    return LatticeCheck(True, tuple(map(tuple, meet)), tuple(map(tuple, join)))


def poset_to_json(p: Poset) -> dict:
    out = {
        "n": p.n,
        "elements": [list(e) for e in p.elements],
        "covers": [list(c) for c in hasse_covers(p)],
    }
    if p.kind is not None:
        out["kind"] = p.kind
    return out


def poset_from_json(data: dict) -> Poset:
    try:
        n = int(data["n"])
        elements = [tuple(int(x) for x in e) for e in data["elements"]]
        covers = [(int(a), int(b)) for a, b in data["covers"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed poset JSON: {exc}") from exc
    m = len(elements)
    if any(not (0 <= a < m and 0 <= b < m) for a, b in covers):
        raise ValidationError("cover index out of range")
    if sorted(elements, key=canonical_key) != elements or len(set(elements)) != m:
        raise ValidationError("elements are not in canonical order")
    try:
        return Poset.from_pairs(n, elements, covers, data.get("kind"))
    except CycleError as exc:
        raise ValidationError(str(exc)) from exc
