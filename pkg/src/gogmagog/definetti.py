"""The de Finetti lattice F_{n,2}, its refinements, and the bijections around them.

Elements are subsets of [n] of size at most two, written as increasing
tuples and kept in canonical order (size, then lexicographic).  Doubleton
``{j, i}`` with ``j > i`` is the tuple ``(i, j)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from . import poset as pc
from .errors import (BadK, CycleError, Infeasible, InconsistentPlacement, InvalidN, NotDeFinetti,
                     NotUniversallyComparable, ValidationError)
from .poset import Poset, Subset, canonical_key
from .triangles import Triangle, enumerate_family, validate

MAX_TOTAL_ORDER_N = 5


def bn2_elements(n: int) -> tuple[Subset, ...]:
    if n < 1:
        raise InvalidN(f"n must be at least 1, got {n}")
    elems = [()] + [(i,) for i in range(1, n + 1)] + list(combinations(range(1, n + 1), 2))
    return tuple(sorted(elems, key=canonical_key))


def _inclusion_pairs(elements: Sequence[Subset]) -> list[tuple[int, int]]:
    sets = [frozenset(e) for e in elements]
    return [(a, b) for a, x in enumerate(sets) for b, y in enumerate(sets) if a != b and x < y]


def build_bn2(n: int) -> Poset:
    """Subsets of [n] of size at most two, ordered by inclusion."""
    elements = bn2_elements(n)
    return Poset.from_pairs(n, elements, _inclusion_pairs(elements), kind="bn2")


def _r1_r2_pairs(elements: Sequence[Subset]) -> list[tuple[int, int]]:
    pairs = []
    for a, x in enumerate(elements):
        for b, y in enumerate(elements):
            if len(x) == len(y) == 1 and x[0] < y[0]:
                pairs.append((a, b))
            elif len(x) == len(y) == 2:
                (i, j), (k, l) = x, y
                if (i < k and j <= l) or (i <= k and j < l):
                    pairs.append((a, b))
    return pairs


def build_fn2(n: int) -> Poset:
    """Transitive closure of inclusion together with the R1 and R2 relations."""
    elements = bn2_elements(n)
    pairs = _inclusion_pairs(elements) + _r1_r2_pairs(elements)
    return Poset.from_pairs(n, elements, pairs, kind="fn2")


def _padded(x: Iterable[int]) -> tuple[int, int]:
    # {j} is read as {j, 0} and the empty set as {0, 0}; returns (larger, smaller)
    s = sorted(x)
    s = [0] * (2 - len(s)) + s
    return s[1], s[0]


def _unpad(larger: int, smaller: int) -> Subset:
    return tuple(x for x in (smaller, larger) if x)


def fn2_meet(x: Iterable[int], y: Iterable[int]) -> Subset:
    (j, i), (l, k) = _padded(x), _padded(y)
    return _unpad(min(j, l), min(i, k))


def fn2_join(x: Iterable[int], y: Iterable[int]) -> Subset:
    (j, i), (l, k) = _padded(x), _padded(y)
    return _unpad(max(j, l), max(i, k))


def satisfies_definetti(p: Poset) -> bool:
    """Check (F1) and (F2) on a poset whose elements are subsets of [n].

    (F2) is checked in both directions wherever it applies: for disjoint
    ``Z`` with ``X ∪ Z`` and ``Y ∪ Z`` present, ``X < Y`` iff
    ``X ∪ Z < Y ∪ Z``.
    """
    index = {frozenset(e): a for a, e in enumerate(p.elements)}
    # (F1): the empty set and singletons form the chain 0 < 1 < ... < n
    chain = [index.get(frozenset())] + [index.get(frozenset([i])) for i in range(1, p.n + 1)]
    chain = [c for c in chain if c is not None]
    for a, b in zip(chain, chain[1:]):
        if not p.lt(a, b):
            return False
    ground = frozenset(range(1, p.n + 1))
    sets = list(index)
    for x in sets:
        for y in sets:
            if x == y:
                continue
            rest = ground - x - y
            for z in sets:
                if not z or not z <= rest:
                    continue
                xz, yz = index.get(x | z), index.get(y | z)
                if xz is None or yz is None:
                    continue
                if p.lt(index[x], index[y]) != p.lt(xz, yz):
                    return False
    return True


def undetermined_doubletons(n: int, k: int) -> list[Subset]:
    """I_k: doubletons {j, i} with i < j < k, incomparable with {k} in F_{n,2}."""
    if not 3 <= k <= n:
        raise BadK(f"k must satisfy 3 <= k <= n, got k={k}, n={n}")
    return sorted(combinations(range(1, k), 2), key=canonical_key)


@dataclass(frozen=True)
class SingletonPlacement:
    """How singleton {k} sits among I_k.

    ``counts[m - 2]`` is the number of doubletons {m, j}, j < m, strictly
    above {k}, for m = 2 .. k-1.
    """

    k: int
    counts: tuple[int, ...]

    def __post_init__(self):
        if len(self.counts) != self.k - 2:
            raise ValidationError(f"placement for k={self.k} needs {self.k - 2} counts")
        if not in_list_family(self.counts):
            raise ValidationError(f"{self.counts} is not zeros followed by a strictly increasing run")
        if any(c > m - 1 for m, c in enumerate(self.counts, 2)):
            raise ValidationError(f"{self.counts} exceeds the row lengths")


def in_list_family(values: Sequence[int]) -> bool:
    """Membership in L([k]): zeros, then strictly increasing values in [1..k]."""
    k = len(values)
    positive = [v for v in values if v]
    start = k - len(positive)
    if any(values[:start]) or list(values[start:]) != positive:
        return False
    return all(1 <= v <= k for v in positive) and all(a < b for a, b in zip(positive, positive[1:]))


def encode_placement(k: int, above: Iterable[Iterable[int]]) -> SingletonPlacement:
    """Encode the comparisons of {k} against I_k.

    ``above`` lists the doubletons of I_k lying above {k}; the rest of I_k
    lies below.  The set must be closed upwards in F_{n,2}, otherwise the
    comparisons cannot be consistent.
    """
    if k < 3:
        raise BadK(f"k must be at least 3, got {k}")
    region = set(undetermined_doubletons(k, k))
    up = {tuple(sorted(d)) for d in above}
    if not up <= region:
        raise InconsistentPlacement(f"{sorted(up - region)} are not in I_{k}")
    for (i, j) in up:
        for (a, b) in region:
            if (a, b) not in up and i <= a and j <= b:
                raise InconsistentPlacement(
                    f"{{{k}}} below {{{j},{i}}} forces {{{k}}} below {{{b},{a}}}")
    counts = tuple(sum(1 for (i, j) in up if j == m) for m in range(2, k))
    return SingletonPlacement(k, counts)


def decode_placement(s: SingletonPlacement) -> list[Subset]:
    """Doubletons of I_k above {k}: {m, j} with j > m - 1 - c_m."""
    return sorted(((j, m) for m, c in enumerate(s.counts, 2) for j in range(m - c, m)),
                  key=canonical_key)


def placement_of(p: Poset, k: int) -> SingletonPlacement:
    """Restrict a refinement of F_{n,2} to I_k ∪ {k} and encode it."""
    sk = p.index((k,))
    above = []
    for d in undetermined_doubletons(p.n, k):
        a = p.index(d)
        if p.lt(sk, a):
            above.append(d)
        elif not p.lt(a, sk):
            raise NotUniversallyComparable(f"{{{k}}} is incomparable with {pc.subset_label(d)}")
    return encode_placement(k, above)


def refinement_to_kagog(p: Poset) -> Triangle:
    """Row k-2 of the kagog triangle encodes how {k} sits among I_k."""
    n = p.n
    for a, x in enumerate(p.elements):
        if len(x) == 1:
            for b in range(len(p.elements)):
                if not p.comparable(a, b):
                    raise NotUniversallyComparable(
                        f"{pc.subset_label(x)} is incomparable with {pc.subset_label(p.elements[b])}")
    rows = tuple(placement_of(p, k).counts for k in range(3, n + 1))
    return validate(Triangle("kagog", n - 1, rows))


def _placement_pairs(p: Poset, k: int, above: Iterable[Subset]) -> list[tuple[int, int]]:
    sk = p.index((k,))
    up = set(above)
    return [(sk, p.index(d)) if d in up else (p.index(d), sk) for d in undetermined_doubletons(p.n, k)]


def kagog_to_refinement(t: Triangle) -> Poset:
    """Close F_{n,2} together with the singleton placements read off each row."""
    if t.family != "kagog":
        raise ValidationError("expected a kagog triangle")
    validate(t)
    n = t.index + 1
    base = build_fn2(n)
    extra = []
    for k in range(3, n + 1):
        placement = SingletonPlacement(k, t.rows[k - 3])
        extra += _placement_pairs(base, k, decode_placement(placement))
    try:
        return pc.refine_with(base, extra).with_kind("fn21-member")
    except CycleError as exc:  # pragma: no cover - valid kagog triangles never cycle
        raise AssertionError(f"kagog triangle {t} produced a cycle: {exc}") from exc


def poset_key(p: Poset) -> tuple:
    return (p.n, p.elements, p.up)


def _direct_fn21(n: int) -> Iterator[Poset]:
    # Try every sign pattern of {k} against I_k, one k at a time, keeping
    # only patterns whose closure stays antisymmetric.
    base = build_fn2(n).with_kind("fn21-member")

    def extend(p: Poset, k: int) -> Iterator[Poset]:
        if k > n:
            yield p
            return
        region = undetermined_doubletons(n, k)
        sk = p.index((k,))
        for mask in range(1 << len(region)):
            pairs = [(sk, p.index(d)) if mask >> b & 1 else (p.index(d), sk)
                     for b, d in enumerate(region)]
            try:
                q = pc.refine_with(p, pairs)
            except CycleError:
                continue
            yield from extend(q, k + 1)

    yield from extend(base, 3)


def enumerate_fn21(n: int, mode: str = "via-kagog") -> Iterator[Poset]:
    """Members of F^1_{n,2}, ordered by their kagog encoding.

    ``via-kagog`` decodes every kagog triangle of index n-1.  ``direct``
    backtracks over all singleton-versus-doubleton decisions and keeps the
    acyclic ones; it never consults the kagog encoding except to sort.
    """
    if n < 2:
        raise InvalidN(f"n must be at least 2, got {n}")
    if mode == "via-kagog":
        for t in enumerate_family("kagog", n - 1):
            yield kagog_to_refinement(t)
    elif mode == "direct":
        members = list(_direct_fn21(n))
        members.sort(key=lambda p: refinement_to_kagog(p).flat())
        yield from members
    else:
        raise ValueError(f"unknown mode {mode!r}")


@dataclass(frozen=True)
class ShiftedTableau:
    """Shifted staircase tableau; row k (1-based) has n - k + 1 boxes, shifted right by k - 1."""

    n: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(tuple(int(x) for x in r) for r in self.rows))

    def is_valid(self) -> bool:
        n = self.n
        if len(self.rows) != n or any(len(r) != n - k for k, r in enumerate(self.rows)):
            return False
        values = sorted(x for r in self.rows for x in r)
        if values != list(range(1, n * (n + 1) // 2 + 1)):
            return False
        for k, row in enumerate(self.rows):
            if any(a >= b for a, b in zip(row, row[1:])):
                return False
            # box t of row k sits under box t+1 of row k-1
            if k and any(self.rows[k - 1][t + 1] >= row[t] for t in range(len(row))):
                return False
        return True


def _grid_cell(s: Subset) -> tuple[int, int]:
    # {i, k-1} sits in row k at offset i - k, with {i} read as {i, 0}
    larger, smaller = _padded(s)
    row = smaller + 1
    return row, larger - row


def le_to_tableau(order: Sequence[Iterable[int]], n: int | None = None) -> ShiftedTableau:
    """Write position l into the box of the l-th set of a de Finetti total order."""
    order = [tuple(sorted(s)) for s in order]
    if order and order[0] == ():
        order = order[1:]
    if n is None:
        n = max((x for s in order for x in s), default=0)
    if sorted(order, key=canonical_key) != list(bn2_elements(n)[1:]):
        raise NotDeFinetti("order does not list every nonempty subset of size at most 2 once")
    rows = [[0] * (n - k) for k in range(n)]
    for pos, s in enumerate(order, 1):
        r, t = _grid_cell(s)
        rows[r - 1][t] = pos
    tab = ShiftedTableau(n, tuple(map(tuple, rows)))
    if not tab.is_valid():
        raise NotDeFinetti("rows or columns of the tableau fail to increase")
    return tab


def tableau_to_le(tab: ShiftedTableau) -> list[Subset]:
    """Inverse of :func:`le_to_tableau` (the empty set is omitted)."""
    if not tab.is_valid():
        raise NotDeFinetti("not a shifted standard tableau of staircase shape")
    order: list[Subset] = [()] * (tab.n * (tab.n + 1) // 2)
    for r, row in enumerate(tab.rows, 1):
        for t, value in enumerate(row):
            order[value - 1] = _unpad(r + t, r - 1)
    return order


def fn2_linear_extension_orders(n: int) -> Iterator[list[Subset]]:
    """Linear extensions of F_{n,2} as lists of subsets, empty set dropped."""
    p = build_fn2(n)
    for seq in pc.linear_extensions(p):
        yield [p.elements[a] for a in seq[1:]]


def enumerate_definetti_total_orders(n: int, force: bool = False) -> Iterator[tuple[frozenset, ...]]:
    """Total orders of the power set of [n] satisfying (F1) and (F2).

    Sets are placed bottom-up.  A set may be placed once all its proper
    subsets are; (F1) fixes the singleton order, and (F2) is enforced as
    ``A < B iff A \\ B < B \\ A`` when the later of each pair is placed.
    """
    if n > MAX_TOTAL_ORDER_N and not force:
        raise Infeasible(f"de Finetti total orders are only enumerated for n <= {MAX_TOTAL_ORDER_N}")
    if n < 0:
        raise InvalidN(f"n must be non-negative, got {n}")
    size = 1 << n
    # sets as bitmasks; pos[s] is the rank of s once placed, else -1
    pos = [-1] * size
    order: list[int] = []
    universe = sorted(range(size), key=lambda s: (bin(s).count("1"), s))

    def placeable(v: int) -> bool:
        for x in range(n):
            if v >> x & 1 and pos[v & ~(1 << x)] < 0:
                return False
        if v & (v - 1) == 0 and v > 1 and pos[v >> 1] < 0:
            return False
        for w in order:
            common = w & v
            if common and pos[w & ~common] > pos[v & ~common]:
                return False
        return True

    def extend() -> Iterator[tuple[frozenset, ...]]:
        if len(order) == size:
            yield tuple(frozenset(x + 1 for x in range(n) if s >> x & 1) for s in order)
            return
        for v in universe:
            if pos[v] < 0 and placeable(v):
                pos[v] = len(order)
                order.append(v)
                yield from extend()
                order.pop()
                pos[v] = -1

    yield from extend()


def is_definetti_total_order(order: Sequence[Iterable[int]], n: int) -> bool:
    """Check (F1) and (F2) directly on a total order of the power set of [n]."""
    masks = [sum(1 << (x - 1) for x in s) for s in order]
    size = 1 << n
    if sorted(masks) != list(range(size)):
        return False
    pos = [0] * size
    for rank, m in enumerate(masks):
        pos[m] = rank
    if pos[0] != 0 or any(pos[1 << x] > pos[1 << (x + 1)] for x in range(n - 1)):
        return False
    for x in range(size):
        for y in range(size):
            if x == y:
                continue
            free = (size - 1) & ~(x | y)
            z = free
            while z:
                if (pos[x] < pos[y]) != (pos[x | z] < pos[y | z]):
                    return False
                z = (z - 1) & free
    return True


def shifted_tableau_to_json(tab: ShiftedTableau) -> dict:
    return {"n": tab.n, "rows": [list(r) for r in tab.rows]}


def shifted_tableau_from_json(data: dict) -> ShiftedTableau:
    try:
        return ShiftedTableau(int(data["n"]), tuple(tuple(r) for r in data["rows"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed tableau JSON: {exc}") from exc


def order_to_json(order: Sequence[Subset], n: int) -> dict:
    return {"n": n, "order": [list(s) for s in order]}


def order_from_json(data: dict) -> tuple[int, list[Subset]]:
    try:
        return int(data["n"]), [tuple(int(x) for x in s) for s in data["order"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed order JSON: {exc}") from exc
