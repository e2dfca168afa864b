"""Two-color cube pyramids and the affine color-flip maps psi and phi.

A pyramid stores a color for every admissible cube ``(i, j, k)``: the tower
over triangle cell ``(i, j)`` has height equal to the family maximum at that
cell.  Color 1 (white) cubes are present, color 0 (gray) cubes absent, and
white cubes sit below gray ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from . import triangles as tri
from .errors import DomainError, GravityError, ValidationError
from .triangles import Triangle

Cube = tuple[int, int, int]


@lru_cache(maxsize=None)
def domain(family: str, n: int) -> tuple[Cube, ...]:
    """Admissible cubes of a family, sorted by (i, j, k)."""
    top = tri.max_triangle(family, n)
    return tuple((i, j, k) for i, j in top.cells() for k in range(1, top[i, j] + 1))


@lru_cache(maxsize=None)
def _position(family: str, n: int) -> dict[Cube, int]:
    return {c: p for p, c in enumerate(domain(family, n))}


@dataclass(frozen=True)
class TwoColorPyramid:
    family: str
    index: int
    colors: tuple[int, ...]  # aligned with domain(family, index)

    def __post_init__(self):
        if len(self.colors) != len(domain(self.family, self.index)):
            raise ValidationError("color vector does not match the cube domain")
        if any(c not in (0, 1) for c in self.colors):
            raise ValidationError("cube colors must be 0 or 1")

    @classmethod
    def from_mapping(cls, family: str, n: int, color: dict[Cube, int]) -> "TwoColorPyramid":
        cubes = domain(family, n)
        if set(color) != set(cubes):
            raise DomainError(f"cube set does not match the {family} domain of index {n}")
        return cls(family, n, tuple(color[c] for c in cubes))

    def __getitem__(self, cube: Cube) -> int:
        return self.colors[_position(self.family, self.index)[cube]]

    def __contains__(self, cube: Cube) -> bool:
        return cube in _position(self.family, self.index)

    def items(self) -> Iterator[tuple[Cube, int]]:
        return zip(domain(self.family, self.index), self.colors)

    def white_count(self) -> int:
        return sum(self.colors)


def to_pyramid(t: Triangle, check: bool = True) -> TwoColorPyramid:
    """Tower (i, j) gets ``t(i, j)`` white cubes below the remaining gray ones.

    ``check=False`` skips triangle validation (entries must still fit the
    tower heights); it exists for working with isolated pyramid walls.
    """
    if check:
        tri.validate(t)
    top = tri.max_triangle(t.family, t.index)
    if len(t.rows) != len(top.rows) or any(len(r) != len(s) for r, s in zip(t.rows, top.rows)):
        raise ValidationError("triangle shape does not match its family")
    colors = []
    for i, j, k in domain(t.family, t.index):
        h = t[i, j]
        if not 0 <= h <= top[i, j]:
            raise ValidationError(f"entry {h} at ({i},{j}) exceeds the tower height")
        colors.append(1 if k <= h else 0)
    return TwoColorPyramid(t.family, t.index, tuple(colors))


def tower_heights(p: TwoColorPyramid) -> Triangle:
    """Count white cubes per tower, insisting on gravity."""
    top = tri.max_triangle(p.family, p.index)
    rows = []
    for i, row in enumerate(top.rows, 1):
        out = []
        for j, height in enumerate(row, 1):
            column = [p[i, j, k] for k in range(1, height + 1)]
            white = sum(column)
            if any(column[k] for k in range(white, height)):
                raise GravityError(f"tower ({i},{j}) has a white cube above a gray one",
                                   "gravity", (i, j))
            out.append(white)
        rows.append(tuple(out))
    return Triangle(p.family, p.index, tuple(rows))


def from_pyramid(p: TwoColorPyramid) -> Triangle:
    """Read the triangle back from a pyramid and validate it in its family."""
    return tri.validate(tower_heights(p))


def _cube_rules(family: str):
    """Pairwise cube inequalities ``color(a) >= color(b)`` as (tag, offset_a, offset_b)."""
    if family == "omagog":
        return [("OM3", (1, 0, 0), (0, 0, 0)), ("OM4", (0, 1, 0), (0, 0, 0))]
    if family == "kagog":
        return [("P2", (0, 0, 0), (1, 0, 0)), ("P3", (0, 0, 0), (0, -1, -1))]
    if family == "ogog":
        return [("OG3", (0, 1, 0), (0, 0, 0)), ("OG4", (-1, 0, 0), (0, 0, 0)),
                ("OG5", (1, 1, -1), (0, 0, 0))]
    return None


def pyramid_violation(p: TwoColorPyramid) -> tuple[str, Cube] | None:
    """First violated pyramid inequality as ``(tag, cube)``, or None.

    Gravity is always checked.  Omagog, kagog and ogog pyramids are checked
    cube by cube against their inequality systems; magog and gog pyramids
    are checked through their triangle reading.
    """
    for (i, j, k), c in p.items():
        if (i, j, k + 1) in p and p[i, j, k + 1] > c:
            return ("gravity", (i, j, k))
    rules = _cube_rules(p.family)
    if rules is None:
        v = tri.first_violation(tower_heights(p))
        return None if v is None else (v.axiom, (*v.cell, 0))
    for cube, _ in p.items():
        for tag, da, db in rules:
            a = tuple(x + d for x, d in zip(cube, da))
            b = tuple(x + d for x, d in zip(cube, db))
            if a in p and b in p and p[a] < p[b]:
                return (tag, cube)
    return None


def check_pyramid(p: TwoColorPyramid) -> TwoColorPyramid:
    bad = pyramid_violation(p)
    if bad is not None:
        tag, cube = bad
        raise ValidationError(f"{p.family} pyramid violates {tag} at {cube}", tag, cube)
    return p


def psi(p: TwoColorPyramid) -> TwoColorPyramid:
    """Omagog pyramid to kagog pyramid: cube (i,j,k) flips color and moves to (n-k, n-j, i-j+1)."""
    if p.family != "omagog":
        raise ValidationError("psi expects an omagog pyramid")
    n = p.index
    image = {(n - k, n - j, i - j + 1): 1 - c for (i, j, k), c in p.items()}
    return TwoColorPyramid.from_mapping("kagog", n, image)


def psi_inverse(p: TwoColorPyramid) -> TwoColorPyramid:
    """Kagog pyramid back to omagog: (a, b, c) came from (c + n - b - 1, n - b, n - a)."""
    if p.family != "kagog":
        raise ValidationError("psi_inverse expects a kagog pyramid")
    n = p.index
    image = {(c + n - b - 1, n - b, n - a): 1 - col for (a, b, c), col in p.items()}
    return TwoColorPyramid.from_mapping("omagog", n, image)


def phi(p: TwoColorPyramid) -> TwoColorPyramid:
    """Ogog pyramid involution: cube (i,j,k) flips color and moves to (n-i, k, j)."""
    if p.family != "ogog":
        raise ValidationError("phi expects an ogog pyramid")
    n = p.index
    image = {(n - i, k, j): 1 - c for (i, j, k), c in p.items()}
    return TwoColorPyramid.from_mapping("ogog", n, image)


def psi_triangle(t: Triangle) -> Triangle:
    """Omagog triangle to kagog triangle of the same index."""
    if t.family != "omagog":
        raise ValidationError("psi expects an omagog triangle")
    return from_pyramid(psi(to_pyramid(t)))


def psi_inverse_triangle(t: Triangle) -> Triangle:
    if t.family != "kagog":
        raise ValidationError("psi_inverse expects a kagog triangle")
    return from_pyramid(psi_inverse(to_pyramid(t)))


def magog_to_kagog(m: Triangle) -> Triangle:
    return psi_triangle(tri.magog_to_omagog(m))


def kagog_to_magog(k: Triangle) -> Triangle:
    return tri.omagog_to_magog(psi_inverse_triangle(k))


def phi_triangle(t: Triangle) -> Triangle:
    if t.family != "ogog":
        raise ValidationError("phi expects an ogog triangle")
    return from_pyramid(phi(to_pyramid(t)))


def render_layers(p: TwoColorPyramid) -> str:
    """One grid per height, bottom layer first; ``#`` white, ``.`` gray.

    Cells whose tower does not reach the layer are blank.
    """
    top = tri.max_triangle(p.family, p.index)
    height = max(top.flat(), default=0)
    blocks = []
    for k in range(1, height + 1):
        lines = [f"layer {k}"]
        for i, row in enumerate(top.rows, 1):
            chars = []
            for j in range(1, len(row) + 1):
                if (i, j, k) in p:
                    chars.append("#" if p[i, j, k] else ".")
                else:
                    chars.append(" ")
            lines.append(" ".join(chars).rstrip())
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks)


def pyramid_to_json(p: TwoColorPyramid) -> dict:
    return {
        "family": p.family,
        "index": p.index,
        "cubes": [{"i": i, "j": j, "k": k, "color": c} for (i, j, k), c in p.items()],
    }


def pyramid_from_json(data: dict) -> TwoColorPyramid:
    try:
        family = str(data["family"])
        n = int(data["index"])
        color = {(int(c["i"]), int(c["j"]), int(c["k"])): int(c["color"]) for c in data["cubes"]}
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed pyramid JSON: {exc}") from exc
    if family not in tri.FAMILIES:
        raise ValidationError(f"unknown triangle family {family!r}")
    try:
        return TwoColorPyramid.from_mapping(family, n, color)
    except DomainError as exc:
        raise ValidationError(str(exc)) from exc
