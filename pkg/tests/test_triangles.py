import pytest
from hypothesis import given, strategies as st

from gogmagog import triangles as tri
from gogmagog.errors import ShapeError, ValidationError
from gogmagog.triangles import triangle

import figures

ASM_SEQ = [1, 1, 2, 7, 42, 429, 7436, 218348]


def test_validate_examples():
    assert tri.is_valid(triangle("kagog", 3, "1; 1 2"))
    assert tri.is_valid(triangle("magog", 3, "1; 1 1; 1 2 3"))
    v = tri.first_violation(triangle("kagog", 3, "1; 2 1"))
    assert v.axiom == "K2" and v.cell == (2, 1)


@pytest.mark.parametrize("family, text, axiom, cell", [
    ("kagog", "0; 1 2", "K3", (2, 1)),
    ("kagog", "1; 1 1", "K4", (2, 2)),
    ("magog", "1; 1 1; 1 2 1", "M4", (3, 3)),
    ("magog", "1; 2 2; 1 2 2", "M2", (2, 1)),
    ("omagog", "1; 0 1", "OM3", (2, 1)),
    ("omagog", "0; 1 0", "OM4", (2, 2)),
    ("gog", "2; 2 2; 1 2 3", "G3", (2, 2)),
    ("gog", "1; 2 3; 1 2 3", "G4", (2, 1)),
    ("gog", "3; 1 2; 1 2 3", "G5", (2, 2)),
    ("ogog", "1; 1 0", "OG3", (2, 2)),
    ("ogog", "0; 1 1", "OG4", (2, 1)),
    ("ogog", "3; 1 3; 0 0 1; 0 0 0 1", "OG5", (3, 3)),
    ("ogog", "3; 0 1", "OG2", (1, 1)),
])
def test_each_axiom_is_reported(family, text, axiom, cell):
    index = 5 if text.count(";") == 3 else 3
    t = triangle(family, index, text)
    with pytest.raises(ValidationError) as info:
        tri.validate(t)
    assert info.value.axiom == axiom and info.value.cell == cell


def test_shape_errors():
    with pytest.raises(ShapeError):
        tri.validate(triangle("kagog", 3, "1"))
    with pytest.raises(ShapeError):
        tri.validate(triangle("gog", 2, "1; 1"))
    with pytest.raises(ShapeError):
        tri.validate(tri.Triangle("magog", 0, ()))


def test_listed_families():
    assert sorted(tri.enumerate_family("kagog", 3), key=lambda t: t.flat()) == \
        sorted(figures.KAGOG_3, key=lambda t: t.flat())
    assert set(tri.enumerate_family("magog", 3)) == set(figures.MAGOG_3)
    assert list(tri.enumerate_family("gog", 3)) == figures.GOG_3
    assert list(tri.enumerate_family("magog", 1)) == [triangle("magog", 1, "1")]


@pytest.mark.parametrize("family", tri.FAMILIES)
@pytest.mark.parametrize("n", range(1, 7))
def test_family_counts(family, n):
    items = list(tri.enumerate_family(family, n))
    assert len(items) == len(set(items)) == ASM_SEQ[n] == tri.asm_count_formula(n)
    assert [t.flat() for t in items] == sorted(t.flat() for t in items)
    assert all(tri.is_valid(t) for t in items)


def test_min_max():
    assert tri.min_triangle("magog", 3) == triangle("magog", 3, "1; 1 1; 1 1 1")
    assert tri.max_triangle("magog", 3) == triangle("magog", 3, "1; 1 2; 1 2 3")
    assert tri.min_triangle("gog", 3) == triangle("gog", 3, "1; 1 2; 1 2 3")
    assert tri.max_triangle("gog", 3) == triangle("gog", 3, "3; 2 3; 1 2 3")


@pytest.mark.parametrize("family", tri.FAMILIES)
@pytest.mark.parametrize("n", range(1, 5))
def test_min_max_are_extremes_and_lattice_closed(family, n):
    items = list(tri.enumerate_family(family, n))
    lo, hi = tri.min_triangle(family, n), tri.max_triangle(family, n)
    assert lo in items and hi in items
    for a in items:
        assert all(x <= y <= z for x, y, z in zip(lo.flat(), a.flat(), hi.flat()))
        for b in items:
            assert tri.is_valid(tri.entrywise_min(a, b))
            assert tri.is_valid(tri.entrywise_max(a, b))


def test_magog_omagog_examples():
    assert tri.magog_to_omagog(figures.MAGOG_3[1]) == triangle("omagog", 3, "0; 0 1")
    assert tri.magog_to_omagog(tri.min_triangle("magog", 4)) == tri.min_triangle("omagog", 4)
    assert [tri.magog_to_omagog(m) for m in figures.MAGOG_3] == figures.OMAGOG_3


def test_gog_ogog_examples():
    assert tri.gog_to_ogog(figures.ROWREV_G) == figures.ROWREV_OG
    assert tri.gog_to_ogog(tri.min_triangle("gog", 4)) == tri.min_triangle("ogog", 4)
    assert [tri.gog_to_ogog(g) for g in figures.GOG_3] == figures.OGOG_3


def _dominated(a, b):
    return all(x <= y for x, y in zip(a.flat(), b.flat()))


@pytest.mark.parametrize("n", range(1, 6))
def test_zeroing_maps_are_order_isomorphisms(n):
    for src, fwd, back in [("magog", tri.magog_to_omagog, tri.omagog_to_magog),
                           ("gog", tri.gog_to_ogog, tri.ogog_to_gog)]:
        items = list(tri.enumerate_family(src, n))
        images = [fwd(t) for t in items]
        assert len(set(images)) == len(items)
        assert all(tri.is_valid(i) and back(i) == t for i, t in zip(images, items))
        if n <= 4:
            for a, ia in zip(items, images):
                for b, ib in zip(items, images):
                    assert _dominated(a, b) == _dominated(ia, ib)


def test_conversions_reject_wrong_family():
    with pytest.raises(ValidationError):
        tri.magog_to_omagog(figures.GOG_3[0])
    with pytest.raises(ValidationError):
        tri.gog_to_ogog(triangle("gog", 3, "1; 1 1; 1 2 3"))


@pytest.mark.parametrize("n", range(1, 7))
def test_magogs_satisfy_the_gelfand_tsetlin_conditions(n):
    for t in tri.enumerate_family("magog", n):
        assert all(t[j, j] <= j for j in range(1, n + 1))
        assert all(t[i, j] <= t[i + 1, j + 1] for i, j in t.cells() if i < n)


def test_gelfand_tsetlin_conditions_alone_admit_more():
    # weak columns, a diagonal cap and weak diagonals, yet column 1 exceeds 1
    t = triangle("magog", 2, "1; 2 2")
    assert t[1, 1] <= 1 and t[2, 2] <= 2 and t[1, 1] <= t[2, 2] and t[1, 1] <= t[2, 1]
    assert tri.first_violation(t).axiom == "M2"


def test_formulas():
    assert [tri.ballot_number(n) for n in range(1, 8)] == [1, 1, 2, 12, 286, 33592, 23178480]
    assert [tri.asm_count_formula(n) for n in range(8)] == ASM_SEQ
    assert [tri.catalan(n) for n in range(9)] == [1, 1, 2, 5, 14, 42, 132, 429, 1430]
    with pytest.raises(ValueError):
        tri.ballot_number(0)
    with pytest.raises(ValueError):
        tri.asm_count_formula(-1)


def test_json_and_rendering():
    t = triangle("kagog", 3, "1; 1 2")
    assert tri.triangle_from_json(tri.triangle_to_json(t)) == t
    assert tri.render_flat(t) == "1\n1 2"
    assert tri.render_flat(triangle("ogog", 8, "5; 3 10")) == " 5\n 3 10"
    assert str(t) == "(1; 1 2)"
    with pytest.raises(ValidationError):
        tri.triangle_from_json({"family": "dragon", "index": 3, "rows": []})
    with pytest.raises(ValidationError):
        tri.triangle_from_json({"family": "kagog", "rows": []})


def test_index_one_edge_cases():
    for family in ("kagog", "omagog", "ogog"):
        assert list(tri.enumerate_family(family, 1)) == [tri.Triangle(family, 1, ())]


@given(st.sampled_from(tri.FAMILIES), st.integers(2, 5), st.data())
def test_random_perturbation_is_caught_or_valid(family, n, data):
    items = list(tri.enumerate_family(family, n))
    t = data.draw(st.sampled_from(items))
    cells = list(t.cells())
    i, j = data.draw(st.sampled_from(cells))
    delta = data.draw(st.sampled_from([-1, 1]))
    rows = [list(r) for r in t.rows]
    rows[i - 1][j - 1] += delta
    bumped = tri.Triangle(family, n, tuple(map(tuple, rows)))
    assert tri.is_valid(bumped) == (bumped in set(items))
