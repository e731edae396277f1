import math

import pytest

from subgrid.core import (
    BoxDomain,
    Candidate,
    Cell,
    GridPoint,
    GridSpec,
    cell_vertices,
    lattice_points,
    lex_less,
    position_of,
    refine,
)
from subgrid.errors import (
    InvalidCellError,
    InvalidDomainError,
    InvalidGridPointError,
)


class TestBoxDomain:
    def test_basic(self):
        box = BoxDomain((-2.0, -2.0), (2.0, 2.0))
        assert box.dim == 2
        assert box.width == (4.0, 4.0)
        assert box.center() == (0.0, 0.0)

    def test_cube(self):
        box = BoxDomain.cube(-5.12, 5.12, 3)
        assert box.lower == (-5.12,) * 3
        assert box.upper == (5.12,) * 3

    def test_rejects_inverted_bounds(self):
        with pytest.raises(InvalidDomainError):
            BoxDomain((1.0,), (0.0,))
        with pytest.raises(InvalidDomainError):
            BoxDomain((0.0,), (0.0,))

    def test_rejects_mismatched_lengths(self):
        with pytest.raises(InvalidDomainError):
            BoxDomain((0.0, 0.0), (1.0,))

    def test_rejects_empty(self):
        with pytest.raises(InvalidDomainError):
            BoxDomain((), ())

    def test_contains_and_clamp(self):
        box = BoxDomain.cube(-1.0, 1.0, 2)
        assert box.contains((0.0, 1.0))
        assert not box.contains((0.0, 1.0001))
        assert box.clamp((5.0, -5.0)) == (1.0, -1.0)


class TestGridSpec:
    def test_step_halves_per_level(self):
        box = BoxDomain.cube(-5.12, 5.12, 3)
        g1 = GridSpec(box, 1)
        assert g1.step == (10.24,) * 3
        g2 = g1.refined()
        assert g2.level == 2
        assert g2.step == (5.12,) * 3
        for lvl in range(1, 12):
            g = GridSpec(box, lvl)
            assert g.step[0] == 10.24 / 2 ** (lvl - 1)

    def test_max_index(self):
        box = BoxDomain.cube(0.0, 1.0, 1)
        assert GridSpec(box, 1).max_index == 1
        assert GridSpec(box, 4).max_index == 8


class TestGridPoint:
    def test_position_is_exact_dyadic(self):
        box = BoxDomain.cube(-100.0, 100.0, 2)
        grid = GridSpec(box, 3)
        # level 3: step 50, index range 0..4
        assert position_of(GridPoint((0, 4), 3), grid) == (-100.0, 100.0)
        assert position_of(GridPoint((2, 2), 3), grid) == (0.0, 0.0)

    def test_position_known_value(self):
        box = BoxDomain.cube(-100.0, 100.0, 2)
        grid = GridSpec(box, 12)
        # step at level 12 is 200/2048; index 1058 lands on 3.3203125
        x = position_of(GridPoint((1058, 1058), 12), grid)
        assert x == (3.3203125, 3.3203125)

    def test_refine_doubles_indices(self):
        p = GridPoint((3, 5), 4)
        q = refine(p)
        assert q == GridPoint((6, 10), 5)
        box = BoxDomain.cube(0.0, 1.0, 2)
        assert position_of(p, GridSpec(box, 4)) == position_of(q, GridSpec(box, 5))

    def test_out_of_range_index_rejected(self):
        box = BoxDomain.cube(0.0, 1.0, 2)
        grid = GridSpec(box, 2)
        with pytest.raises(InvalidGridPointError):
            position_of(GridPoint((0, 3), 2), grid)
        with pytest.raises(InvalidGridPointError):
            position_of(GridPoint((-1, 0), 2), grid)


class TestCell:
    def test_vertices_count_and_anchor_first(self):
        cell = Cell(GridPoint((0, 0, 0), 2))
        verts = cell_vertices(cell)
        assert len(verts) == 8
        assert verts[0] == cell.anchor
        assert len(set(verts)) == 8

    def test_lattice_points_are_next_level(self):
        cell = Cell(GridPoint((1, 1), 2))
        pts = lattice_points(cell)
        assert len(pts) == 9
        assert all(p.level == 3 for p in pts)
        ks = {p.k for p in pts}
        assert ks == {(i, j) for i in (2, 3, 4) for j in (2, 3, 4)}

    def test_contains(self):
        box = BoxDomain.cube(-2.0, 2.0, 2)
        grid = GridSpec(box, 2)  # step 2
        cell = Cell(GridPoint((0, 0), 2))  # [-2, 0] x [-2, 0]
        assert cell.contains((-1.0, -1.0), grid)
        assert cell.contains((0.0, 0.0), grid)
        assert not cell.contains((0.5, 0.0), grid)

    def test_vertex_overflow_rejected(self):
        cell = Cell(GridPoint((1,), 1))  # upper corner has no cell above it
        with pytest.raises(InvalidCellError):
            cell_vertices(cell)


class TestOrdering:
    def test_lex_less(self):
        assert lex_less((0.0, 1.0), (0.0, 2.0))
        assert not lex_less((1.0, 0.0), (0.0, 9.0))
        assert not lex_less((1.0, 1.0), (1.0, 1.0))

    def test_candidate_sort_by_value_then_position(self):
        a = Candidate((1.0, 0.0), 5.0)
        b = Candidate((0.0, 0.0), 5.0)
        c = Candidate((9.0, 9.0), 1.0)
        ordered = sorted([a, b, c], key=lambda q: (q.f, q.x))
        assert ordered == [c, b, a]
