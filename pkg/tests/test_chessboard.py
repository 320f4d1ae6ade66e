"""
Tests para services.chessboard
"""

import random

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from ff_pseudoarc.core.exceptions import (
    InvariantViolationError,
    NotAnEpimorphismError,
    ValidationError,
)
from ff_pseudoarc.core.structures import (
    RelStructure,
    StructureMap,
    compose,
    identity_map,
    is_epimorphism,
    linear_graph,
)
from ff_pseudoarc.services.chessboard import (
    Adjacency,
    Board,
    CellPath,
    Color,
    OrientedQuadruple,
    boundary,
    boundary_cycle,
    clockwise_arc,
    corner_dichotomy,
    exists_path,
    oriented_quadruples,
    product_coloring,
    solecki_amalgamate,
    steinhaus_check,
)
from ff_pseudoarc.services.verifiers import random_linear_epimorphism


def _square(n: int, black=()) -> Board:
    axis = tuple(range(1, n + 1))
    return Board(axis, axis, frozenset(black))


class TestBoard:
    """Tests para Board"""

    def test_repr_and_dimensions(self):
        board = Board((1, 2, 3), (1, 2), frozenset({(1, 1)}))
        assert board.cols == 3 and board.rows == 2
        assert repr(board) == "Board(3x2, black=1)"

    def test_black_cell_outside_raises(self):
        with pytest.raises(ValidationError):
            Board((1, 2), (1, 2), frozenset({(3, 1)}))

    def test_repeated_labels_raise(self):
        with pytest.raises(ValidationError):
            Board((1, 1), (1, 2), frozenset())

    def test_signed_axes_adjacency(self):
        """-1 y 1 son columnas contiguas"""
        board = Board((-1, 1), (-1, 1), frozenset())
        assert board.adjacent((-1, -1), (1, -1), Adjacency.FOUR)
        assert board.adjacent((-1, -1), (1, 1), Adjacency.EIGHT)
        assert not board.adjacent((-1, -1), (1, 1), Adjacency.FOUR)

    def test_neighbor_order(self):
        board = _square(3)
        assert board.neighbors((2, 2), Adjacency.FOUR) == [(2, 3), (3, 2), (2, 1), (1, 2)]
        assert board.neighbors((1, 1), Adjacency.EIGHT) == [(1, 2), (2, 2), (2, 1)]

    def test_cell_path_requires_adjacency(self):
        board = _square(3)
        with pytest.raises(ValidationError):
            CellPath.on(board, [(1, 1), (3, 3)], Adjacency.EIGHT)
        with pytest.raises(ValidationError):
            CellPath.on(board, [(1, 1), (2, 2)], Adjacency.FOUR)


class TestBoundary:
    """Tests para el borde, arcos y cuadruplas"""

    def test_cycle_two_by_two(self):
        assert boundary_cycle(_square(2)) == ((1, 2), (2, 2), (2, 1), (1, 1))

    def test_cycle_three_by_three(self):
        cycle = boundary_cycle(_square(3))
        assert cycle[0] == (1, 3)
        assert cycle == ((1, 3), (2, 3), (3, 3), (3, 2), (3, 1), (2, 1), (1, 1), (1, 2))
        assert set(cycle) == boundary(_square(3))

    def test_thin_board_has_no_cycle(self):
        board = Board((1, 2, 3), (1,), frozenset())
        with pytest.raises(ValidationError):
            boundary_cycle(board)
        assert oriented_quadruples(board) == []

    def test_clockwise_arc(self):
        board = _square(3)
        assert clockwise_arc(board, (3, 3), (1, 1)) == ((3, 3), (3, 2), (3, 1), (2, 1), (1, 1))
        assert clockwise_arc(board, (2, 1), (2, 1)) == ((2, 1),)

    def test_arc_requires_boundary_cells(self):
        with pytest.raises(ValidationError):
            clockwise_arc(_square(3), (2, 2), (1, 1))

    def test_quadruple_counts(self):
        assert len(oriented_quadruples(_square(2))) == 16
        assert len(oriented_quadruples(_square(3))) == 448

    def test_quadruples_are_valid(self):
        board = _square(3)
        for quad in oriented_quadruples(board):
            quad.validate(board)

    def test_unoriented_quadruple_rejected(self):
        with pytest.raises(ValidationError):
            OrientedQuadruple.on(_square(2), (1, 2), (2, 1), (2, 2), (1, 1))


class TestPaths:
    """Tests para exists_path y steinhaus_check"""

    def test_black_diagonal_is_eight_connected(self):
        board = _square(3, {(1, 1), (2, 2), (3, 3)})
        bottom = [(x, 1) for x in range(1, 4)]
        top = [(x, 3) for x in range(1, 4)]
        path = exists_path(board, bottom, top, Color.BLACK, Adjacency.EIGHT)
        assert path is not None
        assert path.cells == ((1, 1), (2, 2), (3, 3))
        assert exists_path(board, bottom, top, Color.BLACK, Adjacency.FOUR) is None

    def test_within_restricts_search(self):
        board = _square(3, {(1, 1), (2, 2), (3, 3)})
        area = frozenset({(1, 1), (3, 3)})
        assert exists_path(board, [(1, 1)], [(3, 3)], Color.BLACK, Adjacency.EIGHT, area) is None

    def test_white_path(self):
        board = _square(2, {(1, 1)})
        path = exists_path(board, [(1, 2)], [(2, 1)], Color.WHITE, Adjacency.FOUR)
        assert path is not None and path.is_monochromatic(board, Color.WHITE)

    def test_steinhaus_all_black(self):
        board = _square(2, {(1, 1), (1, 2), (2, 1), (2, 2)})
        quad = OrientedQuadruple.on(board, (1, 2), (2, 2), (2, 1), (1, 1))
        assert steinhaus_check(board, quad)

    def test_steinhaus_every_quadruple_on_checkerboard(self):
        board = _square(3, {(x, y) for x in range(1, 4) for y in range(1, 4) if (x + y) % 2})
        assert all(steinhaus_check(board, q) for q in oriented_quadruples(board))


class TestProductColoring:
    """Tests para product_coloring y corner_dichotomy"""

    def test_identity_coloring(self):
        f = identity_map(linear_graph("plain", 2))
        assert product_coloring(f, f).black == frozenset({(1, 1), (2, 2)})

    def test_codomain_mismatch(self):
        f = identity_map(linear_graph("plain", 2))
        g = identity_map(linear_graph("plain", 3))
        with pytest.raises(ValidationError):
            product_coloring(f, g)

    def test_main_diagonal_corner(self):
        f = identity_map(linear_graph("signed", 1))
        assert corner_dichotomy(product_coloring(f, f)) == ((1, 1), (-1, -1))

    def test_example_has_anti_diagonal_corner(self, example_maps):
        board = product_coloring(*example_maps)
        assert corner_dichotomy(board) == ((1, -1), (-1, 1))

    def test_invalid_corner_raises(self):
        board = Board((-1, 1), (-1, 1), frozenset({(-1, -1), (1, 1), (1, -1)}))
        with pytest.raises(InvariantViolationError):
            corner_dichotomy(board)


class TestSoleckiAmalgamation:
    """Tests para solecki_amalgamate"""

    def test_identity_square(self):
        f = identity_map(linear_graph("plain", 2))
        d, gamma, delta = solecki_amalgamate(f, f)
        assert d == linear_graph("plain", 2)
        assert gamma.assignment == (1, 2)
        assert delta.assignment == (1, 2)

    def test_rejects_non_epimorphism(self):
        a, b = linear_graph("plain", 3), linear_graph("plain", 2)
        constant = StructureMap(a, b, (1, 1, 1))
        with pytest.raises(NotAnEpimorphismError):
            solecki_amalgamate(constant, identity_map(b))

    @settings(
        max_examples=30,
        deadline=None,
        suppress_health_check=[HealthCheck.function_scoped_fixture],
    )
    @given(
        st.integers(min_value=0, max_value=10**6),
        st.integers(min_value=1, max_value=5),
    )
    def test_random_squares_commute(self, seed, k):
        rng = random.Random(seed)
        alpha = random_linear_epimorphism(rng, rng.randint(k, 8), k)
        beta = random_linear_epimorphism(rng, rng.randint(k, 8), k)
        d, gamma, delta = solecki_amalgamate(alpha, beta)
        assert compose(alpha, gamma) == compose(beta, delta)
        assert is_epimorphism(gamma, RelStructure(d), RelStructure(alpha.domain))
        assert is_epimorphism(delta, RelStructure(d), RelStructure(beta.domain))
