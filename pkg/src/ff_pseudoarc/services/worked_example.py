"""
Datos del ejemplo trabajado: las relaciones de los ejemplos (1) y (2) sobre [4], el par
phi1: signed(8) -> signed(3), phi2: signed(9) -> signed(3) y la transcripcion de los
grafos G1 / G2 que produce.
"""

from ff_pseudoarc.core.structures import (
    Relation,
    RelStructure,
    StructureMap,
    linear_graph,
)

Node = tuple[int, int]
Edge = tuple[Node, Node]

# (1): sobreyectiva y conexa, pero no simetrica
EXAMPLE_ONE_PAIRS = frozenset({(1, 3), (2, 3), (3, 1), (3, 2), (3, 4), (4, 1)})

# (2): sobreyectiva, no conexa
EXAMPLE_TWO_PAIRS = frozenset({(1, 2), (2, 1), (2, 4), (3, 3), (3, 4), (4, 2)})

# Valores en los vertices positivos; los negativos salen por antisimetria
PHI1_POSITIVE = (1, 2, 1, -1, 1, 1, 2, 3)
PHI2_POSITIVE = (-1, -2, -1, -2, -3, -2, -1, 1, 2)

PHI1_BREAKPOINTS = (
    "s_-3=-8 s'_-2=-5 s_-2=-4 s'_-1=-4 s_-1=-3 s'_0=-1 s_0=1 s'_1=3 s_1=4 s'_2=4 s_2=5 s'_3=8"
)
PHI2_BREAKPOINTS = "t_-2=-9 t'_-1=-8 t_-1=-7 t'_0=-1 t_0=1 t'_1=7 t_1=8 t'_2=9"

PHI1_RANGES = {-3: (-3, -1), -2: (1, 1), -1: (-2, -1), 0: (1, 2), 1: (-1, -1), 2: (1, 3)}
PHI2_RANGES = {-2: (-2, -1), -1: (1, 3), 0: (-3, -1), 1: (1, 2)}

BOTTOM_INTERIOR_PATH = ((0, 0), (1, 0), (2, 0), (2, -1), (1, -1), (0, -1), (0, -2))


def _edges(raw: list[Edge]) -> frozenset[Edge]:
    return frozenset((a, b) if a < b else (b, a) for a, b in raw)


G1_EDGES = _edges(
    [
        # verticales
        ((-3, -2), (-3, -1)),
        ((-2, -2), (-2, -1)),
        ((-1, -2), (-1, -1)),
        ((0, -2), (0, -1)),
        ((2, -1), (2, 0)),
        ((3, -1), (3, 0)),
        ((3, 1), (3, 2)),
        ((2, 1), (2, 2)),
        ((1, 1), (1, 2)),
        ((0, 1), (0, 2)),
        ((-2, 0), (-2, 1)),
        ((-3, 0), (-3, 1)),
        # horizontales
        ((1, -2), (2, -2)),
        ((1, -1), (2, -1)),
        ((-2, -1), (-1, -1)),
        ((-2, 0), (-1, 0)),
        ((0, -1), (1, -1)),
        ((0, 0), (1, 0)),
        ((-2, 2), (-1, 2)),
        ((-2, 1), (-1, 1)),
        ((1, 1), (2, 1)),
        ((1, 0), (2, 0)),
        ((-1, 1), (0, 1)),
        ((-1, 0), (0, 0)),
    ]
)

G2_EDGES = _edges(
    [
        ((3, 1), (3, 2)),
        ((-3, -2), (-3, -1)),
        ((-2, -2), (-2, -1)),
        ((1, 1), (2, 1)),
        ((-1, -2), (0, -2)),
        ((-1, -1), (0, -1)),
        ((1, -2), (2, -2)),
        ((1, -1), (2, -1)),
        ((-2, -1), (-1, -1)),
        ((-2, 0), (-1, 0)),
        ((0, -1), (1, -1)),
        ((0, 0), (1, 0)),
        ((2, -1), (3, -1)),
        ((2, 0), (3, 0)),
        ((0, 2), (1, 2)),
        ((0, 1), (1, 1)),
        ((-2, 2), (-1, 2)),
        ((-2, 1), (-1, 1)),
        ((2, 1), (2, 2)),
        ((1, 0), (2, 0)),
        ((-1, 1), (0, 1)),
        ((-1, 0), (0, 0)),
        ((-3, 1), (-2, 1)),
        ((-3, 0), (-2, 0)),
    ]
)

# Celdas de control del tablero producto
BLACK_SPOT_CELLS = ((1, 8), (2, 9), (3, 8), (4, 1), (4, 7), (8, -5), (-1, 1), (1, -1))
WHITE_SPOT_CELLS = ((1, 1),)


def example_one() -> RelStructure:
    graph = linear_graph("plain", 4)
    return RelStructure(graph, Relation(graph, EXAMPLE_ONE_PAIRS))


def example_two() -> RelStructure:
    graph = linear_graph("plain", 4)
    return RelStructure(graph, Relation(graph, EXAMPLE_TWO_PAIRS))


def _antisymmetric(size: int, positive: tuple[int, ...]) -> StructureMap:
    domain = linear_graph("signed", size)
    codomain = linear_graph("signed", 3)
    return StructureMap.from_function(
        domain, codomain, lambda t: positive[t - 1] if t > 0 else -positive[-t - 1]
    )


def example_phi1() -> StructureMap:
    return _antisymmetric(8, PHI1_POSITIVE)


def example_phi2() -> StructureMap:
    return _antisymmetric(9, PHI2_POSITIVE)
