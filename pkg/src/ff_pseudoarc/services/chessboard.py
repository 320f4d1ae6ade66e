"""
Tablero de Steinhaus: coloraciones, arcos del borde, caminos 4/8 y la dualidad
"camino negro 8 entre arcos opuestos XOR camino blanco 4 entre los otros dos".

Las celdas son pares (x, y) con x en el primer eje y y en el segundo; la adyacencia se
calcula sobre posiciones, asi que los ejes con signo (-1 vecino de 1) funcionan igual.
Orientacion horaria fija: fila superior de izquierda a derecha, columna derecha hacia
abajo, fila inferior de derecha a izquierda y columna izquierda hacia arriba
(y crece hacia arriba).
"""

import logging
from collections import deque
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable, Iterator, Optional

from ff_pseudoarc.core.exceptions import (
    InvariantViolationError,
    NotAnEpimorphismError,
    ValidationError,
)
from ff_pseudoarc.core.structures import (
    LinearGraph,
    RelStructure,
    StructureMap,
    compose,
    is_epimorphism,
    linear_graph,
)

logger = logging.getLogger(__name__)

Cell = tuple[int, int]


class Color(Enum):
    BLACK = "black"
    WHITE = "white"


class Adjacency(Enum):
    FOUR = "four"
    EIGHT = "eight"


# N, NE, E, SE, S, SW, W, NW
_DIRECTIONS_EIGHT = ((0, 1), (1, 1), (1, 0), (1, -1), (0, -1), (-1, -1), (-1, 0), (-1, 1))
_DIRECTIONS_FOUR = ((0, 1), (1, 0), (0, -1), (-1, 0))


def _directions(mode: Adjacency) -> tuple[tuple[int, int], ...]:
    return _DIRECTIONS_EIGHT if mode is Adjacency.EIGHT else _DIRECTIONS_FOUR


def _axis_positions(axis: tuple[int, ...]) -> dict[int, int]:
    return {label: i for i, label in enumerate(axis)}


def cells_adjacent(
    a: Cell, b: Cell, mode: Adjacency, x_pos: dict[int, int], y_pos: dict[int, int]
) -> bool:
    if a == b:
        return False
    dx = abs(x_pos[a[0]] - x_pos[b[0]])
    dy = abs(y_pos[a[1]] - y_pos[b[1]])
    if mode is Adjacency.EIGHT:
        return dx <= 1 and dy <= 1
    return dx + dy == 1


@dataclass(frozen=True)
class Board:
    """Tablero xs x ys con el conjunto de celdas negras."""

    xs: tuple[int, ...]
    ys: tuple[int, ...]
    black: frozenset[Cell]

    def __post_init__(self) -> None:
        object.__setattr__(self, "xs", tuple(self.xs))
        object.__setattr__(self, "ys", tuple(self.ys))
        object.__setattr__(self, "black", frozenset(self.black))
        if not self.xs or not self.ys:
            raise ValidationError("El tablero necesita al menos una fila y una columna")
        if len(set(self.xs)) != len(self.xs) or len(set(self.ys)) != len(self.ys):
            raise ValidationError("Etiquetas de eje repetidas")
        for cell in self.black:
            if cell not in self:
                raise ValidationError(f"Celda negra fuera del tablero: {cell}")

    @classmethod
    def from_graphs(cls, first: LinearGraph, second: LinearGraph, black: Iterable[Cell]) -> "Board":
        return cls(first.vertices, second.vertices, frozenset(black))

    @cached_property
    def x_pos(self) -> dict[int, int]:
        return _axis_positions(self.xs)

    @cached_property
    def y_pos(self) -> dict[int, int]:
        return _axis_positions(self.ys)

    @property
    def cols(self) -> int:
        return len(self.xs)

    @property
    def rows(self) -> int:
        return len(self.ys)

    @property
    def axes(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return self.xs, self.ys

    def __contains__(self, cell: object) -> bool:
        if not isinstance(cell, tuple) or len(cell) != 2:
            return False
        return cell[0] in self.x_pos and cell[1] in self.y_pos

    def cells(self) -> Iterator[Cell]:
        for y in self.ys:
            for x in self.xs:
                yield (x, y)

    def color(self, cell: Cell) -> Color:
        return Color.BLACK if cell in self.black else Color.WHITE

    def is_black(self, cell: Cell) -> bool:
        return cell in self.black

    def order_key(self, cell: Cell) -> tuple[int, int]:
        return (self.x_pos[cell[0]], self.y_pos[cell[1]])

    def neighbors(self, cell: Cell, mode: Adjacency) -> list[Cell]:
        """Vecinos en el orden fijo N, NE, E, SE, S, SW, W, NW (o N, E, S, W)."""
        px, py = self.x_pos[cell[0]], self.y_pos[cell[1]]
        out = []
        for dx, dy in _directions(mode):
            nx_, ny_ = px + dx, py + dy
            if 0 <= nx_ < len(self.xs) and 0 <= ny_ < len(self.ys):
                out.append((self.xs[nx_], self.ys[ny_]))
        return out

    def adjacent(self, a: Cell, b: Cell, mode: Adjacency) -> bool:
        return cells_adjacent(a, b, mode, self.x_pos, self.y_pos)

    def __repr__(self) -> str:
        return f"Board({self.cols}x{self.rows}, black={len(self.black)})"


@dataclass(frozen=True)
class CellPath:
    """Sucesion de celdas consecutivamente 4- u 8-adyacentes sobre unos ejes."""

    cells: tuple[Cell, ...]
    mode: Adjacency
    xs: tuple[int, ...]
    ys: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "cells", tuple(tuple(c) for c in self.cells))
        object.__setattr__(self, "xs", tuple(self.xs))
        object.__setattr__(self, "ys", tuple(self.ys))
        if not self.cells:
            raise ValidationError("Un camino necesita al menos una celda")
        x_pos, y_pos = _axis_positions(self.xs), _axis_positions(self.ys)
        for cell in self.cells:
            if cell[0] not in x_pos or cell[1] not in y_pos:
                raise ValidationError(f"Celda fuera de los ejes: {cell}")
        for a, b in zip(self.cells, self.cells[1:]):
            if not cells_adjacent(a, b, self.mode, x_pos, y_pos):
                raise ValidationError(f"Celdas no {self.mode.value}-adyacentes: {a} {b}")

    @classmethod
    def on(cls, board: Board, cells: Iterable[Cell], mode: Adjacency) -> "CellPath":
        return cls(tuple(cells), mode, board.xs, board.ys)

    def __len__(self) -> int:
        return len(self.cells)

    def __iter__(self) -> Iterator[Cell]:
        return iter(self.cells)

    def __getitem__(self, index: int) -> Cell:
        return self.cells[index]

    @property
    def first(self) -> Cell:
        return self.cells[0]

    @property
    def last(self) -> Cell:
        return self.cells[-1]

    def is_monochromatic(self, board: Board, color: Color) -> bool:
        return all(board.color(c) is color for c in self.cells)


# ==================== Borde y arcos ====================


def boundary(board: Board) -> frozenset[Cell]:
    xs, ys = board.xs, board.ys
    return frozenset(
        (x, y) for x, y in board.cells() if x in (xs[0], xs[-1]) or y in (ys[0], ys[-1])
    )


def has_proper_boundary(board: Board) -> bool:
    """El borde es un ciclo simple solo con al menos dos filas y dos columnas."""
    return board.rows >= 2 and board.cols >= 2


def boundary_cycle(board: Board) -> tuple[Cell, ...]:
    """Celdas del borde en orden horario empezando por la esquina superior izquierda."""
    if not has_proper_boundary(board):
        raise ValidationError(f"{board} no tiene un borde ciclico")
    xs, ys = board.xs, board.ys
    top, bottom, left, right = ys[-1], ys[0], xs[0], xs[-1]
    cycle = [(x, top) for x in xs]
    cycle += [(right, y) for y in reversed(ys[:-1])]
    cycle += [(x, bottom) for x in reversed(xs[:-1])]
    cycle += [(left, y) for y in ys[1:-1]]
    return tuple(cycle)


def clockwise_arc(board: Board, start: Cell, end: Cell) -> tuple[Cell, ...]:
    """Arco horario del borde de start a end, ambos incluidos; {x} si coinciden."""
    edge = boundary(board)
    for cell in (start, end):
        if cell not in edge:
            raise ValidationError(f"{cell} no esta en el borde")
    if start == end:
        return (start,)
    cycle = boundary_cycle(board)
    n = len(cycle)
    i, j = cycle.index(start), cycle.index(end)
    length = (j - i) % n + 1
    return tuple(cycle[(i + k) % n] for k in range(length))


@dataclass(frozen=True)
class OrientedQuadruple:
    """w, x, y, z en el borde con y,z fuera de wx y z fuera de xy."""

    w: Cell
    x: Cell
    y: Cell
    z: Cell

    @classmethod
    def on(cls, board: Board, w: Cell, x: Cell, y: Cell, z: Cell) -> "OrientedQuadruple":
        quad = cls(w, x, y, z)
        quad.validate(board)
        return quad

    def validate(self, board: Board) -> None:
        edge = boundary(board)
        for cell in (self.w, self.x, self.y, self.z):
            if cell not in edge:
                raise ValidationError(f"{cell} no esta en el borde")
        if not has_proper_boundary(board):
            raise ValidationError(f"{board} no admite cuadruplas orientadas")
        wx = clockwise_arc(board, self.w, self.x)
        xy = clockwise_arc(board, self.x, self.y)
        if self.y in wx or self.z in wx or self.z in xy:
            raise ValidationError(f"Cuadrupla no orientada: {self}")

    def arcs(self, board: Board) -> tuple[tuple[Cell, ...], ...]:
        return (
            clockwise_arc(board, self.w, self.x),
            clockwise_arc(board, self.x, self.y),
            clockwise_arc(board, self.y, self.z),
            clockwise_arc(board, self.z, self.w),
        )


def oriented_quadruples(board: Board) -> list[OrientedQuadruple]:
    """Todas las cuadruplas orientadas: desplazamientos horarios 0 <= ox < oy < oz."""
    if not has_proper_boundary(board):
        return []
    cycle = boundary_cycle(board)
    n = len(cycle)
    quads = []
    for wi in range(n):
        for ox in range(n):
            for oy in range(ox + 1, n):
                for oz in range(oy + 1, n):
                    quads.append(
                        OrientedQuadruple(
                            cycle[wi],
                            cycle[(wi + ox) % n],
                            cycle[(wi + oy) % n],
                            cycle[(wi + oz) % n],
                        )
                    )
    return quads


# ==================== Caminos ====================


def exists_path(
    board: Board,
    sources: Iterable[Cell],
    targets: Iterable[Cell],
    color: Color,
    mode: Adjacency,
    within: Optional[frozenset[Cell]] = None,
) -> Optional[CellPath]:
    """BFS monocromatico desde cualquier celda de sources hasta targets."""

    def allowed(cell: Cell) -> bool:
        return board.color(cell) is color and (within is None or cell in within)

    goal = set(targets)
    parent: dict[Cell, Optional[Cell]] = {}
    queue: deque[Cell] = deque()
    for cell in sorted(set(sources), key=board.order_key):
        if allowed(cell):
            parent[cell] = None
            queue.append(cell)

    while queue:
        cell = queue.popleft()
        if cell in goal:
            route = [cell]
            while parent[route[-1]] is not None:
                route.append(parent[route[-1]])  # type: ignore[arg-type]
            return CellPath.on(board, reversed(route), mode)
        for nxt in board.neighbors(cell, mode):
            if nxt not in parent and allowed(nxt):
                parent[nxt] = cell
                queue.append(nxt)
    return None


def steinhaus_check(board: Board, quad: OrientedQuadruple) -> bool:
    """True si exactamente uno de los dos caminos existe."""
    quad.validate(board)
    wx, xy, yz, zw = quad.arcs(board)
    black = exists_path(board, wx, yz, Color.BLACK, Adjacency.EIGHT) is not None
    white = exists_path(board, xy, zw, Color.WHITE, Adjacency.FOUR) is not None
    return black != white


def product_coloring(phi1: StructureMap, phi2: StructureMap) -> Board:
    """(i, j) es negra si y solo si phi1(i) = phi2(j)."""
    if phi1.codomain != phi2.codomain:
        raise ValidationError(f"Codominios distintos: {phi1.codomain} y {phi2.codomain}")
    by_value: dict[int, list[int]] = {}
    for j, w in phi2.items():
        by_value.setdefault(w, []).append(j)
    black = {(i, j) for i, w in phi1.items() for j in by_value.get(w, [])}
    return Board.from_graphs(phi1.domain, phi2.domain, black)


def corner_dichotomy(board: Board) -> tuple[Cell, Cell]:
    """Par diagonal negro de {-1,1}^2: {(1,1),(-1,-1)} o {(1,-1),(-1,1)}."""
    main = ((1, 1), (-1, -1))
    anti = ((1, -1), (-1, 1))
    main_black = all(board.is_black(c) for c in main) and not any(board.is_black(c) for c in anti)
    anti_black = all(board.is_black(c) for c in anti) and not any(board.is_black(c) for c in main)
    if main_black == anti_black:
        raise InvariantViolationError("Las esquinas centrales no forman un par diagonal negro")
    return main if main_black else anti


# ==================== Amalgama de grafos lineales ====================


def solecki_amalgamate(
    alpha: StructureMap, beta: StructureMap
) -> tuple[LinearGraph, StructureMap, StructureMap]:
    """
    Amalgama alpha: [l] -> [k], beta: [m] -> [k] en D = [n] con alpha o gamma = beta o delta.

    Se buscan en la coloracion producto un camino negro 8 de la fila inferior a la
    superior y otro de la columna izquierda a la derecha, y se unen en un solo camino
    que toca todas las filas y columnas.
    """
    for f in (alpha, beta):
        if not is_epimorphism(f, RelStructure(f.domain), RelStructure(f.codomain)):
            raise NotAnEpimorphismError(f"{f} no es epimorfismo de grafos lineales")
    board = product_coloring(alpha, beta)
    xs, ys = board.xs, board.ys

    vertical = exists_path(
        board,
        [(x, ys[0]) for x in xs],
        [(x, ys[-1]) for x in xs],
        Color.BLACK,
        Adjacency.EIGHT,
    )
    horizontal = exists_path(
        board,
        [(xs[0], y) for y in ys],
        [(xs[-1], y) for y in ys],
        Color.BLACK,
        Adjacency.EIGHT,
    )
    if vertical is None or horizontal is None:
        raise InvariantViolationError(f"Faltan caminos negros cruzados en {board}")

    walk = list(vertical.cells)
    if {x for x, _ in walk} != set(xs):
        connector = exists_path(
            board, [walk[-1]], horizontal.cells, Color.BLACK, Adjacency.EIGHT
        )
        if connector is None:
            raise InvariantViolationError("Los caminos cruzados no estan conectados")
        walk.extend(connector.cells[1:])
        hit = horizontal.cells.index(connector.last)
        walk.extend(reversed(horizontal.cells[:hit]))
        walk.extend(horizontal.cells[1:])

    if {x for x, _ in walk} != set(xs) or {y for _, y in walk} != set(ys):
        raise InvariantViolationError("El camino combinado no cubre todas las coordenadas")

    d = linear_graph("plain", len(walk))
    gamma = StructureMap(d, alpha.domain, tuple(x for x, _ in walk))
    delta = StructureMap(d, beta.domain, tuple(y for _, y in walk))
    if compose(alpha, gamma) != compose(beta, delta):
        raise InvariantViolationError("El cuadrado de Solecki no conmuta")
    for f in (gamma, delta):
        if not is_epimorphism(f, RelStructure(d), RelStructure(f.codomain)):
            raise InvariantViolationError(f"{f} no es epimorfismo")
    logger.debug(f"solecki_amalgamate: {alpha.domain} x {beta.domain} -> {d}")
    return d, gamma, delta
