"""
Amalgamacion coinicial sobre la familia D de antidiagonales pares.

Pipeline de cap_witness:
  1. descomposicion en bloques de signo constante de phi1 y phi2
  2. grafos G1 / G2 sobre [-p,p] x [-q,q] y caminos interiores desde (0,0)
  3. levantamiento de cada camino a un camino negro 8 del tablero producto
  4. combinacion de los cuatro caminos en D y extension antisimetrica a D'
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Optional

import networkx as nx

from ff_pseudoarc.core.exceptions import (
    InvariantViolationError,
    NotAnEpimorphismError,
    ValidationError,
)
from ff_pseudoarc.core.structures import (
    LinearGraph,
    RelStructure,
    StructureMap,
    antidiagonal_structure,
    compose,
    identity_map,
    is_antidiagonal,
    is_antisymmetric,
    is_epimorphism,
    linear_graph,
    order_isomorphism,
)
from ff_pseudoarc.services.chessboard import (
    Adjacency,
    Board,
    Cell,
    CellPath,
    Color,
    corner_dichotomy,
    exists_path,
    product_coloring,
)
from ff_pseudoarc.services.membership import cover_by_antidiagonal

logger = logging.getLogger(__name__)

Node = tuple[int, int]


# ==================== JPP y cofinalidad ====================


def double_antidiagonal(structure: RelStructure) -> tuple[RelStructure, StructureMap]:
    """([k], antidiagonal) <- ([2k], antidiagonal) via t -> ceil(t/2)."""
    if structure.graph.is_signed or not is_antidiagonal(structure):
        raise ValidationError("Se esperaba ([k], antidiagonal) plano")
    k = structure.graph.size
    doubled = antidiagonal_structure(linear_graph("plain", 2 * k))
    phi = StructureMap.from_function(doubled.graph, structure.graph, lambda t: math.ceil(t / 2))
    return doubled, phi


def _plain_antidiagonal_cover(structure: RelStructure) -> tuple[RelStructure, StructureMap]:
    if structure.s is None:
        raise ValidationError("La estructura no tiene relacion s")
    if is_antidiagonal(structure):
        if not structure.graph.is_signed:
            return structure, identity_map(structure.graph)
        plain = antidiagonal_structure(linear_graph("plain", len(structure.graph)))
        return plain, order_isomorphism(plain.graph, structure.graph)
    return cover_by_antidiagonal(structure)


def jpp_witness(
    first: RelStructure, second: RelStructure
) -> tuple[RelStructure, StructureMap, StructureMap]:
    """
    Testigo de la propiedad de proyeccion conjunta.

    Para antidiagonales [k] y [n]: C = ([kn], antidiagonal), phi1(t) = ceil(t/n),
    phi2(t) = ceil(t/k). Otros miembros se cubren antes por una antidiagonal.
    """
    cover_a, onto_a = _plain_antidiagonal_cover(first)
    cover_b, onto_b = _plain_antidiagonal_cover(second)
    k, n = cover_a.graph.size, cover_b.graph.size
    joint = antidiagonal_structure(linear_graph("plain", k * n))
    phi1 = StructureMap.from_function(joint.graph, cover_a.graph, lambda t: math.ceil(t / n))
    phi2 = StructureMap.from_function(joint.graph, cover_b.graph, lambda t: math.ceil(t / k))
    return joint, compose(onto_a, phi1), compose(onto_b, phi2)


def clamp_map(source: LinearGraph, target: LinearGraph) -> StructureMap:
    """signed(n) -> signed(k), i -> sign(i) * min(|i|, k); antisimetrico."""
    if not (source.is_signed and target.is_signed) or source.size < target.size:
        raise ValidationError(f"No hay clamp de {source} a {target}")
    k = target.size
    return StructureMap.from_function(
        source, target, lambda i: (1 if i > 0 else -1) * min(abs(i), k)
    )


def sign_map(graph: LinearGraph) -> StructureMap:
    """signed(n) -> signed(1), i -> sign(i)."""
    return clamp_map(graph, linear_graph("signed", 1))


def signed_joint_cover(
    first: RelStructure, second: RelStructure
) -> tuple[RelStructure, StructureMap, StructureMap]:
    """Cubrimiento conjunto dentro de D: signed(max(a, b)) con dos clamps."""
    for structure in (first, second):
        if not structure.graph.is_signed or not is_antidiagonal(structure):
            raise ValidationError("Se esperaban antidiagonales con signo")
    size = max(first.graph.size, second.graph.size)
    joint = antidiagonal_structure(linear_graph("signed", size))
    return joint, clamp_map(joint.graph, first.graph), clamp_map(joint.graph, second.graph)


def even_antidiagonal_cover(structure: RelStructure) -> tuple[RelStructure, StructureMap]:
    """
    (signed(c), antidiagonal) con un epimorfismo sobre la estructura dada: cubrimiento
    por antidiagonal, duplicado si el tamano es impar, y reetiquetado con signo.
    """
    if structure.s is None:
        raise ValidationError("La estructura no tiene relacion s")
    if structure.graph.is_signed and is_antidiagonal(structure):
        return structure, identity_map(structure.graph)

    if is_antidiagonal(structure):
        plain, onto = structure, identity_map(structure.graph)
    else:
        plain, onto = cover_by_antidiagonal(structure)
    if plain.graph.size % 2 == 1:
        doubled, halve = double_antidiagonal(plain)
        plain, onto = doubled, compose(onto, halve)

    signed = antidiagonal_structure(linear_graph("signed", plain.graph.size // 2))
    return signed, compose(onto, order_isomorphism(signed.graph, plain.graph))


# ==================== Descomposicion en bloques ====================


@dataclass(frozen=True)
class Block:
    """Intervalo [start, end] del dominio donde phi tiene signo constante."""

    index: int
    start: int
    end: int
    sign: int
    low: int
    high: int

    @property
    def value_range(self) -> tuple[int, int]:
        return (self.low, self.high)

    def contains_range(self, other: "Block") -> bool:
        return self.low <= other.low and other.high <= self.high


@dataclass(frozen=True)
class BlockDecomposition:
    """Puntos s_{-p} < s'_{-p+1} < s_{-p+1} < ... < s'_0 < s_0 < ... < s'_p."""

    phi: StructureMap
    blocks: tuple[Block, ...]
    p: int

    def block(self, index: int) -> Block:
        if not -self.p <= index < self.p:
            raise ValidationError(f"Bloque {index} fuera de [-{self.p}, {self.p - 1}]")
        return self.blocks[index + self.p]

    def s(self, index: int) -> int:
        return self.block(index).start

    def s_prime(self, index: int) -> int:
        return self.block(index - 1).end

    def vertices_of(self, index: int) -> tuple[int, ...]:
        block = self.block(index)
        domain = self.phi.domain
        return domain.vertices[domain.position(block.start) : domain.position(block.end) + 1]

    def breakpoints(self) -> list[tuple[str, int, int]]:
        """[(nombre, indice, valor)] en orden: s_{-p}, s'_{-p+1}, s_{-p+1}, ..., s'_p."""
        points = []
        for block in self.blocks:
            points.append(("s", block.index, block.start))
            points.append(("s'", block.index + 1, block.end))
        return points

    def describe(self, letter: str = "s") -> str:
        tokens = []
        for name, index, value in self.breakpoints():
            label = letter + name[1:]
            tokens.append(f"{label}_{index}={value}")
        return " ".join(tokens)


def block_decomposition(phi: StructureMap) -> BlockDecomposition:
    domain = phi.domain
    if not (domain.is_signed and phi.codomain.is_signed):
        raise ValidationError("La descomposicion en bloques requiere grafos con signo")
    if not is_antisymmetric(phi):
        raise ValidationError(f"{phi} no es antisimetrico")
    if not is_epimorphism(phi, RelStructure(domain), RelStructure(phi.codomain)):
        raise NotAnEpimorphismError(f"{phi} no es epimorfismo")

    sign = compose(sign_map(phi.codomain), phi)
    runs: list[list[int]] = []
    for v in domain.vertices:
        if runs and sign(runs[-1][-1]) == sign(v):
            runs[-1].append(v)
        else:
            runs.append([v])

    p = sum(1 for run in runs if run[0] > 0)
    if p < 1 or len(runs) != 2 * p:
        raise InvariantViolationError(f"Bloques desbalanceados para {phi}: {len(runs)} y p={p}")

    blocks = []
    for offset, run in enumerate(runs):
        values = [phi(v) for v in run]
        low, high = min(values), max(values)
        sign = 1 if values[0] > 0 else -1
        expected = set(range(1, high + 1)) if sign > 0 else set(range(low, 0))
        if set(values) != expected:
            raise InvariantViolationError(f"Rango de bloque no es un intervalo en ±1: {values}")
        blocks.append(Block(offset - p, run[0], run[-1], sign, low, high))

    decomposition = BlockDecomposition(phi, tuple(blocks), p)
    if decomposition.s(0) != 1 or decomposition.s_prime(0) != -1:
        raise InvariantViolationError("s_0 = 1 y s'_0 = -1 no se cumplen")
    for i in range(-p, p):
        if decomposition.s(i) != -decomposition.s_prime(-i):
            raise InvariantViolationError(f"s_{i} != -s'_{-i}")
    return decomposition


def block_range(decomposition: BlockDecomposition, index: int) -> tuple[int, int]:
    return decomposition.block(index).value_range


# ==================== Grafos G0 / G1 / G2 ====================


class Variant(Enum):
    G0 = "g0"
    G1 = "g1"
    G2 = "g2"


class Side(Enum):
    TOP = "top"
    BOTTOM = "bottom"
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class AmalgGraph:
    """Grafo sobre [-p,p] x [-q,q] con aristas entre vertices 4-adyacentes."""

    variant: Variant
    p: int
    q: int
    edges: frozenset[tuple[Node, Node]]

    @cached_property
    def graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.nodes)
        g.add_edges_from(self.edges)
        return g

    @property
    def nodes(self) -> list[Node]:
        return [(a, b) for a in range(-self.p, self.p + 1) for b in range(-self.q, self.q + 1)]

    @property
    def xs(self) -> tuple[int, ...]:
        return tuple(range(-self.p, self.p + 1))

    @property
    def ys(self) -> tuple[int, ...]:
        return tuple(range(-self.q, self.q + 1))

    def neighbors(self, node: Node) -> list[Node]:
        return sorted(self.graph.neighbors(node))

    def degree(self, node: Node) -> int:
        return self.graph.degree(node)

    def has_edge(self, a: Node, b: Node) -> bool:
        return self.graph.has_edge(a, b)

    def is_boundary(self, node: Node) -> bool:
        return abs(node[0]) == self.p or abs(node[1]) == self.q

    def on_side(self, node: Node, side: Side) -> bool:
        if side is Side.BOTTOM:
            return node[1] == -self.q
        if side is Side.TOP:
            return node[1] == self.q
        if side is Side.LEFT:
            return node[0] == -self.p
        return node[0] == self.p

    def interior_nodes(self) -> list[Node]:
        return [n for n in self.nodes if not self.is_boundary(n)]

    def sorted_edges(self) -> list[tuple[Node, Node]]:
        return sorted(self.edges)


def _edge(a: Node, b: Node) -> tuple[Node, Node]:
    return (a, b) if a < b else (b, a)


def build_amalg_graph(
    d1: BlockDecomposition, d2: BlockDecomposition, variant: Variant
) -> AmalgGraph:
    if d1.phi.codomain != d2.phi.codomain:
        raise ValidationError("Los mapas no comparten codominio")
    edges: set[tuple[Node, Node]] = set()
    for i in range(-d1.p, d1.p):
        for j in range(-d2.p, d2.p):
            b1, b2 = d1.block(i), d2.block(j)
            if b1.sign != b2.sign:
                continue
            horizontal = b2.contains_range(b1)
            vertical = b1.contains_range(b2)
            if not (horizontal or vertical):
                raise InvariantViolationError(f"Rangos no anidados en el par ({i},{j})")
            if horizontal and vertical:
                if variant is Variant.G1:
                    horizontal = False
                elif variant is Variant.G2:
                    vertical = False
            if horizontal:
                edges.add(_edge((i, j), (i + 1, j)))
                edges.add(_edge((i, j + 1), (i + 1, j + 1)))
            if vertical:
                edges.add(_edge((i, j), (i, j + 1)))
                edges.add(_edge((i + 1, j), (i + 1, j + 1)))
    return AmalgGraph(variant, d1.p, d2.p, frozenset(edges))


def interior_degree_violations(g: AmalgGraph) -> list[Node]:
    """Vertices interiores cuyo grado no es exactamente 2."""
    return [n for n in g.interior_nodes() if g.degree(n) != 2]


def _degree_two_walk(g: AmalgGraph, first: Node) -> tuple[list[Node], bool]:
    """Camina desde (0,0) por first hasta el borde; el flag indica regreso a (0,0)."""
    origin = (0, 0)
    walk = [origin, first]
    seen = {origin, first}
    while not g.is_boundary(walk[-1]):
        options = [n for n in g.neighbors(walk[-1]) if n != walk[-2]]
        if len(options) != 1:
            raise InvariantViolationError(f"Grado {g.degree(walk[-1])} en {walk[-1]}")
        nxt = options[0]
        if nxt == origin:
            return walk + [origin], True
        if nxt in seen:
            raise InvariantViolationError(f"Ciclo que no pasa por el origen en {nxt}")
        walk.append(nxt)
        seen.add(nxt)
    return walk, False


def has_loop_through_origin(g: AmalgGraph) -> bool:
    return any(_degree_two_walk(g, n)[1] for n in g.neighbors((0, 0)))


def full_range_block(decomposition: BlockDecomposition) -> int:
    """Indice i0 del bloque con rango [1, k]."""
    k = decomposition.phi.codomain.size
    for block in decomposition.blocks:
        if block.value_range == (1, k):
            return block.index
    raise InvariantViolationError("Ningun bloque cubre [1, k]")


def find_interior_path(g: AmalgGraph, side: Side) -> CellPath:
    """Camino interior de (0,0) al lado pedido; G1 para arriba/abajo, G2 para los lados."""
    expected = Variant.G1 if side in (Side.TOP, Side.BOTTOM) else Variant.G2
    if g.variant is not expected:
        raise ValidationError(f"El lado {side.value} requiere {expected.value}")
    origin = (0, 0)
    if g.degree(origin) != 2:
        raise InvariantViolationError(f"(0,0) tiene grado {g.degree(origin)}")
    for first in g.neighbors(origin):
        walk, looped = _degree_two_walk(g, first)
        if looped:
            raise InvariantViolationError("Lazo por (0,0)")
        if g.on_side(walk[-1], side):
            return CellPath(tuple(walk), Adjacency.FOUR, g.xs, g.ys)
    raise InvariantViolationError(f"Sin camino interior hacia {side.value}")


# ==================== Levantamiento al tablero ====================


def _step_rectangle(
    u: Node, v: Node, d1: BlockDecomposition, d2: BlockDecomposition
) -> tuple[int, int]:
    """Par de bloques del mismo signo que aporta la arista u - v."""
    if u[1] == v[1]:
        xb = min(u[0], v[0])
        candidates = [(xb, u[1]), (xb, u[1] - 1)]
    else:
        yb = min(u[1], v[1])
        candidates = [(u[0], yb), (u[0] - 1, yb)]
    for i, j in candidates:
        if -d1.p <= i < d1.p and -d2.p <= j < d2.p and d1.block(i).sign == d2.block(j).sign:
            return i, j
    raise InvariantViolationError(f"Ningun par de bloques produce la arista {u}-{v}")


def _corner(
    node: Node, rect: tuple[int, int], d1: BlockDecomposition, d2: BlockDecomposition
) -> Cell:
    i, j = rect
    bx, by = d1.block(i), d2.block(j)
    return (bx.start if node[0] == i else bx.end, by.start if node[1] == j else by.end)


def _side_of(node: Node, p: int, q: int) -> Side:
    if node[1] == -q:
        return Side.BOTTOM
    if node[1] == q:
        return Side.TOP
    if node[0] == -p:
        return Side.LEFT
    if node[0] == p:
        return Side.RIGHT
    raise InvariantViolationError(f"{node} no esta en el borde")


def _side_cells(board: Board, side: Side) -> set[Cell]:
    xs, ys = board.xs, board.ys
    if side is Side.BOTTOM:
        return {(x, ys[0]) for x in xs}
    if side is Side.TOP:
        return {(x, ys[-1]) for x in xs}
    if side is Side.LEFT:
        return {(xs[0], y) for y in ys}
    return {(xs[-1], y) for y in ys}


def lift_interior_path(
    path: CellPath,
    d1: BlockDecomposition,
    d2: BlockDecomposition,
    board: Optional[Board] = None,
    side: Optional[Side] = None,
) -> CellPath:
    """
    Encadena un segmento negro por arista del camino interior, cada uno buscado por BFS
    dentro del rectangulo del par de bloques; el ultimo llega al lado completo.
    """
    if board is None:
        board = product_coloring(d1.phi, d2.phi)
    nodes = list(path.cells)
    if len(nodes) < 2 or nodes[0] != (0, 0):
        raise ValidationError("El camino interior debe salir de (0,0)")
    if side is None:
        side = _side_of(nodes[-1], d1.p, d2.p)

    cells: list[Cell] = []
    for step, (u, v) in enumerate(zip(nodes, nodes[1:])):
        rect = _step_rectangle(u, v, d1, d2)
        area = frozenset((x, y) for x in d1.vertices_of(rect[0]) for y in d2.vertices_of(rect[1]))
        source = _corner(u, rect, d1, d2)
        if step == len(nodes) - 2:
            targets = _side_cells(board, side) & area
        else:
            targets = {_corner(v, rect, d1, d2)}
        segment = exists_path(board, [source], targets, Color.BLACK, Adjacency.EIGHT, within=area)
        if segment is None:
            raise InvariantViolationError(f"Sin segmento negro para la arista {u}-{v}")
        if cells and cells[-1] == segment.first:
            cells.extend(segment.cells[1:])
        else:
            cells.extend(segment.cells)

    lifted = CellPath.on(board, cells, Adjacency.EIGHT)
    if not lifted.is_monochromatic(board, Color.BLACK):
        raise InvariantViolationError("El camino levantado no es negro")
    return lifted


# ==================== Combinacion y testigo CAP ====================


def combine_paths(
    w: CellPath, x: CellPath, y: CellPath, z: CellPath, board: Board
) -> tuple[RelStructure, StructureMap, StructureMap]:
    """
    D = w, w al reves, x, x al reves, y, y al reves, z, z al reves; psi1 y psi2 son
    las coordenadas. Los cuatro caminos parten de la misma esquina negra.
    """
    anchor = (1, 1) if board.is_black((1, 1)) else (1, -1)
    starts = {(a, b) for a in (-1, 1) for b in (-1, 1)}
    sequence: list[Cell] = []
    for path in (w, x, y, z):
        if not path.is_monochromatic(board, Color.BLACK):
            raise ValidationError("Los caminos deben ser negros")
        cells = list(path.cells)
        if cells[0] != anchor:
            if cells[0] not in starts or not board.adjacent(anchor, cells[0], Adjacency.EIGHT):
                raise ValidationError(f"Camino no anclado en la esquina {anchor}: {cells[0]}")
            cells.insert(0, anchor)
        sequence.extend(cells)
        sequence.extend(reversed(cells))

    d = linear_graph("plain", len(sequence))
    first_axis = linear_graph("signed", max(abs(v) for v in board.xs))
    second_axis = linear_graph("signed", max(abs(v) for v in board.ys))
    if first_axis.vertices != board.xs or second_axis.vertices != board.ys:
        raise ValidationError("combine_paths requiere ejes con signo")
    psi1 = StructureMap(d, first_axis, tuple(c[0] for c in sequence))
    psi2 = StructureMap(d, second_axis, tuple(c[1] for c in sequence))
    return RelStructure(d), psi1, psi2


def antisymmetric_extension(psi: StructureMap) -> StructureMap:
    """Extiende psi: [n] -> B a signed(n) con psi(-t) = -psi(t)."""
    n = psi.domain.size
    extended = linear_graph("signed", n)
    return StructureMap.from_function(
        extended, psi.codomain, lambda t: psi(t) if t > 0 else -psi(-t)
    )


@dataclass
class CapConstruction:
    """Todas las piezas intermedias de un testigo CAP."""

    phi1: StructureMap
    phi2: StructureMap
    d1: BlockDecomposition
    d2: BlockDecomposition
    board: Board
    g1: AmalgGraph
    g2: AmalgGraph
    interior: dict[Side, CellPath]
    lifted: dict[Side, CellPath]
    witness: RelStructure
    psi1: StructureMap
    psi2: StructureMap

    def __repr__(self) -> str:
        return (
            f"CapConstruction(p={self.d1.p}, q={self.d2.p}, "
            f"witness={self.witness.graph}, board={self.board!r})"
        )


def _check_cap_inputs(phi1: StructureMap, phi2: StructureMap) -> None:
    if phi1.codomain != phi2.codomain:
        raise ValidationError(f"Codominios distintos: {phi1.codomain} y {phi2.codomain}")
    for phi in (phi1, phi2):
        if not (phi.domain.is_signed and phi.codomain.is_signed):
            raise ValidationError("cap_witness requiere grafos con signo")
        if not is_antisymmetric(phi):
            raise ValidationError(f"{phi} no es antisimetrico")
        source = antidiagonal_structure(phi.domain)
        target = antidiagonal_structure(phi.codomain)
        if not is_epimorphism(phi, source, target):
            raise NotAnEpimorphismError(f"{phi} no es epimorfismo")


def build_cap_construction(phi1: StructureMap, phi2: StructureMap) -> CapConstruction:
    _check_cap_inputs(phi1, phi2)
    d1, d2 = block_decomposition(phi1), block_decomposition(phi2)
    board = product_coloring(phi1, phi2)
    corner_dichotomy(board)
    g1 = build_amalg_graph(d1, d2, Variant.G1)
    g2 = build_amalg_graph(d1, d2, Variant.G2)

    interior = {
        Side.LEFT: find_interior_path(g2, Side.LEFT),
        Side.RIGHT: find_interior_path(g2, Side.RIGHT),
        Side.BOTTOM: find_interior_path(g1, Side.BOTTOM),
        Side.TOP: find_interior_path(g1, Side.TOP),
    }
    lifted = {
        side: lift_interior_path(path, d1, d2, board, side) for side, path in interior.items()
    }
    _, psi1, psi2 = combine_paths(
        lifted[Side.LEFT], lifted[Side.RIGHT], lifted[Side.BOTTOM], lifted[Side.TOP], board
    )

    ext1, ext2 = antisymmetric_extension(psi1), antisymmetric_extension(psi2)
    witness = antidiagonal_structure(ext1.domain)
    for psi, phi in ((ext1, phi1), (ext2, phi2)):
        if not is_epimorphism(psi, witness, antidiagonal_structure(phi.domain)):
            raise InvariantViolationError(f"{psi} no es epimorfismo")
    if compose(phi1, ext1) != compose(phi2, ext2):
        raise InvariantViolationError("phi1 o psi1 != phi2 o psi2")
    if ext1(1) not in (-1, 1) or ext2(1) not in (-1, 1):
        raise InvariantViolationError("psi(1) fuera de {-1, 1}")

    logger.debug(f"cap_witness: {phi1.domain} / {phi2.domain} -> {witness.graph}")
    return CapConstruction(
        phi1, phi2, d1, d2, board, g1, g2, interior, lifted, witness, ext1, ext2
    )


def cap_witness(
    phi1: StructureMap, phi2: StructureMap
) -> tuple[RelStructure, StructureMap, StructureMap]:
    construction = build_cap_construction(phi1, phi2)
    return construction.witness, construction.psi1, construction.psi2
