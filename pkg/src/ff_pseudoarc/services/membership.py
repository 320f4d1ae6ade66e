"""
Pertenencia a la familia F y cubrimientos por antidiagonales.

(A, s) esta en F si y solo si s es sobreyectiva y conexa. Un testigo constructivo es un
epimorfismo desde ([4m], antidiagonal) construido a partir de un recorrido sobreyectivo del
grafo de la relacion.
"""

import logging
from typing import Optional

import networkx as nx

from ff_pseudoarc.core.exceptions import (
    AsymmetricRelationError,
    InvariantViolationError,
    NotInFamilyError,
    ValidationError,
)
from ff_pseudoarc.core.structures import (
    LinearGraph,
    Pair,
    Relation,
    RelStructure,
    StructureMap,
    antidiagonal_structure,
    is_epimorphism,
    linear_graph,
)

logger = logging.getLogger(__name__)


class RelationGraph:
    """
    Grafo G_s: sus vertices son los pares de s; (a,b) y (c,d) son vecinos cuando
    r(a,c) y r(b,d).
    """

    def __init__(self, relation: Relation):
        self.relation = relation
        self.vertices: list[Pair] = relation.sorted_pairs()
        base = relation.base
        self.graph = nx.Graph()
        self.graph.add_nodes_from(self.vertices)
        for i, (a, b) in enumerate(self.vertices):
            for c, d in self.vertices[i + 1 :]:
                if base.adjacent(a, c) and base.adjacent(b, d):
                    self.graph.add_edge((a, b), (c, d))

    @property
    def edges(self) -> list[tuple[Pair, Pair]]:
        return sorted(tuple(sorted(edge)) for edge in self.graph.edges)

    def neighbors(self, pair: Pair) -> list[Pair]:
        return sorted(self.graph.neighbors(pair))

    def is_connected(self) -> bool:
        if self.graph.number_of_nodes() <= 1:
            return True
        return nx.is_connected(self.graph)

    def __len__(self) -> int:
        return len(self.vertices)

    def __repr__(self) -> str:
        return f"RelationGraph(vertices={len(self.vertices)}, edges={self.graph.number_of_edges()})"


def is_surjective_relation(relation: Relation) -> bool:
    """Todo vertice tiene un sucesor y un predecesor en s."""
    sources = {a for a, _ in relation.pairs}
    targets = {b for _, b in relation.pairs}
    vertices = set(relation.base.vertices)
    return sources == vertices and targets == vertices


def relation_graph(relation: Relation) -> RelationGraph:
    return RelationGraph(relation)


def is_connected_relation(relation: Relation) -> bool:
    return relation_graph(relation).is_connected()


def is_symmetric_relation(relation: Relation) -> bool:
    return all((b, a) in relation.pairs for a, b in relation.pairs)


def is_in_family_F(structure: RelStructure) -> bool:
    if structure.s is None:
        raise ValidationError("La estructura no tiene relacion s")
    return is_surjective_relation(structure.s) and is_connected_relation(structure.s)


def near_diagonal_start(relation: Relation) -> Optional[Pair]:
    """
    Menor i0 (en el orden del grafo) con (i0,i0), (i0,i0+1) o (i0+1,i0) en s,
    probando las tres formas en ese orden.
    """
    base = relation.base
    for vertex in base.vertices:
        nxt = base.successor(vertex)
        shapes = [(vertex, vertex)]
        if nxt is not None:
            shapes.extend([(vertex, nxt), (nxt, vertex)])
        for pair in shapes:
            if pair in relation.pairs:
                return pair
    return None


def surjective_walk(graph: RelationGraph, start: Pair) -> list[Pair]:
    """
    Recorrido DFS desde start: emite cada vertice al entrar y el padre al retroceder,
    y se corta en cuanto todos los vertices fueron visitados (longitud <= 2|s|-1).
    """
    total = len(graph)
    walk = [start]
    visited = {start}
    stack = [(start, iter(graph.neighbors(start)))]
    while stack and len(visited) < total:
        _, pending = stack[-1]
        nxt = next((pair for pair in pending if pair not in visited), None)
        if nxt is None:
            stack.pop()
            if stack:
                walk.append(stack[-1][0])
            continue
        visited.add(nxt)
        walk.append(nxt)
        stack.append((nxt, iter(graph.neighbors(nxt))))

    if len(visited) < total:
        raise InvariantViolationError("El grafo de la relacion no es conexo")
    return walk


def cover_by_antidiagonal(structure: RelStructure) -> tuple[RelStructure, StructureMap]:
    """
    Devuelve (B, phi) con B = ([4m], antidiagonal) y phi: B -> A epimorfismo.

    La imagen de una antidiagonal siempre es simetrica, por lo que solo los miembros
    simetricos de F admiten este cubrimiento.
    """
    if not is_in_family_F(structure):
        raise NotInFamilyError("La relacion no es sobreyectiva y conexa")
    relation = structure.s
    assert relation is not None
    if not is_symmetric_relation(relation):
        raise AsymmetricRelationError(
            f"{relation} no es simetrica: ninguna antidiagonal se proyecta sobre ella"
        )

    start = near_diagonal_start(relation)
    if start is None:
        raise InvariantViolationError(f"Sin par cercano a la diagonal en {relation}")

    h = surjective_walk(relation_graph(relation), start)
    m = len(h)
    values: list[int] = []
    for t in range(1, 4 * m + 1):
        if t <= m:
            values.append(h[t - 1][0])
        elif t <= 2 * m:
            values.append(h[2 * m - t][0])
        elif t <= 3 * m:
            values.append(h[t - 2 * m - 1][1])
        else:
            values.append(h[4 * m - t][1])

    cover = antidiagonal_structure(linear_graph("plain", 4 * m))
    phi = StructureMap(cover.graph, structure.graph, tuple(values))
    if not is_epimorphism(phi, cover, structure):
        raise InvariantViolationError(f"El cubrimiento de {relation} no es epimorfismo")
    logger.debug(f"cover_by_antidiagonal: |s|={len(relation)} m={m} start={start}")
    return cover, phi


def all_relations(graph: LinearGraph, symmetric_only: bool = False) -> list[Relation]:
    """Todas las relaciones sobre el grafo (2^(n^2), o 2^(n(n+1)/2) si son simetricas)."""
    vs = graph.vertices
    if symmetric_only:
        atoms = [(a, b) for a in vs for b in vs if a <= b]
    else:
        atoms = [(a, b) for a in vs for b in vs]
    relations = []
    for mask in range(1 << len(atoms)):
        pairs = set()
        for bit, (a, b) in enumerate(atoms):
            if mask >> bit & 1:
                pairs.add((a, b))
                if symmetric_only:
                    pairs.add((b, a))
        relations.append(Relation(graph, frozenset(pairs)))
    return relations


def symmetric_members(max_size: int) -> list[RelStructure]:
    """Miembros simetricos de F sobre [n], n <= max_size, en orden de enumeracion."""
    members = []
    for n in range(1, max_size + 1):
        graph = linear_graph("plain", n)
        for relation in all_relations(graph, symmetric_only=True):
            structure = RelStructure(graph, relation)
            if is_in_family_F(structure):
                members.append(structure)
    return members
