"""
Estructuras base: grafos lineales reflexivos, relaciones binarias y mapas entre grafos.

Un grafo lineal es plano ([1..n]) o con signo ([-k..-1] U [1..k]); en el caso con signo
el orden -k < ... < -1 < 1 < ... < k define la adyacencia, asi que -1 y 1 son vecinos.
Todos los valores son inmutables y las operaciones son puras.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Callable, Iterable, Iterator, Mapping, Optional, Union

from ff_pseudoarc.core.config import get_settings
from ff_pseudoarc.core.exceptions import EnumerationBudgetError, ValidationError

logger = logging.getLogger(__name__)

Pair = tuple[int, int]


class GraphKind(Enum):
    """Forma del conjunto de vertices"""

    PLAIN = "plain"
    SIGNED = "signed"


@dataclass(frozen=True)
class LinearGraph:
    """Grafo lineal reflexivo finito."""

    kind: GraphKind
    size: int

    def __post_init__(self) -> None:
        if not isinstance(self.kind, GraphKind):
            raise ValidationError(f"Tipo de grafo invalido: {self.kind!r}")
        if not isinstance(self.size, int) or isinstance(self.size, bool) or self.size < 1:
            raise ValidationError(f"El tamano debe ser >= 1, recibido: {self.size!r}")

    @cached_property
    def vertices(self) -> tuple[int, ...]:
        positive = tuple(range(1, self.size + 1))
        if self.kind is GraphKind.PLAIN:
            return positive
        return tuple(range(-self.size, 0)) + positive

    @cached_property
    def _positions(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def r_pairs(self) -> frozenset[Pair]:
        """Relacion r: lazos mas pares consecutivos en ambos sentidos."""
        pairs = {(v, v) for v in self.vertices}
        for u, v in self.edges:
            pairs.add((u, v))
            pairs.add((v, u))
        return frozenset(pairs)

    @property
    def edges(self) -> tuple[Pair, ...]:
        vs = self.vertices
        return tuple(zip(vs, vs[1:]))

    @property
    def min_vertex(self) -> int:
        return self.vertices[0]

    @property
    def max_vertex(self) -> int:
        return self.vertices[-1]

    @property
    def is_signed(self) -> bool:
        return self.kind is GraphKind.SIGNED

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, vertex: object) -> bool:
        return vertex in self._positions

    def __iter__(self) -> Iterator[int]:
        return iter(self.vertices)

    def position(self, vertex: int) -> int:
        try:
            return self._positions[vertex]
        except KeyError:
            raise ValidationError(f"{vertex} no es vertice de {self}") from None

    def adjacent(self, u: int, v: int) -> bool:
        """r(u, v): iguales o consecutivos en el orden del grafo."""
        return abs(self.position(u) - self.position(v)) <= 1

    def successor(self, vertex: int) -> Optional[int]:
        pos = self.position(vertex) + 1
        return self.vertices[pos] if pos < len(self.vertices) else None

    def neighbors(self, vertex: int) -> tuple[int, ...]:
        """Vecinos r en orden creciente, incluido el propio vertice."""
        pos = self.position(vertex)
        return self.vertices[max(pos - 1, 0) : pos + 2]

    def __str__(self) -> str:
        return f"{self.kind.value}({self.size})"


@dataclass(frozen=True)
class Relation:
    """Relacion binaria s sobre los vertices de un grafo."""

    base: LinearGraph
    pairs: frozenset[Pair]

    def __post_init__(self) -> None:
        object.__setattr__(self, "pairs", frozenset((int(a), int(b)) for a, b in self.pairs))
        for a, b in self.pairs:
            if a not in self.base or b not in self.base:
                raise ValidationError(f"Par ({a},{b}) fuera de {self.base}")

    def __len__(self) -> int:
        return len(self.pairs)

    def __contains__(self, pair: object) -> bool:
        return pair in self.pairs

    def __iter__(self) -> Iterator[Pair]:
        return iter(self.sorted_pairs())

    def sorted_pairs(self) -> list[Pair]:
        return sorted(self.pairs)

    def reverse(self) -> "Relation":
        return Relation(self.base, frozenset((b, a) for a, b in self.pairs))

    def __str__(self) -> str:
        body = ", ".join(f"({a},{b})" for a, b in self.sorted_pairs())
        return "{" + body + "}"


@dataclass(frozen=True)
class StructureMap:
    """Mapa total de vertices entre dos grafos lineales."""

    domain: LinearGraph
    codomain: LinearGraph
    assignment: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "assignment", tuple(int(w) for w in self.assignment))
        if len(self.assignment) != len(self.domain):
            raise ValidationError(
                f"Mapa no total: {len(self.assignment)} imagenes para {len(self.domain)} vertices"
            )
        for w in self.assignment:
            if w not in self.codomain:
                raise ValidationError(f"Imagen {w} fuera de {self.codomain}")

    @classmethod
    def from_mapping(
        cls, domain: LinearGraph, codomain: LinearGraph, mapping: Mapping[int, int]
    ) -> "StructureMap":
        missing = [v for v in domain.vertices if v not in mapping]
        if missing:
            raise ValidationError(f"Mapa no total, faltan: {missing}")
        extra = [v for v in mapping if v not in domain]
        if extra:
            raise ValidationError(f"Vertices desconocidos en el dominio: {extra}")
        return cls(domain, codomain, tuple(mapping[v] for v in domain.vertices))

    @classmethod
    def from_function(
        cls, domain: LinearGraph, codomain: LinearGraph, fn: Callable[[int], int]
    ) -> "StructureMap":
        return cls(domain, codomain, tuple(fn(v) for v in domain.vertices))

    def __call__(self, vertex: int) -> int:
        return self.assignment[self.domain.position(vertex)]

    def items(self) -> Iterator[Pair]:
        return zip(self.domain.vertices, self.assignment)

    def as_dict(self) -> dict[int, int]:
        return dict(self.items())

    @property
    def image(self) -> frozenset[int]:
        return frozenset(self.assignment)

    def is_surjective(self) -> bool:
        return len(self.image) == len(self.codomain)

    def __str__(self) -> str:
        return f"{self.domain}->{self.codomain} {self.assignment}"


@dataclass(frozen=True)
class RelStructure:
    """Estructura (A, s^A); sin s la estructura solo lleva r."""

    graph: LinearGraph
    s: Optional[Relation] = None

    def __post_init__(self) -> None:
        if self.s is not None and self.s.base != self.graph:
            raise ValidationError(f"La relacion vive en {self.s.base}, no en {self.graph}")

    @property
    def has_relation(self) -> bool:
        return self.s is not None

    def __len__(self) -> int:
        return len(self.graph)


# ==================== Constructores ====================


def linear_graph(kind: Union[GraphKind, str], size: int) -> LinearGraph:
    if isinstance(kind, str):
        try:
            kind = GraphKind(kind.strip().lower())
        except ValueError:
            raise ValidationError(f"Tipo de grafo desconocido: {kind}") from None
    return LinearGraph(kind, size)


def antidiagonal(graph: LinearGraph) -> Relation:
    """Plano: {(k, n+1-k)}; con signo: {(i, -i)}."""
    if graph.is_signed:
        return Relation(graph, frozenset((i, -i) for i in graph.vertices))
    n = graph.size
    return Relation(graph, frozenset((k, n + 1 - k) for k in graph.vertices))


def identity_relation(graph: LinearGraph) -> Relation:
    return Relation(graph, frozenset((v, v) for v in graph.vertices))


def antidiagonal_structure(graph: LinearGraph) -> RelStructure:
    return RelStructure(graph, antidiagonal(graph))


def is_antidiagonal(structure: RelStructure) -> bool:
    return structure.s is not None and structure.s == antidiagonal(structure.graph)


def identity_map(graph: LinearGraph) -> StructureMap:
    return StructureMap(graph, graph, graph.vertices)


def order_isomorphism(source: LinearGraph, target: LinearGraph) -> StructureMap:
    """Biyeccion que respeta posiciones entre grafos del mismo tamano."""
    if len(source) != len(target):
        raise ValidationError(f"Tamanos distintos: {source} y {target}")
    return StructureMap(source, target, target.vertices)


def flip(graph: LinearGraph) -> StructureMap:
    """Unico automorfismo no trivial: plano i -> n+1-i, con signo i -> -i."""
    if len(graph) == 1:
        logger.warning(f"{graph} no tiene automorfismo no trivial; se devuelve la identidad")
        return identity_map(graph)
    if graph.is_signed:
        return StructureMap.from_function(graph, graph, lambda v: -v)
    n = graph.size
    return StructureMap.from_function(graph, graph, lambda v: n + 1 - v)


# ==================== Calculo de epimorfismos ====================


def _image(f: StructureMap, pairs: Iterable[Pair]) -> frozenset[Pair]:
    return frozenset((f(a), f(b)) for a, b in pairs)


def relation_image(f: StructureMap, relation: Relation) -> Relation:
    """Empuje de s por f: {(f(a), f(b)) : (a, b) en s}."""
    if relation.base != f.domain:
        raise ValidationError("La relacion no vive en el dominio del mapa")
    return Relation(f.codomain, _image(f, relation.pairs))


def _check_signature(f: StructureMap, source: RelStructure, target: RelStructure) -> None:
    if f.domain != source.graph or f.codomain != target.graph:
        raise ValidationError(
            f"Mapa {f.domain}->{f.codomain} incompatible con {source.graph}->{target.graph}"
        )
    if source.has_relation != target.has_relation:
        raise ValidationError("La relacion s debe estar en ambas estructuras o en ninguna")


def is_epimorphism(f: StructureMap, source: RelStructure, target: RelStructure) -> bool:
    """
    Sobreyectivo y preserva r (y s si existe) en ambos sentidos: la imagen de cada
    relacion del origen coincide exactamente con la relacion del destino.
    """
    _check_signature(f, source, target)
    if not f.is_surjective():
        return False
    if _image(f, source.graph.r_pairs) != target.graph.r_pairs:
        return False
    if source.s is not None and target.s is not None:
        if relation_image(f, source.s).pairs != target.s.pairs:
            return False
    return True


def is_antisymmetric(f: StructureMap) -> bool:
    """f(-i) = -f(i) para todo i; solo tiene sentido entre grafos con signo."""
    if not (f.domain.is_signed and f.codomain.is_signed):
        return False
    return all(f(-v) == -w for v, w in f.items())


def compose(g: StructureMap, f: StructureMap) -> StructureMap:
    """g o f"""
    if f.codomain != g.domain:
        raise ValidationError(f"No se puede componer: {f.codomain} != {g.domain}")
    return StructureMap(f.domain, g.codomain, tuple(g(w) for w in f.assignment))


def enumerate_epimorphisms(
    source: RelStructure, target: RelStructure, max_enum: Optional[int] = None
) -> list[StructureMap]:
    """
    Todos los epimorfismos source -> target en orden lexicografico de asignacion.

    Backtracking con poda por adyacencia r, por pares de s ya asignados y por
    sobreyectividad alcanzable; cada candidato completo pasa por is_epimorphism.
    """
    if source.has_relation != target.has_relation:
        raise ValidationError("La relacion s debe estar en ambas estructuras o en ninguna")

    budget = max_enum if max_enum is not None else get_settings().MAX_ENUM
    src_vertices = source.graph.vertices
    tgt_vertices = target.graph.vertices
    candidates = len(tgt_vertices) ** len(src_vertices)
    if candidates > budget:
        raise EnumerationBudgetError(
            f"{len(tgt_vertices)}^{len(src_vertices)} = {candidates} mapas superan el "
            f"presupuesto {budget}"
        )

    n = len(src_vertices)
    position = {v: i for i, v in enumerate(src_vertices)}
    s_checks: list[list[Pair]] = [[] for _ in range(n)]
    if source.s is not None:
        for a, b in source.s.pairs:
            s_checks[max(position[a], position[b])].append((a, b))
    target_s = target.s.pairs if target.s is not None else frozenset()

    results: list[StructureMap] = []
    assignment: list[int] = []
    value_of: dict[int, int] = {}

    def extend(t: int) -> None:
        if t == n:
            f = StructureMap(source.graph, target.graph, tuple(assignment))
            if is_epimorphism(f, source, target):
                results.append(f)
            return
        vertex = src_vertices[t]
        for w in tgt_vertices:
            if t > 0 and not target.graph.adjacent(assignment[-1], w):
                continue
            assignment.append(w)
            value_of[vertex] = w
            reachable = len(tgt_vertices) - len(set(assignment)) <= n - t - 1
            if reachable and all((value_of[a], value_of[b]) in target_s for a, b in s_checks[t]):
                extend(t + 1)
            assignment.pop()
            del value_of[vertex]

    extend(0)
    logger.debug(f"enumerate_epimorphisms {source.graph}->{target.graph}: {len(results)} mapas")
    return results
