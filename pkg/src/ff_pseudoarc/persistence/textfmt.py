"""
Formato de texto por lineas para grafos, relaciones, mapas y torres.

    # comentario
    graph A plain 4
    rel A 1 3
    rel A antidiagonal
    map phi B A
    1 -> 2
    level 0

Los errores se reportan con ParseError y el numero de linea (base 1).
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

from ff_pseudoarc.core.exceptions import ParseError, ValidationError
from ff_pseudoarc.core.structures import (
    LinearGraph,
    Pair,
    Relation,
    RelStructure,
    StructureMap,
    antidiagonal,
    flip,
    is_antidiagonal,
    linear_graph,
)
from ff_pseudoarc.services.tower import Tower, TowerTarget

logger = logging.getLogger(__name__)


@dataclass
class MapEntry:
    name: str
    source: str
    target: str
    mapping: StructureMap


@dataclass
class Document:
    """Contenido de un archivo: declaraciones en orden de aparicion."""

    graphs: dict[str, LinearGraph] = field(default_factory=dict)
    relations: dict[str, set[Pair]] = field(default_factory=dict)
    maps: dict[str, MapEntry] = field(default_factory=dict)
    levels: list[list[str]] = field(default_factory=list)

    def structure(self, name: str) -> RelStructure:
        if name not in self.graphs:
            raise ValidationError(f"Grafo desconocido: {name}")
        graph = self.graphs[name]
        if name not in self.relations:
            return RelStructure(graph)
        return RelStructure(graph, Relation(graph, frozenset(self.relations[name])))

    def structures(self) -> dict[str, RelStructure]:
        """Solo los grafos que declaran relacion s."""
        return {name: self.structure(name) for name in self.graphs if name in self.relations}

    def get_map(self, name: str) -> StructureMap:
        if name not in self.maps:
            raise ValidationError(f"Mapa desconocido: {name}")
        return self.maps[name].mapping


class _Parser:
    def __init__(self, text: str):
        self.lines = text.splitlines()
        self.doc = Document()
        self._pending: Optional[tuple[int, str, str, str, dict[int, int]]] = None

    def parse(self) -> Document:
        for number, raw in enumerate(self.lines, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "->" in line:
                self._assignment(number, line)
                continue
            self._close_map()
            keyword, *args = line.split()
            handler = {
                "graph": self._graph,
                "rel": self._relation,
                "map": self._map,
                "level": self._level,
            }.get(keyword)
            if handler is None:
                raise ParseError(f"Directiva desconocida: {keyword}", number)
            handler(number, args)
        self._close_map()
        return self.doc

    def _declare(self, name: str) -> None:
        if self.doc.levels:
            self.doc.levels[-1].append(name)

    def _int(self, token: str, number: int) -> int:
        try:
            return int(token)
        except ValueError:
            raise ParseError(f"Se esperaba un entero: {token!r}", number) from None

    def _known_graph(self, name: str, number: int) -> LinearGraph:
        if name not in self.doc.graphs:
            raise ParseError(f"Grafo desconocido: {name}", number)
        return self.doc.graphs[name]

    def _graph(self, number: int, args: list[str]) -> None:
        if len(args) != 3:
            raise ParseError("Uso: graph <nombre> plain|signed <n>", number)
        name, kind, size = args
        if name in self.doc.graphs or name in self.doc.maps:
            raise ParseError(f"Nombre duplicado: {name}", number)
        try:
            self.doc.graphs[name] = linear_graph(kind, self._int(size, number))
        except ValidationError as exc:
            raise ParseError(str(exc), number) from None
        self._declare(name)

    def _relation(self, number: int, args: list[str]) -> None:
        if not args:
            raise ParseError("Uso: rel <grafo> antidiagonal | rel <grafo> a b ...", number)
        name, rest = args[0], args[1:]
        graph = self._known_graph(name, number)
        pairs = self.doc.relations.setdefault(name, set())
        if rest == ["antidiagonal"]:
            pairs.update(antidiagonal(graph).pairs)
            return
        if len(rest) % 2:
            raise ParseError("Los pares de rel deben venir completos", number)
        values = [self._int(token, number) for token in rest]
        for a, b in zip(values[::2], values[1::2]):
            for v in (a, b):
                if v not in graph:
                    raise ParseError(f"Vertice desconocido {v} en {name}", number)
            pairs.add((a, b))

    def _map(self, number: int, args: list[str]) -> None:
        if len(args) != 3:
            raise ParseError("Uso: map <nombre> <origen> <destino>", number)
        name, source, target = args
        if name in self.doc.maps or name in self.doc.graphs:
            raise ParseError(f"Nombre duplicado: {name}", number)
        self._known_graph(source, number)
        self._known_graph(target, number)
        self._pending = (number, name, source, target, {})

    def _assignment(self, number: int, line: str) -> None:
        if self._pending is None:
            raise ParseError("Asignacion fuera de un bloque map", number)
        _, name, source, target, values = self._pending
        left, _, right = line.partition("->")
        v, w = self._int(left.strip(), number), self._int(right.strip(), number)
        if v not in self.doc.graphs[source]:
            raise ParseError(f"Vertice desconocido {v} en {source}", number)
        if w not in self.doc.graphs[target]:
            raise ParseError(f"Vertice desconocido {w} en {target}", number)
        if v in values:
            raise ParseError(f"Asignacion duplicada para {v} en {name}", number)
        values[v] = w

    def _close_map(self) -> None:
        if self._pending is None:
            return
        number, name, source, target, values = self._pending
        self._pending = None
        try:
            mapping = StructureMap.from_mapping(
                self.doc.graphs[source], self.doc.graphs[target], values
            )
        except ValidationError as exc:
            raise ParseError(f"{name}: {exc}", number) from None
        self.doc.maps[name] = MapEntry(name, source, target, mapping)
        self._declare(name)

    def _level(self, number: int, args: list[str]) -> None:
        if len(args) != 1 or self._int(args[0], number) != len(self.doc.levels):
            raise ParseError(f"Se esperaba 'level {len(self.doc.levels)}'", number)
        self.doc.levels.append([])


def parse_text(text: str) -> Document:
    doc = _Parser(text).parse()
    logger.debug(f"parse_text: {len(doc.graphs)} grafos, {len(doc.maps)} mapas")
    return doc


def load_document(path: Union[str, Path]) -> Document:
    return parse_text(Path(path).read_text(encoding="utf-8"))


# ==================== Escritura ====================


def dump_structure(name: str, structure: RelStructure) -> list[str]:
    graph = structure.graph
    lines = [f"graph {name} {graph.kind.value} {graph.size}"]
    if structure.s is None:
        return lines
    if is_antidiagonal(structure):
        lines.append(f"rel {name} antidiagonal")
    elif not structure.s:
        lines.append(f"rel {name}")
    else:
        lines.extend(f"rel {name} {a} {b}" for a, b in structure.s.sorted_pairs())
    return lines


def dump_map(name: str, source: str, target: str, mapping: StructureMap) -> list[str]:
    lines = [f"map {name} {source} {target}"]
    lines.extend(f"{v} -> {w}" for v, w in mapping.items())
    return lines


def dumps(blocks: list[list[str]]) -> str:
    return "\n".join(line for block in blocks for line in block) + "\n"


def dump_tower(tower: Tower) -> str:
    """Cada nivel bajo su cabecera 'level n'; objetivos dentro del nivel que los cubre."""
    blocks: list[list[str]] = []
    for n, level in enumerate(tower.levels):
        blocks.append([f"level {n}"])
        blocks.append(dump_structure(f"L{n}", level))
        if n > 0:
            blocks.append(dump_map(f"bond{n}", f"L{n}", f"L{n - 1}", tower.bonds[n - 1]))
        for i, target in enumerate(tower.targets):
            if target.level == n:
                blocks.append(dump_structure(f"T{i}", target.structure))
                blocks.append(dump_map(f"cover{i}", f"L{n}", f"T{i}", target.cover))
    return dumps(blocks)


def parse_tower(text: str) -> Tower:
    doc = parse_text(text)
    if not doc.levels:
        raise ParseError("Una torre necesita al menos 'level 0'")
    levels, bonds, targets = [], [], []
    for n, names in enumerate(doc.levels):
        level_name = f"L{n}"
        if level_name not in names:
            raise ParseError(f"Falta el grafo {level_name} en el nivel {n}")
        levels.append(doc.structure(level_name))
        if n > 0:
            bond_name = f"bond{n}"
            if bond_name not in names:
                raise ParseError(f"Falta el mapa {bond_name} en el nivel {n}")
            bonds.append(doc.get_map(bond_name))
        for name in names:
            entry = doc.maps.get(name)
            if entry is not None and entry.name.startswith("cover"):
                targets.append(TowerTarget(doc.structure(entry.target), n, entry.mapping))
    return Tower(
        levels=tuple(levels),
        bonds=tuple(bonds),
        flips=tuple(flip(level.graph) for level in levels),
        targets=tuple(targets),
    )


def load_tower(path: Union[str, Path]) -> Tower:
    return parse_tower(Path(path).read_text(encoding="utf-8"))


def save_tower(tower: Tower, path: Union[str, Path]) -> None:
    Path(path).write_text(dump_tower(tower), encoding="utf-8")
    logger.info(f"Torre de {tower.height} niveles guardada en {path}")
