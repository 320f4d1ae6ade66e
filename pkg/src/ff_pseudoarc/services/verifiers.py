"""
Oraculos de fuerza bruta para las propiedades de las familias.

Los verificadores no reutilizan las formulas constructivas para decidir si algo es
correcto: cada testigo pasa por is_epimorphism y por comparaciones punto a punto.
"""

import logging
import random
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Callable, Optional

import networkx as nx

from ff_pseudoarc.core.config import get_settings
from ff_pseudoarc.core.exceptions import (
    AsymmetricRelationError,
    FraisseError,
    InvariantViolationError,
    ValidationError,
)
from ff_pseudoarc.core.structures import (
    Relation,
    RelStructure,
    StructureMap,
    antidiagonal_structure,
    compose,
    enumerate_epimorphisms,
    flip,
    identity_map,
    is_epimorphism,
    linear_graph,
)
from ff_pseudoarc.services.cap_amalgamation import (
    Variant,
    block_decomposition,
    build_amalg_graph,
    cap_witness,
    even_antidiagonal_cover,
    full_range_block,
    has_loop_through_origin,
    interior_degree_violations,
    jpp_witness,
)
from ff_pseudoarc.services.chessboard import (
    Adjacency,
    Board,
    Cell,
    Color,
    boundary_cycle,
    corner_dichotomy,
    has_proper_boundary,
    oriented_quadruples,
    product_coloring,
    solecki_amalgamate,
    steinhaus_check,
)
from ff_pseudoarc.services.membership import (
    all_relations,
    cover_by_antidiagonal,
    is_in_family_F,
    is_symmetric_relation,
    symmetric_members,
)
from ff_pseudoarc.services.worked_example import example_phi1, example_phi2

logger = logging.getLogger(__name__)


@dataclass
class VerificationReport:
    """Resultado de un barrido: instancias, contraejemplos y observaciones."""

    property_name: str
    instance_count: int = 0
    failures: list[str] = field(default_factory=list)
    elapsed: float = 0.0
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, ok: bool, description: str) -> None:
        self.instance_count += 1
        if not ok:
            self.failures.append(description)

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        return VerificationReport(
            property_name=self.property_name,
            instance_count=self.instance_count + other.instance_count,
            failures=self.failures + other.failures,
            elapsed=self.elapsed + other.elapsed,
            notes=self.notes + other.notes,
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "property": self.property_name,
            "passed": self.passed,
            "instances": self.instance_count,
            "failures": list(self.failures),
            "notes": list(self.notes),
            "elapsed": round(self.elapsed, 6),
        }

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"{self.property_name}: {status} "
            f"({self.instance_count} instancias, {len(self.failures)} fallos, {self.elapsed:.2f}s)"
        )


# ==================== Generadores aleatorios ====================


def random_linear_epimorphism(
    rng: random.Random, source_size: int, target_size: int
) -> StructureMap:
    """Epimorfismo r aleatorio [l] -> [k]: recorrido 1..k con visitas extra intercaladas."""
    if source_size < target_size:
        raise ValidationError(f"No hay epimorfismo de [{source_size}] sobre [{target_size}]")
    target = linear_graph("plain", target_size)
    walk = list(target.vertices)
    while len(walk) < source_size:
        i = rng.randrange(len(walk))
        options = [
            w
            for w in target.neighbors(walk[i])
            if i + 1 == len(walk) or target.adjacent(w, walk[i + 1])
        ]
        walk.insert(i + 1, rng.choice(options))
    f = StructureMap(linear_graph("plain", source_size), target, tuple(walk))
    if target_size > 1 and rng.random() < 0.5:
        f = compose(flip(target), f)
    return f


def random_antisymmetric_epimorphism(
    rng: random.Random, source_size: int, target_size: int
) -> StructureMap:
    """
    signed(l) -> signed(k) antisimetrico: recorrido desde +-1 sobre los positivos que
    alcanza +-k a tiempo, extendido por phi(-t) = -phi(t).
    """
    if source_size < target_size:
        raise ValidationError(
            f"No hay epimorfismo de signed({source_size}) sobre signed({target_size})"
        )
    target = linear_graph("signed", target_size)
    walk = [rng.choice((-1, 1))]
    reached = abs(walk[0]) == target_size
    for step in range(1, source_size):
        remaining = source_size - step
        # tras este paso quedan remaining - 1: +-k debe seguir a esa distancia
        options = [
            w
            for w in target.neighbors(walk[-1])
            if reached or target_size - abs(w) < remaining
        ]
        nxt = rng.choice(options)
        walk.append(nxt)
        reached = reached or abs(nxt) == target_size
    if not reached:
        raise InvariantViolationError(f"El recorrido no alcanza +-{target_size}: {walk}")

    domain = linear_graph("signed", source_size)
    return StructureMap.from_function(
        domain, target, lambda t: walk[t - 1] if t > 0 else -walk[-t - 1]
    )


# ==================== Verificador ====================


class PropertyVerifier:
    """Barridos deterministas dado el seed."""

    def __init__(self, seed: Optional[int] = None, max_enum: Optional[int] = None):
        settings = get_settings()
        self.settings = settings
        self.seed = settings.SEED if seed is None else seed
        self.max_enum = settings.MAX_ENUM if max_enum is None else max_enum
        self.rng = random.Random(self.seed)

    def _timed(self, name: str, run: Callable[[VerificationReport], None]) -> VerificationReport:
        report = VerificationReport(name)
        logger.info(f"Verificando {name} (seed={self.seed})")
        started = time.perf_counter()
        run(report)
        report.elapsed = time.perf_counter() - started
        logger.info(report.summary())
        return report

    # -------------------- pertenencia a F --------------------

    @staticmethod
    def antidiagonal_cover_exists(relation: Relation, max_half: int) -> bool:
        """
        Existe ([2j], antidiagonal) ->> (A, s) con j <= max_half?

        Busqueda en anchura sobre (par actual, pares de s cubiertos, aristas cubiertas):
        el par t-esimo es (f(t), f(2j+1-t)) y el ultimo debe quedar pegado a la diagonal.
        """
        base = relation.base
        pairs = relation.sorted_pairs()
        if not pairs:
            return False
        index = {pair: i for i, pair in enumerate(pairs)}
        edges = list(base.edges)
        edge_index = {e: i for i, e in enumerate(edges)}
        full_pairs = (1 << len(pairs)) - 1
        full_edges = (1 << len(edges)) - 1
        vertices = {v for pair in pairs for v in pair}
        if vertices != set(base.vertices):
            return False

        def pair_bits(pair: tuple[int, int]) -> int:
            return (1 << index[pair]) | (1 << index[(pair[1], pair[0])])

        def edge_bit(u: int, v: int) -> int:
            if u == v:
                return 0
            return 1 << edge_index[(min(u, v), max(u, v))]

        walkable = [p for p in pairs if (p[1], p[0]) in index]
        moves = {
            p: [q for q in walkable if base.adjacent(p[0], q[0]) and base.adjacent(p[1], q[1])]
            for p in walkable
        }

        start_states = [(p, pair_bits(p), 0) for p in walkable]
        seen = set(start_states)
        queue = deque((state, 1) for state in start_states)
        while queue:
            (current, covered, touched), depth = queue.popleft()
            a, b = current
            if (
                base.adjacent(a, b)
                and covered == full_pairs
                and touched | edge_bit(a, b) == full_edges
            ):
                return True
            if depth >= max_half:
                continue
            for q in moves[current]:
                state = (
                    q,
                    covered | pair_bits(q),
                    touched | edge_bit(a, q[0]) | edge_bit(b, q[1]),
                )
                if state not in seen:
                    seen.add(state)
                    queue.append((state, depth + 1))
        return False

    def verify_family_membership(self, max_size: int = 3) -> VerificationReport:
        if max_size > 4:
            raise ValidationError("verify_family_membership admite max_size <= 4")

        def run(report: VerificationReport) -> None:
            asymmetric = 0
            for n in range(1, max_size + 1):
                graph = linear_graph("plain", n)
                for relation in all_relations(graph):
                    in_f = is_in_family_F(RelStructure(graph, relation))
                    symmetric = is_symmetric_relation(relation)
                    oracle = self.antidiagonal_cover_exists(relation, 4 * max(len(relation), 1))
                    report.record(
                        oracle == (in_f and symmetric),
                        f"[{n}] {relation}: oraculo={oracle} en_F={in_f} simetrica={symmetric}",
                    )
                    if in_f and not symmetric:
                        asymmetric += 1
            if asymmetric:
                report.notes.append(
                    f"{asymmetric} miembros de F no simetricos: ninguna antidiagonal los cubre"
                )

        return self._timed("membership", run)

    def verify_covers(self, max_size: int = 4) -> VerificationReport:
        """cover_by_antidiagonal sobre todo miembro de F de tamano <= max_size."""

        def run(report: VerificationReport) -> None:
            for n in range(1, max_size + 1):
                graph = linear_graph("plain", n)
                for relation in all_relations(graph):
                    structure = RelStructure(graph, relation)
                    if not is_in_family_F(structure):
                        continue
                    if not is_symmetric_relation(relation):
                        try:
                            cover_by_antidiagonal(structure)
                            report.record(False, f"{relation}: cubrimiento de una asimetrica")
                        except AsymmetricRelationError:
                            report.record(True, "")
                        continue
                    try:
                        cover, phi = cover_by_antidiagonal(structure)
                        ok = is_epimorphism(phi, cover, structure)
                    except FraisseError as exc:
                        ok = False
                        logger.debug(f"cover {relation}: {exc}")
                    report.record(ok, f"[{n}] {relation}: cubrimiento invalido")

        return self._timed("covers", run)

    # -------------------- JPP --------------------

    @staticmethod
    def _check_jpp(first: RelStructure, second: RelStructure) -> bool:
        joint, phi1, phi2 = jpp_witness(first, second)
        return is_epimorphism(phi1, joint, first) and is_epimorphism(phi2, joint, second)

    def verify_jpp(self, max_size: int = 10, member_size: int = 2) -> VerificationReport:
        def run(report: VerificationReport) -> None:
            antidiagonals = [
                antidiagonal_structure(linear_graph("plain", k)) for k in range(1, max_size + 1)
            ]
            for a in antidiagonals:
                for b in antidiagonals:
                    report.record(self._check_jpp(a, b), f"JPP {a.graph} / {b.graph}")

            members = symmetric_members(min(max_size, 4))
            for member in members:
                for a in antidiagonals[:3]:
                    report.record(self._check_jpp(member, a), f"JPP {member.s} / {a.graph}")
            small = [m for m in members if m.graph.size <= member_size]
            for a in small:
                for b in small:
                    report.record(self._check_jpp(a, b), f"JPP {a.s} / {b.s}")

        return self._timed("jpp", run)

    # -------------------- AP de grafos lineales --------------------

    @staticmethod
    def _check_linear_square(alpha: StructureMap, beta: StructureMap) -> bool:
        d, gamma, delta = solecki_amalgamate(alpha, beta)
        return (
            compose(alpha, gamma) == compose(beta, delta)
            and is_epimorphism(gamma, RelStructure(d), RelStructure(alpha.domain))
            and is_epimorphism(delta, RelStructure(d), RelStructure(beta.domain))
        )

    def verify_ap_linear(
        self, max_size: int = 4, instances: Optional[int] = None, random_size: int = 6
    ) -> VerificationReport:
        count = self.settings.AP_INSTANCES if instances is None else instances

        def run(report: VerificationReport) -> None:
            for k in range(1, max_size + 1):
                target = RelStructure(linear_graph("plain", k))
                epis = []
                for size in range(k, max_size + 1):
                    epis.extend(
                        enumerate_epimorphisms(
                            RelStructure(linear_graph("plain", size)), target, self.max_enum
                        )
                    )
                for alpha in epis:
                    for beta in epis:
                        report.record(
                            self._check_linear_square(alpha, beta), f"AP {alpha} / {beta}"
                        )

            for _ in range(count):
                k = self.rng.randint(1, random_size)
                alpha = random_linear_epimorphism(self.rng, self.rng.randint(k, random_size), k)
                beta = random_linear_epimorphism(self.rng, self.rng.randint(k, random_size), k)
                report.record(self._check_linear_square(alpha, beta), f"AP {alpha} / {beta}")

        return self._timed("ap", run)

    # -------------------- CAP --------------------

    @staticmethod
    def _check_cap(phi1: StructureMap, phi2: StructureMap) -> bool:
        witness, psi1, psi2 = cap_witness(phi1, phi2)
        return (
            is_epimorphism(psi1, witness, antidiagonal_structure(phi1.domain))
            and is_epimorphism(psi2, witness, antidiagonal_structure(phi2.domain))
            and compose(phi1, psi1) == compose(phi2, psi2)
            and psi1(1) in (-1, 1)
            and psi2(1) in (-1, 1)
        )

    def _record_cap(
        self, report: VerificationReport, phi1: StructureMap, phi2: StructureMap
    ) -> None:
        try:
            ok = self._check_cap(phi1, phi2)
        except FraisseError as exc:
            ok = False
            logger.debug(f"cap_witness fallo: {exc}")
        report.record(ok, f"CAP {phi1} / {phi2}")

    def random_cap_pair(self, max_size: int) -> tuple[StructureMap, StructureMap]:
        k = self.rng.randint(1, max_size)
        phi1 = random_antisymmetric_epimorphism(self.rng, self.rng.randint(k, max_size), k)
        phi2 = random_antisymmetric_epimorphism(self.rng, self.rng.randint(k, max_size), k)
        return phi1, phi2

    def verify_cap(
        self, instances: Optional[int] = None, max_size: int = 8, cover_size: int = 4
    ) -> VerificationReport:
        count = self.settings.CAP_INSTANCES if instances is None else instances

        def run(report: VerificationReport) -> None:
            self._record_cap(report, example_phi1(), example_phi2())
            for k in range(1, 4):
                ident = identity_map(linear_graph("signed", k))
                self._record_cap(report, ident, ident)
            for _ in range(count):
                self._record_cap(report, *self.random_cap_pair(max_size))

            for member in symmetric_members(cover_size):
                cover, onto = even_antidiagonal_cover(member)
                report.record(
                    cover.graph.is_signed and is_epimorphism(onto, cover, member),
                    f"coinicialidad {member.s}",
                )

        return self._timed("cap", run)

    # -------------------- WAP --------------------

    def verify_wap(self, max_size: int = 3, samples: int = 3) -> VerificationReport:
        """
        Para cada A se toma (B, phi) de even_antidiagonal_cover y se amalgaman pares
        aleatorios psi1, psi2 sobre B mediante cap_witness.
        """

        def run(report: VerificationReport) -> None:
            for member in symmetric_members(max_size):
                cover, phi = even_antidiagonal_cover(member)
                size = cover.graph.size
                for _ in range(samples):
                    psi1 = random_antisymmetric_epimorphism(
                        self.rng, self.rng.randint(size, size + 2), size
                    )
                    psi2 = random_antisymmetric_epimorphism(
                        self.rng, self.rng.randint(size, size + 2), size
                    )
                    try:
                        witness, chi1, chi2 = cap_witness(psi1, psi2)
                        left = compose(phi, compose(psi1, chi1))
                        right = compose(phi, compose(psi2, chi2))
                        ok = left == right and is_epimorphism(left, witness, member)
                    except FraisseError as exc:
                        ok = False
                        logger.debug(f"WAP {member.s}: {exc}")
                    report.record(ok, f"WAP {member.s} via {cover.graph}")
            report.notes.append("los miembros no simetricos de F no tienen cubrimiento en D")

        return self._timed("wap", run)

    # -------------------- Steinhaus --------------------

    @staticmethod
    def _component_masks(board: Board, color: Color, mode: Adjacency) -> dict[Cell, int]:
        """Etiqueta de componente (como bit) de cada celda del color dado."""
        graph = nx.Graph()
        for cell in board.cells():
            if board.color(cell) is color:
                graph.add_node(cell)
                graph.add_edges_from(
                    (cell, nxt) for nxt in board.neighbors(cell, mode) if board.color(nxt) is color
                )
        labels: dict[Cell, int] = {}
        for label, component in enumerate(nx.connected_components(graph)):
            labels.update(dict.fromkeys(component, 1 << label))
        return labels

    def verify_steinhaus(self, rows: int, cols: int, direct: bool = False) -> VerificationReport:
        """Todas las coloraciones de un tablero rows x cols y todas las cuadruplas orientadas."""
        if rows < 1 or cols < 1 or rows * cols > 12:
            raise ValidationError("verify_steinhaus requiere 1 <= rows * cols <= 12")
        xs, ys = tuple(range(1, cols + 1)), tuple(range(1, rows + 1))
        cells = [(x, y) for y in ys for x in xs]

        def run(report: VerificationReport) -> None:
            blank = Board(xs, ys, frozenset())
            if not has_proper_boundary(blank):
                report.notes.append(f"tablero {rows}x{cols} sin cuadruplas orientadas")
                return
            quads = oriented_quadruples(blank)
            arcs = [quad.arcs(blank) for quad in quads]
            logger.debug(f"{len(quads)} cuadruplas sobre un borde de {len(boundary_cycle(blank))}")

            for mask in range(1 << len(cells)):
                black = frozenset(c for i, c in enumerate(cells) if mask >> i & 1)
                board = Board(xs, ys, black)
                if direct:
                    for quad in quads:
                        ok = steinhaus_check(board, quad)
                        report.record(ok, "" if ok else f"{sorted(black)} {quad}")
                    continue

                black_labels = self._component_masks(board, Color.BLACK, Adjacency.EIGHT)
                white_labels = self._component_masks(board, Color.WHITE, Adjacency.FOUR)
                cache: dict[tuple[Cell, ...], tuple[int, int]] = {}

                def touched(arc: tuple[Cell, ...]) -> tuple[int, int]:
                    if arc not in cache:
                        b = w = 0
                        for cell in arc:
                            b |= black_labels.get(cell, 0)
                            w |= white_labels.get(cell, 0)
                        cache[arc] = (b, w)
                    return cache[arc]

                for quad, (wx, xy, yz, zw) in zip(quads, arcs):
                    black_path = bool(touched(wx)[0] & touched(yz)[0])
                    white_path = bool(touched(xy)[1] & touched(zw)[1])
                    ok = black_path != white_path
                    report.record(ok, "" if ok else f"{sorted(black)} {quad}")

        return self._timed(f"steinhaus {rows}x{cols}", run)

    # -------------------- afirmaciones estructurales --------------------

    def _record_claims(
        self, report: VerificationReport, phi1: StructureMap, phi2: StructureMap
    ) -> None:
        label = f"{phi1} / {phi2}"
        try:
            d1, d2 = block_decomposition(phi1), block_decomposition(phi2)
            g1 = build_amalg_graph(d1, d2, Variant.G1)
            g2 = build_amalg_graph(d1, d2, Variant.G2)
        except FraisseError as exc:
            logger.debug(f"claims {label}: {exc}")
            report.record(False, f"construccion fallida {label}: {exc}")
            return
        for g in (g1, g2):
            violations = interior_degree_violations(g)
            report.record(not violations, f"grado interior {violations} {label}")
            if not violations:
                report.record(not has_loop_through_origin(g), f"lazo por (0,0) {label}")
        i0 = full_range_block(d1)
        crossing = any(g1.has_edge((i0, j), (i0 + 1, j)) for j in range(-d2.p, d2.p + 1))
        report.record(not crossing, f"cruce en la columna {i0} {label}")
        try:
            corner_dichotomy(product_coloring(phi1, phi2))
            report.record(True, "")
        except FraisseError:
            report.record(False, f"dicotomia de esquinas {label}")

    def verify_claims(self, instances: int = 200, max_size: int = 8) -> VerificationReport:
        """Grado 2 interior, sin lazos por (0,0), columna i0 sin cruces, dicotomia de esquinas."""

        def run(report: VerificationReport) -> None:
            self._record_claims(report, example_phi1(), example_phi2())
            for _ in range(instances):
                self._record_claims(report, *self.random_cap_pair(max_size))

        return self._timed("claims", run)

    # -------------------- torre --------------------

    def verify_tower(self, extensions: Optional[int] = None) -> VerificationReport:
        from ff_pseudoarc.services.tower import check_tower, random_extensions

        count = self.settings.TOWER_EXTENSIONS if extensions is None else extensions
        report = check_tower(random_extensions(self.rng, count))
        logger.info(report.summary())
        return report

    def verify(self, name: str, **options: Any) -> VerificationReport:
        runners: dict[str, Callable[..., VerificationReport]] = {
            "membership": self.verify_family_membership,
            "covers": self.verify_covers,
            "jpp": self.verify_jpp,
            "ap": self.verify_ap_linear,
            "cap": self.verify_cap,
            "wap": self.verify_wap,
            "steinhaus": self.verify_steinhaus,
            "claims": self.verify_claims,
            "tower": self.verify_tower,
        }
        if name not in runners:
            raise ValidationError(f"Propiedad desconocida: {name}. Opciones: {sorted(runners)}")
        return runners[name](**options)


PROPERTIES = ("membership", "covers", "jpp", "ap", "cap", "wap", "steinhaus", "claims", "tower")
