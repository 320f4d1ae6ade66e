"""
CLI de ff-pseudoarc
Punto de entrada unico: formato de texto, subcomandos, renders y el ejemplo trabajado
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Optional

from ff_pseudoarc.core.config import Settings, get_settings
from ff_pseudoarc.core.exceptions import FraisseError, ValidationError
from ff_pseudoarc.core.structures import (
    StructureMap,
    antidiagonal_structure,
    compose,
    is_epimorphism,
)
from ff_pseudoarc.persistence.textfmt import (
    Document,
    dump_map,
    dump_structure,
    dumps,
    load_document,
    load_tower,
    save_tower,
)
from ff_pseudoarc.services import worked_example
from ff_pseudoarc.services.cap_amalgamation import (
    CapConstruction,
    Variant,
    block_decomposition,
    block_range,
    build_amalg_graph,
    build_cap_construction,
    jpp_witness,
)
from ff_pseudoarc.services.chessboard import product_coloring
from ff_pseudoarc.services.membership import (
    cover_by_antidiagonal,
    is_connected_relation,
    is_in_family_F,
    is_surjective_relation,
)
from ff_pseudoarc.services.tower import check_tower, extend_tower, new_tower
from ff_pseudoarc.services.verifiers import PROPERTIES, PropertyVerifier, VerificationReport
from ff_pseudoarc.ui.render import amalg_graph_to_svg, board_to_ascii, board_to_svg, format_edges
from ff_pseudoarc.ui.theme import ThemeName

logger = logging.getLogger("ff_pseudoarc")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INVALID = 2


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _emit_report(report: VerificationReport, as_json: bool) -> int:
    if as_json:
        _emit(json.dumps(report.to_dict(), indent=2, sort_keys=True))
    else:
        lines = [report.summary()]
        lines.extend(f"  fallo: {failure}" for failure in report.failures[:20])
        if len(report.failures) > 20:
            lines.append(f"  ... y {len(report.failures) - 20} fallos mas")
        lines.extend(f"  nota: {note}" for note in report.notes)
        _emit("\n".join(lines))
    return EXIT_OK if report.passed else EXIT_FAILED


def _pick_maps(
    doc: Document, first: Optional[str], second: Optional[str]
) -> tuple[tuple[str, StructureMap], tuple[str, StructureMap]]:
    names = list(doc.maps)
    first = first or (names[0] if names else None)
    second = second or (names[1] if len(names) > 1 else None)
    if first is None or second is None:
        raise ValidationError("Se necesitan dos mapas en el archivo")
    return (first, doc.get_map(first)), (second, doc.get_map(second))


def _source_name(doc: Document, map_name: str) -> str:
    return doc.maps[map_name].source


# ==================== membership ====================


def cmd_membership_check(args: argparse.Namespace, settings: Settings) -> int:
    doc = load_document(args.file)
    names = [args.name] if args.name else list(doc.structures())
    if not names:
        raise ValidationError("El archivo no declara ninguna relacion")
    results = []
    for name in names:
        structure = doc.structure(name)
        if structure.s is None:
            raise ValidationError(f"{name} no tiene relacion s")
        surjective = is_surjective_relation(structure.s)
        connected = is_connected_relation(structure.s)
        results.append(
            {
                "name": name,
                "surjective": surjective,
                "connected": connected,
                "in_F": is_in_family_F(structure),
            }
        )
    if args.json:
        _emit(json.dumps(results, indent=2))
        return EXIT_OK
    for result in results:
        verdict = "; ".join(
            [
                "surjective" if result["surjective"] else "not surjective",
                "connected" if result["connected"] else "not connected",
                "in F" if result["in_F"] else "not in F",
            ]
        )
        _emit(f"{result['name']}: verdict: {verdict}")
    return EXIT_OK


def cmd_membership_cover(args: argparse.Namespace, settings: Settings) -> int:
    doc = load_document(args.file)
    name = args.name or next(iter(doc.structures()), None)
    if name is None:
        raise ValidationError("El archivo no declara ninguna relacion")
    structure = doc.structure(name)
    cover, phi = cover_by_antidiagonal(structure)
    _emit(
        dumps(
            [
                dump_structure(name, structure),
                dump_structure("B", cover),
                dump_map("phi", "B", name, phi),
            ]
        )
    )
    return EXIT_OK


# ==================== jpp ====================


def cmd_jpp(args: argparse.Namespace, settings: Settings) -> int:
    doc = load_document(args.file)
    structures = list(doc.structures())
    first = args.first or (structures[0] if structures else None)
    second = args.second or (structures[1] if len(structures) > 1 else first)
    if first is None or second is None:
        raise ValidationError("Se necesitan estructuras con relacion s")
    a, b = doc.structure(first), doc.structure(second)
    joint, phi1, phi2 = jpp_witness(a, b)

    report = VerificationReport("jpp")
    report.record(is_epimorphism(phi1, joint, a), f"phi1 no es epimorfismo sobre {first}")
    report.record(is_epimorphism(phi2, joint, b), f"phi2 no es epimorfismo sobre {second}")
    blocks = [dump_structure("C", joint), dump_map("phi1", "C", first, phi1)]
    blocks.append(dump_map("phi2", "C", second, phi2))
    if not args.json:
        _emit(dumps(blocks))
    return _emit_report(report, args.json)


# ==================== cap ====================


def _cap_report(construction: CapConstruction) -> VerificationReport:
    phi1, phi2 = construction.phi1, construction.phi2
    psi1, psi2, witness = construction.psi1, construction.psi2, construction.witness
    report = VerificationReport("cap")
    report.record(
        is_epimorphism(psi1, witness, antidiagonal_structure(phi1.domain)), "psi1 no es epimorfismo"
    )
    report.record(
        is_epimorphism(psi2, witness, antidiagonal_structure(phi2.domain)), "psi2 no es epimorfismo"
    )
    report.record(compose(phi1, psi1) == compose(phi2, psi2), "el cuadrado no conmuta")
    report.record(psi1(1) in (-1, 1) and psi2(1) in (-1, 1), "psi(1) fuera de {-1, 1}")
    return report


def cmd_cap_amalgamate(args: argparse.Namespace, settings: Settings) -> int:
    doc = load_document(args.file)
    (name1, phi1), (name2, phi2) = _pick_maps(doc, args.first, args.second)
    construction = build_cap_construction(phi1, phi2)
    src1, src2 = _source_name(doc, name1), _source_name(doc, name2)
    report = _cap_report(construction)
    if not args.json:
        blocks = [dump_structure(src1, antidiagonal_structure(phi1.domain))]
        if src2 != src1:
            blocks.append(dump_structure(src2, antidiagonal_structure(phi2.domain)))
        blocks.append(dump_structure("D", construction.witness))
        blocks.append(dump_map("psi1", "D", src1, construction.psi1))
        blocks.append(dump_map("psi2", "D", src2, construction.psi2))
        _emit(dumps(blocks))
    return _emit_report(report, args.json)


def cmd_cap_graphs(args: argparse.Namespace, settings: Settings) -> int:
    doc = load_document(args.file)
    (_, phi1), (_, phi2) = _pick_maps(doc, args.first, args.second)
    d1, d2 = block_decomposition(phi1), block_decomposition(phi2)
    g = build_amalg_graph(d1, d2, Variant(args.variant))
    if args.format == "svg":
        _emit(amalg_graph_to_svg(g, args.theme or settings.THEME, settings.SVG_CELL))
    else:
        _emit(format_edges(g))
    return EXIT_OK


def cmd_cap_example(args: argparse.Namespace, settings: Settings) -> int:
    phi1, phi2 = worked_example.example_phi1(), worked_example.example_phi2()
    construction = build_cap_construction(phi1, phi2)
    d1, d2, board = construction.d1, construction.d2, construction.board
    report = _cap_report(construction)
    report.property_name = "cap example"
    theme = args.theme or settings.THEME

    breakpoints1, breakpoints2 = d1.describe("s"), d2.describe("t")
    report.record(breakpoints1 == worked_example.PHI1_BREAKPOINTS, f"phi1: {breakpoints1}")
    report.record(breakpoints2 == worked_example.PHI2_BREAKPOINTS, f"phi2: {breakpoints2}")
    for dec, expected, label in (
        (d1, worked_example.PHI1_RANGES, "phi1"),
        (d2, worked_example.PHI2_RANGES, "phi2"),
    ):
        ranges = {i: block_range(dec, i) for i in range(-dec.p, dec.p)}
        report.record(ranges == expected, f"rangos de {label}: {ranges}")
    report.record(
        construction.g1.edges == worked_example.G1_EDGES, "G1 difiere de la transcripcion esperada"
    )
    report.record(
        construction.g2.edges == worked_example.G2_EDGES, "G2 difiere de la transcripcion esperada"
    )
    report.record(
        all(board.is_black(c) for c in worked_example.BLACK_SPOT_CELLS)
        and not any(board.is_black(c) for c in worked_example.WHITE_SPOT_CELLS),
        "celdas de control",
    )
    report.record(
        all(board.is_black((-x, -y)) for x, y in board.black), "simetria central del tablero"
    )

    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        paths = list(construction.lifted.values())
        (out / "board.svg").write_text(
            board_to_svg(board, theme, settings.SVG_CELL, paths), encoding="utf-8"
        )
        for g in (construction.g1, construction.g2):
            (out / f"{g.variant.value}.svg").write_text(
                amalg_graph_to_svg(g, theme, settings.SVG_CELL), encoding="utf-8"
            )
        logger.info(f"SVG escritos en {out}")

    if not args.json:
        lines = ["# puntos de corte", breakpoints1, breakpoints2, "# rangos de bloque"]
        for dec, label in ((d1, "phi1"), (d2, "phi2")):
            tokens = []
            for i in range(-dec.p, dec.p):
                low, high = block_range(dec, i)
                tokens.append(f"{i}:[{low},{high}]")
            lines.append(f"{label} " + " ".join(tokens))
        _emit("\n".join(lines))
        if args.format == "svg":
            _emit(board_to_svg(board, theme, settings.SVG_CELL))
        else:
            _emit("# tablero\n" + board_to_ascii(board))
            _emit(format_edges(construction.g1) + format_edges(construction.g2))
        _emit(f"# testigo: {construction.witness.graph}")
    return _emit_report(report, args.json)


# ==================== chessboard ====================


def cmd_chessboard_render(args: argparse.Namespace, settings: Settings) -> int:
    doc = load_document(args.file)
    (_, phi1), (_, phi2) = _pick_maps(doc, args.first, args.second)
    board = product_coloring(phi1, phi2)
    if args.format == "svg":
        _emit(board_to_svg(board, args.theme or settings.THEME, settings.SVG_CELL))
    else:
        _emit(board_to_ascii(board))
    return EXIT_OK


def cmd_chessboard_steinhaus(args: argparse.Namespace, settings: Settings) -> int:
    verifier = PropertyVerifier(seed=args.seed)
    report = verifier.verify_steinhaus(args.rows, args.cols, direct=args.exhaustive)
    return _emit_report(report, args.json)


# ==================== verify ====================


def _verify_options(args: argparse.Namespace) -> dict[str, Any]:
    options: dict[str, Any] = {}
    name = args.property
    if args.max_size is not None and name not in ("steinhaus", "tower"):
        options["max_size"] = args.max_size
    if args.instances is not None:
        key = {"ap": "instances", "cap": "instances", "claims": "instances", "wap": "samples"}
        key["tower"] = "extensions"
        if name in key:
            options[key[name]] = args.instances
    if name == "steinhaus":
        options["rows"], options["cols"] = args.rows, args.cols
    return options


def cmd_verify(args: argparse.Namespace, settings: Settings) -> int:
    verifier = PropertyVerifier(seed=args.seed)
    report = verifier.verify(args.property, **_verify_options(args))
    return _emit_report(report, args.json)


# ==================== tower ====================


def cmd_tower_build(args: argparse.Namespace, settings: Settings) -> int:
    doc = load_document(args.targets)
    tower = new_tower()
    for name, structure in doc.structures().items():
        logger.info(f"Extendiendo la torre con {name}")
        tower = extend_tower(tower, structure)
    save_tower(tower, args.out)
    return _emit_report(check_tower(tower), args.json)


def cmd_tower_check(args: argparse.Namespace, settings: Settings) -> int:
    return _emit_report(check_tower(load_tower(args.file)), args.json)


# ==================== parser ====================


def _add_render_flags(sub: argparse.ArgumentParser) -> None:
    """--ascii | --svg | --format, mas --theme para el SVG."""
    fmt = sub.add_mutually_exclusive_group()
    fmt.add_argument("--format", choices=["ascii", "svg"], dest="format")
    fmt.add_argument("--ascii", action="store_const", const="ascii", dest="format")
    fmt.add_argument("--svg", action="store_const", const="svg", dest="format")
    sub.add_argument("--theme", choices=[t.value for t in ThemeName], default=None)
    sub.set_defaults(format="ascii")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--verbose", action="store_true", help="Logs DEBUG en stderr")
    common.add_argument("--json", action="store_true", help="Salida JSON")
    common.add_argument("--seed", type=int, default=None, help="Semilla de los barridos")

    parser = argparse.ArgumentParser(
        prog="ff-pseudoarc", description="Nucleo finito de la familia de Fraisse del pseudo-arco"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    def leaf(group: Any, name: str, handler: Callable[..., int], **kwargs: Any) -> Any:
        sub = group.add_parser(name, parents=[common], **kwargs)
        sub.set_defaults(handler=handler)
        return sub

    membership = commands.add_parser("membership").add_subparsers(dest="action", required=True)
    for action, handler in (("check", cmd_membership_check), ("cover", cmd_membership_cover)):
        sub = leaf(membership, action, handler)
        sub.add_argument("file")
        sub.add_argument("--name", default=None)

    jpp = leaf(commands, "jpp", cmd_jpp)
    jpp.add_argument("file")
    jpp.add_argument("--first", default=None)
    jpp.add_argument("--second", default=None)

    cap = commands.add_parser("cap").add_subparsers(dest="action", required=True)
    amalgamate = leaf(cap, "amalgamate", cmd_cap_amalgamate)
    graphs = leaf(cap, "graphs", cmd_cap_graphs)
    graphs.add_argument("--variant", choices=[v.value for v in Variant], default="g1")
    graphs.add_argument("--format", choices=["edges", "svg"], default="edges")
    graphs.add_argument("--theme", choices=[t.value for t in ThemeName], default=None)
    for sub in (amalgamate, graphs):
        sub.add_argument("file")
        sub.add_argument("--first", default=None)
        sub.add_argument("--second", default=None)
    example = leaf(cap, "example", cmd_cap_example)
    _add_render_flags(example)
    example.add_argument("--out-dir", default=None)

    chessboard = commands.add_parser("chessboard").add_subparsers(dest="action", required=True)
    render = leaf(chessboard, "render", cmd_chessboard_render)
    render.add_argument("file")
    render.add_argument("--first", default=None)
    render.add_argument("--second", default=None)
    _add_render_flags(render)
    steinhaus = leaf(chessboard, "steinhaus", cmd_chessboard_steinhaus)
    steinhaus.add_argument("--rows", type=int, default=3)
    steinhaus.add_argument("--cols", type=int, default=3)
    steinhaus.add_argument(
        "--exhaustive",
        action="store_true",
        help="steinhaus_check con busqueda de caminos en cada cuadrupla",
    )

    verify = leaf(commands, "verify", cmd_verify)
    verify.add_argument("property", choices=PROPERTIES)
    verify.add_argument("--max-size", type=int, default=None)
    verify.add_argument("--instances", type=int, default=None)
    verify.add_argument("--rows", type=int, default=3)
    verify.add_argument("--cols", type=int, default=3)

    tower = commands.add_parser("tower").add_subparsers(dest="action", required=True)
    build = leaf(tower, "build", cmd_tower_build)
    build.add_argument("--targets", required=True)
    build.add_argument("--out", required=True)
    check = leaf(tower, "check", cmd_tower_check)
    check.add_argument("file")
    return parser


def _configure_logging(settings: Settings, verbose: bool) -> None:
    level = logging.DEBUG if verbose or settings.DEBUG else getattr(
        logging, settings.LOG_LEVEL, logging.WARNING
    )
    logging.basicConfig(stream=sys.stderr, level=level, force=True)


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    settings = get_settings()
    _configure_logging(settings, args.verbose)
    if args.seed is None:
        args.seed = settings.SEED

    try:
        return args.handler(args, settings)
    except ValidationError as exc:
        logger.debug(f"{type(exc).__name__}: {exc}")
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVALID
    except FraisseError as exc:
        logger.debug(f"{type(exc).__name__}: {exc}")
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_FAILED
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
