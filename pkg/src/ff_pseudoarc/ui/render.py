"""
Renders de texto y SVG: tableros (celdas negras rellenas, ejes con las etiquetas de los
vertices) y grafos G0/G1/G2 sobre la rejilla [-p,p] x [-q,q].
"""

import logging
from typing import Optional
from xml.sax.saxutils import escape

from ff_pseudoarc.core.config import get_settings
from ff_pseudoarc.core.exceptions import ParseError
from ff_pseudoarc.services.cap_amalgamation import AmalgGraph
from ff_pseudoarc.services.chessboard import Board, CellPath
from ff_pseudoarc.ui.theme import ThemeColors, get_palette

logger = logging.getLogger(__name__)

BLACK_CHAR = "#"
WHITE_CHAR = "."


class SvgCanvas:
    """Acumula elementos SVG como texto."""

    def __init__(self, width: int, height: int, background: str):
        self.width = width
        self.height = height
        self.parts = [
            '<?xml version="1.0" standalone="no"?>',
            f'<svg version="1.1" width="{width}" height="{height}" '
            f'viewBox="0 0 {width} {height}" xmlns="http://www.w3.org/2000/svg">',
            f'<rect x="0" y="0" width="{width}" height="{height}" fill="{background}"/>',
        ]

    def rect(self, x: float, y: float, w: float, h: float, fill: str, stroke: str) -> None:
        self.parts.append(
            f'<rect x="{x:.1f}" y="{y:.1f}" width="{w:.1f}" height="{h:.1f}" '
            f'fill="{fill}" stroke="{stroke}"/>'
        )

    def line(
        self, x1: float, y1: float, x2: float, y2: float, stroke: str, width: float = 2
    ) -> None:
        self.parts.append(
            f'<line x1="{x1:.1f}" y1="{y1:.1f}" x2="{x2:.1f}" y2="{y2:.1f}" '
            f'stroke="{stroke}" stroke-width="{width}"/>'
        )

    def circle(self, cx: float, cy: float, r: float, fill: str) -> None:
        self.parts.append(f'<circle cx="{cx:.1f}" cy="{cy:.1f}" r="{r:.1f}" fill="{fill}"/>')

    def text(self, x: float, y: float, content: str, fill: str, size: int = 10) -> None:
        self.parts.append(
            f'<text x="{x:.1f}" y="{y:.1f}" font-size="{size}" fill="{fill}" '
            f'text-anchor="middle">{escape(content)}</text>'
        )

    def polyline(self, points: list[tuple[float, float]], stroke: str, width: float = 2) -> None:
        coords = " ".join(f"{x:.1f},{y:.1f}" for x, y in points)
        self.parts.append(
            f'<polyline points="{coords}" fill="none" stroke="{stroke}" stroke-width="{width}"/>'
        )

    def get_svg(self) -> str:
        return "\n".join(self.parts + ["</svg>"]) + "\n"


def _palette(theme: Optional[str]) -> ThemeColors:
    return get_palette(theme or get_settings().THEME)


# ==================== ASCII ====================


def board_to_ascii(board: Board) -> str:
    """Primera linea 'x: ...' con las columnas; luego una fila por y, de arriba a abajo."""
    width = max(len(str(y)) for y in board.ys)
    lines = ["x: " + " ".join(str(x) for x in board.xs)]
    for y in reversed(board.ys):
        row = "".join(BLACK_CHAR if board.is_black((x, y)) else WHITE_CHAR for x in board.xs)
        lines.append(f"{str(y).rjust(width)} {row}")
    return "\n".join(lines) + "\n"


def board_from_ascii(text: str) -> Board:
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines or not lines[0].startswith("x:"):
        raise ParseError("Se esperaba la cabecera 'x: ...'", 1)
    try:
        xs = tuple(int(token) for token in lines[0][2:].split())
    except ValueError:
        raise ParseError("Etiquetas de columna invalidas", 1) from None

    ys: list[int] = []
    black = set()
    for number, line in enumerate(lines[1:], start=2):
        tokens = line.split()
        if len(tokens) != 2:
            raise ParseError("Se esperaba '<y> <celdas>'", number)
        label, row = tokens
        try:
            y = int(label)
        except ValueError:
            raise ParseError(f"Etiqueta de fila invalida: {label}", number) from None
        if len(row) != len(xs) or set(row) - {BLACK_CHAR, WHITE_CHAR}:
            raise ParseError(f"Fila {y} mal formada", number)
        ys.append(y)
        black.update((x, y) for x, char in zip(xs, row) if char == BLACK_CHAR)
    return Board(xs, tuple(reversed(ys)), frozenset(black))


def format_edges(g: AmalgGraph) -> str:
    lines = [f"# {g.variant.value} p={g.p} q={g.q} aristas={len(g.edges)}"]
    lines.extend(f"({a[0]},{a[1]}) - ({b[0]},{b[1]})" for a, b in g.sorted_edges())
    return "\n".join(lines) + "\n"


# ==================== SVG ====================


def board_to_svg(
    board: Board,
    theme: Optional[str] = None,
    cell: Optional[int] = None,
    paths: Optional[list[CellPath]] = None,
) -> str:
    colors = _palette(theme)
    size = cell or get_settings().SVG_CELL
    margin = size * 2
    canvas = SvgCanvas(board.cols * size + margin, board.rows * size + margin, colors.background)

    def corner(x: int, y: int) -> tuple[float, float]:
        return margin + board.x_pos[x] * size, (board.rows - 1 - board.y_pos[y]) * size

    for x, y in board.cells():
        left, top = corner(x, y)
        fill = colors.cell_black if board.is_black((x, y)) else colors.cell_white
        canvas.rect(left, top, size, size, fill, colors.grid)
    label_size = max(size // 2, 6)
    for x in board.xs:
        left, _ = corner(x, board.ys[0])
        canvas.text(left + size / 2, board.rows * size + size, str(x), colors.text, label_size)
    for y in board.ys:
        _, top = corner(board.xs[0], y)
        canvas.text(margin / 2, top + size * 0.7, str(y), colors.text, label_size)

    for path in paths or []:
        points = []
        for x, y in path:
            left, top = corner(x, y)
            points.append((left + size / 2, top + size / 2))
        canvas.polyline(points, colors.edge)
    logger.debug(f"board_to_svg: {board!r}")
    return canvas.get_svg()


def amalg_graph_to_svg(
    g: AmalgGraph, theme: Optional[str] = None, cell: Optional[int] = None
) -> str:
    colors = _palette(theme)
    size = (cell or get_settings().SVG_CELL) * 2
    width, height = (2 * g.p + 2) * size, (2 * g.q + 2) * size
    canvas = SvgCanvas(width, height, colors.background)

    def center(node: tuple[int, int]) -> tuple[float, float]:
        return (node[0] + g.p + 1) * size, (g.q - node[1] + 1) * size

    for a, b in g.sorted_edges():
        canvas.line(*center(a), *center(b), colors.edge)
    for node in g.nodes:
        cx, cy = center(node)
        canvas.circle(cx, cy, size / 8, colors.node)
    for a in range(-g.p, g.p + 1):
        canvas.text(center((a, -g.q))[0], height - size / 4, str(a), colors.text)
    for b in range(-g.q, g.q + 1):
        canvas.text(size / 3, center((-g.p, b))[1] + 4, str(b), colors.text)
    return canvas.get_svg()
