"""
Paletas claro/oscuro para tableros y grafos de amalgama
"""

import logging
from dataclasses import dataclass
from enum import Enum

logger = logging.getLogger(__name__)


class ThemeName(Enum):
    """Nombre de temas disponibles"""

    LIGHT = "light"
    DARK = "dark"


@dataclass(frozen=True)
class ThemeColors:
    """Colores para un tema específico"""

    background: str  # Fondo del lienzo
    grid: str  # Lineas entre celdas
    cell_black: str  # Celdas negras del tablero
    cell_white: str  # Celdas blancas del tablero
    edge: str  # Aristas de G0/G1/G2
    node: str  # Vertices de G0/G1/G2
    text: str  # Etiquetas de ejes


LIGHT_THEME = ThemeColors(
    background="#FFFFFF",
    grid="#9E9E9E",
    cell_black="#212121",
    cell_white="#FFFFFF",
    edge="#1976D2",
    node="#212121",
    text="#424242",
)

DARK_THEME = ThemeColors(
    background="#121212",
    grid="#616161",
    cell_black="#E0E0E0",
    cell_white="#1E1E1E",
    edge="#FFB74D",
    node="#FFFFFF",
    text="#B0B0B0",
)

THEMES = {
    ThemeName.LIGHT: LIGHT_THEME,
    ThemeName.DARK: DARK_THEME,
}


def get_palette(theme_name: str) -> ThemeColors:
    """Paleta del tema; un nombre desconocido cae en el tema claro."""
    try:
        return THEMES[ThemeName(theme_name.lower())]
    except ValueError:
        logger.warning(f"Tema desconocido '{theme_name}', se usa '{ThemeName.LIGHT.value}'")
        return LIGHT_THEME
