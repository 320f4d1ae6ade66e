"""
ff-pseudoarc
Nucleo finito y constructivo de la familia de Fraïssé proyectiva del pseudo-arco:
epimorfismos entre grafos lineales reflexivos, la familia F, el tablero de Steinhaus
y las amalgamas JPP / CAP, cada salida validada por un oraculo de fuerza bruta.
"""

__version__ = "0.1.0"
__author__ = "ff-pseudoarc Team"
