"""
Custom exceptions para ff-pseudoarc
"""


class FraisseError(Exception):
    """Base exception para toda la libreria"""

    pass


class ValidationError(FraisseError):
    """Precondicion violada (tamanos, dominios, variantes)"""

    pass


class ParseError(ValidationError):
    """Error en el formato de texto de estructuras y mapas"""

    def __init__(self, message: str, line: int = 0):
        self.line = line
        prefix = f"line {line}: " if line else ""
        super().__init__(f"{prefix}{message}")


class NotAnEpimorphismError(ValidationError):
    """El mapa recibido no es un epimorfismo"""

    pass


class NotInFamilyError(ValidationError):
    """La estructura no pertenece a la familia F"""

    pass


class AsymmetricRelationError(NotInFamilyError):
    """Relacion en F que no es imagen de ninguna antidiagonal (no simetrica)"""

    pass


class EnumerationBudgetError(FraisseError):
    """La enumeracion exhaustiva supera el presupuesto configurado"""

    pass


class InvariantViolationError(FraisseError):
    """Un objeto garantizado por la teoria no se pudo construir"""

    pass
