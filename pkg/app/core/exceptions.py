"""Jerarquía de errores del workbench."""


class WorkbenchError(Exception):
    """Error base."""


class StructuralError(WorkbenchError):
    """Estructura mal formada o argumentos de álgebras distintas."""


class CapacityError(StructuralError):
    """Se excede la capacidad configurada (átomos, orden de cuerpo, tamaño)."""


class NotPrimePower(WorkbenchError):
    def __init__(self, q: int):
        self.q = q
        super().__init__(f"{q} no es potencia de un primo")


class ConstructionUnsound(WorkbenchError):
    """La construcción pedida no produce un objeto verificable."""


class DomainError(WorkbenchError, ValueError):
    """Argumento fuera del dominio donde la fórmula está afirmada."""


class EquationSyntaxError(WorkbenchError):
    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} (posición {position})")


class UnassignedVariable(WorkbenchError, KeyError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"variable sin asignar: {name}")

    def __str__(self) -> str:
        return self.args[0]


class DocumentError(WorkbenchError):
    """Documento JSON/YAML ilegible o que no cumple el esquema."""
