from enum import Enum
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field

from app.models.algebra import Element


class CheckOutcome(str, Enum):
    HOLDS = "Holds"
    FAILS = "Fails"


class CheckResult(BaseModel):
    """
    Resultado de `holds`. En el caso Fails el testigo es la asignación
    lexicográficamente mínima, con el valor de cada lado.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    result: CheckOutcome
    algebra: str
    equation: str
    variables: List[str]
    assignments_checked: int
    witness: Optional[Dict[str, List[str]]] = None
    lhs: Optional[List[str]] = None
    rhs: Optional[List[str]] = None
    assignment: Optional[Dict[str, Element]] = Field(default=None, exclude=True)

    @property
    def holds(self) -> bool:
        return self.result == CheckOutcome.HOLDS


class EquationInfo(BaseModel):
    equation: str
    length: int
    variables: List[str]
    num_variables: int
