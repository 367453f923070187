from enum import Enum
from typing import List, Optional, Tuple

from pydantic import BaseModel


class PlaneDocument(BaseModel):
    """Volcado de un plano: coordenadas con la codificación canónica del cuerpo."""
    q: int
    points: List[List[int]]
    lines: List[List[int]]


class BrOutcome(str, Enum):
    RULES_OUT = "RulesOut"
    NO_CONCLUSION = "NoConclusion"


class BrVerdict(BaseModel):
    verdict: BrOutcome
    order: int
    residue_mod_4: int
    search_bound: Optional[int] = None
    decomposition: Optional[Tuple[int, int]] = None

    @property
    def rules_out(self) -> bool:
        return self.verdict == BrOutcome.RULES_OUT
