from enum import Enum
from typing import Any, Dict, Optional

from pydantic import BaseModel, ConfigDict, Field

from app.models.representation import Representation


class ReprKind(str, Enum):
    REPRESENTABLE = "Representable"
    NON_REPRESENTABLE = "NonRepresentable"
    UNKNOWN = "Unknown"


class NonReprReason(str, Enum):
    BRUCK_RYSER = "BruckRyser"
    NOT_RELATION_ALGEBRA = "NotRelationAlgebra"


class ReprStatus(BaseModel):
    """Estado de representabilidad de E_{n+1}."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    n: int
    algebra: str
    status: ReprKind
    reason: Optional[NonReprReason] = None
    plane_order: Optional[int] = None
    ruled_out_order: Optional[int] = None
    base_size: Optional[int] = None
    axiom_witness: Optional[Dict[str, Any]] = None
    note: Optional[str] = None
    representation: Optional[Representation] = Field(default=None, exclude=True)
