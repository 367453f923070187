from enum import Enum
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field

from app.models.subalgebra import Embedding


class SubalgebraDocument(BaseModel):
    """Elementos ordenados por máscara ascendente, cada uno como lista de átomos."""

    parent: str
    elements: List[List[str]]


class SubalgebraReport(SubalgebraDocument):
    size: int
    proper: bool
    atoms: List[str]


class EmbeddingDocument(BaseModel):
    map: Dict[str, List[str]]


class EmbeddingKind(str, Enum):
    FOUND = "found"
    NONE = "none"
    EXHAUSTED = "exhausted"


class EmbeddingOutcome(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    kind: EmbeddingKind
    source: str
    target: str
    nodes: int
    embedding: Optional[Embedding] = Field(default=None, exclude=True)

    @property
    def found(self) -> bool:
        return self.kind == EmbeddingKind.FOUND

    def document(self) -> Optional[EmbeddingDocument]:
        if self.embedding is None:
            return None
        return EmbeddingDocument(map=self.embedding.as_map())
