from typing import Dict, List

from pydantic import BaseModel


class RepresentationDocument(BaseModel):
    """Volcado de una representación; pares en orden lexicográfico."""
    base: int
    relations: Dict[str, List[List[int]]]
