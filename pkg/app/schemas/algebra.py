from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field


class AlgebraDocument(BaseModel):
    """Formato canónico de un álgebra (JSON, o YAML en lectura)."""
    name: str
    atoms: List[str]
    identity: str
    converse: Dict[str, str] = Field(default_factory=dict)
    table: Dict[str, Dict[str, List[str]]]


class AxiomStatus(BaseModel):
    axiom: str
    passed: bool
    witness: Optional[Dict[str, Any]] = None


class AxiomReport(BaseModel):
    algebra: str
    level: Literal["atoms", "elements"] = "atoms"
    results: List[AxiomStatus]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def status(self, axiom: str) -> AxiomStatus:
        for result in self.results:
            if result.axiom == axiom:
                return result
        raise KeyError(axiom)

    def verdicts(self) -> Dict[str, bool]:
        return {r.axiom: r.passed for r in self.results}
