from typing import Any, Dict, Optional

from pydantic import BaseModel


class ValidationResult(BaseModel):
    """Resultado pass | fail(testigo) de una verificación exhaustiva."""
    passed: bool
    check: Optional[str] = None
    witness: Optional[Dict[str, Any]] = None

    @classmethod
    def ok(cls) -> "ValidationResult":
        return cls(passed=True)

    @classmethod
    def fail(cls, check: str, **witness: Any) -> "ValidationResult":
        return cls(passed=False, check=check, witness=witness)
