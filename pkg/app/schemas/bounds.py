from typing import Any, Dict, List

from pydantic import BaseModel

TABLE_COLUMNS = ["n", "order", "log2_size", "k_max", "min_vars", "min_len", "f_n", "beta_lower"]


class BoundsReport(BaseModel):
    """
    Fila de la tabla de cotas para un n.

    `order` y `log2_size` son enteros exactos; `beta_lower` es la cota
    evaluada al inicio del intervalo de n.
    """

    n: int
    order: int
    log2_size: int
    k_max: int
    min_vars: int
    min_len: int
    f_n: float
    beta_lower: float
    outside_interval_argument: bool = False


class ChainCheck(BaseModel):
    name: str
    endpoint: str
    passed: bool
    values: Dict[str, Any]


class ChainReport(BaseModel):
    n: int
    interval_start: int
    interval_end: int
    checks: List[ChainCheck]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)
