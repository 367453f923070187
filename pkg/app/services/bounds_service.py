"""
Aritmética de las cotas inferiores de complejidad ecuacional.

Las potencias de 2 y 3 se comparan con enteros exactos; los valores
reales sólo aparecen en las cotas reportadas.
"""

import math
from typing import List, Optional, Union

import pandas as pd

from app.core.config import settings
from app.core.exceptions import DomainError
from app.core.logging import get_logger
from app.schemas.bounds import TABLE_COLUMNS, BoundsReport, ChainCheck, ChainReport

logger = get_logger(__name__)

Real = Union[int, float]

LOG2_3 = math.log2(3)


def lyndon_order(n: int) -> int:
    """2·3^(2n+1): cantidad de átomos de diversidad del álgebra del argumento."""
    return 2 * 3 ** (2 * n + 1)


def interval_start(n: int) -> int:
    """log₂ del tamaño de E_{2·3^(2n+1)+2}: 2·3^(2n+1) + 2."""
    return lyndon_order(n) + 2


def k_max(n: int) -> int:
    """Mayor k con 2^(k+1) ≤ 2·3^(2n+1), por comparación entera exacta."""
    if n < 0:
        raise DomainError(f"n debe ser ≥ 0, no {n}")
    return (3 ** (2 * n + 1)).bit_length() - 1


def min_vars(n: int) -> int:
    return k_max(n) + 1


def min_len(n: int) -> int:
    return 2 * min_vars(n) - 2


def f(n: Real) -> float:
    return 2 * LOG2_3 * (2 * n + 1) - 2


def _log3_half_minus_one(value: Real) -> float:
    # log₃(value/2 − 1) sin dividir enteros grandes
    return (math.log(value - 2) - math.log(2)) / math.log(3)


def _beta(value: Real) -> float:
    return 2 * LOG2_3 * (_log3_half_minus_one(value) - 2) - 2


def beta_lower_from_log2m(L: Real) -> float:
    """Cota inferior de β_V(m) con m dado por L = log₂ m; afirmada para L ≥ 8."""
    if L < 8:
        raise DomainError(f"la cota se afirma para log₂ m ≥ 8, no {L}")
    return _beta(L)


def beta_star_lower(M: Real) -> float:
    """La misma cota con M átomos como entrada."""
    if M <= 2:
        raise DomainError(f"M/2 − 1 debe ser positivo, M = {M}")
    return _beta(M)


def interval_n(L: Real) -> int:
    """Mayor n ≥ 1 con 2·3^(2n+1) + 2 ≤ L."""
    if L < interval_start(1):
        raise DomainError(f"L debe ser ≥ {interval_start(1)}, no {L}")
    n = 1
    while interval_start(n + 1) <= L:
        n += 1
    return n


def bounds_row(n: int) -> BoundsReport:
    start = interval_start(n)
    return BoundsReport(
        n=n,
        order=lyndon_order(n),
        log2_size=start,
        k_max=k_max(n),
        min_vars=min_vars(n),
        min_len=min_len(n),
        f_n=f(n),
        beta_lower=beta_lower_from_log2m(start),
        outside_interval_argument=n < 1,
    )


def bounds_table(n_max: int) -> List[BoundsReport]:
    if n_max < 0:
        raise DomainError(f"n_max debe ser ≥ 0, no {n_max}")
    return [bounds_row(n) for n in range(n_max + 1)]


def bounds_frame(n_max: int) -> pd.DataFrame:
    rows = [row.model_dump() for row in bounds_table(n_max)]
    frame = pd.DataFrame(rows, columns=TABLE_COLUMNS + ["outside_interval_argument"])
    # enteros exactos aunque excedan int64
    for column in ("order", "log2_size"):
        frame[column] = frame[column].astype(object)
    return frame


def emit_table(n_max: int, fmt: str = "csv") -> Union[str, list]:
    """CSV con el encabezado fijo y 6 decimales, o la lista de filas para JSON."""
    if fmt == "json":
        return [row.model_dump() for row in bounds_table(n_max)]
    if fmt != "csv":
        raise DomainError(f"formato desconocido: {fmt}")
    frame = bounds_frame(n_max)
    return frame[TABLE_COLUMNS].to_csv(index=False, float_format="%.6f", lineterminator="\n")


# ===== VERIFICACIÓN DE LA CADENA DE DESIGUALDADES =====

def _check(name: str, endpoint: str, passed: bool, **values) -> ChainCheck:
    return ChainCheck(name=name, endpoint=endpoint, passed=bool(passed), values=values)


def verify_chain(n: int, tolerance: Optional[float] = None) -> ChainReport:
    """
    Verifica numéricamente los pasos de la derivación en ambos extremos del
    intervalo de n, más la identidad de exponentes y la propiedad de la
    cota de conteo (la subálgebra generada es propia).
    """
    if n < 1:
        raise DomainError(f"n debe ser ≥ 1, no {n}")
    tol = settings.FLOAT_TOLERANCE if tolerance is None else tolerance
    start, end = interval_start(n), interval_start(n + 1)
    checks: List[ChainCheck] = []

    for label, L in (("start", start), ("end", end)):
        lhs = 0.5 * _log3_half_minus_one(L) - 1.5
        checks.append(_check("log_interval", label, lhs <= n + tol, L=L, lhs=lhs, n=n))

        stated = interval_n(L)
        beta = beta_lower_from_log2m(L)
        f_stated = f(stated)
        checks.append(
            _check("beta_below_f_interval", label, beta <= f_stated + tol,
                   L=L, interval_n=stated, beta=beta, f=f_stated)
        )
        f_n = f(n)
        checks.append(_check("beta_below_f_n", label, beta <= f_n + tol, L=L, beta=beta, f=f_n))

    order = lyndon_order(n)
    # 2^((2n+1)·log₂3 + 1) = 2^1 · 3^(2n+1), en aritmética entera
    power = (1 << 1) * pow(3, 2 * n + 1)
    checks.append(
        _check("exponent_identity", "start", power == order and power + 2 == start,
               exponent=(2 * n + 1) * LOG2_3 + 1, power=power, order=order)
    )

    k = k_max(n)
    counting = 2 ** (k + 1)
    checks.append(
        _check("counting_bound_proper", "start", counting <= order < order + 2,
               k_max=k, counting_bound=counting, order=order, log2_size=order + 2)
    )

    report = ChainReport(n=n, interval_start=start, interval_end=end, checks=checks)
    if report.passed:
        logger.info("✅ cadena verificada", n=n)
    else:
        failed = [c.name for c in checks if not c.passed]
        logger.warning("❌ cadena con fallas", n=n, failed=failed)
    return report
