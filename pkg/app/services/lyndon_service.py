from typing import List, Optional

from app.core.config import settings
from app.core.exceptions import CapacityError, DomainError
from app.core.logging import get_logger
from app.models.algebra import AtomStructure
from app.schemas.lyndon import NonReprReason, ReprKind, ReprStatus
from app.services.algebra_service import check_axioms
from app.services.field_service import prime_power
from app.services.geometry_service import bruck_ryser

logger = get_logger(__name__)

IDENTITY = "1'"


def lyndon_atom_names(n: int) -> List[str]:
    return [IDENTITY] + [f"a{i}" for i in range(1, n + 1)]


def build_lyndon(n: int, capacity: Optional[int] = None) -> AtomStructure:
    """
    E_{n+1}: n átomos de diversidad simétricos y la identidad 1'.

    a_i;a_i = 1' + a_i y, para i ≠ j, a_i;a_j es el complemento de
    a_i + a_j + 1'. La composición con 1' es la proyección.
    """
    capacity = capacity or settings.MAX_ATOMS
    if n < 1:
        raise DomainError(f"E_(n+1) necesita n ≥ 1, no {n}")
    if n + 1 > capacity:
        raise CapacityError(f"E_{n + 1} tiene {n + 1} átomos; la capacidad es {capacity}")

    size = n + 1
    diversity = ((1 << size) - 1) ^ 1
    table = []
    for a in range(size):
        row = []
        for b in range(size):
            if a == 0:
                row.append(1 << b)
            elif b == 0:
                row.append(1 << a)
            elif a == b:
                row.append(1 | 1 << a)
            else:
                row.append(diversity & ~(1 << a) & ~(1 << b))
        table.append(row)

    return AtomStructure(
        f"E{n + 1}",
        lyndon_atom_names(n),
        0,
        list(range(size)),
        table,
        capacity=capacity,
    )


def representability_status(n: int, ceiling: Optional[int] = None) -> ReprStatus:
    """
    Estado de representabilidad de E_{n+1}.

    Para n ≥ 4 se usa q = n − 1: si q es potencia de primo se construye el
    plano y la representación afín y se verifica; si Bruck–Ryser descarta
    q el álgebra no es representable; en otro caso el estado es Unknown.
    """
    from app.services.representation_service import (
        build_affine_representation,
        complete_graph_representation,
        verify_representation,
    )
    from app.services.geometry_service import build_pg2

    if n < 1:
        raise DomainError(f"E_(n+1) necesita n ≥ 1, no {n}")
    ceiling = ceiling or settings.FIELD_CEILING
    name = f"E{n + 1}"

    if n == 1:
        rep = complete_graph_representation(build_lyndon(1))
        result = verify_representation(rep)
        if result.passed:
            return ReprStatus(
                n=n, algebra=name, status=ReprKind.REPRESENTABLE, base_size=rep.base_size,
                note="representación por el grafo completo de 3 vértices", representation=rep,
            )
        return ReprStatus(n=n, algebra=name, status=ReprKind.UNKNOWN, note="verificación fallida")

    if n in (2, 3):
        report = check_axioms(build_lyndon(n))
        failing = next((r for r in report.results if not r.passed), None)
        return ReprStatus(
            n=n,
            algebra=name,
            status=ReprKind.NON_REPRESENTABLE,
            reason=NonReprReason.NOT_RELATION_ALGEBRA,
            plane_order=n - 1,
            axiom_witness=failing.witness if failing else None,
            note=(
                "la tabla no es asociativa para n en {2, 3}; "
                "el teorema de Lyndon se aplica sólo a n ≥ 4"
            ),
        )

    q = n - 1
    if prime_power(q) is not None:
        if q > ceiling:
            return ReprStatus(
                n=n, algebra=name, status=ReprKind.UNKNOWN, plane_order=q,
                note=f"q = {q} es potencia de primo pero excede el techo de cuerpos {ceiling}",
            )
        rep = build_affine_representation(build_pg2(q, ceiling=ceiling))
        result = verify_representation(rep)
        if result.passed:
            logger.info("✅ representable", algebra=name, base=rep.base_size)
            return ReprStatus(
                n=n, algebra=name, status=ReprKind.REPRESENTABLE, plane_order=q,
                base_size=rep.base_size, representation=rep,
            )
        logger.warning("⚠️ representación afín no verificada", algebra=name, check=result.check)
        return ReprStatus(
            n=n, algebra=name, status=ReprKind.UNKNOWN, plane_order=q,
            note=f"la representación afín falló la verificación ({result.check})",
        )

    verdict = bruck_ryser(q)
    if verdict.rules_out:
        logger.info("❌ no representable por Bruck–Ryser", algebra=name, order=q)
        return ReprStatus(
            n=n, algebra=name, status=ReprKind.NON_REPRESENTABLE,
            reason=NonReprReason.BRUCK_RYSER, plane_order=q, ruled_out_order=q,
        )
    return ReprStatus(
        n=n, algebra=name, status=ReprKind.UNKNOWN, plane_order=q,
        note=f"orden {q} no es potencia de primo y Bruck–Ryser no concluye",
    )
