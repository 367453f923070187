import itertools
import math
from typing import Optional, Tuple

import numpy as np

from app.core.exceptions import DomainError
from app.core.logging import get_logger
from app.models.field import FiniteField
from app.models.plane import ProjectivePlane
from app.schemas.geometry import BrOutcome, BrVerdict, PlaneDocument
from app.schemas.validation import ValidationResult
from app.services.field_service import make_field

logger = get_logger(__name__)


def _normalized_triples(q: int):
    """Representantes canónicos: la primera coordenada no nula vale 1."""
    for triple in itertools.product(range(q), repeat=3):
        first = next((c for c in triple if c), None)
        if first == 1:
            yield triple


def incidence_from_coordinates(field: FiniteField, points: np.ndarray, lines: np.ndarray) -> np.ndarray:
    """Punto en recta sii el producto escalar se anula en GF(q)."""
    mul = field.mul_table
    add = field.add_table
    terms = [mul[points[:, i][:, None], lines[:, i][None, :]] for i in range(3)]
    return add[add[terms[0], terms[1]], terms[2]] == 0


def build_pg2(q: int, ceiling: Optional[int] = None) -> ProjectivePlane:
    """PG(2, q) sobre el cuerpo canónico GF(q)."""
    field = make_field(q, ceiling=ceiling)
    triples = list(_normalized_triples(q))
    coords = np.array(triples, dtype=np.int64)
    incidence = incidence_from_coordinates(field, coords, coords)
    plane = ProjectivePlane(field, triples, list(triples), incidence)
    logger.info("✅ plano proyectivo construido", q=q, points=len(triples))
    return plane


def validate_plane(plane: ProjectivePlane) -> ValidationResult:
    """
    Verifica exhaustivamente los axiomas del plano.

    Orden de los chequeos: cantidades, consistencia de la incidencia con las
    coordenadas, rectas de q+1 puntos, puntos en q+1 rectas y recta común
    única para cada par de puntos.
    """
    q = plane.order
    expected = q * q + q + 1
    incidence = np.asarray(plane.incidence, dtype=bool)

    if len(plane.points) != expected or len(plane.lines) != expected:
        return ValidationResult.fail(
            "counts", expected=expected, points=len(plane.points), lines=len(plane.lines)
        )
    if incidence.shape != (expected, expected):
        return ValidationResult.fail("counts", expected=expected, shape=list(incidence.shape))

    recomputed = incidence_from_coordinates(
        plane.field,
        np.array(plane.points, dtype=np.int64),
        np.array(plane.lines, dtype=np.int64),
    )
    diff = np.argwhere(recomputed != incidence)
    if diff.size:
        point, line = (int(v) for v in diff[0])
        return ValidationResult.fail("incidence", point=point, line=line)

    line_sizes = incidence.sum(axis=0)
    bad = np.flatnonzero(line_sizes != q + 1)
    if bad.size:
        line = int(bad[0])
        return ValidationResult.fail("line_size", line=line, size=int(line_sizes[line]))

    degrees = incidence.sum(axis=1)
    bad = np.flatnonzero(degrees != q + 1)
    if bad.size:
        point = int(bad[0])
        return ValidationResult.fail("point_degree", point=point, degree=int(degrees[point]))

    common = incidence.astype(np.int64) @ incidence.T.astype(np.int64)
    np.fill_diagonal(common, 1)
    bad = np.argwhere(common != 1)
    if bad.size:
        p1, p2 = (int(v) for v in bad[0])
        return ValidationResult.fail("joining_line", points=[p1, p2], common=int(common[p1, p2]))

    return ValidationResult.ok()


def dump_plane(plane: ProjectivePlane) -> PlaneDocument:
    return PlaneDocument(
        q=plane.order,
        points=[list(p) for p in plane.points],
        lines=[list(l) for l in plane.lines],
    )


def sum_of_two_squares(q: int) -> Optional[Tuple[int, int]]:
    """(a, b) con a² + b² = q y a mínimo, o None."""
    for a in range(math.isqrt(q) + 1):
        rest = q - a * a
        b = math.isqrt(rest)
        if b * b == rest:
            return a, b
    return None


def bruck_ryser(q: int) -> BrVerdict:
    """
    Criterio clásico: si q ≡ 1, 2 (mod 4) y q no es suma de dos cuadrados,
    no existe plano proyectivo de orden q.
    """
    if q < 2:
        raise DomainError(f"orden de plano inválido: {q}")
    residue = q % 4
    if residue not in (1, 2):
        return BrVerdict(verdict=BrOutcome.NO_CONCLUSION, order=q, residue_mod_4=residue)

    bound = math.isqrt(q)
    decomposition = sum_of_two_squares(q)
    verdict = BrOutcome.RULES_OUT if decomposition is None else BrOutcome.NO_CONCLUSION
    logger.debug("bruck-ryser", order=q, verdict=verdict.value, decomposition=decomposition)
    return BrVerdict(
        verdict=verdict,
        order=q,
        residue_mod_4=residue,
        search_bound=bound,
        decomposition=decomposition,
    )
