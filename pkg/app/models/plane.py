from typing import List, Tuple

import numpy as np

from app.models.field import FiniteField

Triple = Tuple[int, int, int]


class ProjectivePlane:
    """
    Plano proyectivo de orden q con coordenadas homogéneas.

    `incidence[i, j]` indica si el punto i está en la recta j. Las
    coordenadas se guardan normalizadas (primera coordenada no nula = 1).
    """

    def __init__(
        self,
        field: FiniteField,
        points: List[Triple],
        lines: List[Triple],
        incidence: np.ndarray,
    ):
        self.field = field
        self.points = points
        self.lines = lines
        self.incidence = incidence

    @property
    def order(self) -> int:
        return self.field.q

    def points_on(self, line: int) -> List[int]:
        return [int(i) for i in np.flatnonzero(self.incidence[:, line])]

    def with_incidence(self, incidence: np.ndarray) -> "ProjectivePlane":
        """Copia con otra matriz de incidencia (usado para fixtures perturbados)."""
        return ProjectivePlane(self.field, list(self.points), list(self.lines), incidence.copy())

    def __repr__(self) -> str:
        return f"ProjectivePlane(q={self.order}, points={len(self.points)})"
