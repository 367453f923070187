from typing import Dict, FrozenSet, Iterable, Tuple

import numpy as np

from app.models.algebra import AtomStructure

Pair = Tuple[int, int]


class Representation:
    """
    Representación de un álgebra sobre un conjunto base {0, ..., base_size-1}:
    a cada átomo le corresponde un conjunto de pares ordenados.
    """

    def __init__(
        self,
        target: AtomStructure,
        base_size: int,
        relations: Dict[str, Iterable[Pair]],
    ):
        self.target = target
        self.base_size = base_size
        self.relations: Dict[str, FrozenSet[Pair]] = {
            atom: frozenset((int(i), int(j)) for i, j in pairs) for atom, pairs in relations.items()
        }
        self._matrices: Dict[str, np.ndarray] = {}

    def matrix(self, atom: str) -> np.ndarray:
        """Matriz booleana base × base de la relación del átomo."""
        if atom not in self._matrices:
            m = np.zeros((self.base_size, self.base_size), dtype=bool)
            pairs = self.relations.get(atom, frozenset())
            if pairs:
                rows, cols = zip(*pairs)
                m[list(rows), list(cols)] = True
            m.setflags(write=False)
            self._matrices[atom] = m
        return self._matrices[atom]

    def moved(self, pair: Pair, source: str, destination: str) -> "Representation":
        """Copia con `pair` trasladado de un átomo a otro."""
        relations = {atom: set(pairs) for atom, pairs in self.relations.items()}
        relations[source].discard(pair)
        relations.setdefault(destination, set()).add(pair)
        return Representation(self.target, self.base_size, relations)

    def __repr__(self) -> str:
        return f"Representation({self.target.name}, base={self.base_size})"
