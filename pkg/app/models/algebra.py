from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

from app.core.config import settings
from app.core.exceptions import CapacityError, StructuralError


def iter_bits(mask: int) -> Iterator[int]:
    """Índices de los bits activos de `mask`, en orden ascendente."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class AtomStructure:
    """
    Álgebra de relaciones finita e integral dada por su estructura de átomos.

    Los elementos son conjuntos de átomos codificados como máscaras de bits:
    el bit `i` corresponde a `atom_names[i]`. La estructura es inmutable
    después de construida.
    """

    __slots__ = (
        "name", "atom_names", "identity_atom", "converse_perm", "table",
        "_index", "_hash",
    )

    def __init__(
        self,
        name: str,
        atom_names: Sequence[str],
        identity_atom: int,
        converse: Sequence[int],
        table: Sequence[Sequence[int]],
        capacity: Optional[int] = None,
    ):
        capacity = capacity or settings.MAX_ATOMS
        atom_names = tuple(atom_names)
        n = len(atom_names)
        if n == 0:
            raise StructuralError("la estructura necesita al menos un átomo")
        if n > capacity:
            raise CapacityError(f"{n} átomos exceden la capacidad {capacity}")
        if len(set(atom_names)) != n:
            raise StructuralError("los nombres de átomos deben ser distintos")
        if not 0 <= identity_atom < n:
            raise StructuralError(f"átomo identidad fuera de rango: {identity_atom}")

        converse = tuple(int(c) for c in converse)
        if len(converse) != n or sorted(converse) != list(range(n)):
            raise StructuralError("el converso debe ser una permutación de los átomos")

        full = (1 << n) - 1
        rows: List[Tuple[int, ...]] = []
        if len(table) != n:
            raise StructuralError("la tabla de composición no es total")
        for a, row in enumerate(table):
            if len(row) != n:
                raise StructuralError(f"fila {atom_names[a]} incompleta en la tabla")
            for mask in row:
                if mask < 0 or mask & ~full:
                    raise StructuralError(f"entrada inválida en la fila {atom_names[a]}")
            rows.append(tuple(int(m) for m in row))

        self.name = name
        self.atom_names = atom_names
        self.identity_atom = identity_atom
        self.converse_perm = converse
        self.table = tuple(rows)
        self._index = {atom: i for i, atom in enumerate(atom_names)}
        self._hash = hash((atom_names, identity_atom, converse, self.table))

    # ===== tamaño y constantes =====

    @property
    def n_atoms(self) -> int:
        return len(self.atom_names)

    @property
    def size(self) -> int:
        """Número de elementos (2 elevado al número de átomos)."""
        return 1 << self.n_atoms

    @property
    def full_mask(self) -> int:
        return (1 << self.n_atoms) - 1

    @property
    def identity_mask(self) -> int:
        return 1 << self.identity_atom

    def zero(self) -> "Element":
        return Element(self, 0)

    def one(self) -> "Element":
        return Element(self, self.full_mask)

    def identity(self) -> "Element":
        return Element(self, self.identity_mask)

    def diversity(self) -> "Element":
        return Element(self, self.full_mask ^ self.identity_mask)

    # ===== átomos y elementos =====

    def atom_index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise StructuralError(f"átomo desconocido en {self.name}: {name}") from None

    def atom(self, name: str) -> "Element":
        return Element(self, 1 << self.atom_index(name))

    def element(self, names: Iterable[str]) -> "Element":
        mask = 0
        for name in names:
            mask |= 1 << self.atom_index(name)
        return Element(self, mask)

    def from_mask(self, mask: int) -> "Element":
        if mask < 0 or mask & ~self.full_mask:
            raise StructuralError(f"máscara fuera del rango de átomos de {self.name}")
        return Element(self, mask)

    def elements(self) -> Iterator["Element"]:
        """Todos los elementos en orden ascendente de máscara."""
        for mask in range(self.size):
            yield Element(self, mask)

    def names_of(self, mask: int) -> List[str]:
        return [self.atom_names[i] for i in iter_bits(mask)]

    # ===== operaciones sobre máscaras =====

    def converse_mask(self, mask: int) -> int:
        out = 0
        for a in iter_bits(mask):
            out |= 1 << self.converse_perm[a]
        return out

    def compose_atom_left(self, a: int, mask: int) -> int:
        """Composición del átomo `a` con el elemento `mask`."""
        row = self.table[a]
        out = 0
        for b in iter_bits(mask):
            out |= row[b]
        return out

    def compose_masks(self, x: int, y: int) -> int:
        """Unión de comp(a, b) para a ≤ x, b ≤ y (aditividad completa)."""
        if not x or not y:
            return 0
        out = 0
        for a in iter_bits(x):
            out |= self.compose_atom_left(a, y)
            if out == self.full_mask:
                break
        return out

    # ===== comparación =====

    def same_structure(self, other: "AtomStructure") -> bool:
        """Igualdad tabla a tabla, ignorando el nombre del álgebra."""
        return (
            self.atom_names == other.atom_names
            and self.identity_atom == other.identity_atom
            and self.converse_perm == other.converse_perm
            and self.table == other.table
        )

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, AtomStructure):
            return NotImplemented
        return self._hash == other._hash and self.same_structure(other)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"AtomStructure({self.name!r}, atoms={self.n_atoms})"


class Element:
    """Elemento de un álgebra: conjunto de átomos con semántica de máscara."""

    __slots__ = ("structure", "mask")

    def __init__(self, structure: AtomStructure, mask: int):
        self.structure = structure
        self.mask = mask

    def _check(self, other: "Element") -> None:
        if not isinstance(other, Element):
            raise StructuralError(f"se esperaba un Element, no {type(other).__name__}")
        if self.structure is not other.structure and self.structure != other.structure:
            raise StructuralError(
                f"elementos de álgebras distintas: {self.structure.name} y {other.structure.name}"
            )

    # ===== reducto booleano =====

    def join(self, other: "Element") -> "Element":
        self._check(other)
        return Element(self.structure, self.mask | other.mask)

    def meet(self, other: "Element") -> "Element":
        self._check(other)
        return Element(self.structure, self.mask & other.mask)

    def complement(self) -> "Element":
        return Element(self.structure, self.structure.full_mask ^ self.mask)

    # ===== operaciones relacionales =====

    def converse(self) -> "Element":
        return Element(self.structure, self.structure.converse_mask(self.mask))

    def compose(self, other: "Element") -> "Element":
        self._check(other)
        return Element(self.structure, self.structure.compose_masks(self.mask, other.mask))

    __or__ = join
    __and__ = meet
    __invert__ = complement

    def atoms(self) -> List[int]:
        return list(iter_bits(self.mask))

    def names(self) -> List[str]:
        return self.structure.names_of(self.mask)

    def is_zero(self) -> bool:
        return self.mask == 0

    def __le__(self, other: "Element") -> bool:
        self._check(other)
        return self.mask & ~other.mask == 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self.mask == other.mask and (
            self.structure is other.structure or self.structure == other.structure
        )

    def __hash__(self) -> int:
        return hash((self.structure, self.mask))

    def __repr__(self) -> str:
        return "{" + ",".join(self.names()) + "}"
