from typing import Dict, List, Sequence, Tuple

from app.models.algebra import AtomStructure, Element, iter_bits


class Subalgebra:
    """
    Subálgebra de un álgebra finita, guardada por sus átomos.

    Cada átomo de la subálgebra es un bloque de la partición de los átomos
    del padre (una máscara); los elementos son todas las uniones de bloques.
    """

    def __init__(self, parent: AtomStructure, blocks: Sequence[int]):
        self.parent = parent
        self.blocks: Tuple[int, ...] = tuple(sorted(blocks, key=lambda b: (b & -b, b)))
        self._block_of: Dict[int, int] = {
            atom: i for i, block in enumerate(self.blocks) for atom in iter_bits(block)
        }

    @property
    def size(self) -> int:
        return 1 << len(self.blocks)

    def contains(self, mask: int) -> bool:
        """Un elemento del padre está en la subálgebra si es unión de bloques."""
        return all(mask & block in (0, block) for block in self.blocks)

    def masks(self) -> List[int]:
        out = [0]
        for block in self.blocks:
            out += [m | block for m in out]
        return sorted(out)

    def elements(self) -> List[Element]:
        return [Element(self.parent, m) for m in self.masks()]

    def block_names(self) -> List[str]:
        return ["+".join(self.parent.names_of(block)) for block in self.blocks]

    def to_blocks(self, mask: int) -> int:
        """Máscara de la subálgebra (bit i = bloque i) de un elemento del padre."""
        out = 0
        for i, block in enumerate(self.blocks):
            if mask & block:
                out |= 1 << i
        return out

    def as_structure(self) -> AtomStructure:
        """Estructura de átomos inducida; los átomos son los bloques."""
        parent = self.parent
        identity = self._block_of[parent.identity_atom]
        converse = [self.to_blocks(parent.converse_mask(block)) for block in self.blocks]
        table = [
            [self.to_blocks(parent.compose_masks(x, y)) for y in self.blocks]
            for x in self.blocks
        ]
        return AtomStructure(
            f"{parent.name}/sub{self.size}",
            self.block_names(),
            identity,
            [next(iter_bits(c)) for c in converse],
            table,
            capacity=parent.n_atoms,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subalgebra):
            return NotImplemented
        return self.parent == other.parent and self.blocks == other.blocks

    def __hash__(self) -> int:
        return hash((self.parent, self.blocks))

    def __repr__(self) -> str:
        return f"Subalgebra({self.parent.name}, size={self.size})"


class Embedding:
    """Embedding dado por la imagen (máscara del destino) de cada átomo del origen."""

    def __init__(self, source: AtomStructure, target: AtomStructure, images: Sequence[int]):
        self.source = source
        self.target = target
        self.images: Tuple[int, ...] = tuple(images)

    def image(self, mask: int) -> int:
        """Extensión aditiva a cualquier elemento del origen."""
        out = 0
        for atom in iter_bits(mask):
            out |= self.images[atom]
        return out

    def as_map(self) -> Dict[str, List[str]]:
        return {
            name: self.target.names_of(self.images[i])
            for i, name in enumerate(self.source.atom_names)
        }

    def __repr__(self) -> str:
        return f"Embedding({self.source.name} -> {self.target.name})"
