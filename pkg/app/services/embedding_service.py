from typing import Iterator, List, Optional, Union

from app.core.config import settings
from app.core.exceptions import CapacityError, StructuralError
from app.core.logging import get_logger
from app.models.algebra import AtomStructure
from app.models.subalgebra import Embedding, Subalgebra
from app.schemas.subalgebra import EmbeddingKind, EmbeddingOutcome
from app.schemas.validation import ValidationResult

logger = get_logger(__name__)

Source = Union[AtomStructure, Subalgebra]


class _BudgetExceeded(Exception):
    pass


def _submasks_ascending(mask: int) -> Iterator[int]:
    """Submáscaras no vacías de `mask` en orden creciente."""
    sub = (0 - mask) & mask
    while sub:
        yield sub
        sub = (sub - mask) & mask


class _Search:
    """
    Backtracking sobre las imágenes de los átomos del origen.

    Los átomos se asignan en orden de índice y las candidatas en orden
    creciente de máscara, así la primera hoja válida es el embedding
    lexicográficamente mínimo. El converso de cada átomo queda forzado.
    """

    def __init__(self, source: AtomStructure, target: AtomStructure, budget: int):
        self.source = source
        self.target = target
        self.budget = budget
        self.nodes = 0
        self.images: List[Optional[int]] = [None] * source.n_atoms

    def _consistent(self) -> bool:
        src, tgt, images = self.source, self.target, self.images
        assigned = [a for a, img in enumerate(images) if img is not None]
        for a in assigned:
            for b in assigned:
                actual = tgt.compose_masks(images[a], images[b])
                expected = src.table[a][b]
                inside = 0
                outside = 0
                complete = True
                for c in range(src.n_atoms):
                    if images[c] is None:
                        if expected >> c & 1:
                            complete = False
                        continue
                    if expected >> c & 1:
                        inside |= images[c]
                    else:
                        outside |= images[c]
                if inside & ~actual or actual & outside:
                    return False
                # con todos los átomos de comp(a, b) asignados la imagen es exacta
                if complete and actual != inside:
                    return False
        return True

    def _assign(self, a: int, used: int) -> Iterator[int]:
        src, tgt = self.source, self.target
        partner = src.converse_perm[a]
        if partner != a and self.images[partner] is not None:
            forced = tgt.converse_mask(self.images[partner])
            if forced & used:
                return
            self.nodes += 1
            self.images[a] = forced
            if self._consistent():
                yield forced
            self.images[a] = None
            return
        remaining = tgt.full_mask & ~used
        for candidate in _submasks_ascending(remaining):
            self.nodes += 1
            if self.nodes > self.budget:
                raise _BudgetExceeded()
            converse = tgt.converse_mask(candidate)
            if partner == a:
                if converse != candidate:
                    continue
                self.images[a] = candidate
                taken = candidate
            else:
                if converse & (used | candidate):
                    continue
                self.images[a] = candidate
                self.images[partner] = converse
                taken = candidate | converse
            if self._consistent():
                yield taken
            self.images[a] = None
            if partner != a:
                self.images[partner] = None

    def run(self) -> Optional[List[int]]:
        src, tgt = self.source, self.target
        identity = src.identity_atom
        self.images[identity] = tgt.identity_mask
        if not self._consistent():
            return None
        return self._descend(tgt.identity_mask)

    def _descend(self, used: int) -> Optional[List[int]]:
        pending = [a for a, img in enumerate(self.images) if img is None]
        if not pending:
            if used == self.target.full_mask:
                return list(self.images)
            return None
        free_atoms = bin(self.target.full_mask & ~used).count("1")
        if free_atoms < len(pending):
            return None
        for taken in self._assign(pending[0], used):
            found = self._descend(used | taken)
            if found is not None:
                return found
        return None


def _as_structure(source: Source) -> AtomStructure:
    return source.as_structure() if isinstance(source, Subalgebra) else source


def find_embedding(
    source: Source,
    target: AtomStructure,
    budget: Optional[int] = None,
) -> EmbeddingOutcome:
    """
    Embedding lexicográficamente mínimo del origen en el destino.

    Basta fijar las imágenes de los átomos: la extensión aditiva preserva
    todas las operaciones si preserva converso y composición en átomos.
    """
    structure = _as_structure(source)
    search = _Search(structure, target, budget or settings.EMBED_NODE_BUDGET)
    try:
        images = search.run()
    except _BudgetExceeded:
        logger.warning(
            "⚠️ búsqueda de embedding agotada", source=structure.name, target=target.name, nodes=search.nodes
        )
        return EmbeddingOutcome(
            kind=EmbeddingKind.EXHAUSTED, source=structure.name, target=target.name, nodes=search.nodes
        )

    if images is None:
        logger.info("sin embedding", source=structure.name, target=target.name, nodes=search.nodes)
        return EmbeddingOutcome(
            kind=EmbeddingKind.NONE, source=structure.name, target=target.name, nodes=search.nodes
        )

    embedding = Embedding(structure, target, images)
    check = verify_embedding(embedding)
    if not check.passed:
        raise StructuralError(f"embedding inválido: {check.check}")
    logger.info("✅ embedding encontrado", source=structure.name, target=target.name, nodes=search.nodes)
    return EmbeddingOutcome(
        kind=EmbeddingKind.FOUND,
        source=structure.name,
        target=target.name,
        nodes=search.nodes,
        embedding=embedding,
    )


def verify_embedding(emb: Embedding) -> ValidationResult:
    """Condiciones sobre átomos: partición del tope, identidad, converso y composición."""
    src, tgt, images = emb.source, emb.target, emb.images
    names = src.atom_names

    if len(images) != src.n_atoms:
        return ValidationResult.fail("arity", expected=src.n_atoms, found=len(images))
    covered = 0
    for a, img in enumerate(images):
        if not img:
            return ValidationResult.fail("nonzero", atom=names[a])
        if img & covered:
            return ValidationResult.fail("disjointness", atom=names[a])
        covered |= img
    if covered != tgt.full_mask:
        return ValidationResult.fail("covering", missing=tgt.names_of(tgt.full_mask & ~covered))
    if images[src.identity_atom] != tgt.identity_mask:
        return ValidationResult.fail("identity", image=tgt.names_of(images[src.identity_atom]))

    for a in range(src.n_atoms):
        if images[src.converse_perm[a]] != tgt.converse_mask(images[a]):
            return ValidationResult.fail("converse", atom=names[a])
    for a in range(src.n_atoms):
        for b in range(src.n_atoms):
            expected = emb.image(src.table[a][b])
            actual = tgt.compose_masks(images[a], images[b])
            if expected != actual:
                return ValidationResult.fail(
                    "composition",
                    a=names[a],
                    b=names[b],
                    expected=tgt.names_of(expected),
                    actual=tgt.names_of(actual),
                )
    return ValidationResult.ok()


def verify_embedding_full(emb: Embedding, limit: Optional[int] = None) -> ValidationResult:
    """Chequeo sobre todas las tablas de operaciones del origen (álgebras chicas)."""
    src, tgt = emb.source, emb.target
    limit = limit or settings.UNIVERSAL_CHECK_LIMIT
    if src.size > limit:
        raise CapacityError(f"{src.name} tiene {src.size} elementos; el límite es {limit}")

    h = [emb.image(x) for x in range(src.size)]
    if len(set(h)) != src.size:
        return ValidationResult.fail("injective")
    constants = [
        ("zero", 0, 0),
        ("one", src.full_mask, tgt.full_mask),
        ("identity", src.identity_mask, tgt.identity_mask),
    ]
    for name, x, expected in constants:
        if h[x] != expected:
            return ValidationResult.fail(name)
    for x in range(src.size):
        if h[src.full_mask ^ x] != tgt.full_mask ^ h[x]:
            return ValidationResult.fail("complement", x=src.names_of(x))
        if h[src.converse_mask(x)] != tgt.converse_mask(h[x]):
            return ValidationResult.fail("converse", x=src.names_of(x))
        for y in range(src.size):
            if h[x | y] != h[x] | h[y]:
                return ValidationResult.fail("join", x=src.names_of(x), y=src.names_of(y))
            if h[src.compose_masks(x, y)] != tgt.compose_masks(h[x], h[y]):
                return ValidationResult.fail("composition", x=src.names_of(x), y=src.names_of(y))
    return ValidationResult.ok()
