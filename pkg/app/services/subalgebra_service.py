from typing import Iterable, List, Set, Tuple

from app.core.exceptions import StructuralError
from app.core.logging import get_logger
from app.models.algebra import AtomStructure, Element
from app.models.subalgebra import Subalgebra
from app.schemas.subalgebra import SubalgebraDocument, SubalgebraReport

logger = get_logger(__name__)


def _masks(alg: AtomStructure, generators: Iterable[Element]) -> List[int]:
    out = []
    for element in generators:
        if element.structure is not alg and element.structure != alg:
            raise StructuralError(f"generador ajeno a {alg.name}: {element!r}")
        out.append(element.mask)
    return out


def _refine(blocks: List[int], mask: int) -> Tuple[List[int], bool]:
    """Parte cada bloque según `mask`; indica si hubo algún corte."""
    out = []
    changed = False
    for block in blocks:
        inside, outside = block & mask, block & ~mask
        if inside and outside:
            out += [inside, outside]
            changed = True
        else:
            out.append(block)
    return out, changed


def _boolean_blocks(alg: AtomStructure, seeds: Iterable[int]) -> List[int]:
    blocks = [alg.full_mask]
    for mask in list(seeds) + [alg.identity_mask]:
        blocks, _ = _refine(blocks, mask)
    return blocks


def boolean_closure(alg: AtomStructure, seeds: Iterable[Element]) -> List[Element]:
    """
    Subálgebra booleana generada por seeds ∪ {1'}, en orden ascendente.

    Los átomos son los bloques de la partición más gruesa que separa a los
    seeds y a 1'; el tamaño es 2 elevado al número de bloques.
    """
    blocks = _boolean_blocks(alg, _masks(alg, seeds))
    return Subalgebra(alg, blocks).elements()


def generate(alg: AtomStructure, generators: Iterable[Element]) -> Subalgebra:
    """
    Menor subálgebra que contiene a los generadores.

    Clausura por refinamiento de la partición de átomos hasta punto fijo:
    los conversos de los bloques y las composiciones entre bloques tienen
    que ser uniones de bloques.
    """
    blocks = _boolean_blocks(alg, _masks(alg, generators))
    changed = True
    while changed:
        changed = False
        for block in list(blocks):
            blocks, cut = _refine(blocks, alg.converse_mask(block))
            changed |= cut
        for x in list(blocks):
            for y in list(blocks):
                blocks, cut = _refine(blocks, alg.compose_masks(x, y))
                changed |= cut
    sub = Subalgebra(alg, blocks)
    logger.debug("subálgebra generada", algebra=alg.name, size=sub.size, blocks=len(sub.blocks))
    return sub


def closure_by_elements(alg: AtomStructure, generators: Iterable[Element]) -> Set[int]:
    """Clausura literal elemento por elemento; referencia para álgebras chicas."""
    known: Set[int] = {0, alg.full_mask, alg.identity_mask}
    known.update(_masks(alg, generators))
    pending = list(known)
    while pending:
        x = pending.pop()
        candidates = [alg.full_mask ^ x, alg.converse_mask(x)]
        for y in list(known):
            candidates += [
                x | y,
                x & y,
                alg.compose_masks(x, y),
                alg.compose_masks(y, x),
            ]
        for z in candidates:
            if z not in known:
                known.add(z)
                pending.append(z)
    return known


def is_proper(sub: Subalgebra) -> bool:
    return sub.size < sub.parent.size


def enumerate_subalgebras(alg: AtomStructure) -> List[Subalgebra]:
    """
    Todas las subálgebras, partiendo de la generada por ∅ y agregando un
    elemento a la vez. Orden: tamaño y luego bloques.
    """
    start = generate(alg, [])
    found = {start}
    frontier = [start]
    while frontier:
        sub = frontier.pop()
        gens = [Element(alg, block) for block in sub.blocks]
        for mask in range(alg.size):
            if sub.contains(mask):
                continue
            bigger = generate(alg, gens + [Element(alg, mask)])
            if bigger not in found:
                found.add(bigger)
                frontier.append(bigger)
    result = sorted(found, key=lambda s: (s.size, s.blocks))
    logger.info("subálgebras enumeradas", algebra=alg.name, count=len(result))
    return result


def dump_subalgebra(sub: Subalgebra) -> SubalgebraDocument:
    return SubalgebraDocument(
        parent=sub.parent.name,
        elements=[sub.parent.names_of(m) for m in sub.masks()],
    )


def subalgebra_report(sub: Subalgebra) -> SubalgebraReport:
    doc = dump_subalgebra(sub)
    return SubalgebraReport(
        **doc.model_dump(),
        size=sub.size,
        proper=is_proper(sub),
        atoms=sub.block_names(),
    )
