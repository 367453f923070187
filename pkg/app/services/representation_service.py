from typing import Dict, List, Set, Tuple

import numpy as np

from app.core.exceptions import ConstructionUnsound, StructuralError
from app.core.logging import get_logger
from app.models.algebra import AtomStructure, iter_bits
from app.models.plane import ProjectivePlane
from app.models.representation import Pair, Representation
from app.schemas.representation import RepresentationDocument
from app.schemas.validation import ValidationResult
from app.services.lyndon_service import build_lyndon

logger = get_logger(__name__)


def build_affine_representation(plane: ProjectivePlane, force: bool = False) -> Representation:
    """
    Representación de E_{q+2} por direcciones del plano afín.

    Se quita la última recta del plano (L∞); la base son los q² puntos
    restantes y el átomo a_i es el conjunto de pares (x, y), x ≠ y, cuya
    recta pasa por el i-ésimo punto de L∞.
    """
    q = plane.order
    if q == 2 and not force:
        raise ConstructionUnsound(
            "con q = 2 las rectas afines tienen 2 puntos y la composición a;a no cubre a"
        )

    target = build_lyndon(q + 1)
    infinity = len(plane.lines) - 1
    directions = plane.points_on(infinity)
    direction_of = {p: i for i, p in enumerate(directions)}
    affine = [p for p in range(len(plane.points)) if p not in direction_of]
    base_of = {p: i for i, p in enumerate(affine)}

    relations: Dict[str, Set[Pair]] = {atom: set() for atom in target.atom_names}
    relations[target.atom_names[0]] = {(i, i) for i in range(len(affine))}
    for line in range(len(plane.lines)):
        if line == infinity:
            continue
        on_line = plane.points_on(line)
        at_infinity = [p for p in on_line if p in direction_of]
        if len(at_infinity) != 1:
            raise StructuralError(f"la recta {line} no corta L∞ en un único punto")
        atom = target.atom_names[direction_of[at_infinity[0]] + 1]
        members = [base_of[p] for p in on_line if p in base_of]
        for x in members:
            for y in members:
                if x != y:
                    relations[atom].add((x, y))

    rep = Representation(target, len(affine), relations)
    logger.info("representación afín construida", q=q, base=rep.base_size, atoms=target.n_atoms)
    return rep


def complete_graph_representation(structure: AtomStructure, base_size: int = 3) -> Representation:
    """Identidad ↦ diagonal y el único átomo de diversidad ↦ resto de pares."""
    if structure.n_atoms != 2:
        raise StructuralError("sólo aplica a álgebras con un átomo de diversidad")
    identity = structure.atom_names[structure.identity_atom]
    other = structure.atom_names[1 - structure.identity_atom]
    relations = {
        identity: [(i, i) for i in range(base_size)],
        other: [(i, j) for i in range(base_size) for j in range(base_size) if i != j],
    }
    return Representation(structure, base_size, relations)


def _least_pair(mask: np.ndarray) -> List[int]:
    i, j = np.argwhere(mask)[0]
    return [int(i), int(j)]


def _compose(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Composición relacional como producto de matrices booleanas."""
    return (a.astype(np.int32) @ b.astype(np.int32)) > 0


def verify_representation(rep: Representation) -> ValidationResult:
    """
    Verificación por fuerza bruta de una representación.

    Comprueba la partición del cuadrado base × base (identidad en la
    diagonal, relaciones disjuntas y no vacías que cubren todo), el converso
    como transpuesta y la composición de cada par de átomos. El testigo es
    el menor (a, b, par) que falla.
    """
    target = rep.target
    names = target.atom_names
    unknown = sorted(set(rep.relations) - set(names))
    if unknown:
        return ValidationResult.fail("atoms", unknown=unknown)

    mats = [rep.matrix(atom) for atom in names]
    size = rep.base_size

    identity = mats[target.identity_atom]
    diff = identity != np.eye(size, dtype=bool)
    if diff.any():
        return ValidationResult.fail(
            "identity_diagonal", a=names[target.identity_atom], pair=_least_pair(diff)
        )

    for a, m in enumerate(mats):
        if not m.any():
            return ValidationResult.fail("nonempty", a=names[a])

    covered = np.zeros((size, size), dtype=bool)
    for a in range(len(mats)):
        for b in range(a + 1, len(mats)):
            overlap = mats[a] & mats[b]
            if overlap.any():
                return ValidationResult.fail(
                    "disjointness", a=names[a], b=names[b], pair=_least_pair(overlap)
                )
        covered |= mats[a]
    if not covered.all():
        return ValidationResult.fail("covering", pair=_least_pair(~covered))

    for a, m in enumerate(mats):
        c = target.converse_perm[a]
        diff = mats[c] != m.T
        if diff.any():
            return ValidationResult.fail("converse", a=names[a], b=names[c], pair=_least_pair(diff))

    for a in range(len(mats)):
        for b in range(len(mats)):
            product = _compose(mats[a], mats[b])
            expected = np.zeros((size, size), dtype=bool)
            for c in iter_bits(target.table[a][b]):
                expected |= mats[c]
            diff = product != expected
            if diff.any():
                pair = _least_pair(diff)
                return ValidationResult.fail(
                    "composition",
                    a=names[a],
                    b=names[b],
                    pair=pair,
                    in_composition=bool(product[pair[0], pair[1]]),
                    expected=bool(expected[pair[0], pair[1]]),
                )

    return ValidationResult.ok()


def represented_algebra(rep: Representation) -> AtomStructure:
    """Estructura de átomos leída de las relaciones: tabla, converso e identidad."""
    target = rep.target
    names = target.atom_names
    mats = [rep.matrix(atom) for atom in names]
    size = rep.base_size

    diagonal = np.eye(size, dtype=bool)
    identity = next((a for a, m in enumerate(mats) if np.array_equal(m, diagonal)), None)
    if identity is None:
        raise StructuralError("ninguna relación es la diagonal")

    converse = []
    for m in mats:
        image = next((c for c, other in enumerate(mats) if np.array_equal(other, m.T)), None)
        if image is None:
            raise StructuralError("las relaciones no son cerradas por transposición")
        converse.append(image)

    table = []
    for a in range(len(mats)):
        row = []
        for b in range(len(mats)):
            product = _compose(mats[a], mats[b])
            row.append(sum(1 << c for c, m in enumerate(mats) if (product & m).any()))
        table.append(row)
    return AtomStructure(target.name, names, identity, converse, table)


def dump_representation(rep: Representation) -> RepresentationDocument:
    return RepresentationDocument(
        base=rep.base_size,
        relations={
            atom: [list(pair) for pair in sorted(rep.relations.get(atom, ()))]
            for atom in rep.target.atom_names
        },
    )


def pairs_per_point(rep: Representation, atom: str) -> Tuple[int, ...]:
    """Cantidad de compañeros de cada punto base en la relación del átomo."""
    return tuple(int(v) for v in rep.matrix(atom).sum(axis=1))
