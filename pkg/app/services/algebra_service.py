import json
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Union

import yaml
from pydantic import ValidationError

from app.core.config import resolve_threads, settings
from app.core.exceptions import CapacityError, DocumentError, StructuralError
from app.core.logging import get_logger
from app.core.workers import first_hit
from app.models.algebra import AtomStructure, Element
from app.schemas.algebra import AlgebraDocument, AxiomReport, AxiomStatus

logger = get_logger(__name__)

AXIOMS = (
    "associativity",
    "identity",
    "converse_involution",
    "identity_converse",
    "converse_antidistributivity",
    "peircean",
)


# ========================================
# DOCUMENTOS
# ========================================

def structure_from_document(doc: AlgebraDocument, capacity: Optional[int] = None) -> AtomStructure:
    """Construye la estructura a partir del formato canónico."""
    index = {name: i for i, name in enumerate(doc.atoms)}
    if len(index) != len(doc.atoms):
        raise StructuralError("los nombres de átomos deben ser distintos")

    def lookup(name: str) -> int:
        if name not in index:
            raise StructuralError(f"átomo desconocido en {doc.name}: {name}")
        return index[name]

    identity = lookup(doc.identity)
    converse = list(range(len(doc.atoms)))
    for atom, image in doc.converse.items():
        converse[lookup(atom)] = lookup(image)

    for a, row_doc in doc.table.items():
        lookup(a)
        for b in row_doc:
            lookup(b)

    table: List[List[int]] = []
    for a in doc.atoms:
        row_doc = doc.table.get(a)
        if row_doc is None:
            raise StructuralError(f"la tabla no tiene fila para {a}")
        row = []
        for b in doc.atoms:
            if b not in row_doc:
                raise StructuralError(f"la tabla no define {a};{b}")
            mask = 0
            for c in row_doc[b]:
                mask |= 1 << lookup(c)
            row.append(mask)
        table.append(row)
    return AtomStructure(doc.name, doc.atoms, identity, converse, table, capacity=capacity)


def structure_to_document(alg: AtomStructure) -> AlgebraDocument:
    names = alg.atom_names
    return AlgebraDocument(
        name=alg.name,
        atoms=list(names),
        identity=names[alg.identity_atom],
        converse={names[i]: names[c] for i, c in enumerate(alg.converse_perm)},
        table={
            names[a]: {names[b]: alg.names_of(alg.table[a][b]) for b in range(alg.n_atoms)}
            for a in range(alg.n_atoms)
        },
    )


def read_document(path: Union[str, Path]) -> Dict[str, Any]:
    """Lee un documento JSON (o YAML por extensión) como diccionario."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise DocumentError(f"no se pudo leer {path}: {e}") from e
    try:
        if path.suffix.lower() in (".yaml", ".yml"):
            data = yaml.safe_load(text)
        else:
            data = json.loads(text)
    except (json.JSONDecodeError, yaml.YAMLError) as e:
        raise DocumentError(f"{path} no es un documento válido: {e}") from e
    if not isinstance(data, dict):
        raise DocumentError(f"{path} debe contener un objeto")
    return data


def load_algebra(path: Union[str, Path], capacity: Optional[int] = None) -> AtomStructure:
    data = read_document(path)
    try:
        doc = AlgebraDocument.model_validate(data)
    except ValidationError as e:
        raise DocumentError(f"{path} no cumple el formato de álgebra: {e}") from e
    try:
        alg = structure_from_document(doc, capacity=capacity)
    except CapacityError:
        raise
    except StructuralError as e:
        raise DocumentError(f"{path}: {e}") from e
    logger.debug("álgebra cargada", path=str(path), algebra=alg.name, atoms=alg.n_atoms)
    return alg


def dump_algebra(alg: AtomStructure) -> Dict[str, Any]:
    return structure_to_document(alg).model_dump()


def parse_element(alg: AtomStructure, text: str) -> Element:
    """Elemento escrito como nombres de átomos unidos por '+', o '0'."""
    text = text.strip()
    if text in ("", "0"):
        return alg.zero()
    return alg.element(part.strip() for part in text.split("+"))


def parse_element_list(alg: AtomStructure, text: str) -> List[Element]:
    """Lista separada por comas; la cadena vacía es la lista vacía."""
    if not text.strip():
        return []
    return [parse_element(alg, part) for part in text.split(",")]


# ========================================
# CONSTRUCCIONES
# ========================================

def build_group_algebra(
    name: str,
    element_names: Sequence[str],
    product: Callable[[str, str], str],
) -> AtomStructure:
    """
    Álgebra de complejos de un grupo finito.

    El primer nombre es el neutro; el converso es el inverso y
    comp(g, h) = {g·h}.
    """
    index = {g: i for i, g in enumerate(element_names)}
    neutral = element_names[0]
    table = [[1 << index[product(g, h)] for h in element_names] for g in element_names]
    converse = []
    for g in element_names:
        inverse = [h for h in element_names if product(g, h) == neutral]
        if len(inverse) != 1:
            raise StructuralError(f"{g} no tiene inverso único en {name}")
        converse.append(index[inverse[0]])
    return AtomStructure(name, element_names, 0, converse, table)


# ========================================
# AXIOMAS A NIVEL DE ÁTOMOS
# ========================================

def _peircean_forms(alg: AtomStructure, a: int, b: int, c: int) -> List[bool]:
    """Las seis variantes cíclicas de 'c ≤ a;b'."""
    conv = alg.converse_perm
    t = alg.table

    def member(x: int, y: int, z: int) -> bool:
        return bool(t[x][y] >> z & 1)

    return [
        member(a, b, c),
        member(conv[a], c, b),
        member(c, conv[b], a),
        member(conv[b], conv[a], conv[c]),
        member(conv[c], a, conv[b]),
        member(b, conv[c], conv[a]),
    ]


def _associativity_row(alg: AtomStructure, a: int) -> Optional[Dict[str, Any]]:
    names = alg.atom_names
    n = alg.n_atoms
    for b in range(n):
        ab = alg.table[a][b]
        for c in range(n):
            lhs = alg.compose_masks(ab, 1 << c)
            rhs = alg.compose_atom_left(a, alg.table[b][c])
            if lhs != rhs:
                return {
                    "a": names[a], "b": names[b], "c": names[c],
                    "lhs": alg.names_of(lhs), "rhs": alg.names_of(rhs),
                }
    return None


def _peircean_row(alg: AtomStructure, a: int) -> Optional[Dict[str, Any]]:
    names = alg.atom_names
    n = alg.n_atoms
    for b in range(n):
        for c in range(n):
            forms = _peircean_forms(alg, a, b, c)
            if len(set(forms)) > 1:
                return {"a": names[a], "b": names[b], "c": names[c], "forms": forms}
    return None


def _scan_rows(alg: AtomStructure, row_check, threads: int) -> Optional[Dict[str, Any]]:
    hit = first_hit(lambda a: row_check(alg, a), range(alg.n_atoms), threads)
    return None if hit is None else hit[1]


def check_axioms(alg: AtomStructure, threads: Optional[int] = None) -> AxiomReport:
    """
    Verifica los axiomas de álgebra de relaciones sobre átomos.

    Basta con átomos porque todas las operaciones son completamente
    aditivas; los axiomas booleanos valen por construcción. Cada fallo
    trae el testigo lexicográficamente menor.
    """
    threads = resolve_threads(threads)
    names = alg.atom_names
    n = alg.n_atoms
    e = alg.identity_atom
    results: List[AxiomStatus] = []

    witness = _scan_rows(alg, _associativity_row, threads)
    results.append(AxiomStatus(axiom="associativity", passed=witness is None, witness=witness))

    witness = None
    for a in range(n):
        right = alg.table[a][e]
        left = alg.table[e][a]
        if right != 1 << a:
            witness = {"a": names[a], "side": "right", "value": alg.names_of(right)}
        elif left != 1 << a:
            witness = {"a": names[a], "side": "left", "value": alg.names_of(left)}
        if witness:
            break
    results.append(AxiomStatus(axiom="identity", passed=witness is None, witness=witness))

    witness = None
    for a in range(n):
        twice = alg.converse_perm[alg.converse_perm[a]]
        if twice != a:
            witness = {"a": names[a], "value": names[twice]}
            break
    results.append(AxiomStatus(axiom="converse_involution", passed=witness is None, witness=witness))

    image = alg.converse_perm[e]
    witness = None if image == e else {"a": names[e], "value": names[image]}
    results.append(AxiomStatus(axiom="identity_converse", passed=witness is None, witness=witness))

    witness = None
    for a in range(n):
        for b in range(n):
            lhs = alg.converse_mask(alg.table[a][b])
            rhs = alg.table[alg.converse_perm[b]][alg.converse_perm[a]]
            if lhs != rhs:
                witness = {
                    "a": names[a], "b": names[b],
                    "lhs": alg.names_of(lhs), "rhs": alg.names_of(rhs),
                }
                break
        if witness:
            break
    results.append(
        AxiomStatus(axiom="converse_antidistributivity", passed=witness is None, witness=witness)
    )

    witness = _scan_rows(alg, _peircean_row, threads)
    results.append(AxiomStatus(axiom="peircean", passed=witness is None, witness=witness))

    report = AxiomReport(algebra=alg.name, level="atoms", results=results)
    if report.passed:
        logger.info("✅ axiomas verificados", algebra=alg.name, atoms=n)
    else:
        failed = [r.axiom for r in results if not r.passed]
        logger.info("❌ axiomas fallidos", algebra=alg.name, failed=failed)
    return report


# ========================================
# AXIOMAS A NIVEL DE ELEMENTOS (fuerza bruta)
# ========================================

def check_axioms_universal(alg: AtomStructure, limit: Optional[int] = None) -> AxiomReport:
    """
    Versión universal de los mismos axiomas sobre todos los elementos.

    Sólo para álgebras pequeñas: sirve para contrastar el chequeo por átomos.
    """
    limit = limit or settings.UNIVERSAL_CHECK_LIMIT
    if alg.size > limit:
        raise CapacityError(f"{alg.name} tiene {alg.size} elementos; el límite es {limit}")

    size = alg.size
    one_prime = alg.identity_mask
    conv = [alg.converse_mask(x) for x in range(size)]
    comp = [[alg.compose_masks(x, y) for y in range(size)] for x in range(size)]
    names = alg.names_of
    results: List[AxiomStatus] = []

    def first(predicate, arity: int):
        if arity == 1:
            for x in range(size):
                w = predicate(x)
                if w:
                    return w
            return None
        if arity == 2:
            for x in range(size):
                for y in range(size):
                    w = predicate(x, y)
                    if w:
                        return w
            return None
        for x in range(size):
            for y in range(size):
                for z in range(size):
                    w = predicate(x, y, z)
                    if w:
                        return w
        return None

    def assoc(x, y, z):
        lhs, rhs = comp[comp[x][y]][z], comp[x][comp[y][z]]
        if lhs != rhs:
            return {"x": names(x), "y": names(y), "z": names(z), "lhs": names(lhs), "rhs": names(rhs)}
        return None

    def ident(x):
        if comp[x][one_prime] != x:
            return {"x": names(x), "side": "right", "value": names(comp[x][one_prime])}
        if comp[one_prime][x] != x:
            return {"x": names(x), "side": "left", "value": names(comp[one_prime][x])}
        return None

    def involution(x):
        if conv[conv[x]] != x:
            return {"x": names(x), "value": names(conv[conv[x]])}
        return None

    def antidistributive(x, y):
        lhs, rhs = conv[comp[x][y]], comp[conv[y]][conv[x]]
        if lhs != rhs:
            return {"x": names(x), "y": names(y), "lhs": names(lhs), "rhs": names(rhs)}
        return None

    def peircean(x, y, z):
        forms = [
            bool(comp[x][y] & z),
            bool(comp[conv[x]][z] & y),
            bool(comp[z][conv[y]] & x),
            bool(comp[conv[y]][conv[x]] & conv[z]),
            bool(comp[conv[z]][x] & conv[y]),
            bool(comp[y][conv[z]] & conv[x]),
        ]
        if len(set(forms)) > 1:
            return {"x": names(x), "y": names(y), "z": names(z), "forms": forms}
        return None

    identity_witness = None
    if conv[one_prime] != one_prime:
        identity_witness = {"x": names(one_prime), "value": names(conv[one_prime])}

    checks = [
        ("associativity", first(assoc, 3)),
        ("identity", first(ident, 1)),
        ("converse_involution", first(involution, 1)),
        ("identity_converse", identity_witness),
        ("converse_antidistributivity", first(antidistributive, 2)),
        ("peircean", first(peircean, 3)),
    ]
    for axiom, witness in checks:
        results.append(AxiomStatus(axiom=axiom, passed=witness is None, witness=witness))
    return AxiomReport(algebra=alg.name, level="elements", results=results)
