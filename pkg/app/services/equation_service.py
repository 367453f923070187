import itertools
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Union

import numpy as np

from app.core.config import resolve_threads, settings
from app.core.exceptions import DomainError, StructuralError, UnassignedVariable
from app.core.logging import get_logger
from app.core.workers import first_hit
from app.models.algebra import AtomStructure, Element
from app.models.term import (
    Binary,
    BinaryOp,
    Const,
    ConstKind,
    Equation,
    Term,
    Unary,
    UnaryOp,
    Var,
    walk,
)
from app.schemas.equation import CheckOutcome, CheckResult
from app.services.equation_parser import format_equation

logger = get_logger(__name__)

Node = Union[Term, Equation]


def _nodes(target: Node):
    if isinstance(target, Equation):
        for side in target.sides():
            yield from walk(side)
    else:
        yield from walk(target)


# ===== MEDIDAS =====

def length(target: Node) -> int:
    """Ocurrencias de símbolos de operación (constantes incluidas) y de variables."""
    return sum(1 for _ in _nodes(target))


def variables(target: Node) -> List[str]:
    """Variables distintas en orden de primera aparición (lado izquierdo primero)."""
    seen: Dict[str, None] = {}
    for node in _nodes(target):
        if isinstance(node, Var):
            seen.setdefault(node.name, None)
    return list(seen)


def num_variables(target: Node) -> int:
    return len(variables(target))


def min_length_lower_bound(k: int) -> int:
    """Una ecuación con k variables tiene al menos k−2 binarios, así que largo ≥ 2k−2."""
    if k < 1:
        raise DomainError(f"k debe ser ≥ 1, no {k}")
    return max(2 * k - 2, 2)


# ===== EVALUACIÓN =====

def evaluate(term: Term, alg: AtomStructure, assignment: Mapping[str, Element]) -> Element:
    if isinstance(term, Var):
        if term.name not in assignment:
            raise UnassignedVariable(term.name)
        value = assignment[term.name]
        if value.structure is not alg and value.structure != alg:
            raise StructuralError(f"la variable {term.name} no toma valores en {alg.name}")
        return value
    if isinstance(term, Const):
        if term.kind is ConstKind.ZERO:
            return alg.zero()
        if term.kind is ConstKind.ONE:
            return alg.one()
        return alg.identity()
    if isinstance(term, Unary):
        inner = evaluate(term.arg, alg, assignment)
        return inner.complement() if term.op is UnaryOp.COMPLEMENT else inner.converse()
    left = evaluate(term.left, alg, assignment)
    right = evaluate(term.right, alg, assignment)
    if term.op is BinaryOp.JOIN:
        return left.join(right)
    if term.op is BinaryOp.MEET:
        return left.meet(right)
    return left.compose(right)


# ===== KERNELS VECTORIZADOS =====

class _Kernel:
    """
    Operaciones del álgebra sobre arreglos de máscaras.

    Hasta COMPOSE_TABLE_LIMIT elementos se precalcula la tabla completa de
    composición y de converso; por encima se compone átomo por átomo.
    """

    def __init__(self, alg: AtomStructure, table_limit: int):
        self.alg = alg
        self.full = alg.full_mask
        self.dtype = np.int64 if alg.n_atoms <= 63 else object
        self.compose_lut: Optional[np.ndarray] = None
        self.converse_lut: Optional[np.ndarray] = None
        if alg.size <= table_limit:
            self._build_tables()

    def _build_tables(self) -> None:
        alg = self.alg
        n, size = alg.n_atoms, alg.size
        # converse[y] por programación dinámica sobre el bit más alto
        conv = np.zeros(size, dtype=np.int64)
        for b in range(n):
            conv[1 << b: 1 << (b + 1)] = conv[: 1 << b] | (1 << alg.converse_perm[b])
        # comp[x, y] = unión de comp(a, y) para a ≤ x
        comp = np.zeros((size, size), dtype=np.int64)
        for a in range(n):
            row = np.zeros(size, dtype=np.int64)
            for b in range(n):
                row[1 << b: 1 << (b + 1)] = row[: 1 << b] | alg.table[a][b]
            comp[1 << a: 1 << (a + 1)] = comp[: 1 << a] | row[None, :]
        self.converse_lut = conv
        self.compose_lut = comp

    def constant(self, value: int, shape) -> np.ndarray:
        return np.full(shape, value, dtype=self.dtype)

    def _bit(self, x: np.ndarray, b: int) -> np.ndarray:
        return ((x >> b) & 1).astype(bool)

    def converse(self, x: np.ndarray) -> np.ndarray:
        if self.converse_lut is not None:
            return self.converse_lut[x]
        out = np.zeros_like(x)
        for b in range(self.alg.n_atoms):
            out = np.where(self._bit(x, b), out | (1 << self.alg.converse_perm[b]), out)
        return out

    def compose(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        if self.compose_lut is not None:
            return self.compose_lut[x, y]
        n = self.alg.n_atoms
        out = np.zeros_like(x)
        y_bits = [self._bit(y, b) for b in range(n)]
        for a in range(n):
            has_a = self._bit(x, a)
            if not has_a.any():
                continue
            row = np.zeros_like(y)
            for b in range(n):
                row = np.where(y_bits[b], row | self.alg.table[a][b], row)
            out = np.where(has_a, out | row, out)
        return out

    def evaluate(self, term: Term, env: Mapping[str, np.ndarray], shape) -> np.ndarray:
        if isinstance(term, Var):
            return env[term.name]
        if isinstance(term, Const):
            value = {
                ConstKind.ZERO: 0,
                ConstKind.ONE: self.full,
                ConstKind.IDENTITY: self.alg.identity_mask,
            }[term.kind]
            return self.constant(value, shape)
        if isinstance(term, Unary):
            inner = self.evaluate(term.arg, env, shape)
            if term.op is UnaryOp.COMPLEMENT:
                return inner ^ self.full
            return self.converse(inner)
        left = self.evaluate(term.left, env, shape)
        right = self.evaluate(term.right, env, shape)
        if term.op is BinaryOp.JOIN:
            return left | right
        if term.op is BinaryOp.MEET:
            return left & right
        return self.compose(left, right)


def _domain(alg: AtomStructure, restrict_to: Optional[Iterable[Element]]) -> List[int]:
    if restrict_to is None:
        return list(range(alg.size))
    masks = set()
    for element in restrict_to:
        if element.structure is not alg and element.structure != alg:
            raise StructuralError(f"el dominio restringido contiene elementos ajenos a {alg.name}")
        masks.add(element.mask)
    return sorted(masks)


def _inner_width(domain_size: int, n_vars: int, block: int) -> int:
    """Cuántas variables finales se evalúan juntas en un bloque vectorizado."""
    width = 1
    while width < n_vars and domain_size ** (width + 1) <= block:
        width += 1
    return width


def holds(
    eq: Equation,
    alg: AtomStructure,
    restrict_to: Optional[Iterable[Element]] = None,
    threads: Optional[int] = None,
) -> CheckResult:
    """
    Chequeo exhaustivo de la ecuación sobre todas las asignaciones.

    Las variables se recorren en orden de primera aparición y los valores en
    orden ascendente de máscara; el testigo de un Fails es la asignación
    lexicográficamente mínima, independientemente de `threads`.
    """
    threads = resolve_threads(threads)
    names = variables(eq)
    domain = _domain(alg, restrict_to)
    text = format_equation(eq)
    kernel = _Kernel(alg, settings.COMPOSE_TABLE_LIMIT)

    base = {"algebra": alg.name, "equation": text, "variables": names}

    if not names:
        lhs = kernel.evaluate(eq.lhs, {}, (1,))
        rhs = kernel.evaluate(eq.rhs, {}, (1,))
        if lhs[0] == rhs[0]:
            return CheckResult(result=CheckOutcome.HOLDS, assignments_checked=1, **base)
        return _fails(alg, base, {}, int(lhs[0]), int(rhs[0]), 1)

    if not domain:
        return CheckResult(result=CheckOutcome.HOLDS, assignments_checked=0, **base)

    width = _inner_width(len(domain), len(names), settings.VECTOR_BLOCK)
    outer_names, inner_names = names[: len(names) - width], names[len(names) - width:]
    dom = np.array(domain, dtype=kernel.dtype)
    grids = np.meshgrid(*([dom] * width), indexing="ij")
    inner_values = [g.ravel() for g in grids]
    inner_size = len(domain) ** width
    shape = (inner_size,)

    logger.debug(
        "chequeo de ecuación",
        equation=text,
        algebra=alg.name,
        domain=len(domain),
        outer=len(outer_names),
        inner=len(inner_names),
        threads=threads,
    )

    def check_block(prefix: Sequence[int]) -> Optional[int]:
        env = {name: kernel.constant(domain[i], shape) for name, i in zip(outer_names, prefix)}
        env.update(zip(inner_names, inner_values))
        lhs = kernel.evaluate(eq.lhs, env, shape)
        rhs = kernel.evaluate(eq.rhs, env, shape)
        bad = np.flatnonzero(lhs != rhs)
        return int(bad[0]) if bad.size else None

    prefixes = itertools.product(range(len(domain)), repeat=len(outer_names))
    hit = first_hit(check_block, prefixes, threads=threads)
    total = len(domain) ** len(names)

    if hit is None:
        logger.debug("✅ la ecuación vale", equation=text, algebra=alg.name, assignments=total)
        return CheckResult(result=CheckOutcome.HOLDS, assignments_checked=total, **base)

    block_index, position = hit
    prefix = _unrank(block_index, len(domain), len(outer_names))
    suffix = _unrank(position, len(domain), width)
    assignment = {
        name: alg.from_mask(domain[i]) for name, i in zip(names, list(prefix) + list(suffix))
    }
    lhs = evaluate(eq.lhs, alg, assignment)
    rhs = evaluate(eq.rhs, alg, assignment)
    checked = block_index * inner_size + position + 1
    return _fails(alg, base, assignment, lhs.mask, rhs.mask, checked)


def _unrank(index: int, base: int, digits: int) -> List[int]:
    out = []
    for _ in range(digits):
        index, digit = divmod(index, base)
        out.append(digit)
    return out[::-1]


def _fails(alg, base, assignment, lhs: int, rhs: int, checked: int) -> CheckResult:
    logger.info("❌ la ecuación falla", equation=base["equation"], algebra=alg.name)
    return CheckResult(
        result=CheckOutcome.FAILS,
        assignments_checked=checked,
        witness={name: value.names() for name, value in assignment.items()},
        lhs=alg.names_of(lhs),
        rhs=alg.names_of(rhs),
        assignment=dict(assignment),
        **base,
    )
