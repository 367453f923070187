import itertools
from typing import List, Optional, Sequence, Tuple

import numpy as np

from app.core.config import settings
from app.core.exceptions import CapacityError, NotPrimePower, StructuralError
from app.core.logging import get_logger
from app.models.field import FiniteField

logger = get_logger(__name__)

Poly = List[int]  # coeficientes, grado ascendente


def prime_power(q: int) -> Optional[Tuple[int, int]]:
    """(p, k) con q = p^k y p primo, o None."""
    if q < 2:
        return None
    p = next(d for d in itertools.count(2) if d * d > q or q % d == 0)
    if p * p > q:
        p = q
    k = 0
    while q % p == 0:
        q //= p
        k += 1
    return (p, k) if q == 1 else None


# ===== aritmética de polinomios sobre GF(p) =====

def _trim(poly: Poly) -> Poly:
    while poly and poly[-1] == 0:
        poly = poly[:-1]
    return poly


def _poly_mod(num: Poly, den: Poly, p: int) -> Poly:
    num = _trim(list(num))
    den = _trim(list(den))
    lead_inv = pow(den[-1], p - 2, p) if p > 2 else 1
    while len(num) >= len(den):
        factor = num[-1] * lead_inv % p
        shift = len(num) - len(den)
        for i, c in enumerate(den):
            num[shift + i] = (num[shift + i] - factor * c) % p
        num = _trim(num)
    return num


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> Poly:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return out


def _monic(degree: int, p: int):
    """Polinomios mónicos de grado `degree` en orden lexicográfico."""
    for lower in itertools.product(range(p), repeat=degree):
        # lower[0] es el coeficiente más significativo
        yield list(reversed(lower)) + [1]


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Búsqueda exhaustiva de factores mónicos de grado ≤ deg/2."""
    degree = len(poly) - 1
    for d in range(1, degree // 2 + 1):
        for factor in _monic(d, p):
            if not _poly_mod(poly, factor, p):
                return False
    return True


def least_irreducible(p: int, k: int) -> Tuple[int, ...]:
    for poly in _monic(k, p):
        if is_irreducible(poly, p):
            return tuple(poly)
    raise StructuralError(f"no hay polinomio irreducible de grado {k} sobre GF({p})")


def _digits(value: int, p: int, k: int) -> Poly:
    out = []
    for _ in range(k):
        out.append(value % p)
        value //= p
    return out


def _encode(poly: Sequence[int], p: int) -> int:
    return sum(c * p ** i for i, c in enumerate(poly))


# ===== construcción y verificación =====

def verify_field_tables(add: np.ndarray, mul: np.ndarray) -> Optional[str]:
    """Axiomas de cuerpo verificados exhaustivamente; devuelve el primero que falla."""
    q = add.shape[0]
    idx = np.arange(q)
    a = idx[:, None, None]
    b = idx[None, :, None]
    c = idx[None, None, :]
    if not np.array_equal(add, add.T):
        return "conmutatividad de +"
    if not np.array_equal(mul, mul.T):
        return "conmutatividad de ·"
    if not np.array_equal(add[add[a, b], c], add[a, add[b, c]]):
        return "asociatividad de +"
    if not np.array_equal(mul[mul[a, b], c], mul[a, mul[b, c]]):
        return "asociatividad de ·"
    if not np.array_equal(mul[a, add[b, c]], add[mul[a, b], mul[a, c]]):
        return "distributividad"
    if not np.array_equal(add[0], idx) or not np.array_equal(mul[1], idx):
        return "neutros"
    if not all((add[x] == 0).any() for x in range(q)):
        return "opuestos"
    if not all((mul[x] == 1).any() for x in range(1, q)):
        return "inversos"
    return None


def make_field(q: int, ceiling: Optional[int] = None) -> FiniteField:
    """
    GF(q) para q potencia de primo.

    Para k > 1 el módulo es el menor polinomio mónico irreducible de
    grado k en orden lexicográfico, así las tablas son reproducibles.
    """
    ceiling = ceiling or settings.FIELD_CEILING
    decomposition = prime_power(q)
    if decomposition is None:
        raise NotPrimePower(q)
    if q > ceiling:
        raise CapacityError(f"GF({q}) excede el techo configurado {ceiling}")
    p, k = decomposition

    if k == 1:
        modulus = None
        idx = np.arange(q)
        add = (idx[:, None] + idx[None, :]) % q
        mul = (idx[:, None] * idx[None, :]) % q
    else:
        modulus = least_irreducible(p, k)
        polys = [_digits(v, p, k) for v in range(q)]
        add = np.zeros((q, q), dtype=np.int64)
        mul = np.zeros((q, q), dtype=np.int64)
        for x in range(q):
            for y in range(q):
                add[x, y] = _encode([(s + t) % p for s, t in zip(polys[x], polys[y])], p)
                mul[x, y] = _encode(_poly_mod(_poly_mul(polys[x], polys[y], p), modulus, p), p)

    add = add.astype(np.int64)
    mul = mul.astype(np.int64)
    failure = verify_field_tables(add, mul)
    if failure:
        raise StructuralError(f"GF({q}) no cumple: {failure}")

    field = FiniteField(p, k, modulus, add, mul)
    logger.debug("cuerpo construido", q=q, p=p, k=k, modulus=field.modulus_text())
    return field
