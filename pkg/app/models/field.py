from typing import Optional, Tuple

import numpy as np


class FiniteField:
    """
    Cuerpo finito GF(p^k) dado por sus tablas.

    Los elementos se codifican como enteros 0..q-1: para k > 1 el entero
    c0 + c1·p + ... + c_{k-1}·p^{k-1} representa el polinomio
    c0 + c1·x + ... módulo `modulus`.
    """

    def __init__(
        self,
        p: int,
        k: int,
        modulus: Optional[Tuple[int, ...]],
        add: np.ndarray,
        mul: np.ndarray,
    ):
        self.p = p
        self.k = k
        self.modulus = modulus
        self.add_table = add
        self.mul_table = mul
        self.add_table.setflags(write=False)
        self.mul_table.setflags(write=False)
        self.neg_table = np.argmin(add, axis=1)
        inv = np.zeros(self.q, dtype=np.int64)
        for a in range(1, self.q):
            inv[a] = int(np.flatnonzero(mul[a] == 1)[0])
        self.inv_table = inv

    @property
    def q(self) -> int:
        return self.p ** self.k

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 no tiene inverso")
        return int(self.inv_table[a])

    def modulus_text(self) -> Optional[str]:
        """El módulo como polinomio legible, p.ej. 'x^2+x+1'."""
        if self.modulus is None:
            return None
        terms = []
        for degree in range(len(self.modulus) - 1, -1, -1):
            c = self.modulus[degree]
            if not c:
                continue
            if degree == 0:
                terms.append(str(c))
                continue
            power = "x" if degree == 1 else f"x^{degree}"
            terms.append(power if c == 1 else f"{c}{power}")
        return "+".join(terms)

    def __repr__(self) -> str:
        return f"GF({self.q})"
