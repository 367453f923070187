from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Union


class ConstKind(str, Enum):
    ZERO = "0"
    ONE = "1"
    IDENTITY = "1'"


class UnaryOp(str, Enum):
    COMPLEMENT = "-"
    CONVERSE = "^"


class BinaryOp(str, Enum):
    JOIN = "+"
    MEET = "."
    COMPOSE = ";"

    @property
    def precedence(self) -> int:
        # mayor número, liga más fuerte
        return {BinaryOp.JOIN: 1, BinaryOp.MEET: 2, BinaryOp.COMPOSE: 3}[self]


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    kind: ConstKind


@dataclass(frozen=True)
class Unary:
    op: UnaryOp
    arg: "Term"


@dataclass(frozen=True)
class Binary:
    op: BinaryOp
    left: "Term"
    right: "Term"


Term = Union[Var, Const, Unary, Binary]


@dataclass(frozen=True)
class Equation:
    lhs: Term
    rhs: Term

    def sides(self) -> Iterator[Term]:
        yield self.lhs
        yield self.rhs


def walk(term: Term) -> Iterator[Term]:
    """Recorrido en preorden, de izquierda a derecha."""
    stack = [term]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, Unary):
            stack.append(node.arg)
        elif isinstance(node, Binary):
            stack.append(node.right)
            stack.append(node.left)
