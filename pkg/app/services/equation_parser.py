import re
from typing import List, NamedTuple, Optional

from app.core.exceptions import EquationSyntaxError
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
)

# ===== TOKENS =====

_TOKEN_RE = re.compile(
    r"""
    (?P<space>\s+)
  | (?P<const>[01]')            # 1' y 0' antes que 0 y 1
  | (?P<number>[01](?![0-9A-Za-z]))
  | (?P<name>[A-Za-z][A-Za-z0-9]*)
  | (?P<symbol>[()=+.;\-^])
    """,
    re.VERBOSE,
)


class Token(NamedTuple):
    kind: str
    text: str
    position: int


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    position = 0
    while position < len(text):
        match = _TOKEN_RE.match(text, position)
        if match is None:
            raise EquationSyntaxError(f"símbolo desconocido {text[position]!r}", position)
        kind = match.lastgroup
        if kind != "space":
            value = match.group()
            tokens.append(Token("symbol" if kind == "symbol" else "atom", value, position))
        position = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


# ===== PARSER =====

class _Parser:
    """Descenso recursivo; cada nivel de la gramática es un método."""

    _BINARY = {"+": BinaryOp.JOIN, ".": BinaryOp.MEET, ";": BinaryOp.COMPOSE}

    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def _advance(self) -> Token:
        token = self.current
        self.index += 1
        return token

    def _expect(self, text: str) -> Token:
        token = self.current
        if token.text != text:
            found = token.text or "fin de texto"
            raise EquationSyntaxError(f"se esperaba {text!r} y se encontró {found!r}", token.position)
        return self._advance()

    def _binary_level(self, op_text: str, operand) -> Term:
        node = operand()
        while self.current.kind == "symbol" and self.current.text == op_text:
            self._advance()
            node = Binary(self._BINARY[op_text], node, operand())
        return node

    def equation(self) -> Equation:
        lhs = self.term()
        self._expect("=")
        rhs = self.term()
        self.end()
        return Equation(lhs, rhs)

    def end(self) -> None:
        if self.current.kind != "end":
            raise EquationSyntaxError(f"texto sobrante {self.current.text!r}", self.current.position)

    def term(self) -> Term:
        return self._binary_level("+", self.prod)

    def prod(self) -> Term:
        return self._binary_level(".", self.comp)

    def comp(self) -> Term:
        return self._binary_level(";", self.unary)

    def unary(self) -> Term:
        if self.current.text == "-":
            self._advance()
            return Unary(UnaryOp.COMPLEMENT, self.unary())
        node = self.primary()
        if self.current.text == "^":
            self._advance()
            node = Unary(UnaryOp.CONVERSE, node)
        return node

    def primary(self) -> Term:
        token = self.current
        if token.text == "(":
            self._advance()
            node = self.term()
            self._expect(")")
            return node
        if token.kind == "atom":
            self._advance()
            if token.text == "0'":
                return Unary(UnaryOp.COMPLEMENT, Const(ConstKind.IDENTITY))
            if token.text in ("0", "1", "1'"):
                return Const(ConstKind(token.text))
            return Var(token.text)
        found = token.text or "fin de texto"
        raise EquationSyntaxError(f"se esperaba un término y se encontró {found!r}", token.position)


def parse_equation(text: str) -> Equation:
    return _Parser(text).equation()


def parse_term(text: str) -> Term:
    parser = _Parser(text)
    node = parser.term()
    parser.end()
    return node


# ===== IMPRESIÓN CANÓNICA =====

def _wrap(text: str) -> str:
    return f"({text})"


def format_term(term: Term, parent: Optional[BinaryOp] = None, right: bool = False) -> str:
    """
    Texto canónico con los paréntesis mínimos.

    Los binarios son asociativos a izquierda: un hijo derecho del mismo
    nivel de precedencia necesita paréntesis, uno izquierdo no.
    """
    if isinstance(term, Var):
        return term.name
    if isinstance(term, Const):
        return term.kind.value
    if isinstance(term, Unary):
        if term.op is UnaryOp.CONVERSE:
            inner = format_term(term.arg)
            return f"{inner}^" if isinstance(term.arg, (Var, Const)) else f"{_wrap(inner)}^"
        inner = format_term(term.arg)
        return f"-{inner}" if not isinstance(term.arg, Binary) else f"-{_wrap(inner)}"

    text = (
        f"{format_term(term.left, term.op)} {term.op.value} "
        f"{format_term(term.right, term.op, right=True)}"
    )
    if parent is None:
        return text
    tighter = parent.precedence > term.op.precedence
    same_on_right = parent.precedence == term.op.precedence and right
    return _wrap(text) if tighter or same_on_right else text


def format_equation(eq: Equation) -> str:
    return f"{format_term(eq.lhs)} = {format_term(eq.rhs)}"
