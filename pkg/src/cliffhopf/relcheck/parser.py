"""
Tokenizer, precedence-climbing parser and printer for the relation language.

Binding strength, tightest first:

    unary - (and +)
    *  /
    ^  .^  _|  |_        (left associative, one level)
    ox
    +  -

Juxtaposition is not a product; every operator must be written out.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

FUNCTIONS = {
    "comm": 2, "acomm": 2, "rev": 1, "gi": 1, "conj": 1, "grade": 2,
    "sinh": 1, "cosh": 1, "exp": 1, "S": 1, "Delta": 1, "eps": 1,
}

BINARY_LEVEL = {"+": 1, "-": 1, "ox": 2, "^": 3, ".^": 3, "_|": 3, "|_": 3, "*": 4, "/": 4}


class ExprSyntaxError(SyntaxError):
    def __init__(self, message: str, offset: int):
        super().__init__(message)
        self.msg = message
        self.offset = offset

    def __str__(self):
        return f"{self.msg} at byte {self.offset}"


class UnknownFunction(ExprSyntaxError):
    pass


@dataclass(frozen=True)
class Num:
    value: complex


@dataclass(frozen=True)
class Sym:
    name: str


@dataclass(frozen=True)
class Unary:
    op: str
    operand: "Expr"


@dataclass(frozen=True)
class Bin:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Call:
    func: str
    args: tuple["Expr", ...]


Expr = Union[Num, Sym, Unary, Bin, Call]

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?i?(?![A-Za-z0-9_]))
  | (?P<op>\.\^|_\||\|_|[-+*/^(),])
  | (?P<name>[A-Za-z][A-Za-z0-9_]*)
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    raw = text.encode()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", len(text[:pos].encode()))
        kind = m.lastgroup
        if kind != "ws":
            tok = m.group()
            if kind == "name" and tok == "ox":
                kind = "op"
            out.append(Token(kind, tok, len(text[:pos].encode())))
        pos = m.end()
    out.append(Token("end", "", len(raw)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    def peek(self) -> Token:
        return self.toks[self.i]

    def take(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        t = self.take()
        if t.text != text or t.kind == "end":
            raise ExprSyntaxError(f"expected {text!r}, found {t.text or 'end of input'!r}", t.pos)
        return t

    def parse(self) -> Expr:
        e = self.expr(1)
        t = self.peek()
        if t.kind != "end":
            raise ExprSyntaxError(f"unexpected {t.text!r}", t.pos)
        return e

    def expr(self, min_level: int) -> Expr:
        left = self.unary()
        while True:
            t = self.peek()
            level = BINARY_LEVEL.get(t.text) if t.kind == "op" else None
            if level is None or level < min_level:
                return left
            self.take()
            right = self.expr(level + 1)
            left = Bin(t.text, left, right)

    def unary(self) -> Expr:
        t = self.peek()
        if t.kind == "op" and t.text in "+-" and t.text:
            self.take()
            operand = self.unary()
            return operand if t.text == "+" else Unary("-", operand)
        return self.atom()

    def atom(self) -> Expr:
        t = self.take()
        if t.kind == "num":
            s = t.text
            if s.endswith("i"):
                return Num(complex(0, float(s[:-1])))
            return Num(complex(float(s)))
        if t.kind == "name":
            if self.peek().text == "(" and self.peek().kind == "op":
                if t.text not in FUNCTIONS:
                    raise UnknownFunction(f"unknown function {t.text!r}", t.pos)
                return self.call(t)
            return Sym(t.text)
        if t.text == "(":
            e = self.expr(1)
            self.expect(")")
            return e
        raise ExprSyntaxError(f"unexpected {t.text or 'end of input'!r}", t.pos)

    def call(self, name: Token) -> Expr:
        self.expect("(")
        args = [self.expr(1)]
        while self.peek().text == ",":
            self.take()
            args.append(self.expr(1))
        self.expect(")")
        arity = FUNCTIONS[name.text]
        if len(args) != arity:
            raise ExprSyntaxError(f"{name.text} takes {arity} argument(s), got {len(args)}", name.pos)
        if name.text == "grade":
            k = args[1]
            if not (isinstance(k, Num) and k.value.imag == 0 and k.value.real >= 0
                    and float(k.value.real).is_integer()):
                raise ExprSyntaxError("grade needs a non-negative integer literal", name.pos)
        return Call(name.text, tuple(args))


@lru_cache(maxsize=4096)
def parse(text: str) -> Expr:
    return _Parser(text).parse()


def _fmt_num(z: complex) -> str:
    def real(x: float) -> str:
        if float(x).is_integer() and abs(x) < 1e15:
            return str(int(x))
        return repr(float(x))
    if z.imag == 0:
        return real(z.real)
    if z.real == 0:
        return real(z.imag) + "i"
    return f"({real(z.real)} + {real(z.imag)}i)"


def to_text(e: Expr) -> str:
    """Fully parenthesised rendering; parse(to_text(e)) == e."""
    if isinstance(e, Num):
        s = _fmt_num(e.value)
        return f"({s})" if s.startswith("-") else s
    if isinstance(e, Sym):
        return e.name
    if isinstance(e, Unary):
        return f"(-{to_text(e.operand)})"
    if isinstance(e, Bin):
        return f"({to_text(e.left)} {e.op} {to_text(e.right)})"
    if isinstance(e, Call):
        return f"{e.func}(" + ", ".join(to_text(a) for a in e.args) + ")"
    raise TypeError(f"not an expression node: {e!r}")
