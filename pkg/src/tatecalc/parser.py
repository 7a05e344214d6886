"""Expression parser for the CLI.

Grammar (whitespace insensitive):

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | base ('^' signed-int)?
    base   := number | symbol | '(' expr ')' | ident '(' args ')'
    args   := expr (',' expr)* | <empty>

Errors are machine-readable: every ParseError carries a `code`, the byte
`offset` into the input, and the `expected` token set.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import TateCalcError

SYMBOLS = frozenset({"c", "cinv", "b", "q", "qinv", "beta", "T", "u", "s"})
_INDEXED = re.compile(r"(b|beta)_(\d+)$")

# function name -> arity
FUNCTIONS = {
    "exp": 1,
    "log": 1,
    "geom": 1,
    "binomial_series": 0,
    "bernoulli": 1,
    "boundary": 1,
    "pi_minus": 1,
    "partial_fractions": 1,
    "quotient": 1,
    "adams": 2,
    "expand": 2,
    "exp_bT": 0,
    "geom_cinv": 0,
}


class ParseError(TateCalcError):
    code = "syntax"

    def __init__(self, message: str, offset: int, expected: tuple[str, ...] = ()):
        self.offset = offset
        self.expected = expected
        detail = f"{message} at offset {offset}"
        if expected:
            detail += f" (expected {', '.join(expected)})"
        super().__init__(detail)


class LexError(ParseError):
    code = "lex"


class UnknownNameError(ParseError):
    code = "unknown-name"


class ArityError(ParseError):
    code = "arity"


# -- AST ----------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Sym:
    name: str


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class Bin:
    op: str  # + - * /
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


@dataclass(frozen=True)
class Call:
    func: str
    args: tuple["Expr", ...] = field(default_factory=tuple)


Expr = Num | Sym | Neg | Bin | Pow | Call


# -- lexer ----------------------------------------------------------------------


@dataclass(frozen=True)
class Token:
    kind: str  # NUMBER IDENT OP LPAREN RPAREN COMMA CARET EOF
    text: str
    pos: int


def tokenize(source: str) -> list[Token]:
    tokens = []
    i, n = 0, len(source)
    while i < n:
        ch = source[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and source[j].isdigit():
                j += 1
            tokens.append(Token("NUMBER", source[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            tokens.append(Token("IDENT", source[i:j], i))
            i = j
            continue
        if ch in "+-*/":
            tokens.append(Token("OP", ch, i))
        elif ch == "^":
            tokens.append(Token("CARET", ch, i))
        elif ch == "(":
            tokens.append(Token("LPAREN", ch, i))
        elif ch == ")":
            tokens.append(Token("RPAREN", ch, i))
        elif ch == ",":
            tokens.append(Token("COMMA", ch, i))
        else:
            raise LexError(f"unexpected character {ch!r}", i)
        i += 1
    tokens.append(Token("EOF", "", n))
    return tokens


# -- parser ----------------------------------------------------------------------


class _Parser:
    def __init__(self, source: str):
        self.source = source
        self.tokens = tokenize(source)
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, what: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(f"unexpected {tok.kind or 'end of input'}", tok.pos, (what,))
        return self.advance()

    def parse(self) -> Expr:
        e = self.expr()
        tok = self.peek()
        if tok.kind != "EOF":
            raise ParseError(f"trailing input {tok.text!r}", tok.pos, ("operator", "end of input"))
        return e

    def expr(self) -> Expr:
        left = self.term()
        while self.peek().kind == "OP" and self.peek().text in "+-":
            op = self.advance().text
            left = Bin(op, left, self.term())
        return left

    def term(self) -> Expr:
        left = self.factor()
        while self.peek().kind == "OP" and self.peek().text in "*/":
            op = self.advance().text
            left = Bin(op, left, self.factor())
        return left

    def factor(self) -> Expr:
        tok = self.peek()
        if tok.kind == "OP" and tok.text == "-":
            self.advance()
            return Neg(self.factor())
        base = self.base()
        if self.peek().kind == "CARET":
            self.advance()
            sign = 1
            tok = self.peek()
            if tok.kind == "OP" and tok.text == "-":
                sign = -1
                self.advance()
            num = self.expect("NUMBER", "integer exponent")
            return Pow(base, sign * int(num.text))
        return base

    def base(self) -> Expr:
        tok = self.peek()
        if tok.kind == "NUMBER":
            self.advance()
            return Num(int(tok.text))
        if tok.kind == "LPAREN":
            self.advance()
            inner = self.expr()
            self.expect("RPAREN", "')'")
            return inner
        if tok.kind == "IDENT":
            self.advance()
            if self.peek().kind == "LPAREN":
                return self.call(tok)
            if tok.text in SYMBOLS or _INDEXED.match(tok.text):
                return Sym(tok.text)
            raise UnknownNameError(f"unknown symbol {tok.text!r}", tok.pos)
        raise ParseError(
            f"unexpected {tok.kind if tok.kind != 'EOF' else 'end of input'}",
            tok.pos,
            ("number", "symbol", "'('", "function"),
        )

    def call(self, name: Token) -> Expr:
        if name.text not in FUNCTIONS:
            raise UnknownNameError(f"unknown function {name.text!r}", name.pos)
        self.expect("LPAREN", "'('")
        args: list[Expr] = []
        if self.peek().kind != "RPAREN":
            args.append(self.expr())
            while self.peek().kind == "COMMA":
                self.advance()
                args.append(self.expr())
        self.expect("RPAREN", "')'")
        arity = FUNCTIONS[name.text]
        if len(args) != arity:
            raise ArityError(
                f"{name.text} takes {arity} argument(s), got {len(args)}", name.pos
            )
        return Call(name.text, tuple(args))


def parse(source: str) -> Expr:
    return _Parser(source).parse()


# -- pretty printer ----------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "neg": 3, "^": 4}


def render(e: Expr) -> str:
    text, _ = _render(e)
    return text


def _render(e: Expr) -> tuple[str, int]:
    if isinstance(e, Num):
        return str(e.value), 5
    if isinstance(e, Sym):
        return e.name, 5
    if isinstance(e, Neg):
        inner, prec = _render(e.arg)
        if prec < _PREC["neg"]:
            inner = f"({inner})"
        return f"-{inner}", _PREC["neg"]
    if isinstance(e, Pow):
        base, prec = _render(e.base)
        # the grammar allows one exponent per factor, so nested bases need parens
        if prec < _PREC["^"] or isinstance(e.base, (Bin, Neg, Pow)):
            base = f"({base})"
        return f"{base}^{e.exponent}", _PREC["^"]
    if isinstance(e, Bin):
        my = _PREC[e.op]
        left, lp = _render(e.left)
        right, rp = _render(e.right)
        if lp < my:
            left = f"({left})"
        # right side needs parens at equal precedence for - and /
        if rp < my or (rp == my and e.op in "-/"):
            right = f"({right})"
        return f"{left} {e.op} {right}", my
    if isinstance(e, Call):
        args = ", ".join(render(a) for a in e.args)
        return f"{e.func}({args})", 5
    raise TypeError(f"not an expression node: {e!r}")


def symbols_used(e: Expr) -> set[str]:
    """All symbol names in the tree, skipping the puncture slot of expand()."""
    out: set[str] = set()

    def walk(node: Expr) -> None:
        if isinstance(node, Sym):
            out.add(node.name)
        elif isinstance(node, Neg):
            walk(node.arg)
        elif isinstance(node, Pow):
            walk(node.base)
        elif isinstance(node, Bin):
            walk(node.left)
            walk(node.right)
        elif isinstance(node, Call):
            args = node.args[:-1] if node.func == "expand" and node.args else node.args
            for a in args:
                walk(a)

    walk(e)
    return out


def functions_used(e: Expr) -> set[str]:
    out: set[str] = set()

    def walk(node: Expr) -> None:
        if isinstance(node, Neg):
            walk(node.arg)
        elif isinstance(node, Pow):
            walk(node.base)
        elif isinstance(node, Bin):
            walk(node.left)
            walk(node.right)
        elif isinstance(node, Call):
            out.add(node.func)
            for a in node.args:
                walk(a)

    walk(e)
    return out
