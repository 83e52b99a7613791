"""Regular expressions over 0, 1, letters, +, ., unary star and binary star.

Concrete syntax::

    expr := sum
    sum  := prod ("+" prod)*
    prod := star ("." star)*
    star := atom "*"*
    atom := "0" | "1" | letter | "(" expr ")" | "star2" "(" expr "," expr ")"

Letters are identifiers ``[a-z][a-z0-9_]*``; ``star2`` is reserved.
Expressions are never simplified: ``1 . a`` and ``a`` are different values.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union

LETTER_RE = re.compile(r"[a-z][a-z0-9_]*\Z")
RESERVED = frozenset({"star2"})


class RegexSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class One:
    pass


@dataclass(frozen=True)
class Atom:
    letter: str

    def __post_init__(self):
        if not LETTER_RE.match(self.letter) or self.letter in RESERVED:
            raise ValueError(f"invalid letter {self.letter!r}")


@dataclass(frozen=True)
class Sum:
    left: RegExp
    right: RegExp


@dataclass(frozen=True)
class Prod:
    left: RegExp
    right: RegExp


@dataclass(frozen=True)
class Star:
    body: RegExp


@dataclass(frozen=True)
class BinStar:
    body: RegExp
    exit: RegExp


RegExp = Union[Zero, One, Atom, Sum, Prod, Star, BinStar]

ZERO = Zero()
ONE = One()


def subterms(e: RegExp) -> Iterator[RegExp]:
    """Pre-order walk over all nodes of ``e``."""
    stack = [e]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, (Sum, Prod)):
            stack.append(node.right)
            stack.append(node.left)
        elif isinstance(node, Star):
            stack.append(node.body)
        elif isinstance(node, BinStar):
            stack.append(node.exit)
            stack.append(node.body)


def size(e: RegExp) -> int:
    return sum(1 for _ in subterms(e))


def letters(e: RegExp) -> frozenset[str]:
    return frozenset(n.letter for n in subterms(e) if isinstance(n, Atom))


def terminates(e: RegExp) -> bool:
    """Immediate successful termination of ``e``.

    ``star2(e1, e2)`` terminates iff its exit part ``e2`` does.
    """
    if isinstance(e, One):
        return True
    if isinstance(e, (Zero, Atom)):
        return False
    if isinstance(e, Sum):
        return terminates(e.left) or terminates(e.right)
    if isinstance(e, Prod):
        return terminates(e.left) and terminates(e.right)
    if isinstance(e, Star):
        return True
    if isinstance(e, BinStar):
        return terminates(e.exit)
    raise TypeError(f"not a regular expression: {e!r}")


@dataclass(frozen=True)
class FragmentReport:
    is_one_free: bool
    is_under_star_one_free: bool
    uses_bin_star: bool
    letter_occurrences: int


def _has_one_or_star(e: RegExp) -> bool:
    return any(isinstance(n, (One, Star)) for n in subterms(e))


def classify(e: RegExp) -> FragmentReport:
    """Report which syntactic fragments ``e`` belongs to.

    1-free means no ``1`` and no unary star (binary star is allowed).
    Under-star-1-free means no ``1`` and no unary star anywhere inside the
    iteration part of a unary or binary star.
    """
    nodes = list(subterms(e))
    one_free = not any(isinstance(n, (One, Star)) for n in nodes)
    us1f = True
    for n in nodes:
        if isinstance(n, (Star, BinStar)) and _has_one_or_star(n.body):
            us1f = False
            break
    return FragmentReport(
        is_one_free=one_free,
        is_under_star_one_free=us1f,
        uses_bin_star=any(isinstance(n, BinStar) for n in nodes),
        letter_occurrences=sum(1 for n in nodes if isinstance(n, Atom)),
    )


# -- printing -----------------------------------------------------------------

_SUM, _PROD, _STAR = 1, 2, 3


def _prec(e: RegExp) -> int:
    if isinstance(e, Sum):
        return _SUM
    if isinstance(e, Prod):
        return _PROD
    if isinstance(e, Star):
        return _STAR
    return 4


def render(e: RegExp) -> str:
    """Print ``e`` with the fewest parentheses that still parse back to ``e``."""

    def wrap(sub: RegExp, min_prec: int) -> str:
        text = render(sub)
        return f"({text})" if _prec(sub) < min_prec else text

    if isinstance(e, Zero):
        return "0"
    if isinstance(e, One):
        return "1"
    if isinstance(e, Atom):
        return e.letter
    if isinstance(e, Sum):
        # left associative: a right operand that is itself a sum needs parens
        return f"{wrap(e.left, _SUM)} + {wrap(e.right, _PROD)}"
    if isinstance(e, Prod):
        return f"{wrap(e.left, _PROD)} . {wrap(e.right, _STAR)}"
    if isinstance(e, Star):
        return f"{wrap(e.body, _STAR)}*"
    if isinstance(e, BinStar):
        return f"star2({render(e.body)}, {render(e.exit)})"
    raise TypeError(f"not a regular expression: {e!r}")


# -- parsing ------------------------------------------------------------------

_TOKEN_RE = re.compile(r"([a-z][a-z0-9_]*)|([01])|([()+.*,])")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise RegexSyntaxError(f"unexpected character {text[pos]!r}", pos)
        ident, const, punct = m.groups()
        if ident is not None:
            tokens.append(("kw" if ident in RESERVED else "letter", ident, pos))
        elif const is not None:
            tokens.append(("const", const, pos))
        else:
            tokens.append((punct, punct, pos))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self, kind: str) -> tuple[str, str, int]:
        tok = self.peek()
        if tok[0] != kind:
            found = "end of input" if tok[0] == "eof" else repr(tok[1])
            raise RegexSyntaxError(f"expected {kind!r}, found {found}", tok[2])
        self.i += 1
        return tok

    def expr(self) -> RegExp:
        e = self.prod()
        while self.peek()[0] == "+":
            self.i += 1
            e = Sum(e, self.prod())
        return e

    def prod(self) -> RegExp:
        e = self.star()
        while self.peek()[0] == ".":
            self.i += 1
            e = Prod(e, self.star())
        return e

    def star(self) -> RegExp:
        e = self.atom()
        while self.peek()[0] == "*":
            self.i += 1
            e = Star(e)
        return e

    def atom(self) -> RegExp:
        kind, value, pos = self.peek()
        if kind == "const":
            self.i += 1
            return ZERO if value == "0" else ONE
        if kind == "letter":
            self.i += 1
            return Atom(value)
        if kind == "kw":
            self.i += 1
            self.take("(")
            body = self.expr()
            self.take(",")
            exit_ = self.expr()
            self.take(")")
            return BinStar(body, exit_)
        if kind == "(":
            self.i += 1
            e = self.expr()
            self.take(")")
            return e
        found = "end of input" if kind == "eof" else repr(value)
        raise RegexSyntaxError(f"expected an expression, found {found}", pos)


def parse(text: str) -> RegExp:
    p = _Parser(text)
    e = p.expr()
    p.take("eof")
    return e


def word(letters_: list[str] | tuple[str, ...]) -> RegExp:
    """The expression ``l1 . l2 . ... . ln`` (``1`` for the empty word)."""
    if not letters_:
        return ONE
    e: RegExp = Atom(letters_[0])
    for a in letters_[1:]:
        e = Prod(e, Atom(a))
    return e


def sum_of(terms: list[RegExp]) -> RegExp:
    """Left-nested sum of ``terms``; ``0`` when empty."""
    if not terms:
        return ZERO
    e = terms[0]
    for t in terms[1:]:
        e = Sum(e, t)
    return e
