"""Basis symbols, their canonical order, text syntax and linear combinations.

Text syntax (fields separated by ``;``)::

    T3(2;s;x1)   W(1,2;s h1)   WhWT(1,2;s;e;x1)   Sq(1,3;s;s s)   Mix(s;s^-1)

Level-one classes are the slot-1 symbols ``T3(1;g;p)``, ``T4(1;g;p)`` and
``T5(1;g;p)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .errors import LevelMismatch, ParseError
from .fpgroup import GroupSpec, Word, format_word, parse_word


@dataclass(frozen=True)
class T:
    """Pushforward of a primitive class into one slot, decorated by ``word``."""

    degree: int
    slot: int
    word: Word
    prim: str

    def sort_key(self):
        return (0, self.degree, self.slot, self.prim, self.word.sort_key)

    def words(self):
        return (self.word,)

    def __str__(self):
        return f"T{self.degree}({self.slot};{format_word(self.word)};{self.prim})"


@dataclass(frozen=True)
class W:
    """``t_i^word w_ij`` with ``i < j``."""

    i: int
    j: int
    word: Word

    def __post_init__(self):
        if not 1 <= self.i < self.j:
            raise ValueError(f"W needs 1 <= i < j, got ({self.i},{self.j})")

    def sort_key(self):
        return (1, self.i, self.j, self.word.sort_key)

    def words(self):
        return (self.word,)

    def __str__(self):
        return f"W({self.i},{self.j};{format_word(self.word)})"


@dataclass(frozen=True)
class WhWT:
    """``[W(i,j;alpha), T3(j;g;prim)]`` for a base primitive."""

    i: int
    j: int
    alpha: Word
    g: Word
    prim: str

    def sort_key(self):
        return (2, self.i, self.j, self.prim, self.alpha.sort_key, self.g.sort_key)

    def words(self):
        return (self.alpha, self.g)

    def __str__(self):
        return f"WhWT({self.i},{self.j};{format_word(self.alpha)};{format_word(self.g)};{self.prim})"


@dataclass(frozen=True)
class Sq:
    """``[W(i,j;a), W(i,j;b)]`` with ``a < b``."""

    i: int
    j: int
    a: Word
    b: Word

    def __post_init__(self):
        if not self.a < self.b:
            raise ValueError(f"Sq needs a < b, got {self.a} and {self.b}")

    def sort_key(self):
        return (3, self.i, self.j, self.a.sort_key, self.b.sort_key)

    def words(self):
        return (self.a, self.b)

    def __str__(self):
        return f"Sq({self.i},{self.j};{format_word(self.a)};{format_word(self.b)})"


@dataclass(frozen=True)
class Mix:
    """``[W(1,2;a), W(2,3;b)]``."""

    a: Word
    b: Word

    def sort_key(self):
        return (4, self.a.sort_key, self.b.sort_key)

    def words(self):
        return (self.a, self.b)

    def __str__(self):
        return f"Mix({format_word(self.a)};{format_word(self.b)})"


Symbol = T | W | WhWT | Sq | Mix

WH_TYPES = (WhWT, Sq, Mix)


def symbol_key(sym) -> tuple:
    return sym.sort_key()


def max_decoration(sym) -> int:
    return max(len(w) for w in sym.words())


_SYM = re.compile(r"^\s*(T3|T4|T5|WhWT|W|Sq|Mix)\s*\((.*)\)\s*$")


def parse_symbol(text: str, group: GroupSpec) -> Symbol:
    m = _SYM.match(text)
    if not m:
        raise ParseError(f"cannot parse symbol {text!r}")
    head, body = m.group(1), m.group(2)
    parts = [p.strip() for p in body.split(";")]

    def pair(field: str) -> tuple[int, int]:
        try:
            i, j = (int(x) for x in field.split(","))
        except ValueError:
            raise ParseError(f"bad index pair {field!r} in {text!r}") from None
        return i, j

    def need(n):
        if len(parts) != n:
            raise ParseError(f"{head} takes {n} fields, got {len(parts)} in {text!r}")

    try:
        if head in ("T3", "T4", "T5"):
            need(3)
            if not parts[0].isdigit() or not parts[2]:
                raise ParseError(f"bad slot or primitive in {text!r}")
            return T(int(head[1]), int(parts[0]), parse_word(parts[1], group), parts[2])
        if head == "W":
            need(2)
            i, j = pair(parts[0])
            return W(i, j, parse_word(parts[1], group))
        if head == "WhWT":
            need(4)
            i, j = pair(parts[0])
            return WhWT(i, j, parse_word(parts[1], group), parse_word(parts[2], group), parts[3])
        if head == "Sq":
            need(3)
            i, j = pair(parts[0])
            return Sq(i, j, parse_word(parts[1], group), parse_word(parts[2], group))
        need(2)
        return Mix(parse_word(parts[0], group), parse_word(parts[1], group))
    except ValueError as exc:
        raise ParseError(f"{exc} in {text!r}") from None


KINDS = tuple(f"pi{d}C{n}" for d in (3, 4, 5) for n in (1, 2, 3))


def kind_parts(kind: str) -> tuple[int, int]:
    """``"pi5C3"`` -> ``(5, 3)``."""
    if kind not in KINDS:
        raise ValueError(f"unknown space kind {kind!r}")
    return int(kind[2]), int(kind[4])


class LinComb:
    """Immutable finite linear combination of symbols in one homotopy group.

    ``kind`` names the group (degree and level), so sums across groups are
    rejected.  Unlike a ``QVector`` it carries no truncation window.
    """

    __slots__ = ("kind", "terms")

    def __init__(self, kind: str, terms: Mapping | Iterable = ()):
        kind_parts(kind)
        acc: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for sym, c in items:
            acc[sym] = acc.get(sym, 0) + Fraction(c)
        self.kind = kind
        self.terms = {s: c for s, c in acc.items() if c != 0}

    @classmethod
    def of(cls, kind: str, sym, coeff=1) -> "LinComb":
        return cls(kind, [(sym, coeff)])

    @property
    def degree(self) -> int:
        return kind_parts(self.kind)[0]

    @property
    def level(self) -> int:
        return kind_parts(self.kind)[1]

    def _check(self, other: "LinComb"):
        if other.kind != self.kind:
            raise LevelMismatch(f"cannot combine {self.kind} with {other.kind}")

    def __add__(self, other: "LinComb") -> "LinComb":
        self._check(other)
        return LinComb(self.kind, list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self) -> "LinComb":
        return LinComb(self.kind, {s: -c for s, c in self.terms.items()})

    def __sub__(self, other: "LinComb") -> "LinComb":
        return self + (-other)

    def __rmul__(self, scalar) -> "LinComb":
        scalar = Fraction(scalar)
        return LinComb(self.kind, {s: scalar * c for s, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, LinComb) and self.kind == other.kind and self.terms == other.terms

    def __hash__(self):
        return hash((self.kind, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self) -> Iterator:
        return iter(sorted(self.terms.items(), key=lambda t: symbol_key(t[0])))

    def __len__(self) -> int:
        return len(self.terms)

    def coeff(self, sym) -> Fraction:
        return self.terms.get(sym, Fraction(0))

    def map_terms(self, kind: str, fn) -> "LinComb":
        """Linear extension of ``fn: symbol -> LinComb`` (or None for zero)."""
        acc: dict = {}
        for sym, c in self.terms.items():
            img = fn(sym)
            if img is None:
                continue
            if img.kind != kind:
                raise LevelMismatch(f"image in {img.kind}, expected {kind}")
            for s2, c2 in img.terms.items():
                acc[s2] = acc.get(s2, 0) + c * c2
        return LinComb(kind, acc)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for sym, c in self:
            if c == 1:
                out.append(f"+{sym}")
            elif c == -1:
                out.append(f"-{sym}")
            else:
                sign = "+" if c > 0 else "-"
                out.append(f"{sign}{abs(c)}*{sym}")
        text = " ".join(out)
        return text[1:] if text.startswith("+") else text

    def __repr__(self) -> str:
        return f"LinComb({self.kind!r}, {self})"


def _split_terms(text: str) -> list[tuple[int, str]]:
    terms, depth, start, sign = [], 0, 0, 1
    for pos, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced parenthesis in {text!r}", column=pos + 1)
        elif ch in "+-" and depth == 0:
            chunk = text[start:pos].strip()
            if chunk:
                terms.append((sign, chunk))
            elif pos > 0 and text[:pos].strip():
                raise ParseError(f"dangling operator in {text!r}", column=pos + 1)
            sign = 1 if ch == "+" else -1
            start = pos + 1
    if depth:
        raise ParseError(f"unbalanced parenthesis in {text!r}")
    chunk = text[start:].strip()
    if chunk:
        terms.append((sign, chunk))
    return terms


def parse_comb(text: str, kind: str, group: GroupSpec) -> LinComb:
    """Parse ``"2*W(1,2;s) - 1/2*W(1,3;h1)"``; ``"0"`` is the zero class."""
    if text.strip() == "0":
        return LinComb(kind)
    out = []
    for sign, chunk in _split_terms(text):
        coeff = Fraction(1)
        if "*" in chunk:
            head, chunk = chunk.split("*", 1)
            try:
                coeff = Fraction(head.strip())
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"bad coefficient {head.strip()!r}") from None
        out.append((parse_symbol(chunk, group), sign * coeff))
    if not out:
        raise ParseError(f"empty expression {text!r}")
    return LinComb(kind, out)
