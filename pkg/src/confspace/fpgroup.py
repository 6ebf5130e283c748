"""Words in the free product Z * F_r.

The first factor is generated by ``s`` (the circle of S^1 x D^3); the second
is a free model of the fundamental group of the summand, generated by
``h1 ... hr``.  Generator ids: 0 is ``s``, ``i`` is ``hi``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

from .errors import AlphabetMismatch, ParseError

Letter = tuple[int, int]

_TOKEN = re.compile(r"^(s|h([1-9][0-9]*))(?:\^(-?[0-9]+))?$")


@dataclass(frozen=True)
class GroupSpec:
    hat_rank: int = 0

    def __post_init__(self):
        if self.hat_rank < 0:
            raise ValueError("hat_rank must be nonnegative")

    @property
    def generators(self) -> range:
        return range(self.hat_rank + 1)

    def identity(self) -> "Word":
        return Word(self, ())

    def s(self, power: int = 1) -> "Word":
        sign = 1 if power >= 0 else -1
        return Word(self, ((0, sign),) * abs(power))

    def word(self, text: str) -> "Word":
        return parse_word(text, self)


def _free_reduce(letters) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for gen, exp in letters:
        if out and out[-1][0] == gen and out[-1][1] == -exp:
            out.pop()
        else:
            out.append((gen, exp))
    return tuple(out)


def _letter_key(letter: Letter) -> int:
    # s < s^-1 < h1 < h1^-1 < ...
    gen, exp = letter
    return 2 * gen + (0 if exp > 0 else 1)


@dataclass(frozen=True)
class Word:
    """A freely reduced word; ``letters`` is a tuple of (generator, +-1)."""

    group: GroupSpec
    letters: tuple[Letter, ...]

    def __post_init__(self):
        for gen, exp in self.letters:
            if gen not in self.group.generators or exp not in (1, -1):
                raise ValueError(f"bad letter {(gen, exp)} for {self.group}")
        if _free_reduce(self.letters) != self.letters:
            raise ValueError("word is not freely reduced")

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self, other)

    def __invert__(self) -> "Word":
        return inverse(self)

    @cached_property
    def sort_key(self) -> tuple:
        return (len(self.letters), tuple(_letter_key(x) for x in self.letters))

    def __lt__(self, other: "Word") -> bool:
        return self.sort_key < other.sort_key

    def is_identity(self) -> bool:
        return not self.letters

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"


def multiply(a: Word, b: Word) -> Word:
    if a.group != b.group:
        raise AlphabetMismatch(f"cannot multiply words over {a.group} and {b.group}")
    return Word(a.group, _free_reduce(a.letters + b.letters))


def inverse(a: Word) -> Word:
    return Word(a.group, tuple((g, -e) for g, e in reversed(a.letters)))


def deck_zeta(a: Word) -> int:
    """Exponent sum of ``s``: the image in the Z deck group."""
    return sum(e for g, e in a.letters if g == 0)


def retract_rho(a: Word) -> Word:
    """Image under s -> s, h_i -> 1, as a pure power of s."""
    return a.group.s(deck_zeta(a))


def in_s_factor(a: Word) -> bool:
    return all(g == 0 for g, _ in a.letters)


def in_kernel(a: Word) -> bool:
    return deck_zeta(a) == 0


def enumerate_words(group: GroupSpec, max_len: int) -> list[Word]:
    """All reduced words of length <= max_len in length-lex order."""
    if max_len < 0:
        raise ValueError("max_len must be nonnegative")
    alphabet = sorted(((g, e) for g in group.generators for e in (1, -1)), key=_letter_key)
    words = [group.identity()]
    layer = [()]
    for _ in range(max_len):
        nxt = []
        for w in layer:
            for letter in alphabet:
                if w and w[-1] == (letter[0], -letter[1]):
                    continue
                nxt.append(w + (letter,))
        words.extend(Word(group, w) for w in nxt)
        layer = nxt
    return words


def s_words(group: GroupSpec, max_exp: int) -> Iterator[Word]:
    """s^k for |k| <= max_exp, in the global word order."""
    yield group.identity()
    for k in range(1, max_exp + 1):
        yield group.s(k)
        yield group.s(-k)


def format_word(a: Word, empty: str = "e") -> str:
    if not a.letters:
        return empty
    parts = []
    for g, e in a.letters:
        name = "s" if g == 0 else f"h{g}"
        parts.append(name if e == 1 else name + "^-1")
    return " ".join(parts)


def parse_word(text: str, group: GroupSpec) -> Word:
    """Parse ``"s h1^-1 s"``; ``""``, ``"e"`` and ``"1"`` are the identity.

    Integer powers such as ``s^3`` or ``h2^-2`` are expanded.
    """
    letters: list[Letter] = []
    stripped = text.strip()
    if stripped in ("", "e", "1"):
        return group.identity()
    for tok in stripped.split():
        m = _TOKEN.match(tok)
        if not m:
            raise ParseError(f"bad word token {tok!r} in {text!r}")
        gen = 0 if m.group(1) == "s" else int(m.group(2))
        if gen > group.hat_rank:
            raise AlphabetMismatch(f"generator {m.group(1)} not in group of hat_rank {group.hat_rank}")
        power = int(m.group(3)) if m.group(3) is not None else 1
        sign = 1 if power > 0 else -1
        letters.extend([(gen, sign)] * abs(power))
    return Word(group, _free_reduce(letters))
