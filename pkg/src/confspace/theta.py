"""Linking functionals on pi5C3, realised as linear forms through the deck shadow.

A decoration only matters through its exponent sum ``zeta``.  ``composite(a,b)``
reads the coefficient of ``Mix(alpha;beta)`` with ``(zeta alpha, zeta beta) = (a, b)``;
``square(i,j,a,b)`` (``a < b``) reads ``Sq(i,j;alpha;beta)`` with sign ``+1`` for
exponent sums ``(a, b)`` and ``-1`` for ``(b, a)``.  The restricted forms are the
same functionals on the smaller index set with ``a, b != 0`` (and ``a != b`` for
composites).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .confmod import ManifoldSpec, coface
from .errors import IllegalIndex, ParseError, SpaceMismatch
from .exactlin import Certificate, IndexSpace, QVector, quotient_rank
from .fpgroup import GroupSpec, deck_zeta
from .symbols import LinComb, Mix, Sq
from .whprod import square_grade

KINDS = ("composite", "square", "restricted_composite", "restricted_square")


@dataclass(frozen=True, order=True)
class ThetaIndex:
    kind: str
    a: int
    b: int
    i: int = 0
    j: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise IllegalIndex(f"unknown functional kind {self.kind!r}")
        square = self.kind.endswith("square")
        if square:
            if (self.i, self.j) not in ((1, 2), (1, 3), (2, 3)):
                raise IllegalIndex(f"square index needs 1 <= i < j <= 3, got ({self.i},{self.j})")
            if not self.a < self.b:
                raise IllegalIndex(f"square index needs a < b, got ({self.a},{self.b})")
        elif (self.i, self.j) != (0, 0):
            raise IllegalIndex("composite indices take no slot pair")
        if self.kind.startswith("restricted"):
            if self.a == 0 or self.b == 0:
                raise IllegalIndex(f"restricted index needs a, b != 0, got ({self.a},{self.b})")
            if not square and self.a == self.b:
                raise IllegalIndex(f"restricted composite needs a != b, got ({self.a},{self.b})")

    @property
    def is_square(self) -> bool:
        return self.kind.endswith("square")

    def base(self) -> "ThetaIndex":
        """The unrestricted functional with the same values."""
        return ThetaIndex(self.kind.replace("restricted_", ""), self.a, self.b, self.i, self.j)

    def sort_key(self):
        return (self.is_square, self.i, self.j, self.a, self.b)

    def __str__(self):
        if self.is_square:
            return f"{self.kind}({self.i},{self.j},{self.a},{self.b})"
        return f"{self.kind}({self.a},{self.b})"


def composite(a: int, b: int) -> ThetaIndex:
    return ThetaIndex("composite", a, b)


def square(i: int, j: int, a: int, b: int) -> ThetaIndex:
    return ThetaIndex("square", a, b, i, j)


def restricted_legal(idx: ThetaIndex) -> bool:
    if idx.a == 0 or idx.b == 0:
        return False
    return idx.is_square or idx.a != idx.b


_INDEX = re.compile(r"^\s*(restricted_composite|restricted_square|composite|square)\s*\(([-0-9,\s]*)\)\s*$")


def parse_index(text: str) -> ThetaIndex:
    m = _INDEX.match(text)
    if not m:
        raise ParseError(f"cannot parse functional index {text!r}")
    try:
        nums = [int(x) for x in m.group(2).split(",")]
    except ValueError:
        raise ParseError(f"bad integers in {text!r}") from None
    kind = m.group(1)
    if kind.endswith("square"):
        if len(nums) != 4:
            raise ParseError(f"{kind} takes 4 integers")
        return ThetaIndex(kind, nums[2], nums[3], nums[0], nums[1])
    if len(nums) != 2:
        raise ParseError(f"{kind} takes 2 integers")
    return ThetaIndex(kind, nums[0], nums[1])


def _symbol_theta(sym) -> tuple[ThetaIndex, int] | None:
    if isinstance(sym, Mix):
        return composite(deck_zeta(sym.a), deck_zeta(sym.b)), 1
    if isinstance(sym, Sq):
        za, zb = deck_zeta(sym.a), deck_zeta(sym.b)
        if za == zb:
            return None
        if za < zb:
            return square(sym.i, sym.j, za, zb), 1
        return square(sym.i, sym.j, zb, za), -1
    return None


def _as_pi5c3(v) -> LinComb:
    if isinstance(v, QVector):
        v = v.space.element(v)
    if not isinstance(v, LinComb) or v.kind != "pi5C3":
        raise SpaceMismatch("linking functionals are defined on pi5C3")
    return v


def theta_vector(v, restricted: bool = False) -> dict[ThetaIndex, Fraction]:
    """All nonzero functional values of ``v``, keyed by unrestricted indices."""
    v = _as_pi5c3(v)
    out: dict[ThetaIndex, Fraction] = {}
    for sym, c in v.terms.items():
        hit = _symbol_theta(sym)
        if hit is None:
            continue
        idx, sign = hit
        if restricted and not restricted_legal(idx):
            continue
        out[idx] = out.get(idx, 0) + sign * c
    return {k: out[k] for k in sorted(out, key=ThetaIndex.sort_key) if out[k] != 0}


def theta(index: ThetaIndex, v) -> Fraction:
    return theta_vector(v).get(index.base(), Fraction(0))


def index_grade(idx: ThetaIndex) -> int:
    """Grade of a functional; relation images are homogeneous for it."""
    if idx.is_square:
        return square_grade(idx.a, idx.b)
    return max(abs(idx.a), abs(idx.b), abs(idx.a + idx.b))


def relation_images(group: GroupSpec, max_grade: int) -> list[LinComb]:
    """Exact coface images of ``Sq(1,2;s^p;s^q)`` for grades up to ``max_grade``.

    Functional values only see exponent sums and commute with collapsing
    decorations, so these images carry every value of the first differential
    in those grades.
    """
    out = []
    for p in range(-max_grade, max_grade + 1):
        for q in range(-max_grade, max_grade + 1):
            a, b = group.s(p), group.s(q)
            if not a < b or square_grade(p, q) > max_grade:
                continue
            src = LinComb.of("pi5C2", Sq(1, 2, a, b))
            out.extend(coface(2, m, src, None, "exact") for m in range(4))
    return out


def theta_rank(classes: list, relations: list, restricted: bool = False) -> tuple[int, Certificate]:
    """Rank of the functional images of ``classes`` modulo those of ``relations``."""
    fam = [theta_vector(v, restricted) for v in classes]
    rel = [theta_vector(v, restricted) for v in relations]
    coords = sorted({k for d in fam + rel for k in d}, key=ThetaIndex.sort_key)
    space = IndexSpace("theta", [str(k) for k in coords], key=("theta", tuple(coords)))
    pos = {k: n for n, k in enumerate(coords)}
    fam_v = [QVector(space, {pos[k]: c for k, c in d.items()}) for d in fam]
    rel_v = [QVector(space, {pos[k]: c for k, c in d.items()}) for d in rel]
    if not fam_v:
        return 0, Certificate(rank=0, pivots=[], chart_dim=0, extra={"model": "deck_shadow"})
    rank, cert = quotient_rank(fam_v, rel_v)
    cert.extra.update({"model": "deck_shadow", "bound": "lower"})
    return rank, cert


def theta_rank_for(classes: list, spec: ManifoldSpec, restricted: bool = False, config_hash: str | None = None):
    """``theta_rank`` against the first-differential relations of the configured window."""
    grade = 2 * spec.window
    for v in classes:
        for idx in theta_vector(v):
            grade = max(grade, index_grade(idx))
    relations = relation_images(spec.group, grade)
    rank, cert = theta_rank(classes, relations, restricted)
    cert.window = spec.window
    cert.config_hash = config_hash
    cert.extra["mode"] = "theta-restricted" if restricted else "theta"
    return rank, cert
