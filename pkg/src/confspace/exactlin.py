"""Sparse exact-rational linear algebra.

Vectors are sparse maps from basis index to nonzero ``Fraction``; a matrix is a
map from domain index to column vector.  Elimination is deterministic: the
pivot of a vector is its lowest basis index under the space order (or under an
explicit ``order`` key), so pivot sets are canonical invariants of a span.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .errors import SpaceMismatch

Rational = Fraction


def parse_rational(text: str | int) -> Fraction:
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class IndexSpace:
    """A finite, ordered basis of hashable symbols."""

    def __init__(self, label: str, symbols: Iterable[Hashable], key: Hashable = None):
        self.label = label
        self.symbols = tuple(symbols)
        self.index = {sym: i for i, sym in enumerate(self.symbols)}
        if len(self.index) != len(self.symbols):
            raise ValueError(f"duplicate symbols in space {label}")
        self.key = key if key is not None else (label, self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def __contains__(self, sym) -> bool:
        return sym in self.index

    def __eq__(self, other) -> bool:
        return self is other or (isinstance(other, IndexSpace) and self.key == other.key)

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.label!r}, dim={len(self)})"

    def basis_vector(self, i: int) -> "QVector":
        return QVector(self, {i: Fraction(1)})

    def text(self, i: int) -> str:
        return str(self.symbols[i])


def _clean(entries: Mapping[int, Fraction]) -> dict[int, Fraction]:
    return {i: Fraction(c) for i, c in entries.items() if c != 0}


class QVector:
    __slots__ = ("space", "entries")

    def __init__(self, space: IndexSpace, entries: Mapping[int, Fraction] | None = None):
        entries = _clean(entries or {})
        n = len(space)
        for i in entries:
            if not 0 <= i < n:
                raise IndexError(f"index {i} out of range for {space!r}")
        self.space = space
        self.entries = entries

    def __eq__(self, other) -> bool:
        return isinstance(other, QVector) and self.space == other.space and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.space.key, frozenset(self.entries.items())))

    def __bool__(self) -> bool:
        return bool(self.entries)

    def _check(self, other: "QVector") -> None:
        if self.space != other.space:
            raise SpaceMismatch(f"{self.space!r} vs {other.space!r}")

    def __add__(self, other: "QVector") -> "QVector":
        self._check(other)
        out = dict(self.entries)
        for i, c in other.entries.items():
            out[i] = out.get(i, 0) + c
        return QVector(self.space, out)

    def __neg__(self) -> "QVector":
        return QVector(self.space, {i: -c for i, c in self.entries.items()})

    def __sub__(self, other: "QVector") -> "QVector":
        return self + (-other)

    def __rmul__(self, scalar) -> "QVector":
        scalar = Fraction(scalar)
        return QVector(self.space, {i: scalar * c for i, c in self.entries.items()})

    def __repr__(self) -> str:
        terms = ", ".join(f"{self.space.text(i)}: {format_rational(c)}" for i, c in sorted(self.entries.items()))
        return f"QVector({{{terms}}})"


class QMatrix:
    """Linear map given by its nonzero columns."""

    def __init__(self, domain: IndexSpace, codomain: IndexSpace, columns: Mapping[int, QVector] | None = None):
        cols = {}
        for j, v in (columns or {}).items():
            if not 0 <= j < len(domain):
                raise IndexError(f"column {j} out of range for {domain!r}")
            if v.space != codomain:
                raise SpaceMismatch(f"column {j} lives in {v.space!r}, expected {codomain!r}")
            if v:
                cols[j] = v
        self.domain = domain
        self.codomain = codomain
        self.columns = cols

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.codomain), len(self.domain)

    def column(self, j: int) -> QVector:
        return self.columns.get(j, QVector(self.codomain))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, QMatrix)
            and self.domain == other.domain
            and self.codomain == other.codomain
            and self.columns == other.columns
        )

    def apply(self, v: QVector) -> QVector:
        if v.space != self.domain:
            raise SpaceMismatch(f"{v.space!r} is not the domain {self.domain!r}")
        out: dict[int, Fraction] = {}
        for j, c in v.entries.items():
            col = self.columns.get(j)
            if col is None:
                continue
            for i, a in col.entries.items():
                out[i] = out.get(i, 0) + c * a
        return QVector(self.codomain, out)

    def transpose(self) -> "QMatrix":
        cols: dict[int, dict[int, Fraction]] = {}
        for j, v in self.columns.items():
            for i, a in v.entries.items():
                cols.setdefault(i, {})[j] = a
        return QMatrix(self.codomain, self.domain, {i: QVector(self.domain, c) for i, c in cols.items()})

    def compose(self, other: "QMatrix") -> "QMatrix":
        """``self after other``."""
        if other.codomain != self.domain:
            raise SpaceMismatch("composition of incompatible maps")
        return QMatrix(other.domain, self.codomain, {j: self.apply(v) for j, v in other.columns.items()})

    def to_rows(self) -> list[list[Fraction]]:
        rows = [[Fraction(0)] * len(self.domain) for _ in range(len(self.codomain))]
        for j, v in self.columns.items():
            for i, a in v.entries.items():
                rows[i][j] = a
        return rows


class Echelon:
    """Incrementally maintained reduced echelon basis of a span.

    Every stored row has coefficient 1 at its pivot and 0 at all other pivots.
    With ``track=True`` each row also remembers the combination of inserted
    vectors (by insertion number) that produces it.
    """

    def __init__(self, space: IndexSpace, order: Callable[[int], object] | None = None, track: bool = False):
        self.space = space
        self.order = order
        self.track = track
        self.rows: dict[int, dict[int, Fraction]] = {}
        self.combos: dict[int, dict[int, Fraction]] = {}
        self.count = 0

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self.rows, key=self.order)

    def reduce(self, entries: Mapping[int, Fraction]) -> tuple[dict[int, Fraction], dict[int, Fraction]]:
        """Residual of ``entries`` modulo the span, and the combination removed."""
        vec = dict(entries)
        removed: dict[int, Fraction] = {}
        for p in [i for i in vec if i in self.rows]:
            c = vec.get(p, 0)
            if c == 0:
                continue
            for i, a in self.rows[p].items():
                val = vec.get(i, 0) - c * a
                if val:
                    vec[i] = val
                else:
                    vec.pop(i, None)
            if self.track:
                for k, a in self.combos[p].items():
                    removed[k] = removed.get(k, 0) + c * a
        return vec, {k: a for k, a in removed.items() if a}

    def add(self, v: QVector | Mapping[int, Fraction]) -> tuple[int | None, dict[int, Fraction]]:
        """Insert a vector.

        Returns ``(pivot, relation)``: the new pivot or ``None`` if the vector
        was dependent, in which case ``relation`` (when tracking) is a
        combination of inserted vectors summing to zero.
        """
        if isinstance(v, QVector):
            if v.space != self.space:
                raise SpaceMismatch(f"{v.space!r} vs {self.space!r}")
            entries = v.entries
        else:
            entries = v
        k = self.count
        self.count += 1
        residual, removed = self.reduce(entries)
        combo: dict[int, Fraction] = {}
        if self.track:
            combo = {j: -a for j, a in removed.items()}
            combo[k] = combo.get(k, 0) + 1
            combo = {j: a for j, a in combo.items() if a}
        if not residual:
            return None, combo
        p = min(residual, key=self.order)
        inv = 1 / residual[p]
        row = {i: a * inv for i, a in residual.items()}
        if self.track:
            combo = {j: a * inv for j, a in combo.items()}
        for q, other in self.rows.items():
            c = other.get(p, 0)
            if c == 0:
                continue
            for i, a in row.items():
                val = other.get(i, 0) - c * a
                if val:
                    other[i] = val
                else:
                    other.pop(i, None)
            if self.track:
                oc = self.combos[q]
                for j, a in combo.items():
                    val = oc.get(j, 0) - c * a
                    if val:
                        oc[j] = val
                    else:
                        oc.pop(j, None)
        self.rows[p] = row
        if self.track:
            self.combos[p] = combo
        return p, {}

    def contains(self, entries: Mapping[int, Fraction]) -> bool:
        return not self.reduce(entries)[0]

    def row_vectors(self) -> list[QVector]:
        return [QVector(self.space, self.rows[p]) for p in self.pivots]


def _common_space(vectors: Sequence[QVector], space: IndexSpace | None = None) -> IndexSpace | None:
    for v in vectors:
        if space is None:
            space = v.space
        elif v.space != space:
            raise SpaceMismatch(f"{v.space!r} vs {space!r}")
    return space


def row_reduce(matrix: QMatrix) -> tuple[QMatrix, list[tuple[int, int]], int]:
    """Reduced echelon form of the column span.

    Columns are processed in domain order; each independent column becomes a
    fully reduced basis vector stored at its own column position, dependent
    columns become zero.  Pivots are ``(codomain index, domain index)`` pairs.
    """
    ech = Echelon(matrix.codomain)
    owner: dict[int, int] = {}
    for j in sorted(matrix.columns):
        p, _ = ech.add(matrix.columns[j])
        if p is not None:
            owner[p] = j
    cols = {owner[p]: QVector(matrix.codomain, row) for p, row in ech.rows.items()}
    pivots = sorted(((p, owner[p]) for p in ech.rows), key=lambda t: t[1])
    return QMatrix(matrix.domain, matrix.codomain, cols), pivots, len(pivots)


def rank(matrix: QMatrix) -> int:
    return row_reduce(matrix)[2]


def kernel(matrix: QMatrix) -> list[QVector]:
    """Basis of the null space, one vector per dependent column."""
    ech = Echelon(matrix.codomain, track=True)
    basis = []
    for j in range(len(matrix.domain)):
        _, relation = ech.add(matrix.column(j))
        if relation:
            basis.append(QVector(matrix.domain, relation))
    return basis


def membership(v: QVector, span: Sequence[QVector]) -> tuple[bool, list[Fraction] | None]:
    """Decide ``v in span`` and, if so, return witnessing coefficients."""
    space = _common_space(span, v.space)
    ech = Echelon(space, track=True)
    for u in span:
        ech.add(u)
    residual, removed = ech.reduce(v.entries)
    if residual:
        return False, None
    return True, [removed.get(k, Fraction(0)) for k in range(len(span))]


@dataclass
class Certificate:
    """Deterministic record of a rank computation.

    ``to_json`` is canonical: sorted keys, fixed separators, ASCII only.
    """

    rank: int
    pivots: list[str]
    chart_dim: int
    window: int | None = None
    config_hash: str | None = None
    extra: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        d = {
            "config_hash": self.config_hash,
            "window": self.window,
            "chart_dim": self.chart_dim,
            "rank": self.rank,
            "pivots": list(self.pivots),
        }
        d.update(self.extra)
        return d

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def quotient_rank(
    family: Sequence[QVector],
    relations: Sequence[QVector],
    order: Callable[[int], object] | None = None,
) -> tuple[int, Certificate]:
    """Rank of the image of ``family`` in ``space / span(relations)``."""
    space = _common_space(list(family) + list(relations))
    if space is None:
        return 0, Certificate(rank=0, pivots=[], chart_dim=0)
    ech = Echelon(space, order=order)
    for r in relations:
        ech.add(r)
    base = set(ech.rows)
    for f in family:
        ech.add(f)
    new = sorted(set(ech.rows) - base, key=order)
    cert = Certificate(
        rank=len(new),
        pivots=[space.text(p) for p in new],
        chart_dim=len(space) - len(base),
    )
    return len(new), cert
