"""Whitehead products of degree-3 classes, the subspaces N0 and N, and reduction mod N.

Products are rewritten into the canonical degree-5 basis:

* ``[W(i,j;a), W(i,j;b)]`` is ``Sq(i,j;a;b)`` (antisymmetric, zero when ``a = b``);
* ``[W(1,2;a), W(2,3;b)] = Mix(a;b)``;
* ``[W(1,3;a), W(2,3;b)] = -Mix(a b^-1; b)``;
* ``[W(1,2;a), W(1,3;b)] = -Mix(a; a^-1 b)``;
* ``[W(i,j;a), T3(k;..)]`` vanishes for ``k`` outside ``{i,j}`` and is ``WhWT`` for ``k = j``.

Anything else has no known expansion and raises ``UnsupportedProduct`` in
exact mode.  ``mod_n5`` additionally works modulo the symbol-aligned part of N.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .confmod import ManifoldSpec, ModuleSpace, build_space, coface, sq_comb
from .errors import LevelMismatch, SpaceMismatch, TruncationOverflow, UnsupportedProduct
from .exactlin import Echelon, IndexSpace, QMatrix, QVector
from .fpgroup import GroupSpec, in_kernel, in_s_factor
from .symbols import LinComb, Mix, Sq, T, W, WhWT, symbol_key

MODES = ("exact", "mod_n5")


def _pair(x, y, kind: str, mode: str, spec: ManifoldSpec | None) -> LinComb:
    zero = LinComb(kind)
    if isinstance(x, W) and isinstance(y, W):
        if (x.i, x.j) == (y.i, y.j):
            return sq_comb(kind, x.i, x.j, x.word, y.word)
        pair = ((x.i, x.j), (y.i, y.j))
        if pair == ((1, 2), (2, 3)):
            return LinComb.of(kind, Mix(x.word, y.word))
        if pair == ((1, 3), (2, 3)):
            return LinComb.of(kind, Mix(x.word * ~y.word, y.word), -1)
        if pair == ((1, 2), (1, 3)):
            return LinComb.of(kind, Mix(x.word, ~x.word * y.word), -1)
        return -_pair(y, x, kind, mode, spec)
    if isinstance(x, T) and isinstance(y, W):
        return -_pair(y, x, kind, mode, spec)
    if isinstance(x, W) and isinstance(y, T):
        if y.slot not in (x.i, x.j):
            return zero
        fiber = spec is not None and spec.is_fiber(y.prim)
        if fiber:
            raise UnsupportedProduct(f"[{x}, {y}]: products with fiber classes have no known expansion")
        if y.slot == x.j:
            return LinComb.of(kind, WhWT(x.i, x.j, x.word, y.word, y.prim))
        if mode == "mod_n5":
            return zero
        raise UnsupportedProduct(f"[{x}, {y}]: no canonical expansion in exact mode")
    # two pushforward classes
    if mode == "mod_n5" and x.slot == y.slot:
        return zero
    raise UnsupportedProduct(f"[{x}, {y}]: no canonical expansion for products of pushforward classes")


def whitehead(u, v, mode: str = "exact", spec: ManifoldSpec | None = None):
    """Bilinear Whitehead product of two degree-3 classes of the same level.

    Accepts ``LinComb`` or ``QVector`` arguments; with vectors the spec is
    taken from their space and the result lives in the working degree-5 space
    of window ``2L``.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    space = None
    if isinstance(u, QVector) or isinstance(v, QVector):
        if not (isinstance(u, QVector) and isinstance(v, QVector)):
            raise SpaceMismatch("mixing vectors and symbolic combinations")
        if not isinstance(u.space, ModuleSpace) or not isinstance(v.space, ModuleSpace):
            raise SpaceMismatch("vectors must live in module spaces")
        if u.space.spec != v.space.spec:
            raise SpaceMismatch("vectors over different manifold specs")
        space = u.space
        spec = space.spec
        u, v = u.space.element(u), v.space.element(v)
    if u.kind != v.kind:
        raise LevelMismatch(f"product of {u.kind} and {v.kind}")
    if u.degree != 3 or u.level not in (2, 3):
        raise LevelMismatch(f"Whitehead products are defined on pi3 at levels 2 and 3, got {u.kind}")
    if mode == "mod_n5" and u.level != 3:
        raise LevelMismatch("mod_n5 works in level three, where N lives")
    kind = f"pi5C{u.level}"
    acc: dict = {}
    for x, a in u.terms.items():
        for y, b in v.terms.items():
            for sym, c in _pair(x, y, kind, mode, spec).terms.items():
                acc[sym] = acc.get(sym, 0) + a * b * c
    out = LinComb(kind, acc)
    if mode == "mod_n5":
        out = drop_aligned(out)
    if space is None:
        return out
    return build_space(spec, kind, max(space.window, 2 * spec.window)).vector(out)


# ---------------------------------------------------------------------------
# N and N0


def is_aligned(sym) -> bool:
    """Whether a degree-5 level-3 basis symbol is one of the symbol generators of N."""
    if isinstance(sym, (T, WhWT)):
        return True
    if isinstance(sym, Sq):
        if (sym.i, sym.j) != (1, 3):
            return True
        return not (in_s_factor(sym.a) and in_s_factor(sym.b))
    if isinstance(sym, Mix):
        return not (in_s_factor(sym.a) and in_s_factor(sym.b)) or sym.a.is_identity() or sym.b.is_identity()
    raise TypeError(f"{sym} is not a degree-5 symbol")


def drop_aligned(v: LinComb) -> LinComb:
    if v.kind != "pi5C3":
        raise LevelMismatch(f"N lives in pi5C3, got {v.kind}")
    return LinComb(v.kind, {s: c for s, c in v.terms.items() if not is_aligned(s)})


def survivor_symbols(group: GroupSpec, max_exp: int) -> list:
    """Non-aligned pi5C3 symbols with decorations ``s^k``, ``|k| <= max_exp``."""
    powers = [group.s(k) for k in range(-max_exp, max_exp + 1)]
    out = [Sq(1, 3, a, b) for a in powers for b in powers if a < b]
    out += [Mix(a, b) for a in powers for b in powers if not a.is_identity() and not b.is_identity()]
    out.sort(key=symbol_key)
    return out


def square_grade(p: int, q: int) -> int:
    """Grade of ``Sq(s^p; s^q)``; every coface image of it is homogeneous of this grade."""
    return max(abs(p), abs(q), abs(q - p))


def item6_generators(group: GroupSpec, max_grade: int, mode: str = "mod_n5") -> list[LinComb]:
    """Coface images of the squares ``Sq(1,2;s^p;s^q)`` of grade at most ``max_grade``."""
    gens = []
    for p in range(-max_grade, max_grade + 1):
        for q in range(-max_grade, max_grade + 1):
            a, b = group.s(p), group.s(q)
            if not a < b or square_grade(p, q) > max_grade:
                continue
            src = LinComb.of("pi5C2", Sq(1, 2, a, b))
            for i in range(4):
                img = coface(2, i, src, None, mode)
                if img:
                    gens.append(img)
    return gens


class NSpan:
    """The subspace N of pi5C3 in a truncated chart.

    Symbol generators are recognised by ``is_aligned``.  The remaining part of
    N is spanned by the item-six coface images, whose survivor coordinates are
    row reduced inside a work space of ``s``-powers with ``|k| <= 2L``.  Each
    image is homogeneous for the grade ``max(|x|, |y|, |x + y|)`` of ``Mix(s^x; s^y)``
    (``max(|p|, |q|, |q - p|)`` for squares) and the window holds grades up to
    ``2L``, so sources of grade ``<= 2L`` suffice.  Work
    coordinates outside the window ``L`` are ordered first, so rows whose pivot
    lies inside the window span exactly the in-window part of N.
    """

    def __init__(self, space: ModuleSpace):
        if space.kind != "pi5C3":
            raise SpaceMismatch(f"N lives in pi5C3, got {space.kind}")
        self.space = space
        self.window = space.window
        group = space.spec.group
        self.aligned_symbols = frozenset(s for s in space.symbols if is_aligned(s))
        self.item6_span = item6_generators(group, 2 * self.window)
        work_syms = survivor_symbols(group, 2 * self.window)
        self.work = IndexSpace(f"survivors(L={self.window})", work_syms, key=("survivors", group, self.window))
        inside = [max(len(w) for w in s.words()) <= self.window for s in work_syms]
        self._inside = inside
        order = lambda i: (inside[i], i)  # noqa: E731  out-of-window coordinates first
        self.echelon = Echelon(self.work, order=order)
        for g in self.item6_span:
            self.echelon.add(self._work_entries(g))
        pivots = set(self.echelon.rows)
        free = [i for i in range(len(work_syms)) if i not in pivots]
        chart = [i for i in free if inside[i]]
        outside = [i for i in free if not inside[i]]
        self.quotient = IndexSpace(
            f"pi5C3/N(L={self.window})",
            [work_syms[i] for i in chart + outside],
            key=("quotient", space.key),
        )
        self.chart = IndexSpace(
            f"chart(L={self.window})",
            [work_syms[i] for i in chart],
            key=("chart", space.key),
        )

    def _work_entries(self, v: LinComb) -> dict[int, Fraction]:
        entries = {}
        for sym, c in v.terms.items():
            if is_aligned(sym):
                continue
            idx = self.work.index.get(sym)
            if idx is None:
                raise TruncationOverflow(f"{sym} lies outside the survivor work space of window {2 * self.window}")
            entries[idx] = c
        return entries

    @property
    def chart_dim(self) -> int:
        return len(self.chart)

    def in_window_rows(self) -> list[LinComb]:
        """Basis of the item-six part of N inside the window, as combinations."""
        out = []
        for p in self.echelon.pivots:
            if self._inside[p]:
                row = self.echelon.rows[p]
                out.append(LinComb("pi5C3", {self.work.symbols[i]: c for i, c in row.items()}))
        return out

    def reduce(self, v) -> QVector:
        if isinstance(v, QVector):
            if v.space != self.space:
                raise SpaceMismatch(f"{v.space!r} is not {self.space!r}")
            v = self.space.element(v)
        if v.kind != "pi5C3":
            raise SpaceMismatch(f"reduce_mod_N expects pi5C3, got {v.kind}")
        residual, _ = self.echelon.reduce(self._work_entries(v))
        qi = self.quotient.index
        return QVector(self.quotient, {qi[self.work.symbols[i]]: c for i, c in residual.items()})

    def contains(self, v) -> bool:
        return not self.reduce(v)

    def to_chart(self, q: QVector) -> QVector:
        if q.space != self.quotient:
            raise SpaceMismatch("expected a quotient vector")
        if any(i >= len(self.chart) for i in q.entries):
            raise TruncationOverflow("residual has coordinates outside the chart window")
        return QVector(self.chart, q.entries)

    def projector(self) -> QMatrix:
        """Matrix of reduction mod N from the pi5C3 chart basis to the chart coordinates."""
        cols = {}
        for j in range(len(self.space)):
            q = self.reduce(self.space.basis_comb(j))
            if q:
                cols[j] = self.to_chart(q)
        return QMatrix(self.space, self.chart, cols)


_NSPANS: dict = {}


def build_N(space: ModuleSpace) -> NSpan:
    key = space.key
    if key not in _NSPANS:
        _NSPANS[key] = NSpan(space)
    return _NSPANS[key]


def reduce_mod_N(v, n: NSpan) -> QVector:
    """Coordinates of ``v`` in ``pi5C3 / N`` (chart coordinates listed first)."""
    return n.reduce(v)


def build_N0(spec: ManifoldSpec, n: int, window: int | None = None) -> frozenset:
    """Symbols ``W(i,j;a)`` of the level-``n`` pi3 chart with ``a`` in the kernel of the retraction."""
    if n not in (2, 3):
        raise ValueError("N0 is defined at levels 2 and 3")
    space = build_space(spec, f"pi3C{n}", window)
    return frozenset(s for s in space.symbols if isinstance(s, W) and in_kernel(s.word))


def in_N0_span(v: LinComb) -> bool:
    return all(isinstance(s, W) and in_kernel(s.word) for s in v.terms)

