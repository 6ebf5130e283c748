"""Truncated canonical bases of the rational homotopy modules and the maps between them.

Levels are the number of configuration points (1, 2 or 3).  Every operation
exists in two flavours: on a ``LinComb`` (no truncation) and on a ``QVector``
(inside a built ``ModuleSpace``; the result must fit a space of the same spec).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import ConfigError, LevelMismatch, SpaceMismatch, TruncationOverflow
from .exactlin import IndexSpace, QMatrix, QVector
from .fpgroup import GroupSpec, Word, deck_zeta, enumerate_words, in_kernel
from .symbols import (
    KINDS,
    LinComb,
    Mix,
    Sq,
    T,
    W,
    WhWT,
    kind_parts,
    max_decoration,
    symbol_key,
)

PAIRS = {2: ((1, 2),), 3: ((1, 2), (1, 3), (2, 3))}


@dataclass(frozen=True)
class Primitive:
    name: str
    fiber: bool = False


@dataclass(frozen=True)
class ManifoldSpec:
    """Input data describing ``M = (S^1 x D^3) # M-hat`` and the truncation window.

    ``c3_correction`` maps a degree-3 primitive name to a tuple of
    ``(beta, coeff)`` pairs with ``beta`` in the kernel of the retraction; the
    level-one middle coface then carries the extra term ``sum coeff W(1,2; g beta g^-1)``.
    """

    group: GroupSpec = field(default_factory=GroupSpec)
    p3: tuple[Primitive, ...] = ()
    p4: tuple[str, ...] = ()
    p5: tuple[str, ...] = ()
    window: int = 1
    c3_correction: tuple[tuple[str, tuple[tuple[Word, Fraction], ...]], ...] = ()
    c4_correction: tuple[tuple[str, tuple], ...] = ()

    def __post_init__(self):
        if self.window < 1:
            raise ConfigError("window must be at least 1")
        for label, names in (("p3", [p.name for p in self.p3]), ("p4", self.p4), ("p5", self.p5)):
            if len(set(names)) != len(names):
                raise ConfigError(f"duplicate primitive names in {label}")
            for name in names:
                if not name or any(ch in name for ch in ";(), "):
                    raise ConfigError(f"bad primitive name {name!r}")
        p3_names = {p.name for p in self.p3}
        for name, terms in self.c3_correction:
            if name not in p3_names:
                raise ConfigError(f"c3 correction for unknown primitive {name!r}")
            for beta, _ in terms:
                if beta.group != self.group:
                    raise ConfigError("c3 correction word over a different group")
                if not in_kernel(beta):
                    raise ConfigError(f"c3 correction word {beta} is not in the kernel of the retraction")
        for name, terms in self.c4_correction:
            if name not in self.p4:
                raise ConfigError(f"c4 correction for unknown primitive {name!r}")
            if any(c != 0 for _, c in terms):
                # sigma^1 delta^1 = sigma^2 delta^1 = id on pi4 leaves no room for a
                # nonzero correction inside the T4 basis.
                raise ConfigError("a nonzero c4 correction contradicts the cosimplicial identities")

    @property
    def base_p3(self) -> tuple[str, ...]:
        return tuple(p.name for p in self.p3 if not p.fiber)

    def is_fiber(self, name: str) -> bool:
        for p in self.p3:
            if p.name == name:
                return p.fiber
        raise ConfigError(f"unknown degree-3 primitive {name!r}")

    def c3_for(self, name: str) -> tuple[tuple[Word, Fraction], ...]:
        for key, terms in self.c3_correction:
            if key == name:
                return terms
        return ()

    def with_window(self, window: int) -> "ManifoldSpec":
        return ManifoldSpec(self.group, self.p3, self.p4, self.p5, window, self.c3_correction, self.c4_correction)


def s1xd3_spec(window: int = 1) -> ManifoldSpec:
    return ManifoldSpec(GroupSpec(0), window=window)


def demo_spec(hat_rank: int = 1, window: int = 1, p3=("x1",), p4=("y1",), p5=("z1",)) -> ManifoldSpec:
    return ManifoldSpec(
        GroupSpec(hat_rank),
        p3=tuple(Primitive(n) for n in p3),
        p4=tuple(p4),
        p5=tuple(p5),
        window=window,
    )


class ModuleSpace(IndexSpace):
    def __init__(self, spec: ManifoldSpec, kind: str, window: int, symbols):
        super().__init__(kind, symbols, key=(kind, spec, window))
        self.kind = kind
        self.spec = spec
        self.window = window

    def __repr__(self) -> str:
        return f"ModuleSpace({self.kind}, L={self.window}, dim={len(self)})"

    def vector(self, comb: LinComb) -> QVector:
        if comb.kind != self.kind:
            raise SpaceMismatch(f"{comb.kind} combination in a {self.kind} space")
        entries = {}
        for sym, c in comb.terms.items():
            idx = self.index.get(sym)
            if idx is None:
                if max_decoration(sym) > self.window:
                    raise TruncationOverflow(f"{sym} leaves the window L={self.window}")
                raise SpaceMismatch(f"{sym} is not a basis symbol of {self!r}")
            entries[idx] = c
        return QVector(self, entries)

    def element(self, v: QVector) -> LinComb:
        if v.space != self:
            raise SpaceMismatch(f"{v.space!r} vs {self!r}")
        return LinComb(self.kind, {self.symbols[i]: c for i, c in v.entries.items()})

    def basis_comb(self, i: int) -> LinComb:
        return LinComb.of(self.kind, self.symbols[i])


def _enumerate(spec: ManifoldSpec, kind: str, window: int) -> list:
    deg, n = kind_parts(kind)
    words = enumerate_words(spec.group, window)
    out: list = []
    prims = {3: [p.name for p in spec.p3], 4: list(spec.p4), 5: list(spec.p5)}[deg]
    for slot in range(1, n + 1):
        out.extend(T(deg, slot, g, p) for g in words for p in prims)
    if deg == 3:
        for i, j in PAIRS.get(n, ()):
            out.extend(W(i, j, a) for a in words)
    if deg == 5:
        for i, j in PAIRS.get(n, ()):
            out.extend(WhWT(i, j, a, g, p) for a in words for g in words for p in spec.base_p3)
            out.extend(Sq(i, j, a, b) for a in words for b in words if a < b)
        if n == 3:
            out.extend(Mix(a, b) for a in words for b in words)
    out.sort(key=symbol_key)
    return out


@lru_cache(maxsize=None)
def build_space(spec: ManifoldSpec, kind: str, window: int | None = None) -> ModuleSpace:
    """Canonical basis of ``kind`` with every decoration of length <= window."""
    if kind not in KINDS:
        raise ValueError(f"unknown space kind {kind!r}")
    window = spec.window if window is None else window
    return ModuleSpace(spec, kind, window, _enumerate(spec, kind, window))


def normalize_w(i: int, j: int, side: str, word: Word) -> tuple[W, int]:
    """Canonical form of ``w_ij`` decorated on its ``left`` (point i) or ``right`` (point j)."""
    if i == j:
        raise ValueError("w_ij needs i != j")
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    decorated = i if side == "left" else j
    lo, hi = min(i, j), max(i, j)
    return W(lo, hi, word if decorated == lo else ~word), 1


def sq_comb(kind: str, i: int, j: int, a: Word, b: Word) -> LinComb:
    """``[W(i,j;a), W(i,j;b)]`` in canonical coordinates."""
    if a == b:
        return LinComb(kind)
    if a < b:
        return LinComb.of(kind, Sq(i, j, a, b))
    return LinComb.of(kind, Sq(i, j, b, a), -1)


def split_product(sym):
    """The two degree-3 factors of a Whitehead-pair symbol."""
    if isinstance(sym, WhWT):
        return W(sym.i, sym.j, sym.alpha), T(3, sym.j, sym.g, sym.prim)
    if isinstance(sym, Sq):
        return W(sym.i, sym.j, sym.a), W(sym.i, sym.j, sym.b)
    if isinstance(sym, Mix):
        return W(1, 2, sym.a), W(2, 3, sym.b)
    raise TypeError(f"{sym} is not a Whitehead-pair symbol")


# ---------------------------------------------------------------------------
# group actions


def _t_on_degree3(k: int, alpha: Word, sym):
    if isinstance(sym, T):
        return T(sym.degree, sym.slot, alpha * sym.word, sym.prim) if sym.slot == k else sym
    if k == sym.i:
        return W(sym.i, sym.j, alpha * sym.word)
    if k == sym.j:
        return W(sym.i, sym.j, sym.word * ~alpha)
    return sym


def _t_symbol(kind: str, k: int, alpha: Word, sym) -> LinComb:
    if isinstance(sym, (T, W)):
        return LinComb.of(kind, _t_on_degree3(k, alpha, sym))
    u, v = (_t_on_degree3(k, alpha, x) for x in split_product(sym))
    if isinstance(sym, WhWT):
        return LinComb.of(kind, WhWT(u.i, u.j, u.word, v.word, v.prim))
    if isinstance(sym, Sq):
        return sq_comb(kind, u.i, u.j, u.word, v.word)
    return LinComb.of(kind, Mix(u.word, v.word))


def _as_comb(v):
    if isinstance(v, QVector):
        if not isinstance(v.space, ModuleSpace):
            raise SpaceMismatch("vector does not live in a module space")
        return v.space.element(v), v.space
    if isinstance(v, LinComb):
        return v, None
    raise TypeError(f"expected LinComb or QVector, got {type(v).__name__}")


def _working(space: ModuleSpace, kind: str | None = None) -> ModuleSpace:
    return build_space(space.spec, kind or space.kind, max(space.window, 2 * space.spec.window))


def apply_t(k: int, alpha: Word, v):
    """Action of the loop ``alpha`` threaded through point ``k``.

    On a ``QVector`` the result lives in the working space of window ``2L``.
    """
    comb, space = _as_comb(v)
    n = comb.level
    if not 1 <= k <= n:
        raise ValueError(f"slot {k} out of range for level {n}")
    out = comb.map_terms(comb.kind, lambda s: _t_symbol(comb.kind, k, alpha, s))
    return out if space is None else _working(space).vector(out)


def diagonal_t(alpha: Word, v):
    """Simultaneous action of ``alpha`` on every point."""
    comb, space = _as_comb(v)
    out = comb
    for k in range(1, comb.level + 1):
        out = apply_t(k, alpha, out)
    return out if space is None else _working(space).vector(out)


def collapse(v: LinComb) -> LinComb:
    """Replace every decoration by ``s^zeta``: the map induced by the retraction."""

    def rho(w: Word) -> Word:
        return w.group.s(deck_zeta(w))

    def one(sym) -> LinComb:
        if isinstance(sym, T):
            return LinComb.of(v.kind, T(sym.degree, sym.slot, rho(sym.word), sym.prim))
        if isinstance(sym, W):
            return LinComb.of(v.kind, W(sym.i, sym.j, rho(sym.word)))
        if isinstance(sym, WhWT):
            return LinComb.of(v.kind, WhWT(sym.i, sym.j, rho(sym.alpha), rho(sym.g), sym.prim))
        if isinstance(sym, Sq):
            return sq_comb(v.kind, sym.i, sym.j, rho(sym.a), rho(sym.b))
        return LinComb.of(v.kind, Mix(rho(sym.a), rho(sym.b)))

    return v.map_terms(v.kind, one)


# ---------------------------------------------------------------------------
# pushforwards, cofaces, codegeneracies


def tau_push(i: int, v, n: int):
    """Place a level-one class into slot ``i`` of level ``n``."""
    comb, space = _as_comb(v)
    if comb.level != 1:
        raise LevelMismatch(f"tau_push expects a level-one class, got {comb.kind}")
    if not 1 <= i <= n <= 3:
        raise ValueError(f"need 1 <= i <= n <= 3, got i={i}, n={n}")
    kind = f"pi{comb.degree}C{n}"
    out = comb.map_terms(kind, lambda s: LinComb.of(kind, T(s.degree, i, s.word, s.prim)))
    return out if space is None else build_space(space.spec, kind, space.window).vector(out)


def _correction(spec: ManifoldSpec | None, sym: T, kind: str, i: int, j: int) -> LinComb:
    if spec is None or sym.degree != 3:
        return LinComb(kind)
    g = sym.word
    return LinComb(kind, [(W(i, j, g * beta * ~g), c) for beta, c in spec.c3_for(sym.prim)])


def _coface_t(spec, n: int, i: int, sym: T, kind: str) -> LinComb:
    d, slot = sym.degree, sym.slot

    def at(s):
        return LinComb.of(kind, T(d, s, sym.word, sym.prim))

    if n == 1:
        if i == 0:
            return at(2)
        if i == 2:
            return at(1)
        return at(1) + at(2) + _correction(spec, sym, kind, 1, 2)
    if i == 0:
        return at(slot + 1)
    if i == 3:
        return at(slot)
    if i == 1:
        if slot == 2:
            return at(3)
        return at(1) + at(2) + _correction(spec, sym, kind, 1, 2)
    if slot == 1:
        return at(1)
    return at(2) + at(3) + _correction(spec, sym, kind, 2, 3)


_W_COFACE = {
    0: ((2, 3),),
    1: ((1, 3), (2, 3)),
    2: ((1, 2), (1, 3)),
    3: ((1, 2),),
}


def _coface_deg3(spec, n: int, i: int, sym, kind: str) -> LinComb:
    if isinstance(sym, T):
        return _coface_t(spec, n, i, sym, kind)
    return LinComb(kind, [(W(a, b, sym.word), 1) for a, b in _W_COFACE[i]])


def coface(n: int, i: int, v, spec: ManifoldSpec | None = None, mode: str = "exact"):
    """Coface ``delta_n^i`` from level ``n`` to level ``n + 1`` (``n`` in 1, 2).

    Degree-5 Whitehead-pair symbols are mapped by naturality of the product;
    ``mode`` selects the product rules (``exact`` or ``mod_n5``).
    """
    comb, space = _as_comb(v)
    if space is not None and spec is None:
        spec = space.spec
    if comb.level != n:
        raise LevelMismatch(f"coface delta_{n} applied to a {comb.kind} class")
    if n not in (1, 2):
        raise ValueError("cofaces are implemented from levels 1 and 2")
    if not 0 <= i <= n + 1:
        raise ValueError(f"coface index {i} out of range for n={n}")
    kind = f"pi{comb.degree}C{n + 1}"
    lower = f"pi3C{n + 1}"

    def one(sym):
        if isinstance(sym, (T, W)):
            return _coface_deg3(spec, n, i, sym, kind)
        from .whprod import whitehead

        x, y = split_product(sym)
        return whitehead(
            _coface_deg3(spec, n, i, x, lower),
            _coface_deg3(spec, n, i, y, lower),
            mode,
        )

    out = comb.map_terms(kind, one)
    return out if space is None else build_space(spec, kind, space.window).vector(out)


def _codeg_index(i: int, a: int) -> int:
    return a - 1 if a > i else a


def codegeneracy(n: int, i: int, v):
    """Codegeneracy ``sigma_n^i``: forget point ``i`` (level ``n`` to ``n - 1``)."""
    comb, space = _as_comb(v)
    if comb.level != n:
        raise LevelMismatch(f"codegeneracy sigma_{n} applied to a {comb.kind} class")
    if n not in (2, 3) or not 1 <= i <= n:
        raise ValueError(f"bad codegeneracy sigma_{n}^{i}")
    kind = f"pi{comb.degree}C{n - 1}"

    def one(sym):
        if isinstance(sym, T):
            if sym.slot == i:
                return None
            return LinComb.of(kind, T(sym.degree, _codeg_index(i, sym.slot), sym.word, sym.prim))
        if isinstance(sym, Mix) or i in (sym.i, sym.j):
            return None
        a, b = _codeg_index(i, sym.i), _codeg_index(i, sym.j)
        if isinstance(sym, W):
            return LinComb.of(kind, W(a, b, sym.word))
        if isinstance(sym, WhWT):
            return LinComb.of(kind, WhWT(a, b, sym.alpha, sym.g, sym.prim))
        return LinComb.of(kind, Sq(a, b, sym.a, sym.b))

    out = comb.map_terms(kind, one)
    return out if space is None else build_space(space.spec, kind, space.window).vector(out)


# ---------------------------------------------------------------------------
# matrices


def map_matrix(domain: ModuleSpace, codomain: ModuleSpace, fn) -> QMatrix:
    """Matrix of the linear map ``fn: LinComb -> LinComb`` on the domain basis."""
    cols = {}
    for j in range(len(domain)):
        img = fn(domain.basis_comb(j))
        if img:
            cols[j] = codomain.vector(img)
    return QMatrix(domain, codomain, cols)


def coface_matrix(spec: ManifoldSpec, degree: int, n: int, i: int, window: int | None = None, mode: str = "exact") -> QMatrix:
    dom = build_space(spec, f"pi{degree}C{n}", window)
    cod = build_space(spec, f"pi{degree}C{n + 1}", window)
    return map_matrix(dom, cod, lambda c: coface(n, i, c, spec, mode))


def codegeneracy_matrix(spec: ManifoldSpec, degree: int, n: int, i: int, window: int | None = None) -> QMatrix:
    dom = build_space(spec, f"pi{degree}C{n}", window)
    cod = build_space(spec, f"pi{degree}C{n - 1}", window)
    return map_matrix(dom, cod, lambda c: codegeneracy(n, i, c))

