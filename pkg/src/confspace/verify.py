"""Property suites run over a whole truncation window.

Each suite returns a ``SuiteResult``; a failure carries the first
counterexample in enumeration order, whatever the thread count.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .confmod import ManifoldSpec, build_space, codegeneracy, coface, diagonal_t
from .errors import ConfspaceError
from .fpgroup import Word, enumerate_words
from .symbols import LinComb, Mix, Sq, W, WhWT
from .theta import theta_vector
from .tower import d1, e2_31_kernel
from .whprod import build_N, build_N0, in_N0_span, whitehead


@dataclass
class SuiteResult:
    suite: str
    passed: bool
    checked: int
    counterexample: str | None = None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} {self.suite}: {self.checked} checks"
        if self.counterexample:
            text += f"; first counterexample: {self.counterexample}"
        return text


def _first_failure(items: Sequence, check: Callable[[object], str | None], threads: int) -> str | None:
    """Run ``check`` on every item; return the first failure message in item order."""
    if threads <= 1:
        for item in items:
            msg = check(item)
            if msg:
                return msg
        return None
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for msg in pool.map(check, items):
            if msg:
                return msg
    return None


def _result(name: str, items: Sequence, check, threads: int) -> SuiteResult:
    bad = _first_failure(items, check, threads)
    return SuiteResult(name, bad is None, len(items), bad)


def relations_suite(spec: ManifoldSpec, threads: int = 1) -> SuiteResult:
    words = enumerate_words(spec.group, spec.window)
    pairs = [(a, b) for a in words for b in words]

    def w(i, j, word):
        return LinComb.of("pi3C3", W(i, j, word))

    def check(pair):
        a, b = pair
        combined = whitehead(w(1, 3, a) + w(1, 2, a * ~b), w(2, 3, b))
        if combined:
            return f"[W13({a}) + W12({a * ~b}), W23({b})] = {combined}"
        first = whitehead(w(1, 3, a), w(2, 3, b))
        if first != -whitehead(w(1, 2, a * ~b), w(2, 3, b)):
            return f"first rewriting form disagrees at ({a}, {b})"
        second = whitehead(w(1, 2, a), w(1, 3, b))
        if second != -whitehead(w(1, 2, a), w(2, 3, ~a * b)):
            return f"second rewriting form disagrees at ({a}, {b})"
        for x, y in ((w(1, 2, a), w(2, 3, b)), (w(1, 3, a), w(1, 3, b)), (w(1, 2, a), w(1, 3, b))):
            if whitehead(x, y) != -whitehead(y, x):
                return f"antisymmetry fails for {x} and {y}"
        return None

    return _result("relations", pairs, check, threads)


def cofaces_suite(spec: ManifoldSpec, threads: int = 1) -> SuiteResult:
    n = build_N(build_space(spec, "pi5C3"))
    src = build_space(spec, "pi5C2")
    items = [(s, i) for s in src.symbols if isinstance(s, (WhWT, Sq)) for i in range(4)]

    def check(item):
        sym, i = item
        try:
            img = coface(2, i, LinComb.of("pi5C2", sym), spec, "exact")
            if not n.contains(img):
                return f"delta^{i} {sym} = {img} is not in N"
        except ConfspaceError as exc:
            return f"delta^{i} {sym}: {exc}"
        return None

    return _result("cofaces", items, check, threads)


def n_membership_suite(spec: ManifoldSpec, threads: int = 1) -> SuiteResult:
    n = build_N(build_space(spec, "pi5C3"))
    mat, src, tgt = d1(spec, (3, 2), mode="exact")
    cols = sorted(mat.columns)

    def check(j):
        img = tgt.block.element(tgt.component(mat.columns[j], tgt.faces[0]))
        if not n.contains(img):
            face, sym = src.space.symbols[j]
            return f"d1 column {face} {sym} -> {img} is not in N"
        return None

    return _result("n-membership", cols, check, threads)


def dual_basis_suite(spec: ManifoldSpec, threads: int = 1) -> SuiteResult:
    space = build_space(spec, "pi5C3")
    syms = [s for s in space.symbols if isinstance(s, (Sq, Mix))]
    hits: dict = {}
    for s in syms:
        vec = theta_vector(LinComb.of("pi5C3", s))
        if len(vec) != 1:
            return SuiteResult("dual-basis", False, len(syms), f"{s} has functional vector {vec}")
        ((idx, val),) = vec.items()
        if val not in (1, -1) or (isinstance(s, Mix) and val != 1):
            return SuiteResult("dual-basis", False, len(syms), f"{s} pairs with {idx} to {val}")
        if idx in hits:
            return SuiteResult("dual-basis", False, len(syms), f"{s} and {hits[idx]} share {idx}")
        hits[idx] = s
    return SuiteResult("dual-basis", True, len(syms))


def sample_words(spec: ManifoldSpec, count: int = 20, seed: int = 0) -> list[Word]:
    words = enumerate_words(spec.group, spec.window)
    rng = random.Random(seed)
    return [rng.choice(words) for _ in range(count)]


def equivariance_suite(
    spec: ManifoldSpec,
    threads: int = 1,
    gammas: Iterable[Word] | None = None,
    descent: bool = True,
) -> SuiteResult:
    gammas = list(gammas) if gammas is not None else sample_words(spec)
    maps = []
    for deg in (3, 4):
        for n in (1, 2):
            dom = build_space(spec, f"pi{deg}C{n}")
            for i in range(n + 2):
                maps.append((f"delta_{n}^{i} on {dom.kind}", dom, lambda c, n=n, i=i: coface(n, i, c, spec)))
        for n in (2, 3):
            dom = build_space(spec, f"pi{deg}C{n}")
            for i in range(1, n + 1):
                maps.append((f"sigma_{n}^{i} on {dom.kind}", dom, lambda c, n=n, i=i: codegeneracy(n, i, c)))
    items: list = [(g, m) for g in gammas for m in maps]
    nspan = build_N(build_space(spec, "pi5C3")) if descent else None
    if descent:
        gens = [LinComb.of("pi5C3", s) for s in sorted(nspan.aligned_symbols, key=lambda s: s.sort_key())]
        gens += nspan.in_window_rows()
        items += [(g, ("descent", gens)) for g in gammas]

    def check(item):
        g, m = item
        if m[0] == "descent":
            for v in m[1]:
                try:
                    if not nspan.contains(diagonal_t(g, v)):
                        return f"diagonal action of {g} moves {v} out of N"
                except ConfspaceError as exc:
                    return f"diagonal action of {g} on {v}: {exc}"
            return None
        name, dom, fn = m
        for k in range(len(dom)):
            b = dom.basis_comb(k)
            if diagonal_t(g, fn(b)) != fn(diagonal_t(g, b)):
                return f"{name} does not commute with the diagonal action of {g} at {dom.symbols[k]}"
        return None

    return _result("equivariance", items, check, threads)


def kernel_diagonal_suite(spec: ManifoldSpec, threads: int = 1) -> SuiteResult:
    basis, diagonal = e2_31_kernel(spec)
    expected = len(build_space(spec, "pi4C1"))
    if not diagonal:
        return SuiteResult("kernel-diagonal", False, len(basis), "kernel leaves the diagonal")
    if len(basis) != expected:
        return SuiteResult("kernel-diagonal", False, len(basis), f"kernel dimension {len(basis)}, expected {expected}")
    return SuiteResult("kernel-diagonal", True, len(basis))


def n0_suite(spec: ManifoldSpec, threads: int = 1) -> SuiteResult:
    items = [(s, i) for s in sorted(build_N0(spec, 2), key=lambda s: s.sort_key()) for i in range(4)]

    def check(item):
        sym, i = item
        img = coface(2, i, LinComb.of("pi3C2", sym), spec)
        return None if in_N0_span(img) else f"delta^{i} {sym} = {img} leaves N0"

    return _result("n0-functoriality", items, check, threads)


SUITES = {
    "relations": relations_suite,
    "cofaces": cofaces_suite,
    "n-membership": n_membership_suite,
    "dual-basis": dual_basis_suite,
    "equivariance": equivariance_suite,
    "kernel-diagonal": kernel_diagonal_suite,
    "n0-functoriality": n0_suite,
}
