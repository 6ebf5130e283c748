from fractions import Fraction

import pytest

from confspace.confmod import (
    ManifoldSpec,
    Primitive,
    apply_t,
    build_space,
    codegeneracy,
    codegeneracy_matrix,
    coface,
    coface_matrix,
    demo_spec,
    diagonal_t,
    normalize_w,
    s1xd3_spec,
    tau_push,
)
from confspace.errors import ConfigError, LevelMismatch, TruncationOverflow
from confspace.fpgroup import GroupSpec, enumerate_words
from confspace.symbols import LinComb, T, W


def one(kind, sym, c=1):
    return LinComb.of(kind, sym, c)


def test_s1xd3_pi3c2_basis():
    sp = build_space(s1xd3_spec(1), "pi3C2")
    assert [str(s) for s in sp.symbols] == ["W(1,2;e)", "W(1,2;s)", "W(1,2;s^-1)"]


def test_s1xd3_pi5c3_has_18_symbols():
    assert len(build_space(s1xd3_spec(1), "pi5C3")) == 18


def test_pi4c3_count():
    assert len(build_space(demo_spec(1, 1), "pi4C3")) == 3 * 5 * 1


def test_build_is_order_stable():
    a = build_space(demo_spec(1, 2), "pi5C2")
    b = build_space(demo_spec(1, 2), "pi5C2")
    assert a.symbols == b.symbols and a == b


def test_pi5c2_excludes_fiber_primitives(g1):
    spec = ManifoldSpec(g1, p3=(Primitive("x1"), Primitive("f", fiber=True)), window=1)
    prims = {s.prim for s in build_space(spec, "pi5C2").symbols if hasattr(s, "prim")}
    assert prims == {"x1"}


def test_normalize_w(g1):
    a = g1.word("s h1")
    assert normalize_w(1, 2, "right", a) == (W(1, 2, ~a), 1)
    assert normalize_w(2, 1, "left", a) == (W(1, 2, ~a), 1)
    assert normalize_w(1, 3, "left", g1.identity()) == (W(1, 3, g1.identity()), 1)


def test_apply_t_examples(g1):
    h1, s = g1.word("h1"), g1.s(1)
    assert apply_t(2, s, one("pi3C2", W(1, 2, h1))) == one("pi3C2", W(1, 2, g1.word("h1 s^-1")))
    assert apply_t(3, h1, one("pi3C3", W(1, 2, s))) == one("pi3C3", W(1, 2, s))
    t = one("pi3C2", T(3, 2, s, "x1"))
    assert apply_t(1, h1, t) == t


def test_diagonal_examples(g1):
    s, h1 = g1.s(1), g1.word("h1")
    assert diagonal_t(s, one("pi3C2", W(1, 2, h1))) == one("pi3C2", W(1, 2, g1.word("s h1 s^-1")))
    assert diagonal_t(g1.s(2), one("pi3C2", W(1, 2, g1.s(3)))) == one("pi3C2", W(1, 2, g1.s(3)))
    assert diagonal_t(h1, one("pi3C2", T(3, 2, s, "x1"))) == one("pi3C2", T(3, 2, g1.word("h1 s"), "x1"))


def test_apply_t_on_vectors_overflows_past_2L(g1):
    spec = demo_spec(1, 1)
    sp = build_space(spec, "pi3C2")
    v = sp.vector(one("pi3C2", W(1, 2, g1.s(1))))
    out = apply_t(1, g1.s(1), v)
    assert out.space.window == 2
    with pytest.raises(TruncationOverflow):
        apply_t(1, g1.s(2), out)


def test_t_action_is_a_group_action(g1):
    ws = enumerate_words(g1, 2)
    v = one("pi3C3", W(1, 2, g1.word("h1 s"))) + one("pi3C3", T(3, 2, g1.s(-1), "x1"))
    for a in ws[:9]:
        for b in ws[:9]:
            for k in (1, 2, 3):
                assert apply_t(k, a, apply_t(k, b, v)) == apply_t(k, a * b, v)
            assert apply_t(1, a, apply_t(2, b, v)) == apply_t(2, b, apply_t(1, a, v))


def test_tau_push(g1):
    p = one("pi3C1", T(3, 1, g1.s(1), "x1"))
    assert tau_push(2, p, 2) == one("pi3C2", T(3, 2, g1.s(1), "x1"))
    assert tau_push(1, p, 3)
    q = one("pi4C1", T(4, 1, g1.identity(), "y1"))
    assert tau_push(3, q, 3) == one("pi4C3", T(4, 3, g1.identity(), "y1"))
    with pytest.raises(LevelMismatch):
        tau_push(1, tau_push(2, p, 2), 3)


def test_codegeneracy_examples(g1):
    a = g1.word("s h1")
    assert not codegeneracy(2, 1, one("pi3C2", W(1, 2, a)))
    assert codegeneracy(3, 1, one("pi3C3", W(2, 3, a))) == one("pi3C2", W(1, 2, a))
    assert codegeneracy(2, 2, one("pi3C2", T(3, 1, a, "x1"))) == one("pi3C1", T(3, 1, a, "x1"))


def test_coface_examples_on_w(g1):
    a = g1.word("h1 s")
    w12 = one("pi3C2", W(1, 2, a))
    assert coface(2, 0, w12) == one("pi3C3", W(2, 3, a))
    assert coface(2, 1, w12) == one("pi3C3", W(1, 3, a)) + one("pi3C3", W(2, 3, a))
    assert coface(2, 2, w12) == one("pi3C3", W(1, 2, a)) + one("pi3C3", W(1, 3, a))
    assert coface(2, 3, w12) == one("pi3C3", W(1, 2, a))


def test_middle_coface_level_one(g1):
    p = one("pi3C1", T(3, 1, g1.s(1), "x1"))
    assert coface(1, 1, p) == one("pi3C2", T(3, 1, g1.s(1), "x1")) + one("pi3C2", T(3, 2, g1.s(1), "x1"))


def test_alternating_sum_vanishes_with_zero_correction():
    spec = demo_spec(1, 2)
    sp = build_space(spec, "pi3C1")
    for k in range(len(sp)):
        b = sp.basis_comb(k)
        assert not coface(1, 0, b, spec) - coface(1, 1, b, spec) + coface(1, 2, b, spec)


def test_alternating_sum_lands_in_n0_with_correction(g1):
    spec = ManifoldSpec(
        g1, p3=(Primitive("x1"),), window=1, c3_correction=(("x1", ((g1.word("h1"), Fraction(2)),)),)
    )
    sp = build_space(spec, "pi3C1")
    for k in range(len(sp)):
        b = sp.basis_comb(k)
        alt = coface(1, 0, b, spec) - coface(1, 1, b, spec) + coface(1, 2, b, spec)
        assert alt and all(isinstance(s, W) and sum(e for g, e in s.word.letters if g == 0) == 0 for s in alt.terms)


def test_correction_must_be_in_kernel(g1):
    with pytest.raises(ConfigError):
        ManifoldSpec(g1, p3=(Primitive("x1"),), c3_correction=(("x1", ((g1.s(1), Fraction(1)),)),))


def test_nonzero_c4_correction_rejected(g1):
    with pytest.raises(ConfigError):
        ManifoldSpec(g1, p4=("y1",), c4_correction=(("y1", ((g1.identity(), Fraction(1)),)),))


SPECS = [
    demo_spec(1, 1),
    demo_spec(1, 2),
    ManifoldSpec(
        GroupSpec(1),
        p3=(Primitive("x1"), Primitive("f", fiber=True)),
        p4=("y1",),
        window=1,
        c3_correction=(("x1", ((GroupSpec(1).word("h1"), Fraction(1)),)),),
    ),
]


@pytest.mark.parametrize("spec", SPECS)
@pytest.mark.parametrize("deg", [3, 4])
def test_cosimplicial_identities(spec, deg):
    # 0-based codegeneracies s^j = sigma^{j+1}; cofaces d^i; checked on symbols
    # since a correction term can push coface images past the window.
    # s^j d^i = d^i s^{j-1} (i < j), id (i = j, j + 1), d^{i-1} s^j (i > j + 1)
    for n in (1, 2):
        dom = build_space(spec, f"pi{deg}C{n}")
        for k in range(len(dom)):
            b = dom.basis_comb(k)
            for i in range(n + 2):
                img = coface(n, i, b, spec)
                for j in range(n + 1):
                    lhs = codegeneracy(n + 1, j + 1, img)
                    if i in (j, j + 1):
                        assert lhs == b
                    elif n >= 2 and i < j:
                        assert lhs == coface(n - 1, i, codegeneracy(n, j, b), spec)
                    elif n >= 2:
                        assert lhs == coface(n - 1, i - 1, codegeneracy(n, j + 1, b), spec)


def test_matrices_agree_with_symbols():
    spec = demo_spec(1, 2)
    d = coface_matrix(spec, 3, 1, 1)
    s = codegeneracy_matrix(spec, 3, 2, 1)
    dom = d.domain
    for k in range(len(dom)):
        assert s.compose(d).apply(dom.basis_vector(k)) == dom.basis_vector(k)


@pytest.mark.parametrize("spec", SPECS)
@pytest.mark.parametrize("deg", [3, 4])
def test_coface_identities(spec, deg):
    # d^j d^i = d^i d^{j-1} for i < j, from level 1 to level 3
    for j in range(4):
        for i in range(j):
            dom = build_space(spec, f"pi{deg}C1")
            for k in range(len(dom)):
                b = dom.basis_comb(k)
                assert coface(2, j, coface(1, i, b, spec), spec) == coface(2, i, coface(1, j - 1, b, spec), spec)


def test_cofaces_preserve_window():
    spec = demo_spec(1, 2)
    for deg in (3, 4):
        for n in (1, 2):
            for i in range(n + 2):
                coface_matrix(spec, deg, n, i)
