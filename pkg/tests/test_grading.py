import pytest
from hypothesis import given, settings, strategies as st

from braided_mlie.field import FieldSpec
from braided_mlie.grading import (
    Bicharacter,
    GroupSpec,
    bichar_eval,
    bichar_validate,
    is_skew_symmetric,
    parity,
    r_zero,
    super_bicharacter,
    super_split,
)

QQ = FieldSpec.rational()
C3 = FieldSpec.cyclotomic(3)
C12 = FieldSpec.cyclotomic(12)
Z2, Z3, Z4 = GroupSpec.cyclic(2), GroupSpec.cyclic(3), GroupSpec.cyclic(4)


def test_group_basics():
    G = GroupSpec((0, 3))
    g = G.element(5, 7)
    assert g.coords == (5, 1)
    assert (g + g).coords == (10, 2)
    assert (-g).coords == (-5, 2)
    assert (3 * g).coords == (15, 0)
    assert G.zero().is_zero()
    assert not G.is_finite
    assert len(GroupSpec((2, 2)).elements()) == 4
    with pytest.raises(ValueError):
        GroupSpec((1,))
    with pytest.raises(ValueError):
        G.element(1)


def test_eval_examples():
    q = C3.gen()
    r = Bicharacter.power(Z3, q)
    assert bichar_eval(r, Z3(2), Z3(2)) == q
    assert r(Z3(0), Z3(2)) == C3.one()
    s = Bicharacter.sign(Z2, QQ)
    assert s(Z2(1), Z2(1)) == QQ(-1)


def test_eval_rejects_foreign_degrees():
    r = Bicharacter.sign(Z2, QQ)
    with pytest.raises(ValueError):
        r(Z3(1), Z2(1))


G_MIXED = GroupSpec((0, 4, 6))
coords = st.tuples(st.integers(-5, 5), st.integers(0, 3), st.integers(0, 5))


@settings(max_examples=300, deadline=None)
@given(coords, coords, coords)
def test_biadditive(a, b, c):
    z = C12.gen()
    # B[i][j] must be an n_i-th and n_j-th root of unity on torsion rows/columns
    r = Bicharacter(G_MIXED, C12, [[z, z**3, z**2], [z**9, z**6, z**6], [z**4, z**6, z**10]])
    assert bichar_validate(r)
    g, g2, h = G_MIXED.element(*a), G_MIXED.element(*b), G_MIXED.element(*c)
    assert r(g + g2, h) == r(g, h) * r(g2, h)
    assert r(h, g + g2) == r(h, g) * r(h, g2)
    assert r(G_MIXED.zero(), h) == C12.one()


def test_validate():
    assert bichar_validate(Bicharacter.power(Z3, C3.gen()))
    bad = bichar_validate(Bicharacter(Z2, C3, [[C3.gen()]]))
    assert not bad and bad.witness == (0, 0)
    gen = FieldSpec.generic()
    assert bichar_validate(Bicharacter(GroupSpec((0,)), gen, [[gen.gen()]]))
    assert not bichar_validate(Bicharacter(GroupSpec((0,)), QQ, [[0]]))
    # the column constraint matters too: Z x Z_2 with B[0][1] = 3 is not well defined
    assert not bichar_validate(Bicharacter(GroupSpec((0, 2)), QQ, [[1, 3], [1, 1]]))


def test_skew_symmetry():
    assert is_skew_symmetric(Bicharacter.sign(Z2, QQ))
    rep = is_skew_symmetric(Bicharacter.power(Z3, C3.gen()))
    assert not rep
    assert rep.witness == (Z3(1), Z3(1))
    assert rep.defect == C3.gen() ** 2
    assert is_skew_symmetric(Bicharacter.trivial(Z3, C3))


@pytest.mark.parametrize(
    "r",
    [
        Bicharacter.sign(Z2, QQ),
        Bicharacter.sign(Z4, QQ),
        Bicharacter(GroupSpec((2, 2)), QQ, [[-1, -1], [-1, 1]]),
        Bicharacter(GroupSpec((3, 3)), C3, [[1, C3.gen()], [C3.gen() ** 2, 1]]),
    ],
    ids=["Z2", "Z4", "Z2xZ2", "Z3xZ3"],
)
def test_skew_implies_square_one(r):
    assert is_skew_symmetric(r)
    for g in r.group.elements():
        assert r(g, g) ** 2 == r.field.one()


def test_super_split_examples():
    assert super_split(Bicharacter.sign(Z2, QQ), Z2.elements()) == ([Z2(0)], [Z2(1)])
    assert super_split(Bicharacter.sign(Z4, QQ), Z4.elements()) == ([Z4(0), Z4(2)], [Z4(1), Z4(3)])
    even, odd = super_split(Bicharacter.trivial(Z3, C3), Z3.elements())
    assert odd == [] and len(even) == 3
    with pytest.raises(ValueError):
        super_split(Bicharacter.power(Z3, C3.gen()), [Z3(1)])


def test_r_zero():
    r = Bicharacter.sign(Z4, QQ)
    assert r_zero(r, Z4(1), Z4(3)) == QQ(-1)
    assert r_zero(r, Z4(2), Z4(1)) == QQ(1)
    assert r_zero(r, Z4(0), Z4(0)) == QQ(1)


@pytest.mark.parametrize(
    "r",
    [
        Bicharacter.sign(Z4, QQ),
        Bicharacter(GroupSpec((2, 2)), QQ, [[-1, -1], [-1, 1]]),
        Bicharacter(GroupSpec((2, 4)), QQ, [[-1, 1], [1, -1]]),
        Bicharacter(GroupSpec((3, 3)), C3, [[1, C3.gen()], [C3.gen() ** 2, 1]]),
    ],
)
def test_r_zero_idempotent_and_even_rows(r):
    r0 = super_bicharacter(r)
    r00 = super_bicharacter(r0)
    elements = r.group.elements()
    even, _ = super_split(r, elements)
    for g in elements:
        assert parity(r0, g) == parity(r, g)
        for h in elements:
            assert r0(g, h) == r_zero(r, g, h)
            assert r00(g, h) == r0(g, h)
            assert r_zero(r0, g, h) == r_zero(r, g, h)
    for g in even:
        for h in elements:
            assert r_zero(r, g, h) == r.field.one()
