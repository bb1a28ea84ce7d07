import pytest
import sympy

from braided_mlie.algebra import (
    GradedAlgebra,
    bracket,
    check_associative,
    check_bas,
    check_bji,
    check_graded,
    check_mC_equals_mCinv,
    check_strict,
    jacobiator,
    matrix_units,
    multiply,
    truncated_polynomial,
)
from braided_mlie.field import FieldSpec
from braided_mlie.grading import Bicharacter, GroupSpec

QQ = FieldSpec.rational()
Q = sympy.Symbol("q")


def truncated(n, mode="cyclotomic"):
    if mode == "generic":
        F = FieldSpec.generic()
        return truncated_polynomial(n, Bicharacter.power(GroupSpec((0,)), F.gen()))
    F = FieldSpec.cyclotomic(n)
    return truncated_polynomial(n, Bicharacter.power(GroupSpec.cyclic(n), F.gen()))


def oracle_jacobiator(n, a, b, c):
    """Coefficient of x^(a+b+c) in J(x^a, x^b, x^c) for r(k, m) = q^(km), as a sympy expression."""
    if a + b + c >= n:
        return sympy.Integer(0)

    def br(i, j):  # [x^i, x^j] = (1 - q^(ji)) x^(i+j)
        return 1 - Q ** (j * i)

    return sympy.expand(
        Q ** (c * a) * br(b, c) * br(a, b + c)
        + Q ** (b * a) * br(c, a) * br(b, c + a)
        + Q ** (c * b) * br(a, b) * br(c, a + b)
    )


def as_sympy(e):
    return sum(sympy.Rational(x.numerator, x.denominator) * Q**k for k, x in enumerate(e.coeffs()))


def agrees_mod_cyclotomic(n, expr, elt):
    return sympy.rem(sympy.expand(expr - as_sympy(elt)), sympy.cyclotomic_poly(n, Q), Q) == 0


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_jacobiator_matches_oracle_on_all_triples(n):
    A = truncated(n)
    for a in range(n):
        for b in range(n):
            for c in range(n):
                J = jacobiator(A[a], A[b], A[c])
                target = min(a + b + c, n - 1)
                coeff = J.coeffs.get(a + b + c, A.field.zero()) if a + b + c < n else A.field.zero()
                assert set(J.coeffs) <= {target}
                assert agrees_mod_cyclotomic(n, oracle_jacobiator(n, a, b, c), coeff)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_jacobiator_xxx_closed_form(n):
    A = truncated(n)
    q = A.field.gen()
    expected = (3 * q * (1 - q - q**2 + q**3)) * A["x^3"]
    J = jacobiator(A["x"], A["x"], A["x"])
    assert J == expected
    assert J


def test_generic_jacobiator():
    A = truncated(5, "generic")
    t = A.field.gen()
    assert jacobiator(A["x"], A["x"], A["x"]) == (3 * t * (1 - t - t**2 + t**3)) * A["x^3"]


def test_products_and_brackets():
    A = truncated(4)
    q = A.field.gen()
    x, x2, x3 = A["x"], A["x^2"], A["x^3"]
    assert multiply(x, x2) == x3
    assert (x2 * x2).is_zero()
    assert A["1"] * x2 == x2
    assert bracket(x, x) == (1 - q) * x2
    assert bracket(x, x2) == (1 - q**2) * x3
    assert jacobiator(*[truncated(3)["x"]] * 3).is_zero()


def test_trivial_braiding_commutator():
    G = GroupSpec.cyclic(2)
    A = matrix_units([G(0), G(1)], Bicharacter.trivial(G, QQ))
    for a in A.gens():
        for b in A.gens():
            assert bracket(a, b) == a * b - b * a
            for c in A.gens():
                assert jacobiator(a, b, c).is_zero()


def test_bracket_bilinear_and_homogeneous():
    A = truncated(5)
    q = A.field.gen()
    a = A["x"].scale(q) + A["x^2"]
    b = A["x^2"] + A["1"].scale(3)
    expected = bracket(A["x"], A["x^2"]).scale(q) + bracket(A["x"], A["1"]).scale(3 * q)
    expected = expected + bracket(A["x^2"], A["x^2"]) + bracket(A["x^2"], A["1"]).scale(3)
    assert bracket(a, b) == expected
    for i in range(5):
        for j in range(5):
            br = bracket(A[i], A[j])
            assert br.is_zero() or br.degree() == A.degrees[i] + A.degrees[j]


def test_jacobiator_rejects_inhomogeneous():
    A = truncated(4)
    with pytest.raises(ValueError):
        jacobiator(A["x"] + A["x^2"], A["x"], A["x"])


def test_example_verdicts():
    A3 = truncated(3)
    assert check_bji(A3)
    bas = check_bas(A3)
    assert not bas and bas.witness == (1, 1)
    assert not check_strict(A3)
    mc = check_mC_equals_mCinv(A3)
    q = A3.field.gen()
    assert not mc and mc.witness == (1, 1) and mc.defect == (q**2 - 1) * A3["x^2"]
    for n in (4, 5, 6):
        A = truncated(n)
        bji = check_bji(A)
        assert not bji and bji.witness == (1, 1, 1)
        assert not check_bas(A)


def test_check_graded_witness():
    G = GroupSpec((0,))
    A = GradedAlgebra(Bicharacter.trivial(G, QQ), ["b0", "b1"], [G(0), G(1)], [(1, 1, 1, 1)])
    rep = check_graded(A)
    assert not rep and rep.witness == (1, 1, 1)
    assert check_graded(truncated(4))


def test_check_associative():
    assert check_associative(truncated(5))
    G = GroupSpec.trivial()
    assert check_associative(matrix_units([G(), G()], Bicharacter.trivial(G, QQ)))
    A = truncated(4)
    table = [(i, j, k, c) for (i, j), row in A.table.items() for k, c in row.items()]
    table = [(i, j, k, 2 if (i, j) == (1, 2) else c) for i, j, k, c in table]
    B = GradedAlgebra(A.braiding, A.basis, A.degrees, table, unit=0)
    rep = check_associative(B)
    assert not rep and rep.witness == (1, 1, 1)
    assert rep.defect == -B["x^3"]


def test_empty_product_algebra_is_everything():
    G = GroupSpec.cyclic(3)
    F = FieldSpec.cyclotomic(3)
    A = GradedAlgebra(Bicharacter.power(G, F.gen()), ["a", "b"], [G(1), G(2)])
    for check in (check_graded, check_associative, check_bas, check_bji, check_strict, check_mC_equals_mCinv):
        assert check(A)


def test_skew_braiding_is_strict():
    G = GroupSpec.cyclic(2)
    A = matrix_units([G(0), G(1)], Bicharacter.sign(G, QQ))
    for check in (check_bas, check_bji, check_strict, check_mC_equals_mCinv):
        assert check(A)


def test_construction_errors():
    G = GroupSpec.cyclic(2)
    r = Bicharacter.trivial(G, QQ)
    with pytest.raises(ValueError):
        GradedAlgebra(r, ["a", "a"], [G(0), G(0)])
    with pytest.raises(ValueError):
        GradedAlgebra(r, ["a"], [G(0), G(1)])
    with pytest.raises(KeyError):
        GradedAlgebra(r, ["a"], [G(0)], [("a", "a", "z", 1)])
    A = GradedAlgebra(r, ["a"], [G(0)], [("a", "a", "a", 1), ("a", "a", "a", -1)])
    assert not A.table


def test_elements_of_different_algebras_do_not_mix():
    A, B = truncated(4), truncated(4)
    with pytest.raises(ValueError):
        A["x"] + B["x"]
