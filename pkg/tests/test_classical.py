from fractions import Fraction

import pytest
import sympy

from braided_mlie.algebra import bracket, check_bas, check_bji
from braided_mlie.classical import (
    QuantumTrace,
    Subalgebra,
    Transpose,
    block_trace,
    bracket_trace,
    check_super_products,
    compute_osp,
    compute_sl,
    sl_closure_check,
    lemma24_defect,
    osp_closure_check,
    lemma25_defect,
    ordinary_transpose,
    qtrace,
    superize,
    trace_nondegenerate,
    verify_super_gl,
    verify_thm26,
    verify_super_osp,
    verify_super_sl,
)
from braided_mlie.field import FieldSpec
from braided_mlie.gm import GeneralLinear, gm_grade, to_graded
from braided_mlie.grading import Bicharacter, GroupSpec, super_bicharacter

QQ = FieldSpec.rational()
C3 = FieldSpec.cyclotomic(3)
Z2, Z3, Z4 = GroupSpec.cyclic(2), GroupSpec.cyclic(3), GroupSpec.cyclic(4)
TRIV = GroupSpec.trivial()


def gl(field, group, dims):
    return GeneralLinear(field, group, [(group.element(*(g if isinstance(g, tuple) else (g,))), n) for g, n in dims])


def gl11():
    return gl(QQ, Z2, [(0, 1), (1, 1)]), Bicharacter.sign(Z2, QQ)


def gl21():
    return gl(QQ, Z2, [(0, 2), (1, 1)]), Bicharacter.sign(Z2, QQ)


def gl_z4():
    return gl(QQ, Z4, [(0, 1), (1, 1), (2, 1), (3, 1)]), Bicharacter.sign(Z4, QQ)


def gl_z3_nonskew():
    return gl(C3, Z3, [(0, 1), (1, 1), (2, 1)]), Bicharacter.power(Z3, C3.gen())


def gl_z3z3():
    G = GroupSpec((3, 3))
    q = C3.gen()
    return gl(C3, G, [((0, 0), 1), ((1, 0), 1), ((0, 1), 1)]), Bicharacter(G, C3, [[1, q], [q**2, 1]])


def sym(x):
    assert x.spec.mode == "rational"
    return sympy.Rational(x.value.numerator, x.value.denominator)


# -- independent oracles (sympy, rational instances) --------------------------

def oracle_sl_dim(A, r):
    row = [sym(r(A.slots[a], A.slots[a])) if a == b else 0 for a in range(A.size) for b in range(A.size)]
    return A.size**2 - sympy.Matrix([row]).rank()


def oracle_osp_dim(A, r, M):
    """Sum over degrees u of dim {X of degree u : X^T M + D_u M X = 0}, D_u = diag r(slot_a, u)."""
    N = A.size
    Mm = sympy.Matrix(N, N, lambda a, b: sym(A.to_matrix(M)[a][b]))
    total = 0
    for u in {s - t for s in A.slots for t in A.slots}:
        cells = [(a, b) for a in range(N) for b in range(N) if A.slots[a] - A.slots[b] == u]
        xs = sympy.symbols(f"x0:{len(cells)}")
        X = sympy.zeros(N, N)
        for (a, b), x in zip(cells, xs):
            X[a, b] = x
        D = sympy.diag(*[sym(r(A.slots[a], u)) for a in range(N)])
        eqs = list(X.T * Mm + D * Mm * X)
        coeffs = sympy.Matrix([[sympy.diff(e, x) for x in xs] for e in eqs]) if xs else sympy.zeros(0, 0)
        total += len(xs) - (coeffs.rank() if xs else 0)
    return total


# -- quantum trace ------------------------------------------------------------

def test_qtrace_examples():
    A, r = gl11()
    tr = block_trace(A, r)
    assert qtrace(tr, A.from_matrix([[3, 5], [7, 11]])) == [QQ(-8)]
    assert qtrace(tr, A["E1_2"] + A["E2_1"]) == [QQ(0)]
    B = gl(QQ, TRIV, [((), 3)])
    trB = block_trace(B, Bicharacter.trivial(TRIV, QQ))
    m = [[1, 2, 3], [4, 5, 6], [7, 8, 10]]
    assert qtrace(trB, B.from_matrix(m)) == [QQ(16)]


def test_qtrace_linear():
    A, r = gl21()
    tr = block_trace(A, r)
    x = A.from_matrix([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
    y = A.from_matrix([[0, 1, 0], [2, Fraction(1, 2), 0], [0, 0, -4]])
    lhs = qtrace(tr, x.scale(3) + y)
    rhs = [3 * a + b for a, b in zip(qtrace(tr, x), qtrace(tr, y))]
    assert lhs == rhs


def test_trace_must_be_cyclic():
    A, r = gl11()
    with pytest.raises(ValueError, match="cyclic"):
        QuantumTrace(A, r, ["w"], {"E1_1": [1]})
    with pytest.raises(ValueError, match="off-diagonal"):
        QuantumTrace(A, r, ["w"], {"E1_2": [1]})


def test_zero_trace_gives_everything():
    A, r = gl11()
    tr = QuantumTrace(A, r, ["w"], {})
    assert compute_sl(tr).dim == A.dim


# -- sl -----------------------------------------------------------------------

@pytest.mark.parametrize("make", [gl11, gl21, gl_z4])
def test_sl_dimension_matches_oracle(make):
    A, r = make()
    S = compute_sl(block_trace(A, r))
    assert S.dim == oracle_sl_dim(A, r) == A.dim - 1


def test_sl_examples():
    A, r = gl11()
    S = compute_sl(block_trace(A, r))
    assert S.dim == 3
    assert S.dims_by_degree() == {Z2(0): 1, Z2(1): 2}
    B = gl(QQ, TRIV, [((), 2)])
    assert compute_sl(block_trace(B, Bicharacter.trivial(TRIV, QQ))).dim == 3


@pytest.mark.parametrize("make", [gl11, gl21, gl_z4])
def test_sl_defect_vanishes_for_skew(make):
    A, r = make()
    tr = block_trace(A, r)
    G = gm_grade(A, r)
    for x in A.gens():
        for y in A.gens():
            assert all(v.is_zero() for v in bracket_trace(tr, x, y))
            if x.degree() == -y.degree():
                assert all(v.is_zero() for v in lemma24_defect(tr, x, y))
    assert sl_closure_check(tr)
    assert trace_nondegenerate(tr)
    S = compute_sl(tr)
    assert S.closed_under_bracket()
    assert check_bas(G) and check_bji(G)


def test_sl_defect_nonskew():
    A, r = gl_z3_nonskew()
    tr = block_trace(A, r)
    rep = sl_closure_check(tr)
    assert not rep
    assert rep.defect == [C3.gen() + 2]
    assert trace_nondegenerate(tr)
    assert not compute_sl(tr).closed_under_bracket()


@pytest.mark.parametrize("make", [gl11, gl21, gl_z3_nonskew, gl_z3z3])
def test_bracket_trace_identity(make):
    """tr[a,b] = -r(u,u)^-1 * defect for homogeneous a of degree u and b of degree -u."""
    A, r = make()
    tr = block_trace(A, r)
    for x in A.gens():
        for y in A.gens():
            u = x.degree()
            if u != -y.degree():
                assert all(v.is_zero() for v in bracket_trace(tr, x, y))
                continue
            c = -r(u, u).inverse()
            assert bracket_trace(tr, x, y) == [c * d for d in lemma24_defect(tr, x, y)]


def test_sl_defect_degree_mismatch():
    A, r = gl_z3_nonskew()
    tr = block_trace(A, r)
    with pytest.raises(ValueError):
        lemma24_defect(tr, A["E1_2"], A["E1_2"])


# -- transpose / osp ----------------------------------------------------------

def test_transpose_validation():
    A, _ = gl11()
    with pytest.raises(ValueError):
        Transpose(A, {"E1_2": {"E1_2": 1}})
    with pytest.raises(ValueError, match="anti-multiplicative"):
        Transpose(A, {"E1_1": {"E1_1": 1}, "E2_2": {"E2_2": 1}, "E1_2": {"E2_1": 1}, "E2_1": {"E1_2": 2}})
    t = ordinary_transpose(A)
    assert t(A["E1_2"]) == A["E2_1"]


def osp_cases():
    A, r = gl11()
    yield "gl11", A, r, A.identity(), 0
    B = gl(QQ, TRIV, [((), 2)])
    yield "so2", B, Bicharacter.trivial(TRIV, QQ), B.identity(), 1
    C = gl(QQ, Z2, [(0, 1), (1, 2)])
    yield "osp12", C, Bicharacter.sign(Z2, QQ), C.from_matrix([[1, 0, 0], [0, 0, 1], [0, -1, 0]]), 5
    D, r = gl_z4()
    yield "z4", D, r, D.identity(), 2
    E = gl(QQ, TRIV, [((), 3)])
    yield "so3", E, Bicharacter.trivial(TRIV, QQ), E.identity(), 3


@pytest.mark.parametrize("name,A,r,M,dim", list(osp_cases()), ids=[c[0] for c in osp_cases()])
def test_osp_dimension_matches_oracle(name, A, r, M, dim):
    S = compute_osp(ordinary_transpose(A), M, r)
    assert S.dim == dim == oracle_osp_dim(A, r, M)
    assert S.closed_under_bracket()
    assert osp_closure_check(ordinary_transpose(A), M, r, S)


def test_osp_rejects_zero_M():
    A, r = gl11()
    with pytest.raises(ValueError):
        compute_osp(ordinary_transpose(A), A.zero(), r)


def test_osp_contains_zero_and_so2_basis():
    B = gl(QQ, TRIV, [((), 2)])
    S = compute_osp(ordinary_transpose(B), B.identity(), Bicharacter.trivial(TRIV, QQ))
    G = S.parent
    assert S.contains(G.zero())
    assert S.contains(G["E1_2"] - G["E2_1"])
    assert not S.contains(G["E1_2"])


def test_osp_defect_formula():
    """The defect equals (1 - r(u,v) r(v,u)) M a b on every pair of osp basis elements."""
    for A, r, anti in (gl_z3_nonskew() + (True,), gl11() + (False,)):
        t = ordinary_transpose(A)
        M = A.from_matrix([[int(a + b == A.size - 1) for b in range(A.size)] for a in range(A.size)]) if anti else A.identity()
        S = compute_osp(t, M, r)
        vecs = [A.from_vector(v) for v in S.vectors]
        for a in vecs:
            for b in vecs:
                u, v = a.degree(), b.degree()
                expected = (M * a * b).scale(1 - r(u, v) * r(v, u))
                assert lemma25_defect(t, M, a, b, r) == expected


def test_osp_defect_nonskew_instance():
    A, r = gl_z3_nonskew()
    M = A.from_matrix([[0, 0, 1], [0, 1, 0], [1, 0, 0]])
    t = ordinary_transpose(A)
    S = compute_osp(t, M, r)
    rep = osp_closure_check(t, M, r, S)
    assert not rep
    assert not S.closed_under_bracket()


# -- superization -------------------------------------------------------------

def test_superize_z2_is_identity_regrouping():
    A, r = gl11()
    S = superize(A, r)
    assert [S.algebra.basis[k] for k in S.algebra.blocks[(S.algebra.index_set[0], S.algebra.index_set[1])]] == ["E1_2"]
    assert check_super_products(S)


def test_superize_z4_merges_even_blocks():
    A, r = gl_z4()
    S = superize(A, r)
    even = S.algebra.index_set[0]
    names = {S.algebra.basis[k] for k in S.algebra.blocks[(even, even)]}
    assert names == {"E1_1", "E1_3", "E3_1", "E3_3"}
    assert check_super_products(S)


def test_superize_trivial_r_has_no_odd_part():
    A = gl(C3, Z3, [(0, 1), (1, 1)])
    S = superize(A, Bicharacter.trivial(Z3, C3))
    odd = S.algebra.index_set[1]
    assert all(i != odd and j != odd for (i, j) in S.algebra.blocks)


def test_superize_rejects_nonskew():
    A, r = gl_z3_nonskew()
    with pytest.raises(ValueError):
        superize(A, r)


@pytest.mark.parametrize("make", [gl11, gl21, gl_z4, gl_z3z3])
def test_r0_bracket_is_super_commutator(make):
    A, r = make()
    S = superize(A, r)
    r0 = super_bicharacter(r)
    G0 = gm_grade(A, r0)
    B = gm_grade(S.algebra, S.super_braiding)
    for x in A.gens():
        for y in A.gens():
            lhs = bracket(to_graded(x, G0), to_graded(y, G0))
            xs, ys = S.to_super(x), S.to_super(y)
            sign = S.super_braiding(ys.degree(), xs.degree())
            rhs = xs * ys - (ys * xs).scale(sign)
            assert to_graded(S.to_super(lhs_gm(A, lhs)), B) == to_graded(rhs, B)


def lhs_gm(A, g):
    return A.from_vector(g.to_vector())


# -- superization and the classical subalgebras -------------------------------

@pytest.mark.parametrize("make", [gl11, gl_z4])
def test_superized_subalgebras_agree(make):
    A, r = make()
    reports = verify_thm26(block_trace(A, r), ordinary_transpose(A), A.identity())
    assert len(reports) == 2 and all(reports)


def test_superized_sl_on_gl21():
    A, r = gl21()
    assert verify_super_sl(block_trace(A, r))


def test_super_gl_instances():
    for make in (gl11, gl21, gl_z4):
        A, r = make()
        assert all(verify_super_gl(A, r))


def test_osp_superization_needs_r_to_agree_with_r0():
    """Documented limitation: for skew r that differs from r_0 on the degrees
    present, the osp system changes under superization and part (ii) fails.
    Part (i) is unaffected because the trace only sees r(g, g)."""
    A, r = gl_z3z3()
    tr = block_trace(A, r)
    assert verify_super_sl(tr)
    rep = verify_super_osp(ordinary_transpose(A), A.identity(), r)
    assert not rep
    assert rep.detail == "dims 0 vs 3"


def test_superized_comparison_detects_mismatch():
    from braided_mlie.classical import _compare

    A, r = gl11()
    S = superize(A, r)
    lhs = compute_sl(block_trace(A, r))
    rhs = Subalgebra.span(gm_grade(S.algebra, S.super_braiding), [S.vector_to_super(lhs.vectors[0])])
    rep = _compare("probe", S, lhs, rhs)
    assert not rep and rep.witness
