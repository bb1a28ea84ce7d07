"""Dense exact Gaussian elimination over a :class:`FieldSpec`.

Matrices are lists of rows of FieldElements.  Sizes here are desk-scale
(a few dozen columns), so no sparsity tricks.
"""

from __future__ import annotations

from .field import FieldElement, FieldSpec


def rref(rows: list[list[FieldElement]], ncols: int) -> tuple[list[list[FieldElement]], list[int]]:
    """Reduced row echelon form with zero rows dropped; returns (rows, pivot columns)."""
    m = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if not m[i][c].is_zero()), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: list[list[FieldElement]], ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows: list[list[FieldElement]], ncols: int, spec: FieldSpec) -> list[list[FieldElement]]:
    """Basis of {x : A x = 0}, one vector per free column, in RREF-dual normal form."""
    red, pivots = rref(rows, ncols)
    zero, one = spec.zero(), spec.one()
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def reduce_vector(red: list[list[FieldElement]], pivots: list[int], v: list[FieldElement]) -> list[FieldElement]:
    """Residual of v after eliminating against an RREF basis; zero iff v is in the span."""
    out = list(v)
    for row, p in zip(red, pivots):
        c = out[p]
        if not c.is_zero():
            out = [x - c * y for x, y in zip(out, row)]
    return out


def in_span(red, pivots, v) -> bool:
    return all(x.is_zero() for x in reduce_vector(red, pivots, v))


def span_coordinates(basis: list[list[FieldElement]], v: list[FieldElement], spec: FieldSpec):
    """Coefficients c with sum c_i basis_i = v, or None if v is outside the span.

    ``basis`` must be linearly independent.
    """
    k = len(basis)
    n = len(v)
    # augmented system: columns are basis vectors, last column is v
    rows = [[basis[i][j] for i in range(k)] + [v[j]] for j in range(n)]
    red, pivots = rref(rows, k + 1)
    if k in pivots:
        return None
    if len(pivots) < k:
        raise ValueError("basis vectors are linearly dependent")
    coeffs = [spec.zero()] * k
    for row, p in zip(red, pivots):
        coeffs[p] = row[k]
    return coeffs


def matmul(a: list[list[FieldElement]], b: list[list[FieldElement]], spec: FieldSpec) -> list[list[FieldElement]]:
    zero = spec.zero()
    n, m = len(a), len(b[0]) if b else 0
    out = [[zero] * m for _ in range(n)]
    for i in range(n):
        for k, aik in enumerate(a[i]):
            if aik.is_zero():
                continue
            row = b[k]
            for j in range(m):
                if not row[j].is_zero():
                    out[i][j] = out[i][j] + aik * row[j]
    return out
