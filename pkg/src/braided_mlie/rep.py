"""Representations and modules of braided m-Lie algebras for group-graded braidings.

A "Lie source" is anything with ``basis``, ``dim``, ``degrees``, ``braiding``
and ``bracket_basis(i, j)``: a :class:`GradedAlgebra` (bracket from its
product), a :class:`~braided_mlie.classical.Subalgebra`, or a
:class:`BracketTable` given by its own constants.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as _cartesian
from typing import Mapping, Sequence

from .algebra import GradedAlgebra, matrix_units
from .classical import Subalgebra
from .field import FieldElement, FieldSpec
from .grading import Bicharacter, GroupElement
from .linalg import matmul, rank
from .report import CheckReport

Matrix = list  # list[list[FieldElement]], column j is the image of carrier basis vector j


class BracketTable:
    """A bracket given directly by structure constants [e_i, e_j] = sum c e_k."""

    def __init__(self, braiding: Bicharacter, basis, degrees, brackets: Mapping[tuple[int, int], Mapping[int, object]]):
        self.braiding = braiding
        self.field = braiding.field
        self.basis = tuple(basis)
        self.degrees = list(degrees)
        self._table = {
            key: {k: self.field.coerce(c) for k, c in row.items() if not self.field.coerce(c).is_zero()}
            for key, row in brackets.items()
        }

    @property
    def dim(self) -> int:
        return len(self.basis)

    def bracket_basis(self, i: int, j: int) -> dict[int, FieldElement]:
        return self._table.get((i, j), {})


def _zeros(F: FieldSpec, n: int, m: int | None = None) -> Matrix:
    return [[F.zero()] * (n if m is None else m) for _ in range(n)]


def _lin(F: FieldSpec, terms, n: int) -> Matrix:
    out = _zeros(F, n)
    for c, mat in terms:
        if c.is_zero():
            continue
        for a in range(n):
            for b in range(n):
                if not mat[a][b].is_zero():
                    out[a][b] = out[a][b] + c * mat[a][b]
    return out


def _is_zero(mat: Matrix) -> bool:
    return all(x.is_zero() for row in mat for x in row)


class Representation:
    """psi: L -> End(M) on a graded carrier M, one exact matrix per basis element of L.

    Matrices must shift degrees by the degree of the acting element.
    """

    def __init__(self, source, carrier_basis: Sequence[str], carrier_degrees: Sequence[GroupElement], action: Sequence[Matrix]):
        self.source = source
        self.field: FieldSpec = source.braiding.field
        self.carrier_basis = tuple(carrier_basis)
        self.carrier_degrees = tuple(carrier_degrees)
        n = len(self.carrier_basis)
        if len(self.carrier_degrees) != n:
            raise ValueError("carrier basis and degree lists differ in length")
        if len(action) != source.dim:
            raise ValueError(f"need one matrix per basis element of L ({source.dim}), got {len(action)}")
        F = self.field
        self.action: list[Matrix] = []
        for idx, mat in enumerate(action):
            mat = [[F.coerce(x) for x in row] for row in mat]
            if len(mat) != n or any(len(row) != n for row in mat):
                raise ValueError(f"action matrix of {source.basis[idx]} is not {n}x{n}")
            shift = source.degrees[idx]
            for a, b in _cartesian(range(n), repeat=2):
                if not mat[a][b].is_zero() and self.carrier_degrees[a] != self.carrier_degrees[b] + shift:
                    raise ValueError(
                        f"action of {source.basis[idx]} sends {self.carrier_basis[b]} to "
                        f"{self.carrier_basis[a]}, which breaks the grading shift"
                    )
            self.action.append(mat)
        # sparse columns: for each basis element, column b -> [(row, value)]
        self._columns = [
            [[(a, mat[a][b]) for a in range(n) if not mat[a][b].is_zero()] for b in range(n)] for mat in self.action
        ]

    @property
    def dim(self) -> int:
        return len(self.carrier_basis)

    def matrix_of(self, coeffs: Mapping[int, FieldElement]) -> Matrix:
        return _lin(self.field, ((c, self.action[k]) for k, c in coeffs.items()), self.dim)

    def act(self, i: int, vec: Sequence[FieldElement]) -> list[FieldElement]:
        """alpha(e_i, v)."""
        out = self._act_sparse(i, {b: c for b, c in enumerate(vec) if not c.is_zero()})
        zero = self.field.zero()
        return [out.get(a, zero) for a in range(self.dim)]

    def _act_sparse(self, i: int, vec: Mapping[int, FieldElement]) -> dict[int, FieldElement]:
        out: dict[int, FieldElement] = {}
        cols = self._columns[i]
        for b, c in vec.items():
            for a, v in cols[b]:
                out[a] = out[a] + v * c if a in out else v * c
        return {a: c for a, c in out.items() if not c.is_zero()}

    def is_faithful(self) -> bool:
        flat = [[x for row in mat for x in row] for mat in self.action]
        return rank(flat, self.dim * self.dim) == self.source.dim

    def __eq__(self, other) -> bool:
        if not isinstance(other, Representation):
            return NotImplemented
        return (
            self.source is other.source
            and self.carrier_basis == other.carrier_basis
            and self.carrier_degrees == other.carrier_degrees
            and self.action == other.action
        )

    __hash__ = None


def check_rep(rho: Representation) -> CheckReport:
    """psi([a,b]) = psi(a) psi(b) - r(|b|,|a|) psi(b) psi(a) on basis pairs."""
    L, F, n = rho.source, rho.field, rho.dim
    r = L.braiding
    for i, j in _cartesian(range(L.dim), repeat=2):
        lhs = rho.matrix_of(L.bracket_basis(i, j))
        ab = matmul(rho.action[i], rho.action[j], F)
        ba = matmul(rho.action[j], rho.action[i], F)
        defect = _lin(F, [(F.one(), lhs), (-F.one(), ab), (r(L.degrees[j], L.degrees[i]), ba)], n)
        if not _is_zero(defect):
            return CheckReport.fail("rep", (i, j), defect)
    return CheckReport.ok("rep")


def check_module(rho: Representation) -> CheckReport:
    """alpha([a,b], x) = alpha(a, alpha(b, x)) - r(|b|,|a|) alpha(b, alpha(a, x)) on basis triples."""
    L, F, n = rho.source, rho.field, rho.dim
    r = L.braiding
    one = F.one()
    for i, j, x in _cartesian(range(L.dim), range(L.dim), range(n)):
        e = {x: one}
        defect: dict[int, FieldElement] = {}
        terms = [(c, rho._act_sparse(k, e)) for k, c in L.bracket_basis(i, j).items()]
        terms.append((-one, rho._act_sparse(i, rho._act_sparse(j, e))))
        terms.append((r(L.degrees[j], L.degrees[i]), rho._act_sparse(j, rho._act_sparse(i, e))))
        for c, vec in terms:
            for a, v in vec.items():
                defect[a] = defect[a] + c * v if a in defect else c * v
        if any(not d.is_zero() for d in defect.values()):
            return CheckReport.fail("module", (i, j, x), [defect.get(a, F.zero()) for a in range(n)])
    return CheckReport.ok("module")


def check_algebra_rep(rho: Representation) -> CheckReport:
    """psi(ab) = psi(a) psi(b): a representation of the associative algebra itself."""
    A, F = rho.source, rho.field
    for i, j in _cartesian(range(A.dim), repeat=2):
        lhs = rho.matrix_of(A.product_basis(i, j))
        rhs = matmul(rho.action[i], rho.action[j], F)
        defect = _lin(F, [(F.one(), lhs), (-F.one(), rhs)], rho.dim)
        if not _is_zero(defect):
            return CheckReport.fail("algebra-rep", (i, j), defect)
    return CheckReport.ok("algebra-rep")


def left_regular(A: GradedAlgebra) -> Representation:
    """psi(a) = (x -> ax) on A itself."""
    F, n = A.field, A.dim
    action = []
    for i in range(n):
        mat = _zeros(F, n)
        for j in range(n):
            for k, c in A.product_basis(i, j).items():
                mat[k][j] = c
        action.append(mat)
    return Representation(A, A.basis, A.degrees, action)


@dataclass
class Embedding:
    """A degree-preserving injective linear map phi: L -> A, given by image vectors."""

    domain: object
    target: GradedAlgebra
    images: list  # one coordinate vector over target's basis per basis element of domain

    def __post_init__(self):
        if len(self.images) != self.domain.dim:
            raise ValueError("need one image per basis element of L")
        for idx, v in enumerate(self.images):
            for k, c in enumerate(v):
                if not c.is_zero() and self.target.degrees[k] != self.domain.degrees[idx]:
                    raise ValueError(f"phi({self.domain.basis[idx]}) is not homogeneous of the right degree")
        if self.images and rank([list(v) for v in self.images], self.target.dim) != self.domain.dim:
            raise ValueError("phi is not injective")

    @classmethod
    def identity(cls, A: GradedAlgebra) -> Embedding:
        F = A.field
        return cls(A, A, [[F.one() if k == i else F.zero() for k in range(A.dim)] for i in range(A.dim)])

    @classmethod
    def of_subalgebra(cls, S: Subalgebra) -> Embedding:
        return cls(S, S.parent, S.vectors)


def restrict_rep(rho: Representation, phi) -> Representation:
    """(M, psi phi): a representation of A pulled back along phi: L -> A."""
    if isinstance(phi, Subalgebra):
        phi = Embedding.of_subalgebra(phi)
    if phi.target != rho.source:
        raise ValueError("phi must land in the algebra that rho represents")
    action = [rho.matrix_of(dict(enumerate(v))) for v in phi.images]
    return Representation(phi.domain, rho.carrier_basis, rho.carrier_degrees, action)


def endomorphism_algebra(rho: Representation) -> GradedAlgebra:
    """End(M) of the carrier, with matrix unit E[a,b] at flat position a*n + b."""
    return matrix_units(list(rho.carrier_degrees), rho.source.braiding, names=rho.carrier_basis)


def identity_rep(E: GradedAlgebra, carrier_basis, carrier_degrees) -> Representation:
    """End(M) acting on M by matrix multiplication."""
    n = len(carrier_basis)
    F = E.field
    action = []
    for a, b in _cartesian(range(n), repeat=2):
        mat = _zeros(F, n)
        mat[a][b] = F.one()
        action.append(mat)
    return Representation(E, carrier_basis, carrier_degrees, action)


def compose_faithful(rho: Representation, sigma: Representation) -> Representation:
    """(N, sigma psi) for a faithful psi: L -> End(M) and an algebra representation sigma of End(M)."""
    if not rho.is_faithful():
        raise ValueError("rho is not faithful")
    E = sigma.source
    n = rho.dim
    if not isinstance(E, GradedAlgebra) or E.dim != n * n:
        raise ValueError("sigma must represent the full operator algebra End(M)")
    report = check_algebra_rep(sigma)
    if not report:
        raise ValueError(f"sigma is not an algebra representation of End(M): {report}")
    action = []
    for mat in rho.action:
        coeffs = {a * n + b: mat[a][b] for a, b in _cartesian(range(n), repeat=2) if not mat[a][b].is_zero()}
        action.append(sigma.matrix_of(coeffs))
    return Representation(rho.source, sigma.carrier_basis, sigma.carrier_degrees, action)


def induced_mlie(rho: Representation) -> CheckReport:
    """Consequence of a faithful psi satisfying the representation identity.

    L is then the braided m-Lie algebra induced by End(M) through psi: the
    image of psi is closed under the braided commutator, psi transports the
    given bracket to it, and the bracket constants respect the grading.
    """
    if not rho.is_faithful():
        return CheckReport.fail("induced-mlie", ("psi",), None, "psi is not injective")
    rep = check_rep(rho)
    if not rep:
        return CheckReport.fail("induced-mlie", rep.witness, rep.defect, "representation identity fails")
    L = rho.source
    for i, j in _cartesian(range(L.dim), repeat=2):
        target = L.degrees[i] + L.degrees[j]
        for k in L.bracket_basis(i, j):
            if L.degrees[k] != target:
                return CheckReport.fail("induced-mlie", (i, j, k), None, "bracket breaks the grading")
    E = endomorphism_algebra(rho)
    image = Subalgebra.span(E, ([x for row in mat for x in row] for mat in rho.action))
    closed = image.closed_under_bracket()
    if not closed:
        return CheckReport.fail("induced-mlie", closed.witness, closed.defect, "image not closed")
    if image.dim != L.dim:
        return CheckReport.fail("induced-mlie", ("dim",), image.dim)
    return CheckReport.ok("induced-mlie")
