"""Graded algebras by structure constants, the braided bracket and the
structural decision procedures (antisymmetry, Jacobi, strictness).

Everything is decided on basis elements and extended by multilinearity.
Witnesses are the first failing tuple in lexicographic basis order.
"""

from __future__ import annotations

from itertools import product as _cartesian
from typing import Iterable, Mapping

from .field import FieldElement, FieldSpec
from .grading import Bicharacter, GroupElement, GroupSpec
from .report import CheckReport


class GradedAlgebra:
    """A finite-dimensional G-graded algebra given by structure constants.

    ``products`` maps ``(i, j)`` to ``{k: c}`` meaning b_i b_j = sum c b_k, or
    is an iterable of ``(i, j, k, c)`` with indices or basis names.  Missing
    pairs multiply to zero.  Grading compatibility and associativity are not
    enforced here; use :func:`check_graded` and :func:`check_associative`.
    """

    def __init__(
        self,
        braiding: Bicharacter,
        basis: Iterable[str],
        degrees: Iterable[GroupElement],
        products=(),
        unit: int | str | None = None,
    ):
        self.braiding = braiding
        self.field: FieldSpec = braiding.field
        self.group: GroupSpec = braiding.group
        self.basis: tuple[str, ...] = tuple(basis)
        self.degrees: tuple[GroupElement, ...] = tuple(degrees)
        if len(self.basis) != len(self.degrees):
            raise ValueError("basis and degree lists differ in length")
        if len(set(self.basis)) != len(self.basis):
            raise ValueError("basis names must be distinct")
        for name, d in zip(self.basis, self.degrees):
            if d.group != self.group:
                raise ValueError(f"degree of {name} is not in {self.group}")
        self._index = {name: i for i, name in enumerate(self.basis)}
        self.table: dict[tuple[int, int], dict[int, FieldElement]] = {}
        entries = products.items() if isinstance(products, Mapping) else products
        for entry in entries:
            if isinstance(products, Mapping):
                (i, j), targets = entry
                for k, c in targets.items():
                    self._add_constant(i, j, k, c)
            else:
                self._add_constant(*entry)
        self.unit = None if unit is None else self.index(unit)
        self._bracket_cache: dict[tuple[int, int], dict[int, FieldElement]] = {}

    def _add_constant(self, i, j, k, c):
        i, j, k = self.index(i), self.index(j), self.index(k)
        c = self.field.coerce(c)
        row = self.table.setdefault((i, j), {})
        v = row.get(k, self.field.zero()) + c
        if v.is_zero():
            row.pop(k, None)
            if not row:
                del self.table[(i, j)]
        else:
            row[k] = v

    # -- basics ---------------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.basis)

    def index(self, key: int | str) -> int:
        if isinstance(key, str):
            try:
                return self._index[key]
            except KeyError:
                raise KeyError(f"unknown basis element {key!r}") from None
        if not 0 <= key < self.dim:
            raise IndexError(f"basis index {key} out of range")
        return key

    def degree(self, key: int | str) -> GroupElement:
        return self.degrees[self.index(key)]

    def zero(self) -> GradedElement:
        return GradedElement(self, {})

    def __getitem__(self, key: int | str) -> GradedElement:
        return GradedElement(self, {self.index(key): self.field.one()})

    def element(self, coeffs: Mapping) -> GradedElement:
        return GradedElement(self, {self.index(k): self.field.coerce(c) for k, c in coeffs.items()})

    def gens(self) -> list[GradedElement]:
        return [self[i] for i in range(self.dim)]

    def product_basis(self, i: int, j: int) -> dict[int, FieldElement]:
        return self.table.get((i, j), {})

    def bracket_basis(self, i: int, j: int) -> dict[int, FieldElement]:
        """[b_i, b_j] = b_i b_j - r(|b_j|, |b_i|) b_j b_i as a coefficient map."""
        key = (i, j)
        cached = self._bracket_cache.get(key)
        if cached is not None:
            return cached
        out = dict(self.product_basis(i, j))
        r = self.braiding(self.degrees[j], self.degrees[i])
        for k, c in self.product_basis(j, i).items():
            v = out.get(k, self.field.zero()) - r * c
            if v.is_zero():
                out.pop(k, None)
            else:
                out[k] = v
        self._bracket_cache[key] = out
        return out

    def with_braiding(self, braiding: Bicharacter) -> GradedAlgebra:
        if braiding.group != self.group:
            raise ValueError("new braiding lives on a different group")
        return GradedAlgebra(braiding, self.basis, self.degrees, self.table, self.unit)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedAlgebra):
            return NotImplemented
        return (
            self.braiding == other.braiding
            and self.basis == other.basis
            and self.degrees == other.degrees
            and self.table == other.table
            and self.unit == other.unit
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"GradedAlgebra(dim={self.dim}, group={self.group}, field={self.field})"


class GradedElement:
    """Sparse linear combination of basis elements; zero coefficients are never stored."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: GradedAlgebra, coeffs: Mapping[int, FieldElement]):
        self.algebra = algebra
        self.coeffs: dict[int, FieldElement] = {k: c for k, c in coeffs.items() if not c.is_zero()}

    def _check(self, other: GradedElement):
        if not isinstance(other, GradedElement) or other.algebra is not self.algebra:
            raise ValueError("elements belong to different algebras")

    def __add__(self, other: GradedElement) -> GradedElement:
        self._check(other)
        out = dict(self.coeffs)
        zero = self.algebra.field.zero()
        for k, c in other.coeffs.items():
            out[k] = out.get(k, zero) + c
        return GradedElement(self.algebra, out)

    def __neg__(self) -> GradedElement:
        return GradedElement(self.algebra, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other: GradedElement) -> GradedElement:
        return self + (-other)

    def scale(self, c) -> GradedElement:
        c = self.algebra.field.coerce(c)
        return GradedElement(self.algebra, {k: c * v for k, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, GradedElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedElement):
            return NotImplemented
        return self.algebra is other.algebra and self.coeffs == other.coeffs

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def support_degrees(self) -> set[GroupElement]:
        return {self.algebra.degrees[k] for k in self.coeffs}

    def degree(self) -> GroupElement | None:
        """The degree of a nonzero homogeneous element, else None."""
        degs = self.support_degrees()
        return next(iter(degs)) if len(degs) == 1 else None

    def is_homogeneous(self) -> bool:
        return len(self.support_degrees()) <= 1

    def components(self) -> dict[GroupElement, GradedElement]:
        out: dict[GroupElement, dict] = {}
        for k, c in self.coeffs.items():
            out.setdefault(self.algebra.degrees[k], {})[k] = c
        return {d: GradedElement(self.algebra, cs) for d, cs in out.items()}

    def to_vector(self) -> list[FieldElement]:
        zero = self.algebra.field.zero()
        return [self.coeffs.get(i, zero) for i in range(self.algebra.dim)]

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs):
            c = self.coeffs[k]
            name = self.algebra.basis[k]
            if c.is_one():
                parts.append(name)
            elif c == -1:
                parts.append(f"-{name}")
            else:
                parts.append(f"({c})*{name}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"GradedElement({self})"


def _combine(algebra: GradedAlgebra, pieces) -> GradedElement:
    zero = algebra.field.zero()
    out: dict[int, FieldElement] = {}
    for scale, coeffs in pieces:
        for k, c in coeffs.items():
            out[k] = out.get(k, zero) + scale * c
    return GradedElement(algebra, out)


def multiply(a: GradedElement, b: GradedElement) -> GradedElement:
    a._check(b)
    A = a.algebra
    return _combine(
        A,
        ((ca * cb, A.product_basis(i, j)) for i, ca in a.coeffs.items() for j, cb in b.coeffs.items()),
    )


def bracket(a: GradedElement, b: GradedElement) -> GradedElement:
    """[a, b] = ab - r(|b|,|a|) ba, extended bilinearly over homogeneous parts."""
    a._check(b)
    A = a.algebra
    return _combine(
        A,
        ((ca * cb, A.bracket_basis(i, j)) for i, ca in a.coeffs.items() for j, cb in b.coeffs.items()),
    )


def jacobiator(a: GradedElement, b: GradedElement, c: GradedElement) -> GradedElement:
    """r(|c|,|a|)[a,[b,c]] + r(|b|,|a|)[b,[c,a]] + r(|c|,|b|)[c,[a,b]] for homogeneous a, b, c."""
    for x in (a, b, c):
        if not x.is_homogeneous():
            raise ValueError(f"jacobiator needs homogeneous arguments, got {x}")
    if a.is_zero() or b.is_zero() or c.is_zero():
        return a.algebra.zero()
    r = a.algebra.braiding
    da, db, dc = a.degree(), b.degree(), c.degree()
    return (
        bracket(a, bracket(b, c)).scale(r(dc, da))
        + bracket(b, bracket(c, a)).scale(r(db, da))
        + bracket(c, bracket(a, b)).scale(r(dc, db))
    )


# ---------------------------------------------------------------------------
# decision procedures
# ---------------------------------------------------------------------------

def check_graded(A: GradedAlgebra) -> CheckReport:
    for (i, j) in sorted(A.table):
        target = A.degrees[i] + A.degrees[j]
        for k in sorted(A.table[(i, j)]):
            if A.degrees[k] != target:
                return CheckReport.fail(
                    "graded", (i, j, k), A[k].scale(A.table[(i, j)][k]),
                    f"deg {A.basis[k]} = {A.degrees[k]} but deg {A.basis[i]} + deg {A.basis[j]} = {target}",
                )
    return CheckReport.ok("graded")


def check_associative(A: GradedAlgebra) -> CheckReport:
    gens = A.gens()
    left_products = {}
    for i, j in _cartesian(range(A.dim), repeat=2):
        left_products[(i, j)] = gens[i] * gens[j]
    for i, j, k in _cartesian(range(A.dim), repeat=3):
        defect = left_products[(i, j)] * gens[k] - gens[i] * left_products[(j, k)]
        if defect:
            return CheckReport.fail("assoc", (i, j, k), defect)
    return CheckReport.ok("assoc")


def check_bas(A: GradedAlgebra) -> CheckReport:
    """[b_i, b_j] = -r(|b_j|,|b_i|) [b_j, b_i] on all basis pairs."""
    r = A.braiding
    gens = A.gens()
    for i, j in _cartesian(range(A.dim), repeat=2):
        a, b = gens[i], gens[j]
        defect = bracket(a, b) + bracket(b, a).scale(r(A.degrees[j], A.degrees[i]))
        if defect:
            return CheckReport.fail("bas", (i, j), defect)
    return CheckReport.ok("bas")


def check_bji(A: GradedAlgebra) -> CheckReport:
    gens = A.gens()
    for i, j, k in _cartesian(range(A.dim), repeat=3):
        defect = jacobiator(gens[i], gens[j], gens[k])
        if defect:
            return CheckReport.fail("bji", (i, j, k), defect)
    return CheckReport.ok("bji")


def _twist_defect(A: GradedAlgebra, i: int, j: int) -> FieldElement:
    r = A.braiding
    return r(A.degrees[i], A.degrees[j]) * r(A.degrees[j], A.degrees[i]) - 1


def check_strict(A: GradedAlgebra) -> CheckReport:
    """[ ]C = [ ]C^{-1}: (r(|a|,|b|) r(|b|,|a|) - 1) [b, a] = 0 on basis pairs (a, b)."""
    gens = A.gens()
    for i, j in _cartesian(range(A.dim), repeat=2):
        s = _twist_defect(A, i, j)
        if s.is_zero():
            continue
        defect = bracket(gens[j], gens[i]).scale(s)
        if defect:
            return CheckReport.fail("strict", (i, j), defect)
    return CheckReport.ok("strict")


def check_mC_equals_mCinv(A: GradedAlgebra) -> CheckReport:
    """mC = mC^{-1}: (r(|a|,|b|) r(|b|,|a|) - 1) b a = 0 on basis pairs (a, b)."""
    gens = A.gens()
    for i, j in _cartesian(range(A.dim), repeat=2):
        s = _twist_defect(A, i, j)
        if s.is_zero():
            continue
        defect = (gens[j] * gens[i]).scale(s)
        if defect:
            return CheckReport.fail("mC=mC^-1", (i, j), defect)
    return CheckReport.ok("mC=mC^-1")


CHECKS = {
    "graded": check_graded,
    "assoc": check_associative,
    "bas": check_bas,
    "bji": check_bji,
    "strict": check_strict,
    "mc": check_mC_equals_mCinv,
}


# ---------------------------------------------------------------------------
# standard constructions
# ---------------------------------------------------------------------------

def truncated_polynomial(n: int, braiding: Bicharacter, var: str = "x") -> GradedAlgebra:
    """F{x}/<x^n> with basis 1, x, ..., x^(n-1) and |x^k| = k times the first generator."""
    if braiding.group.rank < 1:
        raise ValueError("the grading group needs a generator for |x|")
    g = braiding.group.generator(0)
    names = ["1"] + [var if k == 1 else f"{var}^{k}" for k in range(1, n)]
    degrees = [k * g for k in range(n)]
    products = [(a, b, a + b, 1) for a in range(n) for b in range(n) if a + b < n]
    return GradedAlgebra(braiding, names, degrees, products, unit=0)


def matrix_units(degrees: list[GroupElement], braiding: Bicharacter, names=None) -> GradedAlgebra:
    """End(M) for a graded space M with the given basis degrees: E_ab has degree |a| - |b|."""
    n = len(degrees)
    basis = [f"E{a + 1}{b + 1}" if n < 10 else f"E{a + 1}_{b + 1}" for a in range(n) for b in range(n)]
    if names is not None:
        basis = [f"E[{names[a]},{names[b]}]" for a in range(n) for b in range(n)]
    degs = [degrees[a] - degrees[b] for a in range(n) for b in range(n)]
    products = [
        (a * n + b, b * n + d, a * n + d, 1) for a in range(n) for b in range(n) for d in range(n)
    ]
    return GradedAlgebra(braiding, basis, degs, products)
