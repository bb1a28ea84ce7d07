"""Generalized matrix algebras sum{A_ij} indexed by elements of an abelian group.

The block A_ij sits in degree i - j of the gm gradation (from i = j + g).
"""

from __future__ import annotations

from itertools import product as _cartesian
from typing import Iterable, Mapping

from .algebra import GradedAlgebra
from .field import FieldElement, FieldSpec
from .grading import Bicharacter, GroupElement, GroupSpec
from .report import CheckReport


class GmAlgebra:
    """Blocks A_ij (lists of basis names) with composition constants A_ij x A_jl -> A_il.

    ``products`` is an iterable of ``(x, y, z, c)`` (names or flat indices)
    meaning x y contains c z, or a mapping ``(x, y) -> {z: c}``.
    """

    def __init__(
        self,
        field: FieldSpec,
        group: GroupSpec,
        index_set: Iterable[GroupElement],
        blocks: Mapping[tuple[GroupElement, GroupElement], Iterable[str]],
        products=(),
    ):
        self.field = field
        self.group = group
        self.index_set: tuple[GroupElement, ...] = tuple(index_set)
        if len(set(self.index_set)) != len(self.index_set):
            raise ValueError("repeated index label")
        for g in self.index_set:
            if not isinstance(g, GroupElement) or g.group != group:
                raise ValueError(f"index label {g!r} is not an element of {group}")
        index = set(self.index_set)
        self.basis: list[str] = []
        self.block_of: list[tuple[GroupElement, GroupElement]] = []
        self.blocks: dict[tuple[GroupElement, GroupElement], tuple[int, ...]] = {}
        for (i, j), names in blocks.items():
            if i not in index or j not in index:
                raise ValueError(f"block ({i},{j}) is outside the index set")
            start = len(self.basis)
            for name in names:
                self.basis.append(name)
                self.block_of.append((i, j))
            if len(self.basis) > start:
                self.blocks[(i, j)] = tuple(range(start, len(self.basis)))
        self.basis = tuple(self.basis)
        self.block_of = tuple(self.block_of)
        if len(set(self.basis)) != len(self.basis):
            raise ValueError("basis names must be distinct")
        self._index = {n: k for k, n in enumerate(self.basis)}
        self.table: dict[tuple[int, int], dict[int, FieldElement]] = {}
        if isinstance(products, Mapping):
            products = [(x, y, z, c) for (x, y), row in products.items() for z, c in row.items()]
        for x, y, z, c in products:
            self._add_constant(x, y, z, c)

    def _add_constant(self, x, y, z, c):
        x, y, z = self.index(x), self.index(y), self.index(z)
        (i, j), (j2, l), (i3, l3) = self.block_of[x], self.block_of[y], self.block_of[z]
        if j != j2:
            raise ValueError(
                f"composition {self.basis[x]}*{self.basis[y]}: inner indices {j} and {j2} differ"
            )
        if (i3, l3) != (i, l):
            raise ValueError(
                f"composition {self.basis[x]}*{self.basis[y]} lands in A_({i},{l}), "
                f"not A_({i3},{l3}) where {self.basis[z]} lives"
            )
        c = self.field.coerce(c)
        row = self.table.setdefault((x, y), {})
        v = row.get(z, self.field.zero()) + c
        if v.is_zero():
            row.pop(z, None)
            if not row:
                del self.table[(x, y)]
        else:
            row[z] = v

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

    def block_dim(self, i: GroupElement, j: GroupElement) -> int:
        return len(self.blocks.get((i, j), ()))

    def degree(self, key) -> GroupElement:
        i, j = self.block_of[self.index(key)]
        return i - j

    def zero(self) -> GmElement:
        return GmElement(self, {})

    def __getitem__(self, key) -> GmElement:
        return GmElement(self, {self.index(key): self.field.one()})

    def element(self, coeffs: Mapping) -> GmElement:
        return GmElement(self, {self.index(k): self.field.coerce(c) for k, c in coeffs.items()})

    def from_vector(self, vec) -> GmElement:
        return GmElement(self, {k: c for k, c in enumerate(vec)})

    def gens(self) -> list[GmElement]:
        return [self[k] for k in range(self.dim)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, GmAlgebra):
            return NotImplemented
        return (
            self.field == other.field
            and self.group == other.group
            and self.index_set == other.index_set
            and self.basis == other.basis
            and self.block_of == other.block_of
            and self.table == other.table
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"GmAlgebra(dim={self.dim}, index={[str(g) for g in self.index_set]})"


class GmElement:
    """A generalized matrix {a_ij}, stored as sparse coefficients over the flat basis."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: GmAlgebra, coeffs: Mapping[int, FieldElement]):
        self.algebra = algebra
        self.coeffs = {k: c for k, c in coeffs.items() if not c.is_zero()}

    def _check(self, other):
        if not isinstance(other, GmElement) or other.algebra is not self.algebra:
            raise ValueError("elements belong to different gm algebras")

    def __add__(self, other: GmElement) -> GmElement:
        self._check(other)
        out = dict(self.coeffs)
        zero = self.algebra.field.zero()
        for k, c in other.coeffs.items():
            out[k] = out.get(k, zero) + c
        return GmElement(self.algebra, out)

    def __neg__(self) -> GmElement:
        return GmElement(self.algebra, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other: GmElement) -> GmElement:
        return self + (-other)

    def scale(self, c) -> GmElement:
        c = self.algebra.field.coerce(c)
        return GmElement(self.algebra, {k: c * v for k, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, GmElement):
            return gm_multiply(self, other)
        return self.scale(other)

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GmElement):
            return NotImplemented
        return self.algebra is other.algebra and self.coeffs == other.coeffs

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def block(self, i: GroupElement, j: GroupElement) -> GmElement:
        return gm_block(self, i, j)

    def by_block(self) -> dict[tuple[GroupElement, GroupElement], GmElement]:
        out: dict = {}
        for k, c in self.coeffs.items():
            out.setdefault(self.algebra.block_of[k], {})[k] = c
        return {b: GmElement(self.algebra, cs) for b, cs in out.items()}

    def degree(self) -> GroupElement | None:
        degs = {i - j for (i, j) in self.by_block()}
        return next(iter(degs)) if len(degs) == 1 else None

    def is_homogeneous(self) -> bool:
        return len({i - j for (i, j) in self.by_block()}) <= 1

    def to_vector(self) -> list[FieldElement]:
        zero = self.algebra.field.zero()
        return [self.coeffs.get(k, zero) for k in range(self.algebra.dim)]

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs):
            c, name = self.coeffs[k], self.algebra.basis[k]
            parts.append(name if c.is_one() else f"-{name}" if c == -1 else f"({c})*{name}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"GmElement({self})"


def gm_multiply(x: GmElement, y: GmElement) -> GmElement:
    """xy = { sum_k x_ik y_kj }, computed block by block."""
    x._check(y)
    A = x.algebra
    zero = A.field.zero()
    out: dict[int, FieldElement] = {}
    yblocks = y.by_block()
    for (i, k), xb in x.by_block().items():
        for (k2, j), yb in yblocks.items():
            if k2 != k:
                continue
            for p, cp in xb.coeffs.items():
                for s, cs in yb.coeffs.items():
                    for z, c in A.table.get((p, s), {}).items():
                        out[z] = out.get(z, zero) + cp * cs * c
    return GmElement(A, out)


def gm_block(a: GmElement, i: GroupElement, j: GroupElement) -> GmElement:
    A = a.algebra
    if i not in A.index_set or j not in A.index_set:
        raise ValueError(f"({i},{j}) is outside the index grid")
    keep = set(A.blocks.get((i, j), ()))
    return GmElement(A, {k: c for k, c in a.coeffs.items() if k in keep})


def gm_check_associative(A: GmAlgebra) -> CheckReport:
    """x(yz) = (xy)z on all composable block-basis triples."""
    gens = A.gens()
    for x, y, z in _cartesian(range(A.dim), repeat=3):
        (_, j), (j2, l), (l2, _) = A.block_of[x], A.block_of[y], A.block_of[z]
        if j != j2 or l != l2:
            continue
        defect = (gens[x] * gens[y]) * gens[z] - gens[x] * (gens[y] * gens[z])
        if defect:
            return CheckReport.fail("gm-assoc", (x, y, z), defect)
    return CheckReport.ok("gm-assoc")


def gm_grade(A: GmAlgebra, braiding: Bicharacter | None = None) -> GradedAlgebra:
    """The gm gradation: every basis element of A_ij gets degree i - j."""
    if braiding is None:
        braiding = Bicharacter.trivial(A.group, A.field)
    if braiding.group != A.group or braiding.field != A.field:
        raise ValueError("braiding must live on the gm algebra's group and field")
    degrees = [i - j for (i, j) in A.block_of]
    return GradedAlgebra(braiding, A.basis, degrees, A.table)


def to_graded(a: GmElement, G: GradedAlgebra):
    """Carry a gm element over to the graded algebra produced by gm_grade (same basis order)."""
    from .algebra import GradedElement

    return GradedElement(G, a.coeffs)


class GeneralLinear(GmAlgebra):
    """gl({n_g}, F): A_gh = Hom(V_h, V_g) with matrix-unit bases.

    The underlying space V has basis v_1..v_N listed block by block in the
    order of ``dims``; ``E{a}_{b}`` is the matrix unit sending v_b to v_a.
    """

    def __init__(self, field: FieldSpec, group: GroupSpec, dims: Iterable[tuple[GroupElement, int]]):
        self.dims = tuple((g, int(n)) for g, n in dims)
        self.slots: list[GroupElement] = [g for g, n in self.dims for _ in range(n)]
        N = len(self.slots)
        self.size = N
        blocks: dict = {}
        for g, _ in self.dims:
            for h, _ in self.dims:
                blocks[(g, h)] = []
        for a in range(N):
            for b in range(N):
                blocks[(self.slots[a], self.slots[b])].append(f"E{a + 1}_{b + 1}")
        super().__init__(field, group, [g for g, _ in self.dims], blocks)
        self.unit_index = {}
        for k, name in enumerate(self.basis):
            a, b = name[1:].split("_")
            self.unit_index[(int(a) - 1, int(b) - 1)] = k
        for (a, b), x in self.unit_index.items():
            for d in range(N):
                self._add_constant(x, self.unit_index[(b, d)], self.unit_index[(a, d)], 1)

    def from_matrix(self, rows) -> GmElement:
        return GmElement(
            self,
            {self.unit_index[(a, b)]: self.field.coerce(v) for a, row in enumerate(rows) for b, v in enumerate(row)},
        )

    def to_matrix(self, x: GmElement) -> list[list[FieldElement]]:
        zero = self.field.zero()
        return [[x.coeffs.get(self.unit_index[(a, b)], zero) for b in range(self.size)] for a in range(self.size)]

    def identity(self) -> GmElement:
        return GmElement(self, {self.unit_index[(a, a)]: self.field.one() for a in range(self.size)})
