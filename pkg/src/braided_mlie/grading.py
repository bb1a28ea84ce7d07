"""Finitely generated abelian grading groups and bicharacters on them."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from .field import FieldElement, FieldSpec
from .report import CheckReport


@dataclass(frozen=True)
class GroupSpec:
    """G = Z^a x Z_{n_1} x ... ; an order of 0 is an infinite cyclic factor."""

    orders: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "orders", tuple(int(n) for n in self.orders))
        for n in self.orders:
            if n < 0 or n == 1:
                raise ValueError(f"factor orders must be 0 (infinite) or >= 2, got {n}")

    @classmethod
    def cyclic(cls, n: int) -> GroupSpec:
        return cls((n,))

    @classmethod
    def trivial(cls) -> GroupSpec:
        return cls(())

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def is_finite(self) -> bool:
        return all(n > 0 for n in self.orders)

    def __call__(self, *coords) -> GroupElement:
        return self.element(*coords)

    def element(self, *coords) -> GroupElement:
        if len(coords) == 1 and isinstance(coords[0], (tuple, list)):
            coords = tuple(coords[0])
        if len(coords) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates for {self}, got {coords}")
        return GroupElement(self, tuple(c % n if n else c for c, n in zip(coords, self.orders)))

    def zero(self) -> GroupElement:
        return GroupElement(self, (0,) * self.rank)

    def generator(self, i: int) -> GroupElement:
        return self.element(*[1 if k == i else 0 for k in range(self.rank)])

    def elements(self) -> list[GroupElement]:
        if not self.is_finite:
            raise ValueError(f"{self} is infinite")
        return [GroupElement(self, c) for c in product(*(range(n) for n in self.orders))]

    def __str__(self) -> str:
        if not self.orders:
            return "0"
        return " x ".join("Z" if n == 0 else f"Z_{n}" for n in self.orders)


@dataclass(frozen=True)
class GroupElement:
    group: GroupSpec
    coords: tuple[int, ...]

    def __add__(self, other: GroupElement) -> GroupElement:
        self._same(other)
        return self.group.element(*(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> GroupElement:
        return self.group.element(*(-a for a in self.coords))

    def __sub__(self, other: GroupElement) -> GroupElement:
        return self + (-other)

    def __rmul__(self, k: int) -> GroupElement:
        return self.group.element(*(k * a for a in self.coords))

    def __lt__(self, other: GroupElement) -> bool:
        return self.coords < other.coords

    def _same(self, other):
        if not isinstance(other, GroupElement) or other.group != self.group:
            raise ValueError(f"group mismatch: {self} and {other}")

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __str__(self) -> str:
        if len(self.coords) == 1:
            return str(self.coords[0])
        return "(" + ",".join(map(str, self.coords)) + ")"

    def __repr__(self) -> str:
        return f"GroupElement({self})"


class Bicharacter:
    """A bicharacter r: G x G -> F^x stored by its values on generator pairs.

    ``r(g, h) = prod_{i,j} B[i][j] ** (g_i * h_j)``.  Torsion constraints are
    checked by :meth:`validate`, not at construction, so that invalid data can
    be reported rather than rejected.
    """

    def __init__(self, group: GroupSpec, field: FieldSpec, gen_values: Sequence[Sequence]):
        self.group = group
        self.field = field
        rows = [tuple(field.coerce(v) for v in row) for row in gen_values]
        if len(rows) != group.rank or any(len(row) != group.rank for row in rows):
            raise ValueError(f"bicharacter on {group} needs a {group.rank}x{group.rank} matrix")
        self.gen_values: tuple[tuple[FieldElement, ...], ...] = tuple(rows)
        self._cache: dict = {}

    @classmethod
    def trivial(cls, group: GroupSpec, field: FieldSpec) -> Bicharacter:
        n = group.rank
        return cls(group, field, [[1] * n for _ in range(n)])

    @classmethod
    def power(cls, group: GroupSpec, q: FieldElement) -> Bicharacter:
        """r(k, m) = q^(k.m) with the dot product of coordinate vectors."""
        n = group.rank
        one = q.spec.one()
        return cls(group, q.spec, [[q if i == j else one for j in range(n)] for i in range(n)])

    @classmethod
    def sign(cls, group: GroupSpec, field: FieldSpec) -> Bicharacter:
        """r(g, h) = (-1)^(g.h)."""
        return cls.power(group, field.coerce(-1))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Bicharacter):
            return NotImplemented
        return (self.group, self.field, self.gen_values) == (other.group, other.field, other.gen_values)

    def __hash__(self) -> int:
        return hash((self.group, self.field, self.gen_values))

    def __repr__(self) -> str:
        vals = [[str(v) for v in row] for row in self.gen_values]
        return f"Bicharacter({self.group}, {self.field}, {vals})"

    def __call__(self, g: GroupElement, h: GroupElement) -> FieldElement:
        return bichar_eval(self, g, h)


def bichar_eval(r: Bicharacter, g: GroupElement, h: GroupElement) -> FieldElement:
    if g.group != r.group or h.group != r.group:
        raise ValueError(f"degrees {g}, {h} are not in {r.group}")
    key = (g.coords, h.coords)
    cached = r._cache.get(key)
    if cached is not None:
        return cached
    out = r.field.one()
    for i, gi in enumerate(g.coords):
        if not gi:
            continue
        for j, hj in enumerate(h.coords):
            if hj:
                out = out * r.gen_values[i][j] ** (gi * hj)
    r._cache[key] = out
    return out


def bichar_validate(r: Bicharacter) -> CheckReport:
    """B[i][j] nonzero, and B[i][j]^n_i = B[j][i]^n_i = 1 for every torsion factor i."""
    n = r.group.rank
    for i in range(n):
        for j in range(n):
            if r.gen_values[i][j].is_zero():
                return CheckReport.fail("bicharacter", (i, j), r.gen_values[i][j], "zero value")
    for i, order in enumerate(r.group.orders):
        if not order:
            continue
        for j in range(n):
            for a, b in ((i, j), (j, i)):
                v = r.gen_values[a][b] ** order
                if not v.is_one():
                    return CheckReport.fail(
                        "bicharacter", (a, b), v, f"value^{order} != 1 on a Z_{order} factor"
                    )
    return CheckReport.ok("bicharacter")


def is_skew_symmetric(r: Bicharacter) -> CheckReport:
    """r(g,h) r(h,g) = 1, decided on generator pairs (enough by biadditivity)."""
    n = r.group.rank
    for i in range(n):
        for j in range(i, n):
            v = r.gen_values[i][j] * r.gen_values[j][i]
            if not v.is_one():
                return CheckReport.fail(
                    "skew-symmetric", (r.group.generator(i), r.group.generator(j)), v
                )
    return CheckReport.ok("skew-symmetric")


def parity(r: Bicharacter, g: GroupElement) -> int:
    """0 if r(g,g) = 1, 1 if r(g,g) = -1; anything else is an error."""
    v = r(g, g)
    if v.is_one():
        return 0
    if v == -1:
        return 1
    raise ValueError(f"r({g},{g}) = {v} is not +-1; the bicharacter is not skew-symmetric")


def super_split(r: Bicharacter, degrees: Iterable[GroupElement]) -> tuple[list, list]:
    even, odd = [], []
    for g in degrees:
        (odd if parity(r, g) else even).append(g)
    return even, odd


def r_zero(r: Bicharacter, g: GroupElement, h: GroupElement) -> FieldElement:
    one = r.field.one()
    return -one if parity(r, g) and parity(r, h) else one


def super_bicharacter(r: Bicharacter) -> Bicharacter:
    """r_0 as a bicharacter on the same group.

    For skew r the map g -> r(g,g) is a character with values +-1, so
    r_0(g,h) = (-1)^(p(g) p(h)) is determined by the generator parities.
    """
    gens = [r.group.generator(i) for i in range(r.group.rank)]
    pars = [parity(r, g) for g in gens]
    return Bicharacter(
        r.group, r.field, [[-1 if pi and pj else 1 for pj in pars] for pi in pars]
    )
