"""Path algebras of finite quivers whose vertices are labelled by group elements."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .field import FieldSpec
from .gm import GmAlgebra
from .grading import GroupElement


@dataclass(frozen=True)
class Arrow:
    source: GroupElement
    target: GroupElement
    name: str


@dataclass
class Quiver:
    vertices: list[GroupElement]
    arrows: list[Arrow] = field(default_factory=list)

    def __post_init__(self):
        self.vertices = list(self.vertices)
        self.arrows = [a if isinstance(a, Arrow) else Arrow(*a) for a in self.arrows]
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise ValueError("repeated vertex label")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise ValueError("arrow names must be distinct")
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise ValueError(f"arrow {a.name} joins undeclared vertices {a.source} -> {a.target}")
        groups = {v.group for v in self.vertices}
        if len(groups) > 1:
            raise ValueError("vertices must lie in a single group")

    @property
    def group(self):
        return self.vertices[0].group

    def out_arrows(self, v: GroupElement) -> list[Arrow]:
        return sorted((a for a in self.arrows if a.source == v), key=lambda a: a.name)

    def is_acyclic(self) -> bool:
        state: dict = {}

        def visit(v) -> bool:
            state[v] = 1
            for a in self.out_arrows(v):
                s = state.get(a.target, 0)
                if s == 1 or (s == 0 and not visit(a.target)):
                    return False
            state[v] = 2
            return True

        return all(state.get(v, 0) == 2 or visit(v) for v in self.vertices)


def _check_bound(D: Quiver, max_len: int | None):
    if max_len is None:
        if not D.is_acyclic():
            raise ValueError("quiver has an oriented cycle; pass max_len to truncate long paths")
    elif max_len < 0:
        raise ValueError("max_len must be non-negative")


def enumerate_paths(D: Quiver, i: GroupElement, j: GroupElement, max_len: int | None = None) -> list[tuple[str, ...]]:
    """All paths i -> j as arrow-name tuples; () is the trivial path e_ii.

    Sorted lexicographically by arrow-name sequence, so the trivial path
    comes first.
    """
    _check_bound(D, max_len)
    if i not in D.vertices or j not in D.vertices:
        raise ValueError(f"({i},{j}) are not vertices of the quiver")
    found: list[tuple[str, ...]] = []

    def walk(v, path):
        if v == j:
            found.append(path)
        if max_len is not None and len(path) >= max_len:
            return
        for a in D.out_arrows(v):
            walk(a.target, path + (a.name,))

    walk(i, ())
    return sorted(found)


def path_name(D: Quiver, v: GroupElement, path: tuple[str, ...]) -> str:
    if not path:
        return f"e_{v}"
    return "*".join(path)


def build_path_algebra(D: Quiver, max_len: int | None = None, field: FieldSpec | None = None) -> GmAlgebra:
    """A(D) as a gm algebra: A_ij spanned by paths i -> j, product = concatenation.

    With ``max_len`` paths longer than the bound are zero (quotient by the
    ideal of long paths), which keeps cyclic quivers finite-dimensional.
    """
    field = field or FieldSpec.rational()
    _check_bound(D, max_len)
    blocks = {}
    paths = {}
    for i in D.vertices:
        for j in D.vertices:
            ps = enumerate_paths(D, i, j, max_len)
            if ps:
                blocks[(i, j)] = [path_name(D, i, p) for p in ps]
                for p in ps:
                    paths[(i, j, p)] = path_name(D, i, p)
    products = []
    for (i, j, p), x in paths.items():
        for (j2, k, s), y in paths.items():
            if j2 != j:
                continue
            joined = p + s
            if max_len is not None and len(joined) > max_len:
                continue
            products.append((x, y, paths[(i, k, joined)], 1))
    return GmAlgebra(field, D.group, D.vertices, blocks, products)


def path_algebra_dimension(D: Quiver, max_len: int | None = None) -> int:
    return sum(len(enumerate_paths(D, i, j, max_len)) for i in D.vertices for j in D.vertices)


def dimension_table(A: GmAlgebra) -> dict[tuple[GroupElement, GroupElement], int]:
    return {b: len(ks) for b, ks in A.blocks.items()}


def quiver_from_arrows(vertices: Iterable[GroupElement], arrows: Iterable[tuple]) -> Quiver:
    return Quiver(list(vertices), [Arrow(*a) for a in arrows])
