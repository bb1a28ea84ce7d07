"""Quantum traces, sl_{q,f}, generalized transposes, osp_{q,t} and superization.

All subspaces are computed exactly, degree by degree, as row-reduced bases
over the flat basis of the underlying gm algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as _cartesian
from typing import Iterable, Mapping, Sequence

from .algebra import GradedAlgebra, GradedElement, bracket
from .field import FieldElement
from .gm import GeneralLinear, GmAlgebra, GmElement, gm_grade
from .grading import (
    Bicharacter,
    GroupElement,
    GroupSpec,
    is_skew_symmetric,
    parity,
)
from .linalg import in_span, nullspace, reduce_vector, rref, span_coordinates
from .report import CheckReport


# ---------------------------------------------------------------------------
# quantum trace and sl
# ---------------------------------------------------------------------------

class QuantumTrace:
    """tr_{q,f}(a) = sum_g r(g,g) f(a_gg) built from maps on the diagonal blocks.

    ``maps`` sends each diagonal-block basis element (name or flat index) to
    its image in W, a vector of length ``len(target)``.  Basis elements not
    mentioned map to zero.  The cyclic condition f(a_ij b_ji) = f(b_ji a_ij)
    is checked here and a ValueError raised if it fails.
    """

    def __init__(self, source: GmAlgebra, braiding: Bicharacter, target: Sequence[str], maps: Mapping):
        if braiding.group != source.group or braiding.field != source.field:
            raise ValueError("braiding must live on the gm algebra's group and field")
        self.source = source
        self.braiding = braiding
        self.target = tuple(target)
        F = source.field
        self.images: dict[int, tuple[FieldElement, ...]] = {}
        for key, vec in maps.items():
            k = source.index(key)
            i, j = source.block_of[k]
            if i != j:
                raise ValueError(f"{source.basis[k]} is off-diagonal; f is given on diagonal blocks only")
            vec = tuple(F.coerce(v) for v in vec)
            if len(vec) != len(self.target):
                raise ValueError(f"image of {source.basis[k]} has the wrong length")
            if any(not v.is_zero() for v in vec):
                self.images[k] = vec
        report = self.check_cyclic()
        if not report:
            raise ValueError(f"f is not cyclic on blocks: {report}")

    def _zero(self) -> list[FieldElement]:
        return [self.source.field.zero()] * len(self.target)

    def f(self, a: GmElement) -> list[FieldElement]:
        """The unweighted map: sum over diagonal blocks of f(a_gg)."""
        out = self._zero()
        for k, c in a.coeffs.items():
            img = self.images.get(k)
            if img is not None:
                out = [x + c * y for x, y in zip(out, img)]
        return out

    def check_cyclic(self) -> CheckReport:
        A = self.source
        gens = A.gens()
        for x, y in _cartesian(range(A.dim), repeat=2):
            (i, j), (j2, i2) = A.block_of[x], A.block_of[y]
            if j != j2 or i != i2:
                continue
            lhs, rhs = self.f(gens[x] * gens[y]), self.f(gens[y] * gens[x])
            if lhs != rhs:
                diff = [a - b for a, b in zip(lhs, rhs)]
                return CheckReport.fail("trace-cyclic", (x, y), diff)
        return CheckReport.ok("trace-cyclic")


def qtrace(tr: QuantumTrace, a: GmElement) -> list[FieldElement]:
    if a.algebra is not tr.source:
        raise ValueError("element is not in the trace's source algebra")
    r = tr.braiding
    out = tr._zero()
    for (i, j), blk in a.by_block().items():
        if i != j:
            continue
        w = r(i, i)
        out = [x + w * y for x, y in zip(out, tr.f(blk))]
    return out


def block_trace(A: GeneralLinear, braiding: Bicharacter) -> QuantumTrace:
    """f(a_gg) = ordinary trace of the matrix a_gg, so tr_{q,f} is the quantum trace."""
    maps = {A.unit_index[(a, a)]: [1] for a in range(A.size)}
    return QuantumTrace(A, braiding, ["tr"], maps)


class Subalgebra:
    """A graded subspace of gm_grade(A), kept as an RREF basis per degree.

    Vectors are coordinate lists over the flat basis of the gm algebra.
    Also exposes the small interface representations need: ``dim``,
    ``degrees``, ``braiding`` and ``bracket_basis``.
    """

    def __init__(self, parent: GradedAlgebra, per_degree: Mapping[GroupElement, Sequence[Sequence[FieldElement]]]):
        self.parent = parent
        self.per_degree: dict[GroupElement, tuple[list, list[int]]] = {}
        for d in sorted(per_degree):
            rows, pivots = rref([list(v) for v in per_degree[d]], parent.dim)
            if rows:
                for v in rows:
                    bad = [k for k, c in enumerate(v) if not c.is_zero() and parent.degrees[k] != d]
                    if bad:
                        raise ValueError(f"vector has components outside degree {d}")
                self.per_degree[d] = (rows, pivots)
        self.degrees: list[GroupElement] = []
        self.vectors: list[list[FieldElement]] = []
        for d, (rows, _) in self.per_degree.items():
            for v in rows:
                self.degrees.append(d)
                self.vectors.append(v)
        self.basis = tuple(f"s{k + 1}" for k in range(len(self.vectors)))
        self.braiding = parent.braiding
        self.field = parent.field
        self._bracket_cache: dict = {}

    @classmethod
    def span(cls, parent: GradedAlgebra, vectors: Iterable[Sequence[FieldElement]]) -> Subalgebra:
        """Span of homogeneous vectors, grouped by degree."""
        groups: dict = {}
        for v in vectors:
            elt = GradedElement(parent, dict(enumerate(v)))
            if elt.is_zero():
                continue
            d = elt.degree()
            if d is None:
                raise ValueError("span() needs homogeneous vectors")
            groups.setdefault(d, []).append(list(elt.to_vector()))
        return cls(parent, groups)

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def dims_by_degree(self) -> dict[GroupElement, int]:
        return {d: len(rows) for d, (rows, _) in self.per_degree.items()}

    def element(self, k: int) -> GradedElement:
        return GradedElement(self.parent, dict(enumerate(self.vectors[k])))

    def elements(self) -> list[GradedElement]:
        return [self.element(k) for k in range(self.dim)]

    def rowspace(self) -> tuple[list, list[int]]:
        return rref(self.vectors, self.parent.dim)

    def contains(self, x) -> bool:
        v = x.to_vector() if hasattr(x, "to_vector") else list(x)
        red, piv = self.rowspace()
        return in_span(red, piv, v)

    def same_space(self, other: Subalgebra) -> bool:
        return self.rowspace() == other.rowspace()

    def coordinates(self, x: GradedElement) -> dict[int, FieldElement]:
        """Coordinates of a member in this subalgebra's basis (ValueError if not a member)."""
        out: dict[int, FieldElement] = {}
        offset = 0
        comps = x.components()
        for d, (rows, _) in self.per_degree.items():
            comp = comps.pop(d, None)
            if comp is not None:
                c = span_coordinates(rows, comp.to_vector(), self.field)
                if c is None:
                    raise ValueError(f"{x} is not in the subalgebra")
                for k, v in enumerate(c):
                    if not v.is_zero():
                        out[offset + k] = v
            offset += len(rows)
        if any(not c.is_zero() for c in comps.values()):
            raise ValueError(f"{x} has components in degrees the subalgebra lacks")
        return out

    def bracket_basis(self, i: int, j: int) -> dict[int, FieldElement]:
        key = (i, j)
        if key not in self._bracket_cache:
            self._bracket_cache[key] = self.coordinates(bracket(self.element(i), self.element(j)))
        return self._bracket_cache[key]

    def closed_under_bracket(self) -> CheckReport:
        red, piv = self.rowspace()
        elts = self.elements()
        for i, j in _cartesian(range(self.dim), repeat=2):
            br = bracket(elts[i], elts[j])
            res = reduce_vector(red, piv, br.to_vector())
            if any(not c.is_zero() for c in res):
                return CheckReport.fail("bracket-closed", (i, j), GradedElement(self.parent, dict(enumerate(res))))
        return CheckReport.ok("bracket-closed")

    def __repr__(self) -> str:
        dims = {str(d): n for d, n in self.dims_by_degree().items()}
        return f"Subalgebra(dim={self.dim}, by_degree={dims})"


def _graded_parent(A: GmAlgebra, r: Bicharacter) -> GradedAlgebra:
    return gm_grade(A, r)


def _degrees_present(A: GmAlgebra) -> list[GroupElement]:
    return sorted({A.degree(k) for k in range(A.dim)})


def compute_sl(tr: QuantumTrace) -> Subalgebra:
    """Kernel of a -> tr_{q,f}(a), solved independently in each degree."""
    A, F = tr.source, tr.source.field
    parent = _graded_parent(A, tr.braiding)
    per_degree = {}
    for u in _degrees_present(A):
        cols = [k for k in range(A.dim) if A.degree(k) == u]
        images = [qtrace(tr, A[k]) for k in cols]
        rows = [[images[c][w] for c in range(len(cols))] for w in range(len(tr.target))]
        kernel = nullspace(rows, len(cols), F)
        vecs = []
        for v in kernel:
            full = [F.zero()] * A.dim
            for c, k in enumerate(cols):
                full[k] = v[c]
            vecs.append(full)
        per_degree[u] = vecs
    return Subalgebra(parent, per_degree)


def _require_degree(a: GmElement, u: GroupElement | None, what: str) -> GroupElement | None:
    if a.is_zero():
        return u
    d = a.degree()
    if d is None:
        raise ValueError(f"{what} must be homogeneous")
    if u is not None and d != u:
        raise ValueError(f"{what} has degree {d}, expected {u}")
    return d


def lemma24_defect(tr: QuantumTrace, a: GmElement, b: GmElement) -> list[FieldElement]:
    """sum_g (1 - r(u,u)^2 r(u,g) r(g,u)) tr_{q,f}(b_{g,g+u} a_{g+u,g}) for |a| = u, |b| = -u."""
    u = _require_degree(a, None, "a")
    if u is None:
        return tr._zero()
    _require_degree(b, -u, "b")
    r, A = tr.braiding, tr.source
    index = set(A.index_set)
    ruu = r(u, u)
    out = tr._zero()
    for g in A.index_set:
        gu = g + u
        if gu not in index:
            continue
        coeff = 1 - ruu * ruu * r(u, g) * r(g, u)
        if coeff.is_zero():
            continue
        term = qtrace(tr, b.block(g, gu) * a.block(gu, g))
        out = [x + coeff * y for x, y in zip(out, term)]
    return out


def bracket_trace(tr: QuantumTrace, a: GmElement, b: GmElement) -> list[FieldElement]:
    """tr_{q,f}([a, b]) computed straight from the bracket of gm_grade(A)."""
    parent = _graded_parent(tr.source, tr.braiding)
    br = bracket(GradedElement(parent, a.coeffs), GradedElement(parent, b.coeffs))
    return qtrace(tr, GmElement(tr.source, br.coeffs))


def sl_closure_check(tr: QuantumTrace) -> CheckReport:
    """The closure criterion for sl: defect = 0 on every basis pair of degrees (u, -u)."""
    A = tr.source
    gens = A.gens()
    for x, y in _cartesian(range(A.dim), repeat=2):
        if A.degree(y) != -A.degree(x):
            continue
        d = lemma24_defect(tr, gens[x], gens[y])
        if any(not c.is_zero() for c in d):
            return CheckReport.fail("sl-closure-defect", (x, y), d)
    return CheckReport.ok("sl-closure-defect")


def trace_nondegenerate(tr: QuantumTrace) -> CheckReport:
    """Certify tr_{q,f}(A_ij A_ji) != 0 by exhibiting one product per block pair."""
    A = tr.source
    gens = A.gens()
    for (i, j), xs in A.blocks.items():
        ys = A.blocks.get((j, i), ())
        if not ys:
            return CheckReport.fail("trace-nondegenerate", (i, j), None, f"A_({j},{i}) is empty")
        if not any(
            any(not c.is_zero() for c in qtrace(tr, gens[x] * gens[y])) for x in xs for y in ys
        ):
            return CheckReport.fail("trace-nondegenerate", (i, j), None)
    return CheckReport.ok("trace-nondegenerate")


# ---------------------------------------------------------------------------
# generalized transpose and osp
# ---------------------------------------------------------------------------

class Transpose:
    """A linear map t with t(A_ij) in A_ji and t(ab) = t(b) t(a), given on basis elements.

    ``images`` maps each basis element (name or index) to a coefficient
    mapping over the basis; omitted elements go to zero.
    """

    def __init__(self, source: GmAlgebra, images: Mapping):
        self.source = source
        self.images: dict[int, GmElement] = {}
        for key, img in images.items():
            k = source.index(key)
            elt = img if isinstance(img, GmElement) else source.element(img)
            i, j = source.block_of[k]
            for p in elt.coeffs:
                if source.block_of[p] != (j, i):
                    raise ValueError(
                        f"t({source.basis[k]}) has a component {source.basis[p]} outside A_({j},{i})"
                    )
            self.images[k] = elt
        report = self.check_antimultiplicative()
        if not report:
            raise ValueError(f"t is not anti-multiplicative: {report}")

    def __call__(self, a: GmElement) -> GmElement:
        out = self.source.zero()
        for k, c in a.coeffs.items():
            img = self.images.get(k)
            if img is not None:
                out = out + img.scale(c)
        return out

    def check_antimultiplicative(self) -> CheckReport:
        A = self.source
        gens = A.gens()
        for x, y in _cartesian(range(A.dim), repeat=2):
            defect = self(gens[x] * gens[y]) - self(gens[y]) * self(gens[x])
            if defect:
                return CheckReport.fail("transpose", (x, y), defect)
        return CheckReport.ok("transpose")


def ordinary_transpose(A: GeneralLinear) -> Transpose:
    return Transpose(A, {k: {A.unit_index[(b, a)]: 1} for (a, b), k in A.unit_index.items()})


def compute_osp(t: Transpose, M: GmElement, r: Bicharacter) -> Subalgebra:
    """Per degree u, all a in A_u with t(a_{u+g,g}) M_{u+g,h} = -r(g,u) M_{g,u+h} a_{u+h,h}."""
    A, F = t.source, t.source.field
    if M.algebra is not A:
        raise ValueError("M must be an element of the transpose's algebra")
    if M.is_zero():
        raise ValueError("M must be nonzero")
    index = set(A.index_set)
    parent = _graded_parent(A, r)
    per_degree = {}
    for u in _degrees_present(A):
        cols = [k for k in range(A.dim) if A.degree(k) == u]
        images = []
        for k in cols:
            e = A[k]
            residual = A.zero()
            for g, h in _cartesian(A.index_set, repeat=2):
                if g + u in index:
                    residual = residual + t(e.block(g + u, g)) * M.block(g + u, h)
                if u + h in index:
                    residual = residual + (M.block(g, u + h) * e.block(u + h, h)).scale(r(g, u))
            images.append(residual.to_vector())
        rows = [[images[c][p] for c in range(len(cols))] for p in range(A.dim)]
        vecs = []
        for v in nullspace(rows, len(cols), F):
            full = [F.zero()] * A.dim
            for c, k in enumerate(cols):
                full[k] = v[c]
            vecs.append(full)
        per_degree[u] = vecs
    return Subalgebra(parent, per_degree)


def lemma25_defect(t: Transpose, M: GmElement, a: GmElement, b: GmElement, r: Bicharacter) -> GmElement:
    """(1 - r(u,v) r(v,u)) sum_{g,h} M_{g,h+u+v} a_{h+u+v,v+h} b_{v+h,h}."""
    A = t.source
    u = _require_degree(a, None, "a")
    v = _require_degree(b, None, "b")
    if u is None or v is None:
        return A.zero()
    coeff = 1 - r(u, v) * r(v, u)
    if coeff.is_zero():
        return A.zero()
    index = set(A.index_set)
    w = u + v
    out = A.zero()
    for g, h in _cartesian(A.index_set, repeat=2):
        if h + w not in index or v + h not in index:
            continue
        out = out + M.block(g, h + w) * a.block(h + w, v + h) * b.block(v + h, h)
    return out.scale(coeff)


def osp_closure_check(t: Transpose, M: GmElement, r: Bicharacter, osp: Subalgebra | None = None) -> CheckReport:
    """Defect = 0 on all pairs of basis vectors of osp (computed if not given)."""
    A = t.source
    osp = osp or compute_osp(t, M, r)
    elts = [A.from_vector(v) for v in osp.vectors]
    for x, y in _cartesian(range(len(elts)), repeat=2):
        d = lemma25_defect(t, M, elts[x], elts[y], r)
        if d:
            return CheckReport.fail("osp-closure-defect", (x, y), d)
    return CheckReport.ok("osp-closure-defect")


# ---------------------------------------------------------------------------
# superization
# ---------------------------------------------------------------------------

Z2 = GroupSpec.cyclic(2)


@dataclass
class Superization:
    """GM_{Z_2}(A^s): the blocks of A regrouped by the parities of their indices."""

    source: GmAlgebra
    braiding: Bicharacter  # the original r on G
    algebra: GmAlgebra  # indexed by Z_2
    super_braiding: Bicharacter  # (-1)^{ij} on Z_2
    parity: dict[GroupElement, int]

    def to_super(self, a: GmElement) -> GmElement:
        """a -> a^s (same coefficients, relabelled blocks)."""
        if a.algebra is not self.source:
            raise ValueError("element is not in the superized algebra's source")
        return self.algebra.element({self.source.basis[k]: c for k, c in a.coeffs.items()})

    def vector_to_super(self, vec) -> list[FieldElement]:
        return self.to_super(self.source.from_vector(vec)).to_vector()

    def trace(self, tr: QuantumTrace) -> QuantumTrace:
        """tr_{s,f}: the same f, now read on the diagonal super blocks."""
        if tr.source is not self.source:
            raise ValueError("trace belongs to another algebra")
        maps = {self.source.basis[k]: img for k, img in tr.images.items()}
        return QuantumTrace(self.algebra, self.super_braiding, tr.target, maps)

    def transpose(self, t: Transpose) -> Transpose:
        images = {
            self.source.basis[k]: {self.source.basis[p]: c for p, c in img.coeffs.items()}
            for k, img in t.images.items()
        }
        return Transpose(self.algebra, images)


def superize(A: GmAlgebra, r: Bicharacter) -> Superization:
    """Regroup A into B_{i,j} = sum of A_gh over g in G_i, h in G_j (parities from r(g,g))."""
    report = is_skew_symmetric(r)
    if not report:
        raise ValueError(f"superization needs a skew-symmetric bicharacter: {report}")
    par = {g: parity(r, g) for g in A.index_set}
    zero, one = Z2(0), Z2(1)
    label = {0: zero, 1: one}
    blocks: dict = {(x, y): [] for x in (zero, one) for y in (zero, one)}
    for k, name in enumerate(A.basis):
        i, j = A.block_of[k]
        blocks[(label[par[i]], label[par[j]])].append(name)
    products = [
        (A.basis[x], A.basis[y], A.basis[z], c) for (x, y), row in A.table.items() for z, c in row.items()
    ]
    B = GmAlgebra(A.field, Z2, [zero, one], blocks, products)
    return Superization(A, r, B, Bicharacter.sign(Z2, A.field), par)


def check_super_products(S: Superization) -> CheckReport:
    """(ab)^s = a^s b^s on all basis pairs of the source."""
    A = S.source
    gens = A.gens()
    for x in range(A.dim):
        for y in range(A.dim):
            defect = S.to_super(gens[x] * gens[y]) - S.to_super(gens[x]) * S.to_super(gens[y])
            if defect:
                return CheckReport.fail("super-products", (x, y), defect)
    return CheckReport.ok("super-products")


def _first_outside(vectors, other_rows) -> list | None:
    red, piv = rref(other_rows, len(vectors[0]) if vectors else 0)
    for v in vectors:
        if not in_span(red, piv, v):
            return v
    return None


def _compare(name: str, S: Superization, lhs: Subalgebra, rhs: Subalgebra) -> CheckReport:
    mapped = [S.vector_to_super(v) for v in lhs.vectors]
    n = S.algebra.dim
    a = rref(mapped, n)
    b = rref(rhs.vectors, n)
    if a == b:
        return CheckReport.ok(name, f"dim {rhs.dim}")
    w = _first_outside(mapped, rhs.vectors) or _first_outside(rhs.vectors, mapped)
    elt = S.algebra.from_vector(w) if w is not None else None
    return CheckReport.fail(name, (str(elt),), elt, f"dims {len(a[0])} vs {len(b[0])}")


def verify_super_sl(tr: QuantumTrace, S: Superization | None = None) -> CheckReport:
    """sl_{q,f}(GM_G(A))^s == sl_{s,f}(GM_{Z_2}(A^s)) as subspaces."""
    S = S or superize(tr.source, tr.braiding)
    return _compare("super-sl", S, compute_sl(tr), compute_sl(S.trace(tr)))


def verify_super_osp(t: Transpose, M: GmElement, r: Bicharacter, S: Superization | None = None) -> CheckReport:
    """osp_{q,t}(GM_G(A), M)^s == osp_{s,t}(GM_{Z_2}(A^s), M^s) as subspaces."""
    S = S or superize(t.source, r)
    return _compare(
        "super-osp", S, compute_osp(t, M, r), compute_osp(S.transpose(t), S.to_super(M), S.super_braiding)
    )


def verify_thm26(tr: QuantumTrace, t: Transpose | None = None, M: GmElement | None = None) -> list[CheckReport]:
    """Both parts; part (ii) only when a transpose and M are supplied."""
    S = superize(tr.source, tr.braiding)
    reports = [verify_super_sl(tr, S)]
    if t is not None and M is not None:
        reports.append(verify_super_osp(t, M, tr.braiding, S))
    return reports


def verify_super_gl(A: GeneralLinear, r: Bicharacter, M: GmElement | None = None) -> list[CheckReport]:
    """Superization check on gl({n_g}) with the ordinary quantum trace and ordinary transpose."""
    M = M if M is not None else A.identity()
    return verify_thm26(block_trace(A, r), ordinary_transpose(A), M)
