"""Finite-dimensional left modules as representations, and the three functors
restriction, induction (A tensor over R) and coinduction (Hom_R(A, -)).

Tensor products over the subring are realized as explicit quotients of the
ground-field tensor space by the balancing relations, with the canonical
basis fixed by the reduced row echelon form of the relation span.  That makes
every downstream isomorphism and certificate byte-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .algebra import Algebra, AlgebraExtension, opposite_algebra, trivial_extension
from .linalg import (
    Matrix,
    QuotientSpace,
    ShapeError,
    find_invertible_in_span,
    is_invertible,
    kernel_basis,
    solve,
    solve_matrix,
    vec_row_major,
)


class ModuleError(ValueError):
    pass


class ModuleRep:
    """Left module given by one action matrix per algebra basis element."""

    __slots__ = ("algebra", "dim", "action", "_cache")

    def __init__(self, algebra: Algebra, dim: int, action: Sequence[Matrix],
                 validate: bool = True):
        self.algebra = algebra
        self.dim = dim
        self.action = list(action)
        self._cache = {}
        if len(self.action) != algebra.dim:
            raise ModuleError("need one action matrix per algebra basis element")
        for m in self.action:
            if m.shape != (dim, dim):
                raise ShapeError(f"action matrix shape {m.shape} != ({dim},{dim})")
            if m.domain != algebra.domain:
                raise ModuleError("action domain differs from algebra domain")
        if validate:
            self._validate()

    def _validate(self):
        alg = self.algebra
        if self.act(alg.unit) != Matrix.identity(alg.domain, self.dim):
            raise ModuleError("unit does not act as the identity")
        for i in range(alg.dim):
            ai = self.action[i]
            for j in range(alg.dim):
                lhs = ai @ self.action[j]
                rhs = self.act(alg.structure[i][j])
                if lhs != rhs:
                    raise ModuleError(f"action incompatible with structure constants at ({i},{j})")

    def act(self, a: Sequence) -> Matrix:
        """Action matrix of an algebra element given in coordinates."""
        acc = Matrix.zeros(self.algebra.domain, self.dim, self.dim)
        for i, c in enumerate(a):
            if c:
                acc = acc + self.action[i].scale(c)
        return acc

    def is_zero(self) -> bool:
        return self.dim == 0

    def __repr__(self):
        return f"ModuleRep(dim={self.dim} over dim-{self.algebra.dim} algebra)"


class ModuleHom:
    __slots__ = ("src", "dst", "mat")

    def __init__(self, src: ModuleRep, dst: ModuleRep, mat: Matrix, validate: bool = True):
        if src.algebra != dst.algebra:
            raise ModuleError("module homomorphism across different algebras")
        if mat.shape != (dst.dim, src.dim):
            raise ShapeError(f"hom matrix shape {mat.shape} != ({dst.dim},{src.dim})")
        self.src = src
        self.dst = dst
        self.mat = mat
        if validate and not intertwines(src, dst, mat):
            raise ModuleError("matrix does not intertwine the actions")

    def compose(self, other: "ModuleHom") -> "ModuleHom":
        if other.dst is not self.src and other.dst.dim != self.src.dim:
            raise ShapeError("composition shape mismatch")
        return ModuleHom(other.src, self.dst, self.mat @ other.mat, validate=False)

    def __repr__(self):
        return f"ModuleHom({self.src.dim} -> {self.dst.dim})"


def intertwines(src: ModuleRep, dst: ModuleRep, mat: Matrix) -> bool:
    return all(mat @ src.action[i] == dst.action[i] @ mat
               for i in range(src.algebra.dim))


def zero_module(algebra: Algebra) -> ModuleRep:
    z = Matrix(algebra.domain, [], _trusted=True)
    return ModuleRep(algebra, 0, [z] * algebra.dim, validate=False)


def regular_module(algebra: Algebra) -> ModuleRep:
    """Left regular representation: b_i acts by its left multiplication matrix."""
    cached = algebra._cache.get("regular")
    if cached is None:
        cached = ModuleRep(algebra, algebra.dim, list(algebra.left_mats), validate=False)
        algebra._cache["regular"] = cached
    return cached


def free_module(algebra: Algebra, k: int) -> ModuleRep:
    reg = regular_module(algebra)
    if k == 1:
        return reg
    return direct_sum([reg] * k)[0]


def direct_sum(mods: Sequence[ModuleRep]) -> tuple[ModuleRep, list[ModuleHom], list[ModuleHom]]:
    """Direct sum with inclusion and projection homs."""
    if not mods:
        raise ModuleError("direct sum of an empty list needs an algebra")
    alg = mods[0].algebra
    dom = alg.domain
    dims = [m.dim for m in mods]
    total = sum(dims)
    action = []
    for i in range(alg.dim):
        rows = []
        for t, m in enumerate(mods):
            pre = sum(dims[:t])
            post = total - pre - dims[t]
            for row in m.action[i].rows:
                rows.append([dom.zero()] * pre + list(row) + [dom.zero()] * post)
        action.append(Matrix(dom, rows, _trusted=True))
    out = ModuleRep(alg, total, action, validate=False)
    incls, projs = [], []
    offset = 0
    for m in mods:
        inc = Matrix.zeros(dom, total, m.dim)
        prj = Matrix.zeros(dom, m.dim, total)
        for i in range(m.dim):
            inc.rows[offset + i][i] = dom.one()
            prj.rows[i][offset + i] = dom.one()
        incls.append(ModuleHom(m, out, inc, validate=False))
        projs.append(ModuleHom(out, m, prj, validate=False))
        offset += m.dim
    return out, incls, projs


def submodule(parent: ModuleRep, basis: Matrix) -> tuple[ModuleRep, ModuleHom]:
    """Sub-representation on an action-stable independent column basis."""
    alg = parent.algebra
    if basis.nrows != parent.dim:
        raise ShapeError("basis column length mismatch")
    action = []
    for i in range(alg.dim):
        moved = parent.action[i] @ basis
        coords = solve_matrix(basis, moved)
        if coords is None:
            raise ModuleError(f"basis is not stable under the action of basis element {i}")
        action.append(coords)
    sub = ModuleRep(alg, basis.ncols, action, validate=False)
    return sub, ModuleHom(sub, parent, basis, validate=False)


def quotient_module(parent: ModuleRep, sub_basis: Matrix) -> tuple[ModuleRep, ModuleHom]:
    """Quotient by the span of action-stable columns, with canonical basis."""
    alg = parent.algebra
    relations = [sub_basis.column(j) for j in range(sub_basis.ncols)]
    q = QuotientSpace(alg.domain, parent.dim, relations)
    proj = q.projection_matrix()
    sect = q.section_matrix()
    action = [proj @ parent.action[i] @ sect for i in range(alg.dim)]
    quot = ModuleRep(alg, q.dim, action, validate=False)
    return quot, ModuleHom(parent, quot, proj, validate=False)


def spanned_submodule(parent: ModuleRep, vectors: Sequence[Sequence]) -> Matrix:
    """Smallest action-stable subspace containing the vectors (column basis)."""
    alg = parent.algebra
    dom = alg.domain
    current = Matrix.from_columns(dom, [list(v) for v in vectors])
    from .linalg import column_span_basis
    current = column_span_basis(current)
    while True:
        cols = [current.column(j) for j in range(current.ncols)]
        new_cols = list(cols)
        for i in range(alg.dim):
            moved = parent.action[i] @ current
            new_cols.extend(moved.column(j) for j in range(moved.ncols))
        bigger = column_span_basis(Matrix.from_columns(dom, new_cols))
        if bigger.ncols == current.ncols:
            return current
        current = bigger


def hom_space(src: ModuleRep, dst: ModuleRep) -> list[ModuleHom]:
    """Canonical basis of Hom(src, dst), from the intertwiner linear system."""
    if src.algebra != dst.algebra:
        raise ModuleError("hom space across different algebras")
    alg = src.algebra
    dom = alg.domain
    ms, md = src.dim, dst.dim
    if ms == 0 or md == 0:
        return []
    zero = dom.zero()
    rows = []
    for i in range(alg.dim):
        sm = src.action[i]
        dm = dst.action[i]
        for r in range(md):
            dm_row = dm.rows[r]
            for c in range(ms):
                row = [zero] * (md * ms)
                base = r * ms
                for b in range(ms):
                    v = sm.rows[b][c]
                    if v:
                        row[base + b] = dom.add(row[base + b], v)
                for a in range(md):
                    v = dm_row[a]
                    if v:
                        idx = a * ms + c
                        row[idx] = dom.sub(row[idx], v)
                rows.append(row)
    system = Matrix(dom, rows, _trusted=True)
    basis = kernel_basis(system)
    homs = []
    for j in range(basis.ncols):
        col = basis.column(j)
        mat = Matrix(dom, [col[r * ms:(r + 1) * ms] for r in range(md)], _trusted=True)
        homs.append(ModuleHom(src, dst, mat, validate=False))
    return homs


def hom_dim(src: ModuleRep, dst: ModuleRep) -> int:
    return len(hom_space(src, dst))


def coords_in_hom_basis(basis: Sequence[ModuleHom], target: Matrix) -> list | None:
    """Coordinates of a hom matrix in a hom-space basis (None if outside)."""
    if not basis:
        return [] if target.is_zero() else None
    dom = target.domain
    cols = [vec_row_major(h.mat) for h in basis]
    stacked = Matrix.from_columns(dom, cols)
    sol = solve(stacked, vec_row_major(target))
    return None if sol is None else sol.x0


def restrict(ext: AlgebraExtension, mod: ModuleRep) -> ModuleRep:
    """Restriction along the embedding: r acts as iota(r)."""
    if mod.algebra != ext.amb:
        raise ModuleError("module is not over the ambient algebra")
    action = [mod.act(ext.emb.column(j)) for j in range(ext.sub.dim)]
    return ModuleRep(ext.sub, mod.dim, action, validate=False)


def _apply_left_factor(op: Matrix, columns: Matrix, inner: int) -> Matrix:
    """Apply (op tensor identity_inner) to stacked coordinate columns."""
    n = op.ncols
    d = columns.ncols
    dom = op.domain
    # reshape: rows indexed (i, t) -> row i holds the t-sweep per column
    reshaped = Matrix(dom, [[columns.rows[i * inner + t][q] for t in range(inner) for q in range(d)]
                            for i in range(n)], _trusted=True)
    moved = op @ reshaped
    out_rows = [[moved.rows[i][t * d + q] for q in range(d)]
                for i in range(op.nrows) for t in range(inner)]
    return Matrix(dom, out_rows, _trusted=True)


def _apply_right_factor(op: Matrix, columns: Matrix, outer: int) -> Matrix:
    """Apply (identity_outer tensor op) to stacked coordinate columns."""
    inner = op.ncols
    blocks = []
    for i in range(outer):
        block = Matrix(op.domain, columns.rows[i * inner:(i + 1) * inner], _trusted=True)
        blocks.append(op @ block)
    rows = [row for b in blocks for row in b.rows]
    return Matrix(op.domain, rows, _trusted=True)


@dataclass
class TensorOverSub:
    """A tensor_R M as a quotient of the ground-field tensor space.

    Index convention: ground tensor basis (i, t) for b_i tensor m_t flattens
    to i * dim(M) + t.
    """

    ext: AlgebraExtension
    inner: ModuleRep
    space: QuotientSpace
    module: ModuleRep

    @property
    def dim(self) -> int:
        return self.space.dim

    def project_tensor(self, a: Sequence, m: Sequence) -> list:
        dom = self.ext.amb.domain
        md = self.inner.dim
        vec = [dom.zero()] * (self.ext.amb.dim * md)
        for i, ai in enumerate(a):
            if ai:
                for t, mt in enumerate(m):
                    if mt:
                        vec[i * md + t] = dom.add(vec[i * md + t], dom.mul(ai, mt))
        return self.space.project(vec)


def induce(ext: AlgebraExtension, mod: ModuleRep) -> TensorOverSub:
    """Induction A tensor_R M with the rref-canonical quotient basis."""
    if mod.algebra != ext.sub:
        raise ModuleError("module is not over the subalgebra")
    amb, sub = ext.amb, ext.sub
    dom = amb.domain
    na, md = amb.dim, mod.dim
    total = na * md
    zero = dom.zero()
    relations = []
    for j in range(sub.dim):
        right_j = amb.right_mult_matrix(ext.emb.column(j))
        act_j = mod.action[j]
        for i in range(na):
            u = right_j.column(i)
            for t in range(md):
                w = act_j.column(t)
                row = [zero] * total
                for k, uk in enumerate(u):
                    if uk:
                        row[k * md + t] = dom.add(row[k * md + t], uk)
                for s, ws in enumerate(w):
                    if ws:
                        idx = i * md + s
                        row[idx] = dom.sub(row[idx], ws)
                relations.append(row)
    space = QuotientSpace(dom, total, relations)
    sect = space.section_matrix()
    proj = space.projection_matrix()
    action = []
    for k in range(na):
        moved = _apply_left_factor(amb.left_mats[k], sect, md)
        action.append(proj @ moved)
    module = ModuleRep(amb, space.dim, action, validate=False)
    return TensorOverSub(ext, mod, space, module)


@dataclass
class Coinduced:
    """Hom_R(A, M) with A acting by (a.f)(a') = f(a'a)."""

    ext: AlgebraExtension
    inner: ModuleRep
    basis: list[Matrix]
    module: ModuleRep


def coinduce(ext: AlgebraExtension, mod: ModuleRep) -> Coinduced:
    if mod.algebra != ext.sub:
        raise ModuleError("module is not over the subalgebra")
    amb = ext.amb
    dom = amb.domain
    a_as_sub = restrict(ext, regular_module(amb))
    maps = hom_space(a_as_sub, mod)
    basis = [h.mat for h in maps]
    d = len(basis)
    if d == 0:
        return Coinduced(ext, mod, [], zero_module(amb))
    stacked = Matrix.from_columns(dom, [vec_row_major(b) for b in basis])
    action = []
    for k in range(amb.dim):
        rk = amb.right_mats[k]
        targets = Matrix.from_columns(dom, [vec_row_major(b @ rk) for b in basis])
        coords = solve_matrix(stacked, targets)
        if coords is None:
            raise ModuleError("coinduced action escapes the solution space")
        action.append(coords)
    module = ModuleRep(amb, d, action, validate=False)
    return Coinduced(ext, mod, basis, module)


@dataclass
class CounitResult:
    induced: TensorOverSub
    theta: ModuleHom
    surjective: bool
    a_split: bool
    a_section: Matrix | None
    r_split: bool


def counit_map(ext: AlgebraExtension, mod: ModuleRep) -> CounitResult:
    """The evaluation map A tensor_R (Res M) -> M, with splitting reports."""
    if mod.algebra != ext.amb:
        raise ModuleError("module is not over the ambient algebra")
    amb = ext.amb
    dom = amb.domain
    res = restrict(ext, mod)
    ind = induce(ext, res)
    md = mod.dim
    cols = []
    for i in range(amb.dim):
        ai = mod.action[i]
        for t in range(md):
            cols.append(ai.column(t))
    on_generators = Matrix.from_columns(dom, cols)
    theta_mat = on_generators @ ind.space.section_matrix()
    theta = ModuleHom(ind.module, mod, theta_mat, validate=True)
    from .linalg import rank
    surjective = rank(theta_mat) == md
    a_split, a_section = _find_section(ind.module, mod, theta_mat, hom_space(mod, ind.module))
    r_split, _ = _find_section(restrict(ext, ind.module), res, theta_mat,
                               hom_space(res, restrict(ext, ind.module)))
    return CounitResult(ind, theta, surjective, a_split, a_section, r_split)


def _find_section(src: ModuleRep, dst: ModuleRep, epi: Matrix,
                  candidates: list[ModuleHom]) -> tuple[bool, Matrix | None]:
    """Section s with epi @ s = identity, searched linearly in a hom basis."""
    if dst.dim == 0:
        return True, Matrix(dst.algebra.domain, [], _trusted=True)
    if not candidates:
        return False, None
    dom = epi.domain
    cols = [vec_row_major(epi @ h.mat) for h in candidates]
    stacked = Matrix.from_columns(dom, cols)
    target = vec_row_major(Matrix.identity(dom, dst.dim))
    sol = solve(stacked, target)
    if sol is None:
        return False, None
    section = Matrix.zeros(dom, src.dim, dst.dim)
    for c, h in zip(sol.x0, candidates):
        if c:
            section = section + h.mat.scale(c)
    return True, section


@dataclass
class AdjunctionReport:
    dims: tuple[int, int, int, int]
    all_equal: bool
    tensor_vs_hom_iso: Matrix | None
    bijections: dict[str, Matrix | None]
    bijections_invertible: bool


def adjunction_check(ext: AlgebraExtension, mod_a: ModuleRep, mod_r: ModuleRep,
                     seed: int = 0) -> AdjunctionReport:
    """Compare the four hom spaces tied together by induction and coinduction.

    Corners: Hom_A(M, A ten_R N), Hom_A(M, Hom_R(A, N)), Hom_R(A ten_A M, N),
    Hom_R(Res M, N).  Explicit bijections are produced where the relevant
    natural or searched isomorphisms exist.
    """
    if mod_a.algebra != ext.amb or mod_r.algebra != ext.sub:
        raise ModuleError("adjunction check needs (module over A, module over R)")
    amb = ext.amb
    dom = amb.domain
    tn = induce(ext, mod_r)
    hn = coinduce(ext, mod_r)
    c1 = hom_space(mod_a, tn.module)
    c2 = hom_space(mod_a, hn.module)
    over_a = induce(trivial_extension(amb), mod_a)
    res_of_tensor = restrict(ext, over_a.module)
    c3 = hom_space(res_of_tensor, mod_r)
    c4 = hom_space(restrict(ext, mod_a), mod_r)
    dims = (len(c1), len(c2), len(c3), len(c4))
    all_equal = len(set(dims)) == 1

    bijections: dict[str, Matrix | None] = {}
    iso = None
    found = find_invertible_in_span([h.mat for h in hom_space(tn.module, hn.module)],
                                    seed=seed) if tn.module.dim == hn.module.dim else None
    if found is not None:
        iso = found[1]
        bijections["tensor_to_coinduced"] = _transport(c1, c2, lambda m: iso @ m)
    else:
        bijections["tensor_to_coinduced"] = None
    if hn.basis:
        ev1 = Matrix.from_columns(dom, [b.apply(amb.unit) for b in hn.basis])
    else:
        ev1 = Matrix(dom, [[] for _ in range(mod_r.dim)], _trusted=True)
    bijections["coinduced_to_restricted"] = _transport(c2, c4, lambda m: ev1 @ m)
    can_cols = [over_a.project_tensor(amb.unit, unitvec(dom, mod_a.dim, t))
                for t in range(mod_a.dim)]
    can = Matrix.from_columns(dom, can_cols)
    bijections["tensor_unit_to_restricted"] = _transport(c3, c4, lambda m: m @ can)
    invertible = all(b is not None and is_invertible(b) for b in bijections.values())
    return AdjunctionReport(dims, all_equal, iso, bijections, invertible)


def unitvec(dom, n: int, i: int) -> list:
    v = [dom.zero()] * n
    v[i] = dom.one()
    return v


def _transport(src_basis: list[ModuleHom], dst_basis: list[ModuleHom], fn) -> Matrix | None:
    """Matrix of a linear map between hom spaces in their canonical bases."""
    if not src_basis:
        return Matrix(src_basis[0].mat.domain, [], _trusted=True) if src_basis else (
            Matrix(dst_basis[0].mat.domain, [[] for _ in range(len(dst_basis))], _trusted=True)
            if dst_basis else None)
    cols = []
    for h in src_basis:
        coords = coords_in_hom_basis(dst_basis, fn(h.mat))
        if coords is None:
            return None
        cols.append(coords)
    return Matrix.from_columns(src_basis[0].mat.domain, cols)


@dataclass
class DualModule:
    module: ModuleRep          # left module over the opposite algebra
    basis: list[Matrix]        # hom matrices M -> A (regular)


def dual_module(mod: ModuleRep) -> DualModule:
    """Hom_A(M, A) as a left module over the opposite algebra."""
    alg = mod.algebra
    dom = alg.domain
    op = opposite_algebra(alg)
    maps = hom_space(mod, regular_module(alg))
    basis = [h.mat for h in maps]
    d = len(basis)
    if d == 0:
        return DualModule(zero_module(op), [])
    stacked = Matrix.from_columns(dom, [vec_row_major(b) for b in basis])
    action = []
    for k in range(alg.dim):
        rk = alg.right_mats[k]
        targets = Matrix.from_columns(dom, [vec_row_major(rk @ b) for b in basis])
        coords = solve_matrix(stacked, targets)
        if coords is None:
            raise ModuleError("dual action escapes the solution space")
        action.append(coords)
    return DualModule(ModuleRep(op, d, action, validate=False), basis)


def biduality_map(mod: ModuleRep, dual: DualModule | None = None,
                  double: DualModule | None = None) -> tuple[ModuleHom, DualModule, DualModule]:
    """The evaluation M -> M** together with both dual data sets."""
    if dual is None:
        dual = dual_module(mod)
    if double is None:
        double = dual_module(dual.module)
    dom = mod.algebra.domain
    dstar_dim = dual.module.dim
    cols = []
    for t in range(mod.dim):
        ev_t = Matrix.from_columns(dom, [b.column(t) for b in dual.basis]) if dual.basis \
            else Matrix(dom, [[] for _ in range(mod.algebra.dim)], _trusted=True)
        coords = _coords_in_matrix_basis(double.basis, ev_t, dom,
                                         (mod.algebra.dim, dstar_dim))
        if coords is None:
            raise ModuleError("evaluation map escapes the double dual")
        cols.append(coords)
    mat = Matrix.from_columns(dom, cols)
    return ModuleHom(mod, double.module, mat, validate=True), dual, double


def _coords_in_matrix_basis(basis: list[Matrix], target: Matrix, dom, shape) -> list | None:
    if not basis:
        return [] if target.is_zero() else None
    stacked = Matrix.from_columns(dom, [vec_row_major(b) for b in basis])
    sol = solve(stacked, vec_row_major(target))
    return None if sol is None else sol.x0


def iso_between(m1: ModuleRep, m2: ModuleRep, seed: int = 0) -> Matrix | None:
    """An invertible intertwiner, or None when not found at the search bound."""
    if m1.dim != m2.dim:
        return None
    if m1.dim == 0:
        return Matrix(m1.algebra.domain, [], _trusted=True)
    found = find_invertible_in_span([h.mat for h in hom_space(m1, m2)], seed=seed)
    return None if found is None else found[1]


def conjugate_module(mod: ModuleRep, t: Matrix) -> ModuleRep:
    """Base change by an invertible matrix (same module up to isomorphism)."""
    from .linalg import invert
    ti = invert(t)
    if ti is None:
        raise ModuleError("conjugation needs an invertible matrix")
    return ModuleRep(mod.algebra, mod.dim, [t @ a @ ti for a in mod.action], validate=False)
