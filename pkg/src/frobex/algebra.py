"""Finite-dimensional associative unital algebras via structure constants.

An algebra is a coefficient domain, a basis (with labels), structure constants
c[i][j] giving the coordinates of b_i * b_j, and a unit coordinate vector.
Construction always runs the full associativity and unit sweeps, so any
Algebra in the system is known valid.  Ring extensions carry an explicit
unital embedding matrix and are likewise validated.
"""

from __future__ import annotations

from itertools import permutations
from typing import Sequence

from .linalg import Domain, Matrix, rank, solve

Vector = list


class AlgebraError(ValueError):
    pass


class GroupTableError(AlgebraError):
    pass


class ClosureError(AlgebraError):
    pass


class Algebra:
    __slots__ = ("domain", "dim", "labels", "structure", "unit",
                 "left_mats", "right_mats", "_cache")

    def __init__(self, domain: Domain, structure: Sequence[Sequence[Sequence]],
                 unit: Sequence, labels: Sequence[str] | None = None):
        self.domain = domain
        n = len(structure)
        self.dim = n
        if labels is None:
            labels = [f"b{i}" for i in range(n)]
        if len(labels) != n:
            raise AlgebraError("label count does not match dimension")
        self.labels = tuple(labels)
        self.structure = [[[domain.coerce(v) for v in structure[i][j]]
                           for j in range(n)] for i in range(n)]
        for i in range(n):
            if len(self.structure[i]) != n:
                raise AlgebraError("structure constants not n x n x n")
            for j in range(n):
                if len(self.structure[i][j]) != n:
                    raise AlgebraError("structure constants not n x n x n")
        if len(unit) != n:
            raise AlgebraError("unit vector has wrong length")
        self.unit = [domain.coerce(v) for v in unit]
        # (L_i)[k][j] = c[i][j][k];  (R_j)[k][i] = c[i][j][k]
        self.left_mats = [
            Matrix(domain, [[self.structure[i][j][k] for j in range(n)]
                            for k in range(n)], _trusted=True)
            for i in range(n)
        ]
        self.right_mats = [
            Matrix(domain, [[self.structure[i][j][k] for i in range(n)]
                            for k in range(n)], _trusted=True)
            for j in range(n)
        ]
        self._cache = {}
        self._validate()

    def _validate(self):
        n = self.dim
        ident = Matrix.identity(self.domain, n)
        if self.left_mult_matrix(self.unit) != ident:
            raise AlgebraError("unit is not a left identity")
        if self.right_mult_matrix(self.unit) != ident:
            raise AlgebraError("unit is not a right identity")
        for i in range(n):
            li = self.left_mats[i]
            for k in range(n):
                rk = self.right_mats[k]
                if rk @ li != li @ rk:
                    # find an explicit witness triple for the error message
                    for j in range(n):
                        lhs = self.mult(self.mult_basis(i, j), self.basis_vector(k))
                        rhs = self.mult(self.basis_vector(i), self.mult_basis(j, k))
                        if lhs != rhs:
                            raise AlgebraError(
                                f"associativity fails at basis triple ({i},{j},{k})")
                    raise AlgebraError(f"associativity fails involving basis ({i},{k})")

    def basis_vector(self, i: int) -> Vector:
        v = [self.domain.zero()] * self.dim
        v[i] = self.domain.one()
        return v

    def mult_basis(self, i: int, j: int) -> Vector:
        return list(self.structure[i][j])

    def left_mult_matrix(self, a: Sequence) -> Matrix:
        acc = Matrix.zeros(self.domain, self.dim, self.dim)
        for i, c in enumerate(a):
            if c:
                acc = acc + self.left_mats[i].scale(c)
        return acc

    def right_mult_matrix(self, a: Sequence) -> Matrix:
        acc = Matrix.zeros(self.domain, self.dim, self.dim)
        for j, c in enumerate(a):
            if c:
                acc = acc + self.right_mats[j].scale(c)
        return acc

    def mult(self, a: Sequence, b: Sequence) -> Vector:
        return self.left_mult_matrix(a).apply(list(b))

    def is_commutative(self) -> bool:
        return all(self.structure[i][j] == self.structure[j][i]
                   for i in range(self.dim) for j in range(self.dim))

    def __eq__(self, other):
        return (isinstance(other, Algebra) and self.domain == other.domain
                and self.structure == other.structure and self.unit == other.unit
                and self.labels == other.labels)

    def __hash__(self):
        return hash((self.domain, self.dim,
                     tuple(tuple(tuple(v) for v in row) for row in self.structure)))

    def __repr__(self):
        return f"Algebra(dim={self.dim}, {self.domain})"


class AlgebraExtension:
    """Ring extension R in A with explicit unital embedding on coordinates."""

    __slots__ = ("sub", "amb", "emb", "_cache")

    def __init__(self, sub: Algebra, amb: Algebra, emb: Matrix):
        if sub.domain != amb.domain:
            raise AlgebraError("extension domains differ")
        if emb.shape != (amb.dim, sub.dim):
            raise AlgebraError(f"embedding shape {emb.shape} does not match algebras")
        self.sub = sub
        self.amb = amb
        self.emb = emb
        self._cache = {}
        if rank(emb) != sub.dim:
            raise AlgebraError("embedding is not injective")
        if emb.apply(sub.unit) != amb.unit:
            raise AlgebraError("embedding does not preserve the unit")
        for i in range(sub.dim):
            ei = emb.column(i)
            for j in range(sub.dim):
                lhs = emb.apply(sub.mult_basis(i, j))
                rhs = amb.mult(ei, emb.column(j))
                if lhs != rhs:
                    raise AlgebraError(f"embedding not multiplicative at ({i},{j})")

    def embed(self, r: Sequence) -> Vector:
        return self.emb.apply(list(r))

    def __repr__(self):
        return f"AlgebraExtension({self.sub!r} -> {self.amb!r})"


def field_algebra(domain: Domain) -> Algebra:
    return Algebra(domain, [[[domain.one()]]], [domain.one()], labels=["1"])


def cyclic_group_table(n: int) -> list[list[int]]:
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def symmetric_group_table(n: int) -> tuple[list[list[int]], list[str]]:
    """Multiplication table of S_n on lexicographically ordered permutations.

    Composition is (s*t)(x) = s(t(x)).
    """
    elems = sorted(permutations(range(n)))
    index = {p: i for i, p in enumerate(elems)}
    table = [[index[tuple(s[t[x]] for x in range(n))] for t in elems] for s in elems]
    labels = ["e" if p == tuple(range(n)) else "s" + "".join(map(str, p)) for p in elems]
    return table, labels


def validate_group_table(table: Sequence[Sequence[int]]) -> int:
    """Check the group axioms, returning the identity index."""
    n = len(table)
    if any(len(row) != n for row in table):
        raise GroupTableError("table is not square")
    for i, row in enumerate(table):
        if sorted(row) != list(range(n)):
            raise GroupTableError(f"not a Latin square: row {i} is not a permutation")
    for j in range(n):
        col = [table[i][j] for i in range(n)]
        if sorted(col) != list(range(n)):
            raise GroupTableError(f"not a Latin square: column {j} is not a permutation")
    identity = next((e for e in range(n)
                     if all(table[e][j] == j for j in range(n))
                     and all(table[i][e] == i for i in range(n))), None)
    if identity is None:
        raise GroupTableError("no identity element")
    for i in range(n):
        if not any(table[i][j] == identity and table[j][i] == identity for j in range(n)):
            raise GroupTableError(f"element {i} has no inverse")
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if table[table[i][j]][k] != table[i][table[j][k]]:
                    raise GroupTableError(f"associativity fails at ({i},{j},{k})")
    return identity


def make_group_algebra(table: Sequence[Sequence[int]], domain: Domain,
                       labels: Sequence[str] | None = None) -> Algebra:
    n = len(table)
    identity = validate_group_table(table)
    zero, one = domain.zero(), domain.one()
    structure = [[[one if table[i][j] == k else zero for k in range(n)]
                  for j in range(n)] for i in range(n)]
    unit = [one if i == identity else zero for i in range(n)]
    if labels is None:
        labels = [f"g{i}" for i in range(n)]
        labels[identity] = "1"
    return Algebra(domain, structure, unit, labels=labels)


def make_dual_numbers(r: Algebra) -> tuple[Algebra, AlgebraExtension]:
    """The square-zero extension A = R[x]/(x^2) with x central.

    Basis is the degree-0 copy of R followed by the degree-1 copy (R * x).
    """
    n = r.dim
    dom = r.domain
    zero = dom.zero()
    big = 2 * n
    structure = [[[zero] * big for _ in range(big)] for _ in range(big)]
    for i in range(n):
        for j in range(n):
            prod = r.structure[i][j]
            for k in range(n):
                structure[i][j][k] = prod[k]
                structure[i][j + n][k + n] = prod[k]
                structure[i + n][j][k + n] = prod[k]
                # (b_i x)(b_j x) = 0
    unit = list(r.unit) + [zero] * n
    labels = list(r.labels) + [("x" if l == "1" else f"x*{l}") for l in r.labels]
    amb = Algebra(dom, structure, unit, labels=labels)
    emb = Matrix.identity(dom, n).vstack(Matrix.zeros(dom, n, n))
    return amb, AlgebraExtension(r, amb, emb)


def make_subalgebra_extension(amb: Algebra, span: Matrix,
                              labels: Sequence[str] | None = None) -> AlgebraExtension:
    """Extension R in A where R is the span of the given independent columns.

    The span must contain the unit and be closed under multiplication; the
    structure constants of R are read off by expressing products in the span.
    """
    if span.nrows != amb.dim:
        raise AlgebraError("span column length does not match algebra dimension")
    k = span.ncols
    if rank(span) != k:
        raise AlgebraError("span columns are not linearly independent")
    dom = amb.domain
    unit_sol = solve(span, amb.unit)
    if unit_sol is None:
        raise ClosureError("unit of the ambient algebra is not in the span")
    structure = []
    for i in range(k):
        row = []
        ci = span.column(i)
        for j in range(k):
            prod = amb.mult(ci, span.column(j))
            sol = solve(span, prod)
            if sol is None:
                raise ClosureError(
                    f"span is not multiplicatively closed: product of columns {i} and {j} escapes")
            row.append(sol.x0)
        structure.append(row)
    if labels is None:
        labels = [f"r{i}" for i in range(k)]
    sub = Algebra(dom, structure, unit_sol.x0, labels=labels)
    return AlgebraExtension(sub, amb, span)


def opposite_algebra(a: Algebra) -> Algebra:
    """Opposite ring; applying it twice returns the original object."""
    cached = a._cache.get("op")
    if cached is not None:
        return cached
    n = a.dim
    structure = [[a.structure[j][i] for j in range(n)] for i in range(n)]
    op = Algebra(a.domain, structure, a.unit, labels=a.labels)
    a._cache["op"] = op
    op._cache["op"] = a
    return op


def matrix_algebra(n: int, domain: Domain) -> Algebra:
    """Full matrix algebra M_n with basis e_{ij} ordered row-major."""
    d = n * n
    zero, one = domain.zero(), domain.one()

    def idx(i, j):
        return i * n + j

    structure = [[[zero] * d for _ in range(d)] for _ in range(d)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    if j == k:
                        structure[idx(i, j)][idx(k, l)][idx(i, l)] = one
    unit = [zero] * d
    for i in range(n):
        unit[idx(i, i)] = one
    labels = [f"e{i + 1}{j + 1}" for i in range(n) for j in range(n)]
    return Algebra(domain, structure, unit, labels=labels)


def upper_triangular_algebra(n: int, domain: Domain) -> Algebra:
    """Upper triangular n x n matrices, basis e_{ij} for i <= j."""
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    index = {pq: t for t, pq in enumerate(pairs)}
    d = len(pairs)
    zero, one = domain.zero(), domain.one()
    structure = [[[zero] * d for _ in range(d)] for _ in range(d)]
    for t, (i, j) in enumerate(pairs):
        for s, (k, l) in enumerate(pairs):
            if j == k:
                structure[t][s][index[(i, l)]] = one
    unit = [zero] * d
    for i in range(n):
        unit[index[(i, i)]] = one
    labels = [f"e{i + 1}{j + 1}" for (i, j) in pairs]
    return Algebra(domain, structure, unit, labels=labels)


def trivial_extension(a: Algebra) -> AlgebraExtension:
    return AlgebraExtension(a, a, Matrix.identity(a.domain, a.dim))
