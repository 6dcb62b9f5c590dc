"""Exact dense linear algebra over F_p (p prime) and Q.

Every operation is exact and deterministic: pivoting always picks the first
nonzero entry scanning top to bottom, left to right, so reduced forms, kernel
bases and particular solutions are reproducible byte for byte.  F_p matrices
hold ints reduced to [0, p); rational matrices hold ``fractions.Fraction``
values, which are always in lowest terms with positive denominator.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from ._backend import matmul_mod, rref_mod

Scalar = Union[int, Fraction]


class LinalgError(ValueError):
    pass


class ShapeError(LinalgError):
    pass


class DomainMismatchError(LinalgError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Domain:
    """Coefficient domain tag: a prime field GF(p) or the rationals QQ."""

    __slots__ = ("p",)

    def __init__(self, p: int | None):
        if p is not None:
            if not _is_prime(p):
                raise LinalgError(f"modulus {p} is not prime")
            if p >= 2**31:
                raise LinalgError(f"modulus {p} too large (need p < 2**31)")
        self.p = p

    @property
    def is_field_p(self) -> bool:
        return self.p is not None

    @property
    def char(self) -> int:
        return self.p or 0

    def coerce(self, v) -> Scalar:
        if self.p is not None:
            if isinstance(v, Fraction):
                num, den = v.numerator, v.denominator
                return num * pow(den, self.p - 2, self.p) % self.p
            return int(v) % self.p
        if isinstance(v, Fraction):
            return v
        return Fraction(v)

    def zero(self) -> Scalar:
        return 0 if self.p is not None else Fraction(0)

    def one(self) -> Scalar:
        return 1 if self.p is not None else Fraction(1)

    def add(self, a, b):
        return (a + b) % self.p if self.p is not None else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p is not None else a - b

    def mul(self, a, b):
        return (a * b) % self.p if self.p is not None else a * b

    def neg(self, a):
        return (-a) % self.p if self.p is not None else -a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.p is not None:
            return pow(a, self.p - 2, self.p)
        return 1 / a

    def __eq__(self, other):
        return isinstance(other, Domain) and self.p == other.p

    def __hash__(self):
        return hash(("Domain", self.p))

    def __repr__(self):
        return "QQ" if self.p is None else f"GF({self.p})"


QQ = Domain(None)

_gf_cache: dict[int, Domain] = {}


def GF(p: int) -> Domain:
    if p not in _gf_cache:
        _gf_cache[p] = Domain(p)
    return _gf_cache[p]


def _same_domain(a: "Matrix", b: "Matrix") -> Domain:
    if a.domain != b.domain:
        raise DomainMismatchError(f"mixed domains {a.domain} and {b.domain}")
    return a.domain


class Matrix:
    """Immutable row-major matrix over a single domain."""

    __slots__ = ("domain", "rows", "nrows", "ncols")

    def __init__(self, domain: Domain, rows: Sequence[Sequence], *, _trusted=False):
        self.domain = domain
        if _trusted:
            self.rows = rows if isinstance(rows, list) else [list(r) for r in rows]
        else:
            self.rows = [[domain.coerce(v) for v in row] for row in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        for row in self.rows:
            if len(row) != self.ncols:
                raise ShapeError("ragged rows")

    @staticmethod
    def zeros(domain: Domain, nrows: int, ncols: int) -> "Matrix":
        z = domain.zero()
        return Matrix(domain, [[z] * ncols for _ in range(nrows)], _trusted=True)

    @staticmethod
    def identity(domain: Domain, n: int) -> "Matrix":
        z, o = domain.zero(), domain.one()
        rows = [[o if i == j else z for j in range(n)] for i in range(n)]
        return Matrix(domain, rows, _trusted=True)

    @staticmethod
    def from_columns(domain: Domain, cols: Sequence[Sequence]) -> "Matrix":
        if not cols:
            return Matrix(domain, [], _trusted=True)
        n = len(cols[0])
        return Matrix(domain, [[domain.coerce(c[i]) for c in cols] for i in range(n)], _trusted=True)

    def column(self, j: int) -> list:
        return [row[j] for row in self.rows]

    def columns(self) -> list[list]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> "Matrix":
        return Matrix(self.domain, [list(r) for r in zip(*self.rows)] if self.rows else [], _trusted=True)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        dom = _same_domain(self, other)
        if self.ncols != other.nrows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        if dom.is_field_p and self.nrows and self.ncols and other.ncols:
            return Matrix(dom, matmul_mod(self.rows, other.rows, dom.p), _trusted=True)
        bt = list(zip(*other.rows)) if other.rows else []
        z = dom.zero()
        out = [[sum((a * b for a, b in zip(row, col)), z) for col in bt] for row in self.rows]
        if not other.ncols:
            out = [[] for _ in self.rows]
        return Matrix(dom, out, _trusted=True)

    def apply(self, vec: Sequence[Scalar]) -> list:
        """Matrix-vector product."""
        if len(vec) != self.ncols:
            raise ShapeError("vector length mismatch")
        dom = self.domain
        if dom.is_field_p:
            p = dom.p
            return [sum(a * b for a, b in zip(row, vec)) % p for row in self.rows]
        z = dom.zero()
        return [sum((a * b for a, b in zip(row, vec)), z) for row in self.rows]

    def __add__(self, other: "Matrix") -> "Matrix":
        dom = _same_domain(self, other)
        if self.shape != other.shape:
            raise ShapeError("shape mismatch in addition")
        return Matrix(dom, [[dom.add(a, b) for a, b in zip(r1, r2)]
                            for r1, r2 in zip(self.rows, other.rows)], _trusted=True)

    def __sub__(self, other: "Matrix") -> "Matrix":
        dom = _same_domain(self, other)
        if self.shape != other.shape:
            raise ShapeError("shape mismatch in subtraction")
        return Matrix(dom, [[dom.sub(a, b) for a, b in zip(r1, r2)]
                            for r1, r2 in zip(self.rows, other.rows)], _trusted=True)

    def __neg__(self) -> "Matrix":
        dom = self.domain
        return Matrix(dom, [[dom.neg(a) for a in r] for r in self.rows], _trusted=True)

    def scale(self, c) -> "Matrix":
        dom = self.domain
        c = dom.coerce(c)
        return Matrix(dom, [[dom.mul(c, a) for a in r] for r in self.rows], _trusted=True)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def is_zero(self) -> bool:
        return all(not v for row in self.rows for v in row)

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.domain == other.domain
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.domain, tuple(tuple(r) for r in self.rows)))

    def __repr__(self):
        return f"Matrix({self.domain}, {self.nrows}x{self.ncols})"

    def hstack(self, other: "Matrix") -> "Matrix":
        dom = _same_domain(self, other)
        if self.nrows != other.nrows:
            raise ShapeError("row count mismatch in hstack")
        return Matrix(dom, [r1 + r2 for r1, r2 in zip(self.rows, other.rows)], _trusted=True)

    def vstack(self, other: "Matrix") -> "Matrix":
        dom = _same_domain(self, other)
        if self.ncols != other.ncols:
            raise ShapeError("column count mismatch in vstack")
        return Matrix(dom, [list(r) for r in self.rows] + [list(r) for r in other.rows], _trusted=True)

    def submatrix(self, row_idx: Iterable[int], col_idx: Iterable[int]) -> "Matrix":
        cols = list(col_idx)
        return Matrix(self.domain, [[self.rows[i][j] for j in cols] for i in row_idx], _trusted=True)


@dataclass(frozen=True)
class RrefResult:
    matrix: Matrix
    rank: int
    pivots: tuple[int, ...]


def _rref_q(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], int, list[int]]:
    m = [row[:] for row in rows]
    nrows, ncols = len(m), len(m[0]) if m else 0
    pivots: list[int] = []
    piv_row = 0
    for col in range(ncols):
        if piv_row >= nrows:
            break
        target = next((r for r in range(piv_row, nrows) if m[r][col]), -1)
        if target < 0:
            continue
        if target != piv_row:
            m[piv_row], m[target] = m[target], m[piv_row]
        row = m[piv_row]
        scale = 1 / row[col]
        if scale != 1:
            m[piv_row] = row = [v * scale for v in row]
        for r in range(nrows):
            if r == piv_row:
                continue
            factor = m[r][col]
            if factor:
                other = m[r]
                m[r] = [a - factor * b for a, b in zip(other, row)]
        pivots.append(col)
        piv_row += 1
    return m, len(pivots), pivots


def rref(m: Matrix) -> RrefResult:
    """Unique reduced row echelon form with rank and pivot columns."""
    if m.nrows == 0 or m.ncols == 0:
        return RrefResult(m, 0, ())
    if m.domain.is_field_p:
        rows, rank, pivots = rref_mod(m.rows, m.domain.p)
    else:
        rows, rank, pivots = _rref_q(m.rows)
    return RrefResult(Matrix(m.domain, rows, _trusted=True), rank, tuple(pivots))


def rank(m: Matrix) -> int:
    return rref(m).rank


def kernel_basis(m: Matrix) -> Matrix:
    """Columns form the canonical basis of ker(m).

    For each pivot-free column f (in increasing order) the basis vector has 1
    in slot f and minus the reduced column above the pivots, which is the
    standard back-substituted basis.
    """
    dom = m.domain
    n = m.ncols
    if n == 0:
        return Matrix(dom, [], _trusted=True)
    if m.nrows == 0:
        return Matrix.identity(dom, n)
    red = rref(m)
    pivots = red.pivots
    pivot_set = set(pivots)
    free = [j for j in range(n) if j not in pivot_set]
    cols = []
    for f in free:
        v = [dom.zero()] * n
        v[f] = dom.one()
        for t, pcol in enumerate(pivots):
            v[pcol] = dom.neg(red.matrix.rows[t][f])
        cols.append(v)
    return Matrix.from_columns(dom, cols)


@dataclass(frozen=True)
class SolveResult:
    x0: list
    kernel: Matrix


def solve(a: Matrix, b: Sequence[Scalar]) -> SolveResult | None:
    """Solve a*x = b exactly; None when inconsistent.

    The particular solution sets all free variables to zero; the kernel matrix
    columns are the canonical null-space basis.
    """
    if len(b) != a.nrows:
        raise ShapeError(f"rhs length {len(b)} != row count {a.nrows}")
    dom = a.domain
    bcol = Matrix.from_columns(dom, [list(b)])
    if a.ncols == 0:
        if any(v for v in bcol.column(0)):
            return None
        return SolveResult([], Matrix(dom, [], _trusted=True))
    aug = a.hstack(bcol)
    red = rref(aug)
    if red.pivots and red.pivots[-1] == a.ncols:
        return None
    x0 = [dom.zero()] * a.ncols
    for t, pcol in enumerate(red.pivots):
        x0[pcol] = red.matrix.rows[t][a.ncols]
    return SolveResult(x0, kernel_basis(a))


def solve_matrix(a: Matrix, b: Matrix) -> Matrix | None:
    """Solve a*X = b columnwise (free variables zero); None if any column fails."""
    dom = _same_domain(a, b)
    if a.nrows != b.nrows:
        raise ShapeError("row count mismatch")
    if a.ncols == 0:
        return None if not b.is_zero() else Matrix(dom, [[] for _ in range(0)], _trusted=True)
    aug = a.hstack(b)
    red = rref(aug)
    if any(p >= a.ncols for p in red.pivots):
        return None
    cols = []
    for j in range(b.ncols):
        x = [dom.zero()] * a.ncols
        for t, pcol in enumerate(red.pivots):
            x[pcol] = red.matrix.rows[t][a.ncols + j]
        cols.append(x)
    return Matrix.from_columns(dom, cols)


def invert(m: Matrix) -> Matrix | None:
    if m.nrows != m.ncols:
        return None
    if m.nrows == 0:
        return m
    x = solve_matrix(m, Matrix.identity(m.domain, m.nrows))
    return x


def is_invertible(m: Matrix) -> bool:
    return m.nrows == m.ncols and rref(m).rank == m.nrows


def column_span_basis(m: Matrix) -> Matrix:
    """Deterministic basis of the column space (original pivot columns)."""
    red = rref(m.transpose())
    rows = [red.matrix.rows[i] for i in range(red.rank)]
    return Matrix(m.domain, rows, _trusted=True).transpose()


def in_column_span(m: Matrix, vec: Sequence[Scalar]) -> bool:
    return solve(m, vec) is not None


def kron(a: Matrix, b: Matrix) -> Matrix:
    dom = _same_domain(a, b)
    out_rows = []
    for ra in a.rows:
        for rb in b.rows:
            out_rows.append([dom.mul(x, y) for x in ra for y in rb])
    if not a.rows or not b.rows:
        return Matrix(dom, [[] for _ in range(a.nrows * b.nrows)], _trusted=True)
    return Matrix(dom, out_rows, _trusted=True)


def block_diag(domain: Domain, blocks: Sequence[Matrix]) -> Matrix:
    total_r = sum(b.nrows for b in blocks)
    total_c = sum(b.ncols for b in blocks)
    z = domain.zero()
    rows = [[z] * total_c for _ in range(total_r)]
    r0 = c0 = 0
    for b in blocks:
        if b.domain != domain:
            raise DomainMismatchError("block domain mismatch")
        for i, row in enumerate(b.rows):
            rows[r0 + i][c0:c0 + b.ncols] = row
        r0 += b.nrows
        c0 += b.ncols
    return Matrix(domain, rows, _trusted=True)


def vec_row_major(m: Matrix) -> list:
    return [v for row in m.rows for v in row]


def unvec_row_major(domain: Domain, data: Sequence[Scalar], nrows: int, ncols: int) -> Matrix:
    if len(data) != nrows * ncols:
        raise ShapeError("vec length mismatch")
    return Matrix(domain, [list(data[i * ncols:(i + 1) * ncols]) for i in range(nrows)], _trusted=True)


class QuotientSpace:
    """F^d modulo the span of given relation vectors, with a canonical basis.

    The basis of the quotient is indexed by the pivot-free coordinates of the
    reduced relation span; ``project`` reduces a vector against the rref rows
    and reads off the free coordinates, ``section`` places quotient
    coordinates back at the free slots.
    """

    def __init__(self, domain: Domain, ambient_dim: int, relations: Sequence[Sequence[Scalar]]):
        self.domain = domain
        self.ambient_dim = ambient_dim
        rel = Matrix(domain, [list(r) for r in relations], _trusted=False)
        if rel.nrows and rel.ncols != ambient_dim:
            raise ShapeError("relation length mismatch")
        red = rref(rel) if rel.nrows else RrefResult(rel, 0, ())
        self.reduced_rows = [red.matrix.rows[i] for i in range(red.rank)]
        self.pivots = list(red.pivots)
        pivot_set = set(self.pivots)
        self.free = [j for j in range(ambient_dim) if j not in pivot_set]
        self.dim = len(self.free)

    def reduce(self, vec: Sequence[Scalar]) -> list:
        dom = self.domain
        v = [dom.coerce(x) for x in vec]
        for row, pcol in zip(self.reduced_rows, self.pivots):
            c = v[pcol]
            if c:
                v = [dom.sub(a, dom.mul(c, b)) for a, b in zip(v, row)]
        return v

    def project(self, vec: Sequence[Scalar]) -> list:
        v = self.reduce(vec)
        return [v[j] for j in self.free]

    def section(self, qvec: Sequence[Scalar]) -> list:
        dom = self.domain
        v = [dom.zero()] * self.ambient_dim
        for val, j in zip(qvec, self.free):
            v[j] = dom.coerce(val)
        return v

    def projection_matrix(self) -> Matrix:
        cols = []
        dom = self.domain
        for i in range(self.ambient_dim):
            e = [dom.zero()] * self.ambient_dim
            e[i] = dom.one()
            cols.append(self.project(e))
        return Matrix.from_columns(dom, cols)

    def section_matrix(self) -> Matrix:
        cols = []
        for i in range(self.dim):
            e = [self.domain.zero()] * self.dim
            e[i] = self.domain.one()
            cols.append(self.section(e))
        return Matrix.from_columns(self.domain, cols)

    def induced_map(self, f: Matrix) -> Matrix:
        """Matrix of the induced map on the quotient for f descending to it."""
        cols = [self.project(f.apply(self.section_vector(i))) for i in range(self.dim)]
        return Matrix.from_columns(self.domain, cols)

    def section_vector(self, i: int) -> list:
        e = [self.domain.zero()] * self.dim
        e[i] = self.domain.one()
        return self.section(e)


def find_invertible_in_span(mats: Sequence[Matrix], seed: int = 0,
                            max_tries: int = 200,
                            exhaustive_limit: int = 4096,
                            predicate=None) -> tuple[list, Matrix] | None:
    """Search the span of square matrices for an invertible element.

    Tries each basis matrix, the full sum, then seeded random combinations.
    Over GF(p) with p**len(mats) small the whole span is enumerated, which
    makes a negative answer exact rather than a bounded search.  Returns
    (coefficients, matrix) or None.  ``predicate`` overrides the default
    invertibility test.
    """
    if not mats:
        return None
    dom = mats[0].domain
    ok = predicate if predicate is not None else is_invertible
    d = len(mats)

    def combo(coeffs):
        acc = mats[0].scale(coeffs[0])
        for c, m in zip(coeffs[1:], mats[1:]):
            if c:
                acc = acc + m.scale(c)
        return acc

    if dom.is_field_p and dom.p ** d <= exhaustive_limit:
        for coeffs in itertools.product(range(dom.p), repeat=d):
            if not any(coeffs):
                continue
            m = combo(list(coeffs))
            if ok(m):
                return list(coeffs), m
        return None

    one = dom.one()
    zero = dom.zero()
    for i in range(d):
        coeffs = [zero] * d
        coeffs[i] = one
        if ok(mats[i]):
            return coeffs, mats[i]
    coeffs = [one] * d
    m = combo(coeffs)
    if ok(m):
        return coeffs, m
    rng = random.Random(seed)
    for _ in range(max_tries):
        if dom.is_field_p:
            coeffs = [rng.randrange(dom.p) for _ in range(d)]
        else:
            coeffs = [Fraction(rng.randrange(-9, 10)) for _ in range(d)]
        if not any(coeffs):
            continue
        m = combo(coeffs)
        if ok(m):
            return coeffs, m
    return None
