"""Pure-Python fallback for the F_p elimination kernels.

Same contracts as the compiled module: nested lists of ints reduced mod p.
"""

from __future__ import annotations


def rref_mod(rows: list[list[int]], p: int) -> tuple[list[list[int]], int, list[int]]:
    m = [row[:] for row in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    piv_row = 0
    for col in range(ncols):
        if piv_row >= nrows:
            break
        target = -1
        for r in range(piv_row, nrows):
            if m[r][col] % p:
                target = r
                break
        if target < 0:
            continue
        if target != piv_row:
            m[piv_row], m[target] = m[target], m[piv_row]
        row = m[piv_row]
        scale = pow(row[col], p - 2, p)
        if scale != 1:
            m[piv_row] = row = [(v * scale) % p for v in row]
        for r in range(nrows):
            if r == piv_row:
                continue
            factor = m[r][col] % p
            if factor:
                other = m[r]
                m[r] = [(a - factor * b) % p for a, b in zip(other, row)]
        pivots.append(col)
        piv_row += 1
    return m, len(pivots), pivots


def matmul_mod(a: list[list[int]], b: list[list[int]], p: int) -> list[list[int]]:
    if not a:
        return []
    if not b:
        return [[] for _ in a]
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) % p for col in bt] for row in a]
