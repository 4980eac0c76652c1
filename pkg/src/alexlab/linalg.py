"""Exact linear algebra: dense Gaussian elimination over Q, F_p, and
cyclotomic fields, plus a sparse rational echelon keyed by arbitrary
ordered coordinates (used by the adic-filtration computations).
"""

from __future__ import annotations

from fractions import Fraction


# -- dense rational ---------------------------------------------------------

def rat_rref(rows):
    """Reduced row echelon form; returns (rank, rref_rows, pivot_cols)."""
    mat = [[Fraction(x) for x in row] for row in rows]
    pivot_cols = []
    r = 0
    ncols = len(mat[0]) if mat else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivot_cols.append(c)
        r += 1
        if r == len(mat):
            break
    return r, mat, pivot_cols


def rat_rank(rows):
    return rat_rref(rows)[0] if rows else 0


def rat_kernel(rows, ncols):
    """Basis of the right kernel {v : A v = 0} of the matrix with the
    given rows (each of length ncols)."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    rank, rref, pivot_cols = rat_rref(rows)
    pivot_set = set(pivot_cols)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free_cols:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, c in enumerate(pivot_cols):
            v[c] = -rref[r][f]
        basis.append(v)
    return basis


# -- dense mod p ------------------------------------------------------------

def modp_rref(rows, p):
    mat = [[x % p for x in row] for row in rows]
    pivot_cols = []
    r = 0
    ncols = len(mat[0]) if mat else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = pow(mat[r][c], -1, p)
        mat[r] = [x * inv % p for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [(x - f * y) % p for x, y in zip(mat[i], mat[r])]
        pivot_cols.append(c)
        r += 1
        if r == len(mat):
            break
    return r, mat, pivot_cols


def modp_rank(rows, p):
    return modp_rref(rows, p)[0] if rows else 0


def modp_kernel(rows, ncols, p):
    if not rows:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    rank, rref, pivot_cols = modp_rref(rows, p)
    pivot_set = set(pivot_cols)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free_cols:
        v = [0] * ncols
        v[f] = 1
        for r, c in enumerate(pivot_cols):
            v[c] = (-rref[r][f]) % p
        basis.append(v)
    return basis


# -- generic field (cyclotomic) --------------------------------------------

def field_rank(rows):
    """Rank of a matrix whose entries support is_zero/inverse/*/-."""
    mat = [list(row) for row in rows]
    if not mat:
        return 0
    rank = 0
    ncols = len(mat[0])
    for c in range(ncols):
        piv = next((i for i in range(rank, len(mat)) if not mat[i][c].is_zero()),
                   None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = mat[rank][c].inverse()
        mat[rank] = [x * inv for x in mat[rank]]
        for i in range(rank + 1, len(mat)):
            if not mat[i][c].is_zero():
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[rank])]
        rank += 1
        if rank == len(mat):
            break
    return rank


# -- sparse rational echelon -------------------------------------------------

class SparseEchelon:
    """Row echelon over Q for sparse vectors with ordered coordinates.

    Vectors are dicts {coordinate: Fraction}.  Each inserted row is
    normalized to have coefficient 1 at its leading coordinate, leading
    meaning minimal under sort_key.  The set of pivot coordinates is
    independent of insertion order.
    """

    def __init__(self, sort_key=None):
        self.sort_key = sort_key or (lambda c: c)
        self.pivots = {}

    def _leading(self, vec):
        return min(vec, key=self.sort_key)

    def reduce(self, vec):
        """Eliminate leading coordinates against stored pivots."""
        vec = {k: Fraction(v) for k, v in vec.items() if v}
        while vec:
            lead = self._leading(vec)
            row = self.pivots.get(lead)
            if row is None:
                return vec
            f = vec[lead]
            for k, v in row.items():
                s = vec.get(k, Fraction(0)) - f * v
                if s:
                    vec[k] = s
                else:
                    vec.pop(k, None)
        return vec

    def insert(self, vec):
        """Reduce and store; returns the new pivot coordinate or None."""
        red = self.reduce(vec)
        if not red:
            return None
        lead = self._leading(red)
        inv = 1 / red[lead]
        self.pivots[lead] = {k: v * inv for k, v in red.items()}
        return lead

    @property
    def rank(self):
        return len(self.pivots)
