"""Smith normal form over the integers, abelianization data, and mod-p
first homology of group presentations.

All integer arithmetic is arbitrary precision; entry blow-up during SNF
is controlled by always pivoting on a minimal-absolute-value entry.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InvariantError, PreconditionError


def smith_normal_form(matrix, rows, cols):
    """Return (diag, U, V) with U * matrix * V diagonal, d_1 | d_2 | ...

    U (rows x rows) and V (cols x cols) are unimodular; diag lists the
    nonnegative diagonal entries (length min(rows, cols), padded with 0).
    """
    a = [list(row) for row in matrix]
    u = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    v = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    def row_op(i, j, q):  # row_i -= q * row_j
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, q):  # col_i -= q * col_j
        for row in a:
            row[i] -= q * row[j]
        for row in v:
            row[i] -= q * row[j]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    t = 0
    limit = min(rows, cols)
    while t < limit:
        # Minimal-absolute-value pivot in the trailing submatrix.
        pivot = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = a[i][j]
                if x != 0 and (best is None or abs(x) < best):
                    best = abs(x)
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    row_op(i, t, q)
                    if a[i][t]:  # remainder became the smaller pivot
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    col_op(j, t, q)
                    if a[t][j]:
                        swap_cols(t, j)
                        dirty = True
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1

    # Enforce the divisibility chain d_i | d_{i+1}.
    changed = True
    while changed:
        changed = False
        for i in range(t - 1):
            if a[i + 1][i + 1] % a[i][i]:
                changed = True
                col_op(i, i + 1, -1)  # col_i += col_{i+1}
                while a[i + 1][i]:
                    q = a[i][i] // a[i + 1][i]
                    row_op(i, i + 1, q)
                    swap_rows(i, i + 1)
                # now a[i][i] = +-gcd and a[i+1][i] = 0; clear fill-in,
                # which gcd divides since column i+1 stayed a multiple
                # of the old d_{i+1}
                if a[i][i] < 0:
                    a[i] = [-x for x in a[i]]
                    u[i] = [-x for x in u[i]]
                if a[i + 1][i + 1] < 0:
                    a[i + 1] = [-x for x in a[i + 1]]
                    u[i + 1] = [-x for x in u[i + 1]]
                if a[i][i + 1]:
                    q, r = divmod(a[i][i + 1], a[i][i])
                    if r:
                        raise InvariantError("SNF divisibility fixup failed")
                    col_op(i + 1, i, q)

    diag = [a[i][i] for i in range(limit)]
    return diag, u, v


def integer_inverse(u):
    """Inverse of a unimodular integer matrix, as an integer matrix."""
    n = len(u)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(u)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise InvariantError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    out = []
    for row in aug:
        ints = []
        for x in row[n:]:
            if x.denominator != 1:
                raise InvariantError("matrix is not unimodular")
            ints.append(int(x))
        out.append(ints)
    return out


class AbelianizationData:
    """G_ab in Smith normal form: Z^free_rank + sum Z_{d_i}.

    basis_change is an (free_rank + #torsion) x m integer matrix whose
    column j gives the image of generator j, free coordinates first and
    torsion coordinates (mod d_i) after.
    """

    __slots__ = ("free_rank", "torsion_divisors", "basis_change")

    def __init__(self, free_rank, torsion_divisors, basis_change):
        for d, e in zip(torsion_divisors, torsion_divisors[1:]):
            if e % d:
                raise InvariantError("torsion divisors must form a chain")
        self.free_rank = free_rank
        self.torsion_divisors = tuple(torsion_divisors)
        self.basis_change = tuple(tuple(row) for row in basis_change)

    @property
    def num_generators(self):
        return len(self.basis_change[0]) if self.basis_change else 0

    def generator_image(self, j):
        """Image of generator j (1-based) as (free tuple, torsion tuple)."""
        col = [row[j - 1] for row in self.basis_change]
        free = tuple(col[: self.free_rank])
        tors = tuple(
            c % d for c, d in zip(col[self.free_rank:], self.torsion_divisors)
        )
        return free, tors

    def project(self, exponent_vector):
        """Image of a Z^m vector in SNF coordinates."""
        free = []
        tors = []
        for i, row in enumerate(self.basis_change):
            val = sum(r * e for r, e in zip(row, exponent_vector))
            if i < self.free_rank:
                free.append(val)
            else:
                free_len = self.free_rank
                tors.append(val % self.torsion_divisors[i - free_len])
        return tuple(free), tuple(tors)

    def __repr__(self):
        return (f"AbelianizationData(rank={self.free_rank}, "
                f"torsion={list(self.torsion_divisors)})")


def abelianization(pres):
    """Smith normal form of the relator exponent matrix of pres."""
    m = pres.num_generators
    x = pres.exponent_matrix()  # one row per relator
    at = [[x[i][j] for i in range(len(x))] for j in range(m)]  # m x l
    ell = len(x)
    if ell == 0:
        diag, u = [], [[int(i == j) for j in range(m)] for i in range(m)]
    else:
        diag, u, _ = smith_normal_form(at, m, ell)
    nonzero = [d for d in diag if d != 0]
    rank = len(nonzero)
    torsion = [d for d in nonzero if d >= 2]
    torsion_rows = [u[i] for i in range(rank) if diag[i] >= 2]
    free_rows = u[rank:]
    return AbelianizationData(m - rank, torsion, list(free_rows) + torsion_rows)


def abelianized_action_invertible(pres, images):
    """True iff the endomorphism of pres_ab induced by generator images
    is an automorphism (checked via surjectivity; f.g. abelian groups
    are Hopfian)."""
    m = pres.num_generators
    e_cols = [w.exponent_vector(m) for w in images]
    rel_cols = [r.exponent_vector(m) for r in pres.relators]
    cols = e_cols + rel_cols
    block = [[col[i] for col in cols] for i in range(m)]
    diag, _, _ = smith_normal_form(block, m, len(cols))
    return len(diag) >= m and all(abs(d) == 1 for d in diag[:m])


def _is_prime(p):
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def require_prime(p):
    if not _is_prime(p):
        raise PreconditionError(f"{p} is not prime")


def mod_p_h1_data(pres, p):
    """dim H_1(G; Z_p) together with the projection matrix Z^m -> Z_p^b."""
    require_prime(p)
    m = pres.num_generators
    x = [[c % p for c in row] for row in pres.exponent_matrix()]
    # row reduce x over F_p, pivots keyed by leading column
    pivots = {}
    for row in x:
        cur = row[:]
        while True:
            lead = next((j for j, c in enumerate(cur) if c), None)
            if lead is None:
                break
            if lead in pivots:
                other = pivots[lead]
                factor = cur[lead]  # other has leading 1
                cur = [(c - factor * o) % p for c, o in zip(cur, other)]
            else:
                inv = pow(cur[lead], -1, p)
                pivots[lead] = [c * inv % p for c in cur]
                break
    # back-substitute for reduced echelon form
    for lead in sorted(pivots, reverse=True):
        row = pivots[lead]
        for lead2 in pivots:
            if lead2 < lead and pivots[lead2][lead]:
                other = pivots[lead2]
                factor = other[lead]
                pivots[lead2] = [(o - factor * c) % p for o, c in zip(other, row)]
    pivot_cols = sorted(pivots)
    free_cols = [j for j in range(m) if j not in pivots]
    b = len(free_cols)
    proj = [[0] * m for _ in range(b)]
    for idx, j in enumerate(free_cols):
        proj[idx][j] = 1
    for lead in pivot_cols:
        row = pivots[lead]
        for idx, f in enumerate(free_cols):
            proj[idx][lead] = (-row[f]) % p
    return b, proj


def mod_p_h1(pres, p):
    """b_1^p(G) = dim H_1(G; Z_p)."""
    return mod_p_h1_data(pres, p)[0]
