"""Massey-correspondence pipelines: rational Chen ranks from the adic
filtration of B(G), mod-p Chen ranks from the nilpotent filtration of
B_p(G).

theta_1 is reported from b_1 directly; the module correspondence
starts at n = 2 (theta_{n} = dim gr_{n-2} of B (x) Q).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from . import abelian
from .errors import InvariantError, PreconditionError, SizeGuardError
from .fox import b_mod_p, b_presentation_koszul, b_univariate, fox_matrix
from .linalg import SparseEchelon, modp_rank
from .modtools import GradedDims, graded_dims_truncated
from .ring import TruncatedLocalElem, laurent_to_truncated


def chen_ranks(pres, max_n):
    """theta_n(G) for n = 1..max_n.

    Routes: the Koszul presentation of B(G) for commutator-relators
    input, the univariate normal form when G_ab = Z, and otherwise the
    truncated Crowell kernel of the Alexander module.
    """
    if max_n < 1:
        raise PreconditionError("max_n must be >= 1")
    if max_n > 20:
        raise SizeGuardError("Chen rank guard (N <= 20) exceeded")
    data = abelian.abelianization(pres)
    theta = [data.free_rank]
    if max_n == 1:
        return GradedDims(1, theta)
    if pres.is_commutator_relators():
        bmod = b_presentation_koszul(pres).to_rational()
        graded = graded_dims_truncated(bmod, max_n)
        theta.extend(graded.dims[: max_n - 1])
    elif data.free_rank == 1 and not data.torsion_divisors:
        bmod = b_univariate(pres)
        graded = graded_dims_truncated(bmod, max_n)
        theta.extend(graded.dims[: max_n - 1])
    else:
        theta.extend(_chen_general(pres, max_n))
    return GradedDims(1, theta)


def _subs_zero(f, var):
    """f with x_var := 0."""
    return TruncatedLocalElem(
        f.order, f.num_vars,
        {mon: c for mon, c in f.terms.items() if mon[var] == 0})


def _div_var(f, var):
    """Exact division of f by x_var (every term must contain x_var)."""
    out = {}
    for mon, c in f.terms.items():
        if mon[var] == 0:
            raise InvariantError("division by a variable is not exact")
        out[mon[:var] + (mon[var] - 1,) + mon[var + 1:]] = c
    return TruncatedLocalElem(f.order, f.num_vars, out)


def _peel_coefficients(f, r):
    """Write f (with zero constant term) as sum_i x_i c_i; returns the
    list of truncated coefficients c_i."""
    coeffs = []
    for i in range(r):
        head = _subs_zero(f, i)
        coeffs.append(_div_var(f - head, i) if not (f - head).is_zero()
                      else TruncatedLocalElem(f.order, f.num_vars))
        f = head
    if not f.is_zero():
        raise InvariantError("peeling left a nonzero constant part")
    return coeffs


def _polynomial_koszul_lift(v, r, order):
    """w with d2(w) = v + (junk of valuation >= order-1), for v in the
    kernel of d1(y) = sum x_i y_i over the truncated local algebra;
    d2(e_i ^ e_j) = x_i e_j - x_j e_i.  Peels the highest variable."""
    wedge = {}
    v = list(v)
    for k in range(r, 1, -1):
        reduced = []
        for j in range(k - 1):
            head = _subs_zero(v[j], k - 1)
            tail = v[j] - head
            if not tail.is_zero():
                qj = _div_var(tail, k - 1)
                key = (j + 1, k)
                cur = wedge.get(key)
                cur = (-qj) if cur is None else cur - qj
                if cur.is_zero():
                    wedge.pop(key, None)
                else:
                    wedge[key] = cur
            reduced.append(head)
        v = reduced
    if v and v[0].valuation() < order - 1:
        raise InvariantError("polynomial Koszul lift left a low-degree residue")
    return wedge


def _chen_general(pres, max_n):
    """gr dims of B (x) Q for a general finite presentation.

    Over Q the torsion part of the augmentation ideal is idempotent and
    dies in R/I^nu, so everything happens in T = Q[x_1..x_r]/m^nu.  A
    free presentation of the completed B is built from the Crowell
    kernel: the map A -> I factors through the Koszul complex on
    (x_1..x_r) via u_j = sum_i x_i c_ij, the generator columns with a
    unit minor split off (their linear parts span the free part of
    G_ab), and the remaining kernel coordinates are free.  Generators:
    one per non-pivot presentation generator plus the wedge pairs;
    relations: the lifted Fox columns and the Koszul d3 columns.  For a
    commutator-relators presentation this reduces to the Koszul
    presentation of B.
    """
    nu = max_n + 2
    mat = fox_matrix(pres, "ab").to_rational()
    ring = mat.ring
    r = ring.free_rank
    m = pres.num_generators

    u = [laurent_to_truncated(img.to_rational() - ring.one(), nu)
         for img in mat.generator_images]
    coeffs = [_peel_coefficients(f, r) for f in u]  # coeffs[j][i]

    # pivot generator columns: linear parts (the free exponent matrix)
    linear = [[coeffs[j][i].constant_term() for j in range(m)]
              for i in range(r)]
    _rank, _rref, pivot_cols = (0, [], [])
    if r:
        from .linalg import rat_rref

        _rank, _rref, pivot_cols = rat_rref(linear)
        if _rank != r:
            raise InvariantError("free part of the abelianization lost rank")
    pivot_set = set(pivot_cols)
    non_pivot = [j for j in range(m) if j not in pivot_set]

    pairs = list(combinations(range(1, r + 1), 2))
    pair_index = {pq: i for i, pq in enumerate(pairs)}
    g = len(non_pivot) + len(pairs)
    zero = TruncatedLocalElem(nu, r)

    columns = []
    for col in mat.columns():
        v = [laurent_to_truncated(e, nu) for e in col]
        cv = []
        for i in range(r):
            total = zero
            for j in range(m):
                total = total + coeffs[j][i] * v[j]
            cv.append(total)
        wedge = _polynomial_koszul_lift(cv, r, nu)
        out = [v[j] for j in non_pivot] + [zero] * len(pairs)
        for key, val in wedge.items():
            out[len(non_pivot) + pair_index[key]] = val
        columns.append(out)
    for (i, j, k) in combinations(range(1, r + 1), 3):
        out = [zero] * g
        out[len(non_pivot) + pair_index[(j, k)]] = _variable(nu, r, i - 1)
        out[len(non_pivot) + pair_index[(i, k)]] = -_variable(nu, r, j - 1)
        out[len(non_pivot) + pair_index[(i, j)]] = _variable(nu, r, k - 1)
        columns.append(out)

    dims = _truncated_coker_graded_dims(columns, g, r, nu)
    return dims[: max_n - 1]


def _variable(order, num_vars, i):
    return TruncatedLocalElem.variable(order, num_vars, i)


def _truncated_coker_graded_dims(columns, g, r, order):
    """Leading-form pivot count for coker of truncated relation columns:
    dim gr_n = g * #monomials(n) - #pivots at degree n."""
    from math import comb

    key = _trunc_coord_key
    echelon = SparseEchelon(sort_key=key)
    queue = []
    for col in columns:
        vec = {}
        for gen, entry in enumerate(col):
            for mon, c in entry.terms.items():
                vec[(mon, gen)] = vec.get((mon, gen), Fraction(0)) + c
        vec = {k: v for k, v in vec.items() if v}
        if vec:
            queue.append(vec)
    while queue:
        vec = queue.pop()
        red = echelon.reduce(vec)
        if not red:
            continue
        lead = min(red, key=key)
        inv = 1 / red[lead]
        red = {k: v * inv for k, v in red.items()}
        echelon.pivots[lead] = red
        for i in range(r):
            child = {}
            for (mon, gen), c in red.items():
                if sum(mon) + 1 < order:
                    m2 = mon[:i] + (mon[i] + 1,) + mon[i + 1:]
                    child[(m2, gen)] = c
            if child:
                queue.append(child)
    pivots_by_degree = {}
    for (mon, _gen) in echelon.pivots:
        d = sum(mon)
        pivots_by_degree[d] = pivots_by_degree.get(d, 0) + 1
    dims = []
    for n in range(order - 1):
        total = g * (comb(n + r - 1, r - 1) if r > 0 else (1 if n == 0 else 0))
        dims.append(total - pivots_by_degree.get(n, 0))
    return dims


def _trunc_coord_key(coord):
    mon, gen = coord
    return (sum(mon), mon, gen)


# ---------------------------------------------------------------------------
# Mod-p Chen ranks


def modp_chen_ranks(pres, p, max_n):
    """theta^p_n for n = 1..max_n, read off the augmentation-ideal
    filtration of the finite module B_p(G); the filtration terminates
    exactly (the ideal is nilpotent), trailing zeros are returned."""
    if max_n < 1:
        raise PreconditionError("max_n must be >= 1")
    fm = b_mod_p(pres, p)
    theta = [abelian.mod_p_h1(pres, p)]
    if max_n == 1:
        return GradedDims(1, theta)
    dim = fm.dimension
    # I^k B_p: spanned by (T_s - 1)-images, iterated
    current = [[1 if i == j else 0 for j in range(dim)] for i in range(dim)]
    dims = [dim]
    while dims[-1] > 0:
        nxt = []
        for s in range(fm.num_characters):
            t = fm.actions[s]
            for v in current:
                w = [(sum(t[i][j] * v[j] for j in range(dim)) - v[i]) % p
                     for i in range(dim)]
                if any(w):
                    nxt.append(w)
        rank = modp_rank(nxt, p) if nxt else 0
        dims.append(rank)
        if rank == 0:
            break
        # reduce to an independent spanning set
        current = _modp_span_basis(nxt, p)
    for n in range(2, max_n + 1):
        lo = dims[n - 2] if n - 2 < len(dims) else 0
        hi = dims[n - 1] if n - 1 < len(dims) else 0
        theta.append(lo - hi)
    return GradedDims(1, theta)


def _modp_span_basis(vectors, p):
    from .fox import _ModpEchelon

    if not vectors:
        return []
    ech = _ModpEchelon(p, len(vectors[0]))
    out = []
    for v in vectors:
        red = ech.reduce(v)
        if any(red):
            ech.insert(red)
            out.append(red)
    return out
