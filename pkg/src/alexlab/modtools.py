"""Generic finitely presented module operations: Fitting ideals,
exterior powers, Groebner ideal membership, truncated graded dimensions,
and exact rank evaluation at characters.

Fitting convention (the standard one): Fitt_k of a module presented
with g generators is the ideal of (g-k) x (g-k) minors of the relation
matrix; Fitt_k = (1) when g-k <= 0, and the zero ideal when g-k exceeds
the number of relation columns.  Worked 2 x 3 example: for M with 2
generators and 3 relation columns, Fitt_0 is generated by the three
2 x 2 minors, Fitt_1 by all six entries, Fitt_2 = (1).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import comb

from .errors import PreconditionError, SizeGuardError
from .fox import GroupAlgebraMatrix, ModulePresentation
from .linalg import SparseEchelon, field_rank
from .poly import (GF, QQ, Poly, PolyRing, groebner_ideal, reduce_poly)
from .ring import (INT, RAT, CyclotomicElem, flavor_p,
                   laurent_to_truncated)


class Ideal:
    """An ideal given by a finite generator list, deduplicated and in
    canonical order.  Generators are group-algebra elements or
    polynomials, depending on the ring."""

    __slots__ = ("ring", "generators")

    def __init__(self, ring, generators):
        canon = {}
        for g in generators:
            if g.is_zero():
                continue
            g = _canonical_sign(g)
            canon[g.text()] = g
        self.ring = ring
        self.generators = tuple(canon[k] for k in sorted(canon))

    def is_zero_ideal(self):
        return not self.generators

    def is_unit_ideal(self):
        return any(_is_unit_constant(g) for g in self.generators)

    def serialize(self):
        return {"generators": [g.text() for g in self.generators]}

    def __repr__(self):
        gens = ", ".join(g.text() for g in self.generators) or "0"
        return f"Ideal({gens})"


def _canonical_sign(g):
    first = min(g.terms)
    c = g.terms[first]
    if isinstance(c, Fraction) or isinstance(c, int):
        if c < 0:
            return -g
    return g


def _is_unit_constant(g):
    if len(g.terms) != 1:
        return False
    key, c = next(iter(g.terms.items()))
    if isinstance(g, Poly):
        return sum(key) == 0
    free, tors = key
    return all(e == 0 for e in free) and all(e == 0 for e in tors)


# ---------------------------------------------------------------------------
# Fitting ideals


def _det(entries):
    """Determinant by cofactor expansion; entries are ring elements."""
    n = len(entries)
    if n == 0:
        raise ValueError("empty determinant handled by caller")
    if n == 1:
        return entries[0][0]
    total = None
    for j in range(n):
        entry = entries[0][j]
        if entry.is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in entries[1:]]
        term = entry * _det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        total = entries[0][0] - entries[0][0]  # zero of the right ring
    return total


def fitting_ideal(module, k):
    """Fitt_k(M): ideal of (g-k)-minors of the relation matrix."""
    g = module.num_generators
    if k < 0 or k > g:
        raise PreconditionError("fitting index must satisfy 0 <= k <= generators")
    size = g - k
    ring = module.ring
    if size <= 0:
        return Ideal(ring, [_ring_one(ring)])
    ncols = module.num_relations
    if size > ncols:
        return Ideal(ring, [])
    gens = []
    for rows in combinations(range(g), size):
        for cols in combinations(range(ncols), size):
            minor = _det([[module.entry(i, c) for c in cols] for i in rows])
            if not minor.is_zero():
                gens.append(minor)
    return Ideal(ring, gens)


def _ring_one(ring):
    if isinstance(ring, PolyRing):
        return ring.one()
    return ring.one()


# ---------------------------------------------------------------------------
# Exterior powers


def exterior_power_presentation(module, k):
    """Presentation of the k-th exterior power of coker(relations):
    generators e_S over k-subsets S, relations rel_j ^ e_T over
    (k-1)-subsets T.  For k > generators this is the zero module."""
    g = module.num_generators
    if k < 1:
        raise PreconditionError("exterior power needs k >= 1")
    if k > 4 or comb(g, k) > 5000:
        raise SizeGuardError("exterior power size guard exceeded")
    subsets = list(combinations(range(g), k))
    index = {s: i for i, s in enumerate(subsets)}
    sub_t = list(combinations(range(g), k - 1))
    ring = module.ring
    zero = ring.zero() if not isinstance(ring, PolyRing) else ring.zero()
    columns = []
    for col in module.columns:
        for t in sub_t:
            new_col = [zero] * len(subsets)
            touched = False
            for i in range(g):
                if i in t:
                    continue
                entry = col[i]
                if entry.is_zero():
                    continue
                s = tuple(sorted(t + (i,)))
                sign = sum(1 for x in t if x < i) % 2
                term = -entry if sign else entry
                new_col[index[s]] = new_col[index[s]] + term
                touched = True
            if touched:
                columns.append(new_col)
    labels = None
    if k <= g:
        labels = ["e" + "".join(str(i + 1) for i in s) for s in subsets]
    return ModulePresentation(ring, len(subsets), columns,
                              generator_labels=labels)


# ---------------------------------------------------------------------------
# Groebner membership over Laurent / torsion group algebras


class LaurentPolyContext:
    """Polynomial model of a Laurent group algebra: adjoin u_i with
    t_i u_i - 1 and torsion relations s_j^{d_j} - 1, degrevlex order."""

    def __init__(self, group_ring):
        if group_ring.flavor == INT:
            raise PreconditionError(
                "Groebner over integer coefficients is out of scope; "
                "rationalize first")
        r = group_ring.free_rank
        tors = group_ring.torsion_divisors
        names = []
        for i in range(r):
            names.append("t" if r == 1 else f"t{i+1}")
        for i in range(r):
            names.append("u" if r == 1 else f"u{i+1}")
        for j in range(len(tors)):
            names.append("s" if len(tors) == 1 else f"s{j+1}")
        p = flavor_p(group_ring.flavor)
        field = QQ if p is None else GF(p)
        self.group_ring = group_ring
        self.ring = PolyRing(r + r + len(tors), names, field)
        self.r = r
        self.tors = tors

    def aux_relations(self):
        out = []
        ring = self.ring
        for i in range(self.r):
            t = ring.variable(i)
            u = ring.variable(self.r + i)
            out.append(t * u - ring.one())
        for j, d in enumerate(self.tors):
            s = ring.variable(2 * self.r + j)
            exps = [0] * ring.num_vars
            exps[2 * self.r + j] = d
            out.append(ring.monomial(exps) - ring.one())
        return out

    def convert(self, elem):
        """Group-algebra element -> polynomial (t^-k becomes u^k)."""
        ring = self.ring
        out = ring.zero()
        for (free, tors), c in elem.terms.items():
            exps = [0] * ring.num_vars
            for i, e in enumerate(free):
                if e >= 0:
                    exps[i] = e
                else:
                    exps[self.r + i] = -e
            for j, e in enumerate(tors):
                exps[2 * self.r + j] = e % self.tors[j]
            out = out + ring.monomial(exps, c)
        return out


def ideal_membership(ideal, f):
    """Does f lie in the ideal?  Buchberger with the sugar strategy;
    Laurent/torsion rings go through adjoined inverse variables."""
    ring = ideal.ring
    if isinstance(ring, PolyRing):
        gb = groebner_ideal(list(ideal.generators), ring)
        return reduce_poly(f, gb, ring).is_zero()
    ctx = LaurentPolyContext(ring)
    gens = [ctx.convert(g) for g in ideal.generators] + ctx.aux_relations()
    gb = groebner_ideal(gens, ctx.ring)
    return reduce_poly(ctx.convert(f), gb, ctx.ring).is_zero()


# ---------------------------------------------------------------------------
# Truncated graded dimensions (adic filtration of a module presentation)


class GradedDims:
    """A window of graded dimensions starting at start_degree."""

    __slots__ = ("start_degree", "dims")

    def __init__(self, start_degree, dims):
        self.start_degree = start_degree
        self.dims = tuple(int(d) for d in dims)

    def __iter__(self):
        return iter(self.dims)

    def __eq__(self, other):
        return (isinstance(other, GradedDims)
                and self.start_degree == other.start_degree
                and self.dims == other.dims)

    def dim(self, n):
        idx = n - self.start_degree
        if idx < 0 or idx >= len(self.dims):
            raise IndexError(f"degree {n} outside the computed window")
        return self.dims[idx]

    def __repr__(self):
        return f"GradedDims(start={self.start_degree}, {list(self.dims)})"


def _monomial_count(r, d):
    return comb(d + r - 1, r - 1) if r > 0 else (1 if d == 0 else 0)


def _coord_key(coord):
    mon, gen = coord
    return (sum(mon), mon, gen)


def truncated_relation_echelon(module, order):
    """Echelonized Q-span of the truncated relation submodule.

    Coordinates are (monomial, generator); the echelon's pivot degrees
    read off the valuation filtration of the relation module.
    """
    ring = module.ring
    if ring.flavor != RAT:
        raise PreconditionError("truncation needs the rational flavor")
    r = ring.free_rank
    echelon = SparseEchelon(sort_key=_coord_key)
    queue = []
    for col in module.columns:
        vec = {}
        for gen, entry in enumerate(col):
            trunc = laurent_to_truncated(entry, order)
            for mon, c in trunc.terms.items():
                vec[(mon, gen)] = vec.get((mon, gen), Fraction(0)) + c
        queue.append({k: v for k, v in vec.items() if v})
    while queue:
        vec = queue.pop()
        red = echelon.reduce(vec)
        if not red:
            continue
        lead = min(red, key=_coord_key)
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
    return echelon


def graded_dims_truncated(module, order):
    """dim gr_n of coker(relations) tensored down to R/I^order, for
    n = 0 .. order-2: the adic graded dimensions of the module."""
    if order < 1:
        raise PreconditionError("truncation order must be positive")
    if order > 24:
        raise SizeGuardError("truncation order guard (N <= 24) exceeded")
    module = module.to_rational() if module.ring.flavor == INT else module
    echelon = truncated_relation_echelon(module, order)
    r = module.ring.free_rank
    g = module.num_generators
    pivots_by_degree = {}
    for (mon, _gen) in echelon.pivots:
        d = sum(mon)
        pivots_by_degree[d] = pivots_by_degree.get(d, 0) + 1
    dims = []
    for n in range(order - 1):
        total = g * _monomial_count(r, n)
        dims.append(total - pivots_by_degree.get(n, 0))
    return GradedDims(0, dims)


# ---------------------------------------------------------------------------
# Exact rank at a character


def evaluate_elem(elem, point):
    """Evaluate a group-algebra element at a character point, in the
    cyclotomic field Q(zeta_m) of the point's conductor."""
    m = point.conductor
    ring = elem.ring
    if flavor_p(ring.flavor) is not None:
        raise PreconditionError("character evaluation needs Int/Rat coefficients")
    free_vals = point.free_values()
    inv_vals = [None] * len(free_vals)
    total = CyclotomicElem.from_rational(m, 0)
    for (free, tors), c in elem.terms.items():
        val = CyclotomicElem.from_rational(m, c)
        for i, e in enumerate(free):
            if e > 0:
                base = free_vals[i]
                for _ in range(e):
                    val = val * base
            elif e < 0:
                if inv_vals[i] is None:
                    inv_vals[i] = free_vals[i].inverse()
                for _ in range(-e):
                    val = val * inv_vals[i]
        shift = 0
        for j, e in enumerate(tors):
            d = ring.torsion_divisors[j]
            shift += (m // d) * (e % d) * point.torsion_exponents[j]
        if shift % m:
            val = val * CyclotomicElem.zeta_power(m, shift)
        total = total + val
    return total


def rank_at_character(matrix, point):
    """Exact rank of a group-algebra matrix evaluated at a character."""
    if isinstance(matrix, GroupAlgebraMatrix):
        entries = matrix.entries
    elif isinstance(matrix, ModulePresentation):
        entries = [[matrix.entry(i, kk) for kk in range(matrix.num_relations)]
                   for i in range(matrix.num_generators)]
    else:
        entries = matrix
    if not entries or not entries[0]:
        return 0
    for v in point.free_values():
        if v.is_zero():
            raise PreconditionError("character values must be nonzero")
    evaluated = [[evaluate_elem(e, point) for e in row] for row in entries]
    return field_rank(evaluated)
