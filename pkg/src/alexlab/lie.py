"""Cup-product data, the holonomy Lie algebra's derived quotient,
infinitesimal Alexander invariants, holonomy Chen ranks, and resonance.

Basis conventions (fixed once, used everywhere): wedge basis e_i ^ e_j
with i < j; a commutator-relators relator contributes the column of its
degree-2 Magnus coefficients c_ij (i < j), which is the antisymmetric
tensor sum c_ij X_i X_j read in the wedge basis.  The linearized
Alexander-module column of a class c has entry
sum_{j>k} c_kj x_j - sum_{i<k} c_ik x_i at generator k; worked example:
for Z^2 = <x1,x2 | [x1,x2]> the single column is (x_2, -x_1)^T, whose
rank-1 locus is {0}, matching R_1(Z^2) = {0}.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .errors import PreconditionError, SizeGuardError
from .fox import ModulePresentation
from .linalg import SparseEchelon, rat_rank
from .modtools import GradedDims, fitting_ideal
from .poly import (QQ, PolyRing, VecPoly, groebner_module,
                   leading_term_module, monomials_of_degree,
                   standard_monomial_counts)


class CupData:
    """First Betti number plus the comultiplication matrix: one column
    per relator/H_2-class, rows indexed by e_i ^ e_j with i < j."""

    __slots__ = ("b1", "columns")

    def __init__(self, b1, columns):
        self.b1 = b1
        cleaned = []
        for col in columns:
            cleaned.append({k: Fraction(v) for k, v in col.items() if v})
        self.columns = tuple(cleaned)

    @property
    def h2_dim(self):
        return len(self.columns)

    def pairs(self):
        return list(combinations(range(1, self.b1 + 1), 2))

    def nabla_rank(self):
        pairs = self.pairs()
        index = {pq: i for i, pq in enumerate(pairs)}
        rows = []
        for col in self.columns:
            row = [Fraction(0)] * len(pairs)
            for k, v in col.items():
                row[index[k]] = v
            rows.append(row)
        return rat_rank(rows) if rows else 0

    def serialize(self):
        return {
            "b1": self.b1,
            "nabla": [{f"{i},{j}": str(v) for (i, j), v in col.items()}
                      for col in self.columns],
        }


class _Magnus2:
    """Degree-<=2 truncation of the Magnus expansion: constant 1, a
    linear vector, and a dense matrix of X_i X_j coefficients."""

    __slots__ = ("m", "lin", "quad")

    def __init__(self, m, lin=None, quad=None):
        self.m = m
        self.lin = lin or [Fraction(0)] * m
        self.quad = quad or [[Fraction(0)] * m for _ in range(m)]

    def times_letter(self, gen, exp):
        """Multiply on the right by (1 + X_gen)^exp."""
        m = self.m
        i = gen - 1
        lin = self.lin[:]
        quad = [row[:] for row in self.quad]
        e = Fraction(exp)
        c2 = Fraction(exp * (exp - 1), 2)
        # (A)(1 + e X_i + c2 X_i^2): linear += e X_i;
        # quad += e * lin (x) X_i + c2 X_i X_i
        for a in range(m):
            quad[a][i] += e * self.lin[a]
        quad[i][i] += c2
        lin[i] += e
        return _Magnus2(m, lin, quad)


def magnus_quadratic(word, num_generators):
    """Degree-2 Magnus coefficients of a word (linear part, matrix)."""
    acc = _Magnus2(num_generators)
    for g, e in word.letters:
        acc = acc.times_letter(g, e)
    return acc.lin, acc.quad


def cup_data(pres):
    """Comultiplication data for a commutator-relators presentation:
    one column per relator, entries the degree-2 Magnus coefficients
    in the wedge basis."""
    if not pres.is_commutator_relators():
        raise PreconditionError(
            "cup_data needs zero exponent sums in every generator; "
            "use a documented quotient-form presentation instead")
    m = pres.num_generators
    columns = []
    for rel in pres.relators:
        lin, quad = magnus_quadratic(rel, m)
        if any(lin):
            raise PreconditionError("relator has a nonzero linear Magnus part")
        col = {}
        for i in range(m):
            if quad[i][i]:
                raise PreconditionError("quadratic Magnus part not antisymmetric")
            for j in range(i + 1, m):
                if quad[i][j] + quad[j][i]:
                    raise PreconditionError(
                        "quadratic Magnus part not antisymmetric")
                if quad[i][j]:
                    col[(i + 1, j + 1)] = quad[i][j]
        columns.append(col)
    return CupData(m, columns)


# ---------------------------------------------------------------------------
# Infinitesimal Alexander invariant and module


def _sym_ring(b1):
    names = tuple(f"x{i+1}" for i in range(b1))
    return PolyRing(b1, names, QQ)


def inf_alexander_invariant(cd):
    """Graded presentation of the derived quotient of the holonomy Lie
    algebra: generators E_2 = wedge pairs in internal degree 0,
    relations the Koszul d3 columns (degree 1) and the nabla columns
    (degree 0)."""
    ring = _sym_ring(cd.b1)
    pairs = cd.pairs()
    index = {pq: i for i, pq in enumerate(pairs)}
    zero = ring.zero()
    columns = []
    for (i, j, k) in combinations(range(1, cd.b1 + 1), 3):
        col = [zero] * len(pairs)
        col[index[(j, k)]] = ring.variable(i - 1)
        col[index[(i, k)]] = -ring.variable(j - 1)
        col[index[(i, j)]] = ring.variable(k - 1)
        columns.append(col)
    for nabla_col in cd.columns:
        col = [zero] * len(pairs)
        for key, v in nabla_col.items():
            col[index[key]] = ring.monomial((0,) * cd.b1, v)
        columns.append(col)
    labels = ["e" + "".join(str(x) for x in pq) for pq in pairs]
    return ModulePresentation(ring, len(pairs), columns,
                              generator_degrees=(0,) * len(pairs),
                              generator_labels=labels)


def inf_alexander_module(cd, h2_dim=None):
    """The linearized Alexander module: b1 generators, one linear
    relation column per H_2 class (the transposed pairing with nabla,
    signs per the module docstring)."""
    if h2_dim is None:
        h2_dim = cd.h2_dim
    if h2_dim > cd.h2_dim:
        raise PreconditionError("h2_dim exceeds the number of nabla columns")
    ring = _sym_ring(cd.b1)
    columns = []
    for nabla_col in cd.columns[:h2_dim]:
        col = [ring.zero()] * cd.b1
        for (i, j), v in nabla_col.items():
            # entry at generator i gains +v x_j, at generator j gains -v x_i
            col[i - 1] = col[i - 1] + ring.variable(j - 1) * v
            col[j - 1] = col[j - 1] - ring.variable(i - 1) * v
        columns.append(col)
    return ModulePresentation(ring, cd.b1, columns,
                              generator_degrees=(0,) * cd.b1)


# ---------------------------------------------------------------------------
# Graded dimensions of graded presentations (two methods)


def graded_coker_dims(module, max_degree):
    """Degree-by-degree linear algebra: dim of coker in each total
    degree 0..max_degree for a graded presentation over a PolyRing."""
    ring = module.ring
    if not isinstance(ring, PolyRing):
        raise PreconditionError("graded dimensions need a polynomial ring")
    degs = module.generator_degrees or (0,) * module.num_generators
    dims = []
    for d in range(max_degree + 1):
        echelon = SparseEchelon(sort_key=lambda c: c)
        total = 0
        for gen, shift in enumerate(degs):
            total += len(monomials_of_degree(ring.num_vars, d - shift)) \
                if d - shift >= 0 else 0
        for col in module.columns:
            # homogeneous column: its degree is deg(entry) + deg(gen)
            col_deg = None
            for gen, entry in enumerate(col):
                if not entry.is_zero():
                    col_deg = entry.degree() + degs[gen]
                    break
            if col_deg is None or col_deg > d:
                continue
            for mon in monomials_of_degree(ring.num_vars, d - col_deg):
                vec = {}
                for gen, entry in enumerate(col):
                    for m2, c in entry.terms.items():
                        key = (gen, tuple(a + b for a, b in zip(m2, mon)))
                        vec[key] = vec.get(key, Fraction(0)) + c
                echelon.insert(vec)
        dims.append(total - echelon.rank)
    return GradedDims(0, dims)


def graded_coker_dims_groebner(module, max_degree):
    """Same dimensions through a module Groebner basis and its standard
    monomial count; the independent second route for cross-checking."""
    ring = module.ring
    degs = module.generator_degrees or (0,) * module.num_generators
    gens = [VecPoly.from_polys(ring, col) for col in module.columns]
    gb = groebner_module(gens, ring)
    counts = standard_monomial_counts(
        leading_term_module(gb), module.num_generators, ring.num_vars,
        list(degs), max_degree)
    return GradedDims(0, counts)


def holonomy_chen_ranks(cd, max_n):
    """Holonomy Chen ranks: theta-bar_1 = b1 and theta-bar_n =
    dim of the degree-(n-2) piece of the graded module presented by
    inf_alexander_invariant, for 2 <= n <= max_n."""
    if max_n > 20:
        raise SizeGuardError("holonomy Chen rank guard (N <= 20) exceeded")
    if max_n < 1:
        raise PreconditionError("max_n must be >= 1")
    dims = [cd.b1]
    if max_n >= 2:
        frak_b = inf_alexander_invariant(cd)
        graded = graded_coker_dims(frak_b, max_n - 2)
        dims.extend(graded.dims)
    return GradedDims(1, dims)


# ---------------------------------------------------------------------------
# Resonance


def resonance_membership(cd, a, k):
    """Is a in R_k?  Builds the two differentials of the (H, delta_a)
    complex and tests dim ker(delta_a^1) - rank(delta_a^0) >= k."""
    if len(a) != cd.b1:
        raise PreconditionError("resonance vector has wrong length")
    if k < 1:
        raise PreconditionError("depth k must be >= 1")
    a = [Fraction(x) for x in a]
    rank0 = 1 if any(a) else 0
    rows = []
    for col in cd.columns:
        row = [Fraction(0)] * cd.b1
        for (i, j), v in col.items():
            # (delta_a u)_c = sum_{i<j} v (a_i u_j - a_j u_i)
            row[j - 1] += v * a[i - 1]
            row[i - 1] -= v * a[j - 1]
        rows.append(row)
    rank1 = rat_rank(rows) if rows else 0
    return (cd.b1 - rank1) - rank0 >= k


def resonance_ideal(cd, k):
    """Defining ideal of R_k as a Fitting ideal of the linearized
    Alexander module (indexed so the zero set matches the resonance
    stratification away from 0)."""
    return fitting_ideal(inf_alexander_module(cd), k)
