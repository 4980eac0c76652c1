"""Fox calculus and Alexander-type module presentations.

Convention, used everywhere: d(x_i)/d(x_j) = delta_ij,
d(x_i^-1)/d(x_j) = -delta_ij * x_i^-1, and the left-to-right product
rule d(uv)/dx = du/dx + u * dv/dx, all taken in the abelianized group
algebra chosen by the flavor.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from . import abelian
from .errors import InvariantError, PreconditionError, SizeGuardError
from .linalg import modp_kernel
from .ring import INT, RAT, AbelianGroupRing, GroupAlgebraElem, mod_p


class GroupAlgebraMatrix:
    """Matrix over a group algebra; rows indexed by generators of G,
    columns by relators (the Alexander matrix shape)."""

    __slots__ = ("ring", "rows", "cols", "entries", "generator_images")

    def __init__(self, ring, entries, generator_images=None):
        self.ring = ring
        self.entries = [list(row) for row in entries]
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.rows and self.entries[0] else 0
        if self.rows and not self.entries[0]:
            self.cols = 0
        self.generator_images = generator_images

    def column(self, i):
        return [self.entries[j][i] for j in range(self.rows)]

    def columns(self):
        return [self.column(i) for i in range(self.cols)]

    def to_rational(self):
        return GroupAlgebraMatrix(
            self.ring.rationalized(),
            [[e.to_rational() for e in row] for row in self.entries],
            generator_images=self.generator_images,
        )


class ModulePresentation:
    """A finitely presented module: cokernel of the relation matrix.

    `columns` is a list of relation columns, each of length
    num_generators, with entries in the coefficient ring (group-algebra
    elements here; the graded polynomial version lives in the lie
    module).  Optional generator_degrees mark a graded presentation.
    """

    __slots__ = ("ring", "num_generators", "columns", "generator_degrees",
                 "generator_labels")

    def __init__(self, ring, num_generators, columns, generator_degrees=None,
                 generator_labels=None):
        self.ring = ring
        self.num_generators = num_generators
        self.columns = [list(col) for col in columns]
        for col in self.columns:
            if len(col) != num_generators:
                raise InvariantError("relation column has wrong length")
        self.generator_degrees = (
            tuple(generator_degrees) if generator_degrees is not None else None
        )
        self.generator_labels = (
            tuple(generator_labels) if generator_labels is not None else None
        )

    @property
    def num_relations(self):
        return len(self.columns)

    def entry(self, i, k):
        return self.columns[k][i]

    def to_rational(self):
        return ModulePresentation(
            self.ring.rationalized(),
            self.num_generators,
            [[e.to_rational() for e in col] for col in self.columns],
            generator_degrees=self.generator_degrees,
            generator_labels=self.generator_labels,
        )

    def serialize(self):
        ring = self.ring
        return {
            "ring": {
                "free_rank": ring.free_rank,
                "torsion": list(ring.torsion_divisors),
                "flavor": "ModP" if isinstance(ring.flavor, tuple) else ring.flavor,
                **({"p": ring.flavor[1]} if isinstance(ring.flavor, tuple) else {}),
            },
            "generators": (list(self.generator_labels)
                           if self.generator_labels else self.num_generators),
            "relations": [[e.text() for e in col] for col in self.columns],
        }


# ---------------------------------------------------------------------------
# Fox derivatives


def _fox_row(word, images, ring):
    """All Fox derivatives of a word, as a list over the generators.

    images[i] is the group-algebra monomial of generator i+1.
    """
    m = len(images)
    out = [ring.zero() for _ in range(m)]
    prefix = ring.one()
    for g, e in word.letters:
        gen = images[g - 1]
        if e > 0:
            partial = ring.zero()
            power = ring.one()
            for _ in range(e):
                partial = partial + power
                power = power * gen
            contribution = partial
        else:
            inv = _monomial_power(gen, -1)
            partial = ring.zero()
            power = ring.one()
            for _ in range(-e):
                power = power * inv
                partial = partial + power
            contribution = -partial
        out[g - 1] = out[g - 1] + prefix * contribution
        prefix = prefix * _monomial_power(gen, e)
    return out


def _monomial_power(elem, e):
    # generator images are single terms with coefficient 1
    ((free, tors), _coeff) = next(iter(elem.terms.items()))
    ring = elem.ring
    return ring.monomial(tuple(e * x for x in free), tuple(e * x for x in tors))


def generator_images(pres, flavor):
    """Ring + abelianized generator images for the requested flavor."""
    if flavor == "ab":
        data = abelian.abelianization(pres)
        ring = AbelianGroupRing(data.free_rank, data.torsion_divisors, INT)
        images = [ring.group_element(data.generator_image(j))
                  for j in range(1, pres.num_generators + 1)]
    elif flavor == "abf":
        data = abelian.abelianization(pres)
        ring = AbelianGroupRing(data.free_rank, (), INT)
        images = [ring.monomial(data.generator_image(j)[0])
                  for j in range(1, pres.num_generators + 1)]
    elif isinstance(flavor, tuple) and flavor[0] == "mod_p":
        p = flavor[1]
        b, proj = abelian.mod_p_h1_data(pres, p)
        ring = AbelianGroupRing(0, (p,) * b, mod_p(p))
        images = [ring.monomial((), tuple(proj[i][j] for i in range(b)))
                  for j in range(pres.num_generators)]
    else:
        raise PreconditionError(f"unknown Fox flavor {flavor!r}")
    return ring, images


def fox_matrix(pres, flavor="ab"):
    """The Alexander matrix: entry (j, i) is the abelianized Fox
    derivative d(r_i)/d(x_j) in the flavor's group algebra.

    Presents the Alexander module (integral, torsion-free, or mod-p) as
    its cokernel.  The fundamental Fox identity
    sum_j d(r)/d(x_j) (x_j - 1) = ab(r) - 1 = 0 is asserted per relator.
    """
    ring, images = generator_images(pres, flavor)
    m = pres.num_generators
    rows = [[None] * len(pres.relators) for _ in range(m)]
    for i, rel in enumerate(pres.relators):
        col = _fox_row(rel, images, ring)
        check = ring.zero()
        for j in range(m):
            check = check + col[j] * (images[j] - ring.one())
        if not check.is_zero():
            raise InvariantError("fundamental Fox identity failed")
        for j in range(m):
            rows[j][i] = col[j]
    return GroupAlgebraMatrix(ring, rows, generator_images=images)


def alexander_module(pres, flavor="ab"):
    """A(G) (or its abf / mod-p variant) presented by the Fox matrix."""
    mat = fox_matrix(pres, flavor)
    return ModulePresentation(mat.ring, mat.rows, mat.columns())


# ---------------------------------------------------------------------------
# Koszul-complex presentation of B(G) for commutator-relators presentations


def _pair_index(m):
    pairs = list(combinations(range(1, m + 1), 2))
    return pairs, {pq: idx for idx, pq in enumerate(pairs)}


def _substitute_one(elem, var):
    """Set t_{var+1} := 1 in a group-algebra element (free part only)."""
    ring = elem.ring
    out = {}
    for (free, tors), c in elem.terms.items():
        key = (free[:var] + (0,) + free[var + 1:], tors)
        s = ring.coeff_add(out.get(key, ring.coeff(0)), c)
        if s:
            out[key] = s
        else:
            out.pop(key, None)
    return GroupAlgebraElem(ring, out)


def _divide_by_t_minus_1(elem, var):
    """Exact division of elem by (t_{var+1} - 1); elem must vanish at
    t_{var+1} = 1 on each slice."""
    ring = elem.ring
    slices = {}
    for (free, tors), c in elem.terms.items():
        rest = (free[:var] + free[var + 1:], tors)
        slices.setdefault(rest, {})[free[var]] = c
    out = {}
    for (rest_free, tors), coeffs in slices.items():
        lo = min(coeffs)
        hi = max(coeffs)
        poly = [coeffs.get(lo + i, ring.coeff(0)) for i in range(hi - lo + 1)]
        if sum(poly) != 0:
            raise InvariantError("Koszul homotopy division is not exact")
        # poly(t) = (t - 1) q(t): q_{i-1} = p_i + q_i, downward
        q = [ring.coeff(0)] * (len(poly) - 1)
        acc = ring.coeff(0)
        for i in range(len(poly) - 1, 0, -1):
            acc = ring.coeff_add(acc, poly[i])
            q[i - 1] = acc
        for i, c in enumerate(q):
            if c:
                free = rest_free[:var] + (lo + i,) + rest_free[var:]
                out[(free, tors)] = c
    return GroupAlgebraElem(ring, out)


def koszul_d2_apply(column_wedge, m, ring):
    """Image under the Koszul differential d2(e_i ^ e_j) =
    (t_i - 1) e_j - (t_j - 1) e_i."""
    out = [ring.zero() for _ in range(m)]
    for (i, j), c in column_wedge.items():
        ti = ring.monomial(tuple(int(k == i - 1) for k in range(m)))
        tj = ring.monomial(tuple(int(k == j - 1) for k in range(m)))
        one = ring.one()
        out[j - 1] = out[j - 1] + c * (ti - one)
        out[i - 1] = out[i - 1] - c * (tj - one)
    return out


def koszul_lift(column, ring):
    """Lift a kernel element of the Koszul d1 through d2, peeling the
    highest-index variable; returns {(i, j): coefficient} over pairs i<j.
    """
    m = ring.free_rank
    v = list(column)
    wedge = {}
    for k in range(m, 1, -1):
        reduced = []
        for j in range(k - 1):
            vj1 = _substitute_one(v[j], k - 1)
            qj = _divide_by_t_minus_1(v[j] - vj1, k - 1)
            if not qj.is_zero():
                key = (j + 1, k)
                cur = wedge.get(key, ring.zero()) - qj
                if cur.is_zero():
                    wedge.pop(key, None)
                else:
                    wedge[key] = cur
            reduced.append(vj1)
        v = reduced
    if v and not v[0].is_zero():
        raise InvariantError("Koszul lift terminated with a nonzero residue")
    check = koszul_d2_apply(wedge, m, ring)
    for a, b in zip(check, column):
        if not (a - b).is_zero():
            raise InvariantError("Koszul lift does not map to the Fox row")
    return wedge


def b_presentation_koszul(pres):
    """Presentation of the Alexander invariant B(G) over Z[t_1..t_m]^+-
    for a commutator-relators presentation (G_ab = Z^m).

    Generators are e_i^e_j (i<j); relations are the Koszul d3 columns
    plus, for each relator, the lift of its Fox row through d2 computed
    by the explicit contracting homotopy.
    """
    if not pres.is_commutator_relators():
        raise PreconditionError(
            "b_presentation_koszul needs zero exponent sums in every "
            "generator; use the univariate or truncation pipeline instead"
        )
    m = pres.num_generators
    ring = AbelianGroupRing(m, (), INT)
    pairs, pair_of = _pair_index(m)
    zero = ring.zero()
    one = ring.one()

    def tvar(i):
        return ring.monomial(tuple(int(k == i - 1) for k in range(m)))

    columns = []
    # Koszul d3 columns, one per triple i<j<k:
    # (1 - t_i) e_jk + (t_j - 1) e_ik + (1 - t_k) e_ij
    for (i, j, k) in combinations(range(1, m + 1), 3):
        col = [zero] * len(pairs)
        col[pair_of[(j, k)]] = one - tvar(i)
        col[pair_of[(i, k)]] = tvar(j) - one
        col[pair_of[(i, j)]] = one - tvar(k)
        columns.append(col)
    # lifted Fox rows
    images = [tvar(i) for i in range(1, m + 1)]
    for rel in pres.relators:
        fox_col = _fox_row(rel, images, ring)
        wedge = koszul_lift(fox_col, ring)
        col = [zero] * len(pairs)
        for key, c in wedge.items():
            col[pair_of[key]] = c
        columns.append(col)
    labels = [f"e{i}{j}" if m < 10 else f"e{i}_{j}" for (i, j) in pairs]
    return ModulePresentation(ring, len(pairs), columns,
                              generator_labels=labels)


# ---------------------------------------------------------------------------
# Univariate normal form over Q[t^+-1] for knot-like groups


def _laurent_to_poly(elem):
    """Rational Laurent element in 1 variable -> coefficient list of the
    associated polynomial with nonzero constant term (unit-cleared)."""
    if elem.is_zero():
        return []
    exps = [free[0] for (free, _t) in elem.terms]
    lo = min(exps)
    hi = max(exps)
    out = [Fraction(0)] * (hi - lo + 1)
    for (free, _t), c in elem.terms.items():
        out[free[0] - lo] = Fraction(c)
    return out


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return _poly_trim(out)


def _poly_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return _poly_trim([x - y for x, y in zip(a, b)])


def _poly_divmod(num, den):
    num = _poly_trim(num)
    den = _poly_trim(den)
    q = [Fraction(0)] * max(1, len(num) - len(den) + 1)
    while num and len(num) >= len(den):
        shift = len(num) - len(den)
        c = num[-1] / den[-1]
        q[shift] = c
        num = _poly_sub(num, [Fraction(0)] * shift + [c * d for d in den])
    return _poly_trim(q), num


def _poly_gcd(a, b):
    a, b = _poly_trim(a), _poly_trim(b)
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    return _poly_monic(a)


def _poly_monic(a):
    a = _poly_trim(a)
    if not a:
        return a
    lead = a[-1]
    return [c / lead for c in a]


def _strip_unit(a):
    """Divide out t^k so the constant term is nonzero; monic normalize."""
    a = _poly_trim(a)
    i = 0
    while i < len(a) and a[i] == 0:
        i += 1
    return _poly_monic(a[i:])


def _poly_det(matrix):
    n = len(matrix)
    if n == 0:
        return [Fraction(1)]
    if n == 1:
        return matrix[0][0]
    total = []
    for j, entry in enumerate(matrix[0]):
        if not entry:
            continue
        minor = [row[:j] + row[j + 1:] for row in matrix[1:]]
        term = _poly_mul(entry, _poly_det(minor))
        if j % 2:
            term = [-c for c in term]
        total = _poly_sub(total, [-c for c in term])
    return _poly_trim(total)


def b_univariate(pres):
    """Smith normal form of B(G) (x) Q over the PID Q[t^+-1], for groups
    with G_ab = Z.

    Uses the Crowell sequence: over Q[t^+-1] the augmentation ideal is
    free, so A = B + R and the nonunit invariant factors of the Fox
    matrix present the torsion of B; the free rank drops by one.
    """
    data = abelian.abelianization(pres)
    if data.free_rank != 1 or data.torsion_divisors:
        raise PreconditionError("b_univariate needs G_ab isomorphic to Z")
    mat = fox_matrix(pres, "abf").to_rational()
    m, ell = mat.rows, mat.cols
    polys = [[_laurent_to_poly(mat.entries[j][i]) for i in range(ell)]
             for j in range(m)]
    # invariant factors via gcds of k x k minors
    d_prev = [Fraction(1)]
    factors = []
    rank = 0
    for k in range(1, min(m, ell) + 1):
        g = []
        for rows in combinations(range(m), k):
            for cols in combinations(range(ell), k):
                minor = _poly_det([[polys[r][c] for c in cols] for r in rows])
                if minor:
                    g = _poly_gcd(g, minor) if g else _poly_monic(minor)
        if not g:
            break
        rank = k
        lam, rem = _poly_divmod(g, d_prev)
        if rem:
            raise InvariantError("minor gcds failed divisibility")
        factors.append(_strip_unit(lam))
        d_prev = g
    torsion = [f for f in factors if len(f) > 1]
    free_rank = m - 1 - rank
    ring = AbelianGroupRing(1, (), RAT)
    gens = len(torsion) + free_rank
    columns = []
    for idx, f in enumerate(torsion):
        col = [ring.zero()] * gens
        col[idx] = GroupAlgebraElem(
            ring, {((i,), ()): c for i, c in enumerate(f) if c})
        columns.append(col)
    return ModulePresentation(ring, gens, columns)


# ---------------------------------------------------------------------------
# The finite mod-p Alexander invariant


class FiniteModule:
    """B_p(G) as a finite-dimensional F_p vector space with the
    commuting action of the generators of H_1(G; Z_p)."""

    __slots__ = ("p", "dimension", "ambient_dimension", "basis", "actions",
                 "num_characters")

    def __init__(self, p, dimension, ambient_dimension, basis, actions):
        self.p = p
        self.dimension = dimension
        self.ambient_dimension = ambient_dimension
        self.basis = [tuple(v) for v in basis]
        self.actions = [tuple(tuple(row) for row in mat) for mat in actions]
        self.num_characters = len(actions)


class _ModpEchelon:
    def __init__(self, p, width):
        self.p = p
        self.width = width
        self.pivots = {}

    def reduce(self, vec):
        vec = list(vec)
        p = self.p
        for col in range(self.width):
            if vec[col] % p and col in self.pivots:
                f = vec[col] % p
                row = self.pivots[col]
                vec = [(a - f * b) % p for a, b in zip(vec, row)]
        return [a % p for a in vec]

    def insert(self, vec):
        red = self.reduce(vec)
        lead = next((i for i, c in enumerate(red) if c), None)
        if lead is None:
            return None
        inv = pow(red[lead], -1, self.p)
        self.pivots[lead] = [c * inv % self.p for c in red]
        return lead

    @property
    def rank(self):
        return len(self.pivots)


def b_mod_p(pres, p):
    """B_p(G) realized inside the mod-p Crowell sequence: the kernel of
    A_p(G) -> I_p(G), all exact F_p linear algebra over the finite
    group algebra Lambda_p of H_1(G; Z_p)."""
    b, proj = abelian.mod_p_h1_data(pres, p)
    if b >= 12:
        raise SizeGuardError(f"b_1^p = {b} >= 12; Lambda_p too large")
    m = pres.num_generators
    dim_lambda = p ** b
    mat = fox_matrix(pres, ("mod_p", p))
    ring = mat.ring

    # index Lambda basis by torsion exponent tuples, mixed radix
    def idx_of(tors):
        out = 0
        for e in tors:
            out = out * p + (e % p)
        return out

    def elem_to_vec(elem):
        vec = [0] * dim_lambda
        for (_free, tors), c in elem.terms.items():
            vec[idx_of(tors)] = c % p
        return vec

    def column_to_vec(col):
        out = []
        for e in col:
            out.extend(elem_to_vec(e))
        return out

    def multiply_by_generator(vec, s):
        """Multiply a Lambda^m vector (flat, m blocks) by generator s."""
        out = [0] * len(vec)
        for j in range(m):
            base = j * dim_lambda
            for idx in range(dim_lambda):
                c = vec[base + idx]
                if c:
                    tors = []
                    rem = idx
                    for _ in range(b):
                        tors.append(rem % p)
                        rem //= p
                    tors.reverse()
                    tors[s] = (tors[s] + 1) % p
                    out[base + idx_of(tors)] = c
        return out

    # psi: Lambda^m -> Lambda, e_j -> image(x_j) - 1
    images = [elem_to_vec(img - ring.one()) for img in mat.generator_images]
    psi_rows = [[0] * (m * dim_lambda) for _ in range(dim_lambda)]
    for j in range(m):
        for idx in range(dim_lambda):
            # column (j, idx): group element h with index idx times (x_j - 1)
            unit = [0] * dim_lambda
            unit[idx] = 1
            # h * (xbar_j - 1): permute images[j] by adding h's exponents
            tors = []
            rem = idx
            for _ in range(b):
                tors.append(rem % p)
                rem //= p
            tors.reverse()
            for tgt in range(dim_lambda):
                c = images[j][tgt]
                if c:
                    t2 = []
                    rem2 = tgt
                    for _ in range(b):
                        t2.append(rem2 % p)
                        rem2 //= p
                    t2.reverse()
                    shifted = tuple((a + c2) % p for a, c2 in zip(t2, tors))
                    psi_rows[idx_of(shifted)][j * dim_lambda + idx] = c
    kernel = modp_kernel(psi_rows, m * dim_lambda, p)

    # W = Lambda-span of the Fox columns, saturated under the group action
    wech = _ModpEchelon(p, m * dim_lambda)
    queue = [column_to_vec(col) for col in mat.columns()]
    while queue:
        vec = queue.pop()
        red = wech.reduce(vec)
        if wech.insert(red) is not None:
            for s in range(b):
                queue.append(multiply_by_generator(red, s))
    # sanity: W must sit inside ker(psi)
    for col in mat.columns():
        vec = column_to_vec(col)
        out = [0] * dim_lambda
        for row_idx in range(dim_lambda):
            out[row_idx] = sum(a * v for a, v in zip(psi_rows[row_idx], vec)) % p
        if any(out):
            raise InvariantError("Fox columns do not lie in ker(psi)")

    basis = []
    bech = _ModpEchelon(p, m * dim_lambda)
    for row in wech.pivots.values():
        bech.insert(row)
    for vec in kernel:
        red = bech.reduce(vec)
        if any(red):
            bech.insert(red)
            basis.append(wech.reduce(vec))
    dim = len(basis)

    # action matrices: solve g_s . v_i = sum_j T[j][i] v_j modulo W
    actions = []
    if dim:
        basis_mat = [[basis[i][k] for i in range(dim)]
                     for k in range(m * dim_lambda)]
        for s in range(b):
            cols = []
            for i in range(dim):
                target = wech.reduce(multiply_by_generator(basis[i], s))
                cols.append(_solve_modp(basis_mat, target, p))
            actions.append([[cols[i][j] for i in range(dim)]
                            for j in range(dim)])
    else:
        actions = [[] for _ in range(b)]
    return FiniteModule(p, dim, m * dim_lambda, basis, actions)


def _solve_modp(matrix_cols_by_row, target, p):
    """Solve M x = target over F_p; matrix given as rows of length dim."""
    rows = len(matrix_cols_by_row)
    dim = len(matrix_cols_by_row[0])
    aug = [matrix_cols_by_row[r][:] + [target[r] % p] for r in range(rows)]
    pivots = []
    r = 0
    for c in range(dim):
        piv = next((i for i in range(r, rows) if aug[i][c] % p), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = pow(aug[r][c], -1, p)
        aug[r] = [x * inv % p for x in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c] % p:
                f = aug[i][c]
                aug[i] = [(x - f * y) % p for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    x = [0] * dim
    for row_idx, c in enumerate(pivots):
        x[c] = aug[row_idx][dim]
    # consistency
    for i in range(rows):
        s = sum(matrix_cols_by_row[i][j] * x[j] for j in range(dim)) % p
        if s != target[i] % p:
            raise InvariantError("mod-p solve failed; vector not in span")
    return x
