"""The exact coefficient tower.

Group algebras of finitely generated abelian groups (integral, rational
Laurent, or mod-p), the truncated local algebra Q[x_1..x_r]/m^N used by
the adic-filtration computations, and cyclotomic fields for exact
character evaluation.  No floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, gcd

from .errors import InvariantError, PreconditionError

INT = "Int"
RAT = "Rat"


def mod_p(p):
    return ("ModP", p)


def flavor_p(flavor):
    return flavor[1] if isinstance(flavor, tuple) else None


class AbelianGroupRing:
    """Descriptor of k[Z^r + sum Z_{d_i}] with k determined by flavor."""

    __slots__ = ("free_rank", "torsion_divisors", "flavor")

    def __init__(self, free_rank, torsion_divisors=(), flavor=INT):
        self.free_rank = free_rank
        self.torsion_divisors = tuple(torsion_divisors)
        self.flavor = flavor

    def __eq__(self, other):
        return (
            isinstance(other, AbelianGroupRing)
            and self.free_rank == other.free_rank
            and self.torsion_divisors == other.torsion_divisors
            and self.flavor == other.flavor
        )

    def __hash__(self):
        return hash((self.free_rank, self.torsion_divisors, self.flavor))

    # -- coefficient arithmetic ------------------------------------------

    def coeff(self, value):
        p = flavor_p(self.flavor)
        if p is not None:
            return int(value) % p
        if self.flavor == RAT:
            return Fraction(value)
        return int(value)

    def coeff_add(self, a, b):
        p = flavor_p(self.flavor)
        return (a + b) % p if p is not None else a + b

    def coeff_mul(self, a, b):
        p = flavor_p(self.flavor)
        return (a * b) % p if p is not None else a * b

    # -- element constructors --------------------------------------------

    def zero(self):
        return GroupAlgebraElem(self, {})

    def one(self):
        return self.monomial((0,) * self.free_rank, (0,) * len(self.torsion_divisors))

    def monomial(self, free_exps, torsion_exps=None, coeff=1):
        if torsion_exps is None:
            torsion_exps = (0,) * len(self.torsion_divisors)
        key = self._normalize_key(free_exps, torsion_exps)
        c = self.coeff(coeff)
        return GroupAlgebraElem(self, {key: c} if c else {})

    def group_element(self, image):
        """Monomial for an (free tuple, torsion tuple) image of a generator."""
        free, tors = image
        return self.monomial(free, tors)

    def _normalize_key(self, free_exps, torsion_exps):
        free = tuple(int(e) for e in free_exps)
        tors = tuple(int(e) % d for e, d in zip(torsion_exps, self.torsion_divisors))
        if len(free) != self.free_rank or len(tors) != len(self.torsion_divisors):
            raise InvariantError("exponent tuple has wrong length")
        return free, tors

    # -- printing ----------------------------------------------------------

    def var_name(self, i, torsion=False):
        if torsion:
            return "s" if len(self.torsion_divisors) == 1 else f"s{i + 1}"
        return "t" if self.free_rank == 1 else f"t{i + 1}"

    def rationalized(self):
        if self.flavor != INT:
            return self
        return AbelianGroupRing(self.free_rank, self.torsion_divisors, RAT)

    def __repr__(self):
        return (f"AbelianGroupRing(r={self.free_rank}, "
                f"torsion={list(self.torsion_divisors)}, flavor={self.flavor})")


def _term_sort_key(key):
    (free, tors) = key
    return (-(sum(free) + sum(tors)), free, tors)


class GroupAlgebraElem:
    """Sparse element of an AbelianGroupRing; no zero coefficients stored."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = {k: c for k, c in terms.items() if c}

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, GroupAlgebraElem)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ring, tuple(sorted(self.terms.items()))))

    def __add__(self, other):
        out = dict(self.terms)
        ring = self.ring
        for k, c in other.terms.items():
            s = ring.coeff_add(out.get(k, ring.coeff(0)), c)
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return GroupAlgebraElem(ring, out)

    def __neg__(self):
        ring = self.ring
        return GroupAlgebraElem(ring, {k: ring.coeff_mul(ring.coeff(-1), c)
                                       for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        ring = self.ring
        if not isinstance(other, GroupAlgebraElem):
            c = ring.coeff(other)
            return GroupAlgebraElem(ring, {k: ring.coeff_mul(v, c)
                                           for k, v in self.terms.items()})
        out = {}
        divs = ring.torsion_divisors
        for (f1, t1), c1 in self.terms.items():
            for (f2, t2), c2 in other.terms.items():
                key = (
                    tuple(a + b for a, b in zip(f1, f2)),
                    tuple((a + b) % d for a, b, d in zip(t1, t2, divs)),
                )
                s = ring.coeff_add(out.get(key, ring.coeff(0)),
                                   ring.coeff_mul(c1, c2))
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return GroupAlgebraElem(ring, out)

    __rmul__ = __mul__

    def augmentation(self):
        """Sum of coefficients (image under the augmentation map)."""
        total = self.ring.coeff(0)
        for c in self.terms.values():
            total = self.ring.coeff_add(total, c)
        return total

    def to_rational(self):
        if self.ring.flavor == RAT:
            return self
        if self.ring.flavor != INT:
            raise PreconditionError("cannot rationalize a mod-p element")
        ring = self.ring.rationalized()
        return GroupAlgebraElem(ring, {k: Fraction(c) for k, c in self.terms.items()})

    def drop_torsion(self):
        """Image under 'torsion coordinates -> trivial' (abf reduction)."""
        ring = AbelianGroupRing(self.ring.free_rank, (), self.ring.flavor)
        out = {}
        for (free, _tors), c in self.terms.items():
            key = (free, ())
            s = ring.coeff_add(out.get(key, ring.coeff(0)), c)
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return GroupAlgebraElem(ring, out)

    def text(self):
        """Canonical text form, terms sorted by total degree then exponents."""
        if not self.terms:
            return "0"
        parts = []
        ring = self.ring
        for key in sorted(self.terms, key=_term_sort_key):
            free, tors = key
            c = self.terms[key]
            factors = []
            for i, e in enumerate(free):
                if e:
                    name = ring.var_name(i)
                    factors.append(name if e == 1 else f"{name}^{e}")
            for i, e in enumerate(tors):
                if e:
                    name = ring.var_name(i, torsion=True)
                    factors.append(name if e == 1 else f"{name}^{e}")
            mono = "*".join(factors)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += f" + {p}" if not p.startswith("-") else f" - {p[1:]}"
        return out

    def __repr__(self):
        return f"<{self.text()}>"


# ---------------------------------------------------------------------------
# Truncated local algebra Q[x_1..x_r]/m^N


class TruncatedLocalElem:
    """Element of Q[x_1..x_r] / (x_1..x_r)^N, dense-in-spirit sparse dict."""

    __slots__ = ("order", "num_vars", "terms")

    def __init__(self, order, num_vars, terms=None):
        if order < 1:
            raise PreconditionError("truncation order must be >= 1")
        self.order = order
        self.num_vars = num_vars
        self.terms = {}
        if terms:
            for k, c in terms.items():
                if sum(k) < order and c:
                    self.terms[k] = Fraction(c)

    @classmethod
    def constant(cls, order, num_vars, value):
        return cls(order, num_vars, {(0,) * num_vars: Fraction(value)})

    @classmethod
    def variable(cls, order, num_vars, i):
        exps = [0] * num_vars
        exps[i] = 1
        return cls(order, num_vars, {tuple(exps): Fraction(1)})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, TruncatedLocalElem)
            and self.order == other.order
            and self.num_vars == other.num_vars
            and self.terms == other.terms
        )

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, Fraction(0)) + c
            if s:
                out[k] = s
            else:
                del out[k]
        return TruncatedLocalElem(self.order, self.num_vars, out)

    def __neg__(self):
        return TruncatedLocalElem(self.order, self.num_vars,
                                  {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TruncatedLocalElem):
            return TruncatedLocalElem(
                self.order, self.num_vars,
                {k: c * Fraction(other) for k, c in self.terms.items()})
        out = {}
        n = self.order
        for k1, c1 in self.terms.items():
            d1 = sum(k1)
            for k2, c2 in other.terms.items():
                if d1 + sum(k2) >= n:
                    continue
                key = tuple(a + b for a, b in zip(k1, k2))
                s = out.get(key, Fraction(0)) + c1 * c2
                if s:
                    out[key] = s
                else:
                    del out[key]
        return TruncatedLocalElem(self.order, self.num_vars, out)

    __rmul__ = __mul__

    def constant_term(self):
        return self.terms.get((0,) * self.num_vars, Fraction(0))

    def inverse(self):
        """Inverse of a unit (nonzero constant term), via the finite
        geometric series of the nilpotent part."""
        c0 = self.constant_term()
        if not c0:
            raise PreconditionError("not a unit in the truncated local algebra")
        one = TruncatedLocalElem.constant(self.order, self.num_vars, 1)
        nil = one - self * (1 / c0)
        out = one
        power = one
        for _ in range(1, self.order):
            power = power * nil
            if power.is_zero():
                break
            out = out + power
        return out * (1 / c0)

    def valuation(self):
        """Least total degree of a nonzero term (order if zero)."""
        return min((sum(k) for k in self.terms), default=self.order)

    def __repr__(self):
        items = sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))
        return f"TruncatedLocalElem(N={self.order}, {items})"


def binomial_series_power(order, num_vars, var_index, exponent):
    """(1 + x_i)^exponent in the truncated algebra, any integer exponent."""
    terms = {}
    for k in range(order):
        exps = [0] * num_vars
        exps[var_index] = k
        terms[tuple(exps)] = Fraction(comb_signed(exponent, k))
    return TruncatedLocalElem(order, num_vars, terms)


def comb_signed(a, k):
    """Generalized binomial coefficient C(a, k) for any integer a."""
    if a >= 0:
        return comb(a, k) if k <= a else 0
    num = 1
    for i in range(k):
        num *= a - i
    den = 1
    for i in range(1, k + 1):
        den *= i
    return num // den


def laurent_to_truncated(f, order):
    """Substitute t_i -> 1 + x_i (torsion generators -> 1) and reduce
    modulo the order-th power of the maximal ideal at the origin.

    Negative exponents expand through the geometric-series inverse of
    1 + x_i, which is exact because x_i is nilpotent.  Torsion dies
    because its augmentation-ideal part is idempotent over Q.
    """
    if f.ring.flavor != RAT:
        raise PreconditionError("laurent_to_truncated needs rational coefficients")
    r = f.ring.free_rank
    out = TruncatedLocalElem(order, r)
    for (free, _tors), c in f.terms.items():
        term = TruncatedLocalElem.constant(order, r, c)
        for i, e in enumerate(free):
            if e:
                term = term * binomial_series_power(order, r, i, e)
        out = out + term
    return out


# ---------------------------------------------------------------------------
# Cyclotomic fields


def _poly_divmod_z(num, den):
    """Quotient/remainder of integer polynomials (den monic), coeff lists
    with index = degree."""
    num = list(num)
    q = [0] * max(1, len(num) - len(den) + 1)
    while len(num) >= len(den) and any(num):
        while num and num[-1] == 0:
            num.pop()
        if len(num) < len(den):
            break
        shift = len(num) - len(den)
        c = num[-1]
        q[shift] = c
        for i, d in enumerate(den):
            num[shift + i] -= c * d
    while num and num[-1] == 0:
        num.pop()
    return q, num


_cyclotomic_cache = {}


def cyclotomic_polynomial(m):
    """Coefficients of Phi_m, ascending degree."""
    if m in _cyclotomic_cache:
        return _cyclotomic_cache[m]
    poly = [-1] + [0] * (m - 1) + [1]  # x^m - 1
    for d in range(1, m):
        if m % d == 0:
            phi_d = cyclotomic_polynomial(d)
            poly, rem = _poly_divmod_z(poly, phi_d)
            if rem:
                raise InvariantError("cyclotomic division was not exact")
    _cyclotomic_cache[m] = tuple(poly)
    return _cyclotomic_cache[m]


class CyclotomicElem:
    """Element of Q(zeta_m) in the power basis of z modulo Phi_m."""

    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor, coeffs=()):
        self.conductor = conductor
        deg = len(cyclotomic_polynomial(conductor)) - 1
        vals = [Fraction(c) for c in coeffs]
        if len(vals) > deg:
            vals = _reduce_mod_phi(vals, conductor)
        vals += [Fraction(0)] * (deg - len(vals))
        self.coeffs = tuple(vals)

    @classmethod
    def from_rational(cls, conductor, value):
        return cls(conductor, [Fraction(value)])

    @classmethod
    def zeta_power(cls, conductor, k):
        k %= conductor
        coeffs = [Fraction(0)] * k + [Fraction(1)]
        return cls(conductor, coeffs)

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def is_rational(self):
        return all(c == 0 for c in self.coeffs[1:])

    def rational_value(self):
        if not self.is_rational():
            raise PreconditionError("element is not rational")
        return self.coeffs[0]

    def __eq__(self, other):
        return (
            isinstance(other, CyclotomicElem)
            and self.conductor == other.conductor
            and self.coeffs == other.coeffs
        )

    def __add__(self, other):
        other = self._match(other)
        return CyclotomicElem(self.conductor,
                              [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return CyclotomicElem(self.conductor, [-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-self._match(other))

    def __mul__(self, other):
        other = self._match(other)
        prod = [Fraction(0)] * (2 * len(self.coeffs))
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    prod[i + j] += a * b
        return CyclotomicElem(self.conductor, _reduce_mod_phi(prod, self.conductor))

    __rmul__ = __mul__

    def _match(self, other):
        if isinstance(other, CyclotomicElem):
            if other.conductor != self.conductor:
                raise PreconditionError("cyclotomic conductors differ")
            return other
        return CyclotomicElem.from_rational(self.conductor, other)

    def inverse(self):
        """Field inverse via the extended Euclidean algorithm mod Phi_m."""
        if self.is_zero():
            raise ZeroDivisionError("cyclotomic zero has no inverse")
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.conductor)]
        a = list(self.coeffs)
        r0, r1 = phi, _trim(a)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while any(r1):
            q, r = _poly_divmod_q(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        # r0 = gcd, a nonzero constant since Phi_m is irreducible over Q
        if len(_trim(r0)) != 1:
            raise InvariantError("cyclotomic inverse: gcd not constant")
        c = r0[0]
        return CyclotomicElem(self.conductor, [x / c for x in s0])

    def __repr__(self):
        return f"CyclotomicElem(m={self.conductor}, {list(self.coeffs)})"


def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p if p else [Fraction(0)]


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _poly_divmod_q(num, den):
    num = _trim(num)
    den = _trim(den)
    q = [Fraction(0)] * max(1, len(num) - len(den) + 1)
    while len(num) >= len(den) and any(num):
        shift = len(num) - len(den)
        c = num[-1] / den[-1]
        q[shift] = c
        num = _poly_sub(num, [Fraction(0)] * shift + [c * d for d in den])
        num = _trim(num)
        if not any(num):
            break
    return q, num


def _reduce_mod_phi(coeffs, m):
    phi = [Fraction(c) for c in cyclotomic_polynomial(m)]
    _, rem = _poly_divmod_q(coeffs, phi)
    return rem


def lcm(a, b):
    return a * b // gcd(a, b)
