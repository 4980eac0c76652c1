"""Sparse multivariate polynomials and module Groebner bases.

Coefficients are exact rationals or F_p residues; the monomial order is
degree-reverse-lexicographic with x_1 > x_2 > ..., extended to free
modules term-over-position (ties broken toward lower positions).
Buchberger runs with the sugar selection strategy.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import PreconditionError

QQ = "QQ"


def GF(p):
    return ("GF", p)


class PolyRing:
    """k[x_1..x_n] with k = Q or F_p and degrevlex order."""

    __slots__ = ("num_vars", "names", "field")

    def __init__(self, num_vars, names=None, field=QQ):
        self.num_vars = num_vars
        self.names = tuple(names) if names else tuple(
            f"x{i+1}" for i in range(num_vars))
        self.field = field

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.num_vars == other.num_vars
                and self.field == other.field and self.names == other.names)

    def __hash__(self):
        return hash((self.num_vars, self.names, self.field))

    def coeff(self, v):
        if self.field == QQ:
            return Fraction(v)
        return int(v) % self.field[1]

    def cadd(self, a, b):
        return a + b if self.field == QQ else (a + b) % self.field[1]

    def cmul(self, a, b):
        return a * b if self.field == QQ else (a * b) % self.field[1]

    def cinv(self, a):
        return 1 / a if self.field == QQ else pow(a, -1, self.field[1])

    def zero(self):
        return Poly(self, {})

    def one(self):
        return Poly(self, {(0,) * self.num_vars: self.coeff(1)})

    def variable(self, i, power=1):
        exps = [0] * self.num_vars
        exps[i] = power
        return Poly(self, {tuple(exps): self.coeff(1)})

    def monomial(self, exps, coeff=1):
        c = self.coeff(coeff)
        return Poly(self, {tuple(exps): c} if c else {})


def degrevlex_key(mon):
    """Sort key: larger key = larger monomial in degrevlex."""
    return (sum(mon), tuple(-e for e in reversed(mon)))


def mon_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mon_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def mon_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def mon_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


class Poly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = {m: c for m, c in terms.items() if c}

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.ring == other.ring
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.ring, tuple(sorted(self.terms.items()))))

    def __add__(self, other):
        ring = self.ring
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = ring.cadd(out.get(m, ring.coeff(0)), c)
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly(ring, out)

    def __neg__(self):
        ring = self.ring
        minus = ring.coeff(-1)
        return Poly(ring, {m: ring.cmul(minus, c) for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        ring = self.ring
        if not isinstance(other, Poly):
            c0 = ring.coeff(other)
            return Poly(ring, {m: ring.cmul(c0, c) for m, c in self.terms.items()})
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                key = mon_mul(m1, m2)
                s = ring.cadd(out.get(key, ring.coeff(0)), ring.cmul(c1, c2))
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return Poly(ring, out)

    __rmul__ = __mul__

    def degree(self):
        return max((sum(m) for m in self.terms), default=-1)

    def leading_monomial(self):
        return max(self.terms, key=degrevlex_key)

    def text(self):
        if not self.terms:
            return "0"
        ring = self.ring
        parts = []
        for m in sorted(self.terms, key=degrevlex_key, reverse=True):
            c = self.terms[m]
            factors = []
            for i, e in enumerate(m):
                if e:
                    name = ring.names[i]
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
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self):
        return f"<{self.text()}>"


# ---------------------------------------------------------------------------
# Free-module elements: terms keyed by (position, monomial)


def module_key(term):
    pos, mon = term
    return (degrevlex_key(mon), -pos)


class VecPoly:
    """Element of R^k over a PolyRing, sparse on (position, monomial)."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = {t: c for t, c in terms.items() if c}

    @classmethod
    def from_polys(cls, ring, polys):
        terms = {}
        for pos, p in enumerate(polys):
            for m, c in p.terms.items():
                terms[(pos, m)] = c
        return cls(ring, terms)

    def is_zero(self):
        return not self.terms

    def leading_term(self):
        t = max(self.terms, key=module_key)
        return t, self.terms[t]

    def __add__(self, other):
        ring = self.ring
        out = dict(self.terms)
        for t, c in other.terms.items():
            s = ring.cadd(out.get(t, ring.coeff(0)), c)
            if s:
                out[t] = s
            else:
                out.pop(t, None)
        return VecPoly(ring, out)

    def __sub__(self, other):
        ring = self.ring
        out = dict(self.terms)
        for t, c in other.terms.items():
            s = ring.cadd(out.get(t, ring.coeff(0)), ring.cmul(ring.coeff(-1), c))
            if s:
                out[t] = s
            else:
                out.pop(t, None)
        return VecPoly(ring, out)

    def scale_term(self, mon, coeff):
        """Multiply by coeff * x^mon."""
        ring = self.ring
        return VecPoly(ring, {(pos, mon_mul(m, mon)): ring.cmul(c, coeff)
                              for (pos, m), c in self.terms.items()})

    def sugar(self):
        return max((sum(m) for (_p, m) in self.terms), default=0)


def _reduce_vec(f, basis, ring):
    """Full normal form of f against basis (list of VecPoly).

    Terms migrate to the remainder in strictly decreasing order, so new
    work terms never collide with remainder terms.
    """
    remainder = {}
    work = dict(f.terms)
    minus_one = ring.coeff(-1)
    while work:
        term = max(work, key=module_key)
        coeff = work.pop(term)
        pos, mon = term
        for g in basis:
            (gpos, gmon), gc = g.leading_term()
            if gpos == pos and mon_divides(gmon, mon):
                factor = ring.cmul(coeff, ring.cinv(gc))
                shift = mon_div(mon, gmon)
                neg = ring.cmul(minus_one, factor)
                for (p2, m2), c2 in g.terms.items():
                    if (p2, m2) == (gpos, gmon):
                        continue
                    key = (p2, mon_mul(m2, shift))
                    s = ring.cadd(work.get(key, ring.coeff(0)),
                                  ring.cmul(neg, c2))
                    if s:
                        work[key] = s
                    else:
                        work.pop(key, None)
                break
        else:
            remainder[term] = coeff
    return VecPoly(ring, remainder)


def groebner_module(generators, ring, max_basis=4000):
    """Reduced Groebner basis of the submodule generated by `generators`
    (VecPoly list), via Buchberger with the sugar selection strategy."""
    basis = []
    for g in generators:
        if not g.is_zero():
            basis.append(g)
    pairs = []

    def add_pairs(new_index):
        g_new = basis[new_index]
        (pos_n, mon_n), _ = g_new.leading_term()
        ideal_like = all(p == pos_n for (p, _m) in g_new.terms)
        for i in range(new_index):
            (pos_i, mon_i), _ = basis[i].leading_term()
            if pos_i != pos_n:
                continue
            lcm = mon_lcm(mon_i, mon_n)
            if lcm == mon_mul(mon_i, mon_n):
                # Buchberger's coprime criterion is only valid when both
                # elements are supported on a single common position
                if ideal_like and all(p == pos_i for (p, _m) in basis[i].terms):
                    continue
            sugar = max(
                basis[i].sugar() + sum(mon_div(lcm, mon_i)),
                g_new.sugar() + sum(mon_div(lcm, mon_n)),
            )
            pairs.append((sugar, degrevlex_key(lcm), i, new_index))

    for i in range(len(basis)):
        add_pairs(i)
    while pairs:
        pairs.sort()
        sugar, _lk, i, j = pairs.pop(0)
        gi, gj = basis[i], basis[j]
        (pos, mi), ci = gi.leading_term()
        (_p2, mj), cj = gj.leading_term()
        lcm = mon_lcm(mi, mj)
        s = gi.scale_term(mon_div(lcm, mi), ring.cinv(ci)) - \
            gj.scale_term(mon_div(lcm, mj), ring.cinv(cj))
        red = _reduce_vec(s, basis, ring)
        if red.is_zero():
            continue
        basis.append(red)
        if len(basis) > max_basis:
            raise PreconditionError("Groebner basis size guard exceeded")
        add_pairs(len(basis) - 1)

    # inter-reduce for a canonical reduced basis
    basis = _interreduce(basis, ring)
    return basis


def _interreduce(basis, ring):
    # keep only elements whose LT is not divisible by another kept LT
    basis = sorted((g for g in basis if not g.is_zero()),
                   key=lambda g: module_key(g.leading_term()[0]))
    kept = []
    seen = []
    for g in basis:
        pos, mon = g.leading_term()[0]
        if any(p == pos and mon_divides(m, mon) for (p, m) in seen):
            continue
        kept.append(g)
        seen.append((pos, mon))
    # tail-reduce and normalize (leading coefficients become 1)
    out = []
    for i, g in enumerate(kept):
        others = kept[:i] + kept[i + 1:]
        red = _reduce_vec(g, others, ring) if others else g
        if red.is_zero():
            continue
        (_t, c) = red.leading_term()
        inv = ring.cinv(c)
        red = VecPoly(ring, {t: ring.cmul(inv, v) for t, v in red.terms.items()})
        out.append(red)
    out.sort(key=lambda g: module_key(g.leading_term()[0]))
    return out


def groebner_ideal(polys, ring):
    """Groebner basis of an ideal, as the rank-1 module case."""
    gens = [VecPoly.from_polys(ring, [p]) for p in polys if not p.is_zero()]
    gb = groebner_module(gens, ring)
    return [_vec_to_poly(g, ring) for g in gb]


def _vec_to_poly(vec, ring):
    return Poly(ring, {m: c for (pos, m), c in vec.terms.items()})


def reduce_poly(f, gb, ring):
    vec = VecPoly.from_polys(ring, [f])
    basis = [VecPoly.from_polys(ring, [g]) for g in gb]
    return _vec_to_poly(_reduce_vec(vec, basis, ring), ring)


def leading_term_module(gb):
    """Leading (position, monomial) pairs of a module Groebner basis."""
    return [g.leading_term()[0] for g in gb]


def monomials_of_degree(num_vars, d):
    """All exponent tuples of total degree d (lexicographic order)."""
    if num_vars == 0:
        return [()] if d == 0 else []
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for e in range(remaining, -1, -1):
            rec(prefix + (e,), remaining - e, slots - 1)

    rec((), d, num_vars)
    return out


def standard_monomial_counts(lt_terms, num_positions, num_vars,
                             generator_degrees, max_degree):
    """Hilbert function of coker by counting standard monomials.

    Returns counts[d] = #{(pos, mon): |mon| + deg(pos) = d, (pos, mon)
    not divisible by any leading term} for d = 0..max_degree.
    """
    by_pos = {}
    for (pos, mon) in lt_terms:
        by_pos.setdefault(pos, []).append(mon)
    counts = [0] * (max_degree + 1)
    for pos in range(num_positions):
        shift = generator_degrees[pos]
        lts = by_pos.get(pos, [])
        for d in range(0, max_degree + 1 - shift):
            for mon in monomials_of_degree(num_vars, d):
                if not any(mon_divides(lt, mon) for lt in lts):
                    counts[d + shift] += 1
    return counts


def is_zero_dimensional(lt_terms, num_positions, num_vars):
    """True iff every position has, for every variable, a pure power of
    that variable among its leading terms (finite standard monomials)."""
    by_pos = {}
    for (pos, mon) in lt_terms:
        by_pos.setdefault(pos, []).append(mon)
    for pos in range(num_positions):
        lts = by_pos.get(pos, [])
        if any(sum(mon) == 0 for mon in lts):
            continue  # constant leading term kills the position
        for var in range(num_vars):
            ok = any(
                mon[var] > 0 and all(e == 0 for k, e in enumerate(mon) if k != var)
                for mon in lts
            )
            if not ok:
                return False
    return True
