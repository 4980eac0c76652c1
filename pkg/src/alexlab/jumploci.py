"""Characteristic-variety membership and defining ideals.

Membership uses the definition-level rank test
rank d2(rho) + rank d1(rho) <= m - k, which is valid at every
character, the identity included.  Fitting-ideal vanishing (which the
supporting lemmas only assert away from the identity) is exposed
separately, both as ideals and as evaluated rank shortcuts.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from . import abelian
from .errors import PreconditionError
from .fox import alexander_module, b_presentation_koszul, b_univariate, fox_matrix
from .modtools import (Ideal, LaurentPolyContext, evaluate_elem,
                       exterior_power_presentation, fitting_ideal,
                       rank_at_character)
from .poly import VecPoly, groebner_module, is_zero_dimensional, leading_term_module
from .ring import CyclotomicElem


def _lcm(a, b):
    return a * b // gcd(a, b)


class CharacterPoint:
    """A point of the character group: free coordinates are nonzero
    cyclotomic/rational values, torsion coordinates are exponents e_j
    meaning zeta_{d_j}^{e_j}.  All values live in one Q(zeta_m)."""

    __slots__ = ("conductor", "free", "torsion_exponents", "torsion_divisors")

    def __init__(self, free_specs=(), torsion_exponents=(), torsion_divisors=(),
                 conductor=None):
        if len(torsion_exponents) != len(torsion_divisors):
            raise PreconditionError("one torsion exponent per divisor")
        m = 1
        specs = []
        for spec in free_specs:
            if isinstance(spec, CyclotomicElem):
                specs.append(spec)
                m = _lcm(m, spec.conductor)
            elif isinstance(spec, tuple) and spec and spec[0] == "zeta":
                _z, mm, kk = spec
                specs.append(("zeta", mm, kk))
                m = _lcm(m, mm)
            else:
                specs.append(Fraction(spec))
        for d in torsion_divisors:
            m = _lcm(m, d)
        if conductor is not None:
            if conductor % m:
                raise PreconditionError("conductor incompatible with coordinates")
            m = conductor
        self.conductor = m
        self.torsion_divisors = tuple(torsion_divisors)
        self.torsion_exponents = tuple(e % d for e, d in
                                       zip(torsion_exponents, torsion_divisors))
        lifted = []
        for spec in specs:
            if isinstance(spec, Fraction):
                lifted.append(CyclotomicElem.from_rational(m, spec))
            elif isinstance(spec, CyclotomicElem):
                lifted.append(_embed(spec, m))
            else:
                _z, mm, kk = spec
                lifted.append(CyclotomicElem.zeta_power(m, (m // mm) * kk))
        for v in lifted:
            if v.is_zero():
                raise PreconditionError("character coordinates must be nonzero")
        self.free = tuple(lifted)

    def free_values(self):
        return list(self.free)

    def drop_torsion(self):
        return CharacterPoint(list(self.free), (), (), conductor=self.conductor)

    def is_identity(self):
        one = CyclotomicElem.from_rational(self.conductor, 1)
        return (all(v == one for v in self.free)
                and all(e == 0 for e in self.torsion_exponents))

    def serialize(self):
        return {
            "conductor": self.conductor,
            "free": [[str(c) for c in v.coeffs] for v in self.free],
            "torsion": list(self.torsion_exponents),
        }

    def __repr__(self):
        return (f"CharacterPoint(m={self.conductor}, free={list(self.free)}, "
                f"torsion={list(self.torsion_exponents)})")


def _embed(elem, m):
    if elem.conductor == m:
        return elem
    if m % elem.conductor:
        raise PreconditionError("cannot embed into a smaller cyclotomic field")
    step = m // elem.conductor
    out = CyclotomicElem.from_rational(m, 0)
    for i, c in enumerate(elem.coeffs):
        if c:
            out = out + CyclotomicElem.zeta_power(m, step * i) * c
    return out


def point_for(pres, free_specs, torsion_exponents=(), conductor=None):
    """CharacterPoint matched to the abelianization data of pres."""
    data = abelian.abelianization(pres)
    if len(free_specs) != data.free_rank:
        raise PreconditionError(
            f"expected {data.free_rank} free coordinates")
    if len(torsion_exponents) != len(data.torsion_divisors):
        raise PreconditionError(
            f"expected {len(data.torsion_divisors)} torsion coordinates")
    return CharacterPoint(free_specs, torsion_exponents,
                          data.torsion_divisors, conductor=conductor)


# ---------------------------------------------------------------------------
# Membership


def _d1_rank(images, point, ring):
    one = CyclotomicElem.from_rational(point.conductor, 1)
    for img in images:
        val = evaluate_elem(img, point)
        if not (val - one).is_zero():
            return 1
    return 0


def cv_membership(pres, point, k, flavor="V"):
    """Definition-level test for rho in V_k(G) (or W_k on the identity
    torus): rank d2(rho) + rank d1(rho) <= m - k.  Valid at the
    identity character too."""
    if k < 1:
        raise PreconditionError("depth k must be >= 1")
    if flavor == "V":
        mat = fox_matrix(pres, "ab")
        pt = point
    elif flavor == "W":
        mat = fox_matrix(pres, "abf")
        pt = point.drop_torsion()
    else:
        raise PreconditionError(f"membership flavor must be V or W, not {flavor!r}")
    expected_tors = len(mat.ring.torsion_divisors)
    if len(pt.free) != mat.ring.free_rank or \
            len(pt.torsion_exponents) != expected_tors:
        raise PreconditionError("character point incompatible with abelianization")
    rank2 = rank_at_character(mat, pt) if mat.cols else 0
    rank1 = _d1_rank(mat.generator_images, pt, mat.ring)
    return rank2 + rank1 <= pres.num_generators - k


def fitting_vanishing(pres, point, k, flavor="V"):
    """Vanishing of the depth-k jump ideal at a point, via evaluated
    ranks: flavor V tests Fitt(A) (rank d2(rho) <= m-k-1), flavor W the
    same for the abf matrix, flavor Y tests the Koszul presentation of
    B (rank <= g_B - k).

    Returns (vanishes, note); the note flags the identity character for
    k >= b_1(G), where the supporting lemmas are silent.
    """
    if flavor in ("V", "W"):
        mat = fox_matrix(pres, "ab" if flavor == "V" else "abf")
        pt = point if flavor == "V" else point.drop_torsion()
        rank2 = rank_at_character(mat, pt) if mat.cols else 0
        vanish = rank2 <= pres.num_generators - k - 1
    elif flavor == "Y":
        bmod = b_presentation_koszul(pres)
        pt = point.drop_torsion()
        rank2 = rank_at_character(bmod, pt) if bmod.num_relations else 0
        vanish = rank2 <= bmod.num_generators - k
    else:
        raise PreconditionError(f"unknown flavor {flavor!r}")
    note = ""
    b1 = abelian.abelianization(pres).free_rank
    if point.is_identity() and k >= b1:
        note = "indeterminate at the identity for k >= b_1"
    return vanish, note


def jump_ideal(pres, k, flavor="V"):
    """Defining ideal of the depth-k jump locus: flavor V and W are
    Fitting ideals of the Alexander matrix (integral / torsion-free
    flavor), Y the Fitting ideal of the Koszul presentation of B, all
    indexed so the zero set matches the supporting lemmas away from the
    identity."""
    if k < 1:
        raise PreconditionError("depth k must be >= 1")
    if flavor == "V":
        mod = alexander_module(pres, "ab").to_rational()
        idx = k
    elif flavor == "W":
        mod = alexander_module(pres, "abf").to_rational()
        idx = k
    elif flavor == "Y":
        mod = b_presentation_koszul(pres).to_rational()
        idx = k - 1
    else:
        raise PreconditionError(f"unknown flavor {flavor!r}")
    if idx > mod.num_generators:
        # degenerate depth: the unit ideal (empty zero set away from 1)
        return Ideal(mod.ring, [mod.ring.one()])
    return fitting_ideal(mod, idx)


# ---------------------------------------------------------------------------
# Finiteness


def finiteness_test(pres, k=1):
    """Is the depth-k characteristic variety finite?  Tests whether the
    k-th exterior power of B (x) C is finite-dimensional, via the
    Groebner dimension-zero criterion."""
    if k < 1:
        raise PreconditionError("depth k must be >= 1")
    if pres.is_commutator_relators():
        bmod = b_presentation_koszul(pres).to_rational()
        if k > bmod.num_generators:
            return "finite"
        wedge = exterior_power_presentation(bmod, k) if k > 1 else bmod
        ctx = LaurentPolyContext(wedge.ring)
        gens = []
        for col in wedge.columns:
            gens.append(VecPoly.from_polys(ctx.ring,
                                           [ctx.convert(e) for e in col]))
        aux = ctx.aux_relations()
        npos = wedge.num_generators
        for j in range(npos):
            for a in aux:
                zero_cols = [ctx.ring.zero()] * npos
                zero_cols[j] = a
                gens.append(VecPoly.from_polys(ctx.ring, zero_cols))
        gb = groebner_module(gens, ctx.ring)
        finite = is_zero_dimensional(leading_term_module(gb), npos,
                                     ctx.ring.num_vars)
        return "finite" if finite else "infinite"
    data = abelian.abelianization(pres)
    if data.free_rank == 1 and not data.torsion_divisors:
        bmod = b_univariate(pres)
        free_rank = bmod.num_generators - bmod.num_relations
        return "finite" if free_rank < k else "infinite"
    raise PreconditionError(
        "finiteness_test needs a commutator-relators presentation or "
        "G_ab isomorphic to Z")
