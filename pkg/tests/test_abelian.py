import random

import pytest
from hypothesis import given, settings, strategies as st

from alexlab.abelian import (abelianization, abelianized_action_invertible,
                             integer_inverse, mod_p_h1, mod_p_h1_data,
                             smith_normal_form)
from alexlab.errors import PreconditionError
from alexlab.presentation import (GroupPresentation, dihedral_inf, free_group,
                                  heisenberg, klein_bottle, trefoil)
from alexlab.words import FreeWord

matrices = st.integers(min_value=1, max_value=4).flatmap(
    lambda m: st.integers(min_value=1, max_value=4).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(min_value=-9, max_value=9),
                     min_size=n, max_size=n),
            min_size=m, max_size=m)))


def mat_mul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b)))
             for j in range(len(b[0]))] for i in range(len(a))]


@settings(max_examples=60)
@given(matrices)
def test_snf_transforms(rows):
    m, n = len(rows), len(rows[0])
    diag, u, v = smith_normal_form(rows, m, n)
    prod = mat_mul(mat_mul(u, rows), v)
    for i in range(m):
        for j in range(n):
            expected = diag[i] if i == j and i < len(diag) else 0
            assert prod[i][j] == expected
    nonzero = [d for d in diag if d]
    assert all(d > 0 for d in nonzero)
    for d, e in zip(nonzero, nonzero[1:]):
        assert e % d == 0
    # U, V unimodular: integer inverses exist
    integer_inverse(u)
    integer_inverse(v)


def test_abelianization_golden():
    assert abelianization(trefoil()).free_rank == 1
    assert abelianization(trefoil()).torsion_divisors == ()
    kb = abelianization(klein_bottle())
    assert (kb.free_rank, kb.torsion_divisors) == (1, (2,))
    dz = abelianization(dihedral_inf())
    assert (dz.free_rank, dz.torsion_divisors) == (0, (2, 2))
    assert abelianization(free_group(3)).free_rank == 3


def test_abelianization_row_operation_invariance():
    # duplicated and shuffled relators do not change the result
    base = heisenberg()
    rels = list(base.relators)
    rng = random.Random(11)
    for _ in range(5):
        shuffled = rels[:] + [rng.choice(rels)]
        rng.shuffle(shuffled)
        other = GroupPresentation(base.num_generators, shuffled)
        a, b = abelianization(base), abelianization(other)
        assert a.free_rank == b.free_rank
        assert a.torsion_divisors == b.torsion_divisors


def test_generator_projection_consistency():
    data = abelianization(klein_bottle())
    # t generates the free part; a the torsion part
    assert data.generator_image(1)[0] != (0,)
    assert data.generator_image(2) == ((0,), (1,))
    # projection is additive on exponent vectors
    free, tors = data.project([2, 1])
    assert free == (2 * data.generator_image(1)[0][0],)
    assert tors == (1,)


def test_mod_p_h1_golden():
    assert mod_p_h1(heisenberg(), 2) == 2
    assert mod_p_h1(heisenberg(), 3) == 2
    for p in (2, 3, 5):
        assert mod_p_h1(free_group(4), p) == 4
    assert mod_p_h1(klein_bottle(), 2) == 2
    assert mod_p_h1(klein_bottle(), 3) == 1
    with pytest.raises(PreconditionError):
        mod_p_h1(free_group(2), 6)


def test_mod_p_vs_free_rank():
    for pres in (trefoil(), klein_bottle(), dihedral_inf(), heisenberg()):
        data = abelianization(pres)
        for p in (2, 3, 5):
            b = mod_p_h1(pres, p)
            assert b >= data.free_rank
            divides = any(d % p == 0 for d in data.torsion_divisors)
            assert (b == data.free_rank) == (not divides)


def test_mod_p_projection_is_a_projection():
    b, proj = mod_p_h1_data(dihedral_inf(), 2)
    assert b == 2
    # relator exponent vectors die
    for row in dihedral_inf().exponent_matrix():
        img = [sum(proj[i][j] * row[j] for j in range(2)) % 2 for i in range(b)]
        assert img == [0, 0]


def test_abelianized_action_invertible():
    k = free_group(2)
    a, b = FreeWord.generator(1), FreeWord.generator(2)
    assert abelianized_action_invertible(k, [a, a * b])
    assert not abelianized_action_invertible(k, [a, a])
    assert abelianized_action_invertible(free_group(1), [a ** -1])
