import random
from fractions import Fraction
from math import comb

import pytest

from alexlab.errors import PreconditionError, SizeGuardError
from alexlab.lie import (cup_data, graded_coker_dims,
                         graded_coker_dims_groebner, holonomy_chen_ranks,
                         inf_alexander_invariant, inf_alexander_module,
                         magnus_quadratic, resonance_ideal,
                         resonance_membership)
from alexlab.modtools import exterior_power_presentation
from alexlab.presentation import (commutator_power, complete_graph, cycle_graph,
                                  free_group, heisenberg,
                                  heisenberg_quotient_form, path_graph,
                                  pure_braid, raag, trefoil)
from alexlab.words import FreeWord, commutator


def test_magnus_quadratic_commutator():
    lin, quad = magnus_quadratic(
        commutator(FreeWord.generator(1), FreeWord.generator(2)), 2)
    assert lin == [0, 0]
    assert quad[0][1] == 1 and quad[1][0] == -1 and quad[0][0] == 0


def test_cup_data_raag():
    cd = cup_data(raag(path_graph(3)))
    assert cd.b1 == 3
    assert [dict(c) for c in cd.columns] == [{(1, 2): 1}, {(2, 3): 1}]


def test_cup_data_heisenberg_quotient():
    cd = cup_data(heisenberg_quotient_form())
    assert cd.b1 == 2
    assert all(not c for c in cd.columns)  # nabla = 0


def test_cup_data_free():
    cd = cup_data(free_group(4))
    assert cd.b1 == 4 and cd.h2_dim == 0


def test_cup_data_rejects_noncommutator():
    with pytest.raises(PreconditionError):
        cup_data(heisenberg())
    with pytest.raises(PreconditionError):
        cup_data(trefoil())


def test_inf_alexander_invariant_free2():
    frak_b = inf_alexander_invariant(cup_data(free_group(2)))
    assert frak_b.num_generators == 1 and frak_b.num_relations == 0


def test_inf_alexander_invariant_z2():
    frak_b = inf_alexander_invariant(cup_data(raag(complete_graph(2))))
    assert frak_b.num_generators == 1
    assert [e.text() for e in frak_b.columns[0]] == ["1"]
    assert list(graded_coker_dims(frak_b, 3)) == [0, 0, 0, 0]


def test_inf_alexander_invariant_heis_quotient():
    frak_b = inf_alexander_invariant(cup_data(heisenberg_quotient_form()))
    # free of rank 1 over 2 variables (zero nabla columns)
    assert list(graded_coker_dims(frak_b, 4)) == [1, 2, 3, 4, 5]


def test_inf_alexander_module_goldens():
    assert inf_alexander_module(cup_data(free_group(3))).num_relations == 0
    mz = inf_alexander_module(cup_data(raag(complete_graph(2))))
    assert [e.text() for e in mz.columns[0]] == ["x2", "-x1"]
    mp3 = inf_alexander_module(cup_data(raag(path_graph(3))))
    assert mp3.num_generators == 3 and mp3.num_relations == 2


def test_holonomy_chen_ranks_free2():
    theta = holonomy_chen_ranks(cup_data(free_group(2)), 8)
    assert list(theta) == [2] + [n - 1 for n in range(2, 9)]


def test_holonomy_chen_ranks_abelian():
    for r in (2, 3):
        theta = holonomy_chen_ranks(cup_data(raag(complete_graph(r))), 6)
        assert list(theta) == [r, 0, 0, 0, 0, 0]


def test_holonomy_chen_ranks_path3():
    theta = holonomy_chen_ranks(cup_data(raag(path_graph(3))), 4)
    assert theta.dim(2) == 1  # dim wedge^2 H_1 - rank nabla = 3 - 2


def test_theta_bar_2_formula():
    for pres in (free_group(3), raag(path_graph(4)), raag(cycle_graph(4)),
                 pure_braid(3), commutator_power(2)):
        cd = cup_data(pres)
        theta = holonomy_chen_ranks(cd, 2)
        assert theta.dim(2) == comb(cd.b1, 2) - cd.nabla_rank()


def test_two_method_agreement():
    for pres in (free_group(2), free_group(3), raag(path_graph(3)),
                 raag(complete_graph(3)), raag(cycle_graph(4)),
                 heisenberg_quotient_form(), pure_braid(3)):
        frak_b = inf_alexander_invariant(cup_data(pres))
        la = list(graded_coker_dims(frak_b, 5))
        gb = list(graded_coker_dims_groebner(frak_b, 5))
        assert la == gb, pres.label


def test_holonomy_guard():
    with pytest.raises(SizeGuardError):
        holonomy_chen_ranks(cup_data(free_group(2)), 21)


# -- resonance ---------------------------------------------------------------


def test_resonance_heisenberg_quotient_full_plane():
    cd = cup_data(heisenberg_quotient_form())
    assert resonance_membership(cd, [1, 0], 1)
    rng = random.Random(4)
    for _ in range(10):
        a = [Fraction(rng.randint(-5, 5)), Fraction(rng.randint(-5, 5))]
        if not any(a):
            a = [Fraction(1), Fraction(0)]
        assert resonance_membership(cd, a, 1)


def test_resonance_z2_origin_only():
    cd = cup_data(raag(complete_graph(2)))
    assert not resonance_membership(cd, [1, 1], 1)
    rng = random.Random(5)
    for _ in range(10):
        a = [Fraction(rng.randint(-5, 5)), Fraction(rng.randint(-5, 5))]
        if any(a):
            assert not resonance_membership(cd, a, 1)
    assert resonance_membership(cd, [0, 0], 1)
    assert resonance_membership(cd, [0, 0], 2)
    assert not resonance_membership(cd, [0, 0], 3)


def test_resonance_free_group_full():
    cd = cup_data(free_group(3))
    assert resonance_membership(cd, [1, 2, 3], 1)
    assert resonance_membership(cd, [1, 2, 3], 2)
    assert not resonance_membership(cd, [1, 2, 3], 3)


def test_resonance_scale_invariance():
    rng = random.Random(6)
    for pres in (raag(path_graph(3)), raag(cycle_graph(4)), free_group(3)):
        cd = cup_data(pres)
        for _ in range(10):
            a = [Fraction(rng.randint(-4, 4)) for _ in range(cd.b1)]
            lam = Fraction(rng.randint(1, 7), rng.randint(1, 7))
            for k in (1, 2):
                assert resonance_membership(cd, a, k) == \
                    resonance_membership(cd, [lam * x for x in a], k)


def _vanishes_at(ideal, a):
    out = True
    for g in ideal.generators:
        val = Fraction(0)
        for mon, c in g.terms.items():
            term = Fraction(c)
            for i, e in enumerate(mon):
                term *= Fraction(a[i]) ** e
            val += term
        if val:
            out = False
    return out


def test_resonance_fitting_agreement():
    # Lemma-level identity: membership of nonzero a in R_k equals the
    # vanishing of the resonance ideal at a
    rng = random.Random(7)
    for pres in (raag(path_graph(3)), raag(complete_graph(2)),
                 heisenberg_quotient_form(), free_group(3),
                 raag(cycle_graph(4))):
        cd = cup_data(pres)
        for k in (1, 2):
            ideal = resonance_ideal(cd, k)
            for _ in range(10):
                a = [Fraction(rng.randint(-3, 3)) for _ in range(cd.b1)]
                if not any(a):
                    continue
                assert resonance_membership(cd, a, k) == _vanishes_at(ideal, a)


def _rank_at(module, a):
    from alexlab.linalg import rat_rank

    rows = []
    for i in range(module.num_generators):
        row = []
        for kk in range(module.num_relations):
            entry = module.entry(i, kk)
            val = Fraction(0)
            for mon, c in entry.terms.items():
                term = Fraction(c)
                for idx, e in enumerate(mon):
                    term *= Fraction(a[idx]) ** e
                val += term
            row.append(val)
        rows.append(row)
    return rat_rank(rows) if rows and rows[0] else 0


def test_resonance_support_identity():
    # supp(wedge^k B-frak) = Fitt_k(B-frak) vanishing away from 0: the
    # evaluated relation matrix of wedge^k drops below full rank exactly
    # when the evaluated matrix of B-frak has rank <= g - k
    rng = random.Random(8)
    for pres in (raag(path_graph(3)), raag(cycle_graph(4))):
        cd = cup_data(pres)
        frak_b = inf_alexander_invariant(cd)
        g = frak_b.num_generators
        for k in (1, 2):
            wedge = exterior_power_presentation(frak_b, k) if k > 1 else frak_b
            for _ in range(8):
                a = [Fraction(rng.randint(-3, 3)) for _ in range(cd.b1)]
                if not any(a):
                    continue
                ann_vanishes = _rank_at(wedge, a) < wedge.num_generators
                fitt_vanishes = _rank_at(frak_b, a) <= g - k
                assert ann_vanishes == fitt_vanishes


def test_resonance_ideal_z2():
    cd = cup_data(raag(complete_graph(2)))
    ideal = resonance_ideal(cd, 1)
    assert {g.text() for g in ideal.generators} == {"x1", "x2"}


def test_resonance_dimension_errors():
    cd = cup_data(free_group(2))
    with pytest.raises(PreconditionError):
        resonance_membership(cd, [1], 1)
