"""Characteristic varieties: exact membership, defining ideals,
finiteness, and resonance.

Run:  python demos/demo_jump_loci.py
"""

from fractions import Fraction

from alexlab import (complete_graph, cup_data, cv_membership, dihedral_inf,
                     finiteness_test, free_group, heisenberg_quotient_form,
                     jump_ideal, parse_presentation, point_for, raag,
                     resonance_ideal, resonance_membership)

print("== V_1 of the Klein bottle: exactly {(1,1), (-1,1)} ==")
klein = parse_presentation("<t,a | t a t^-1 a>")
for f in (1, -1, Fraction(2)):
    for e in (0, 1):
        member = cv_membership(klein, point_for(klein, [f], [e]), 1)
        print(f"  (t, s) = ({f}, {'+1' if e == 0 else '-1'}): {member}")

print("\n== V_1 of Z_2 * Z_2: the single point (-1, -1) ==")
dz = dihedral_inf()
for e1 in (0, 1):
    for e2 in (0, 1):
        member = cv_membership(dz, point_for(dz, [], [e1, e2]), 1)
        print(f"  ({(-1) ** e1}, {(-1) ** e2}): {member}")

print("\n== the trefoil: V_1 = Alexander roots (plus the identity) ==")
trefoil = parse_presentation("<x1,x2 | x1 x2 x1 = x2 x1 x2>")
print("  zeta_6:", cv_membership(trefoil, point_for(trefoil, [("zeta", 6, 1)]), 1))
print("  5/7:  ", cv_membership(trefoil, point_for(trefoil, [Fraction(5, 7)]), 1))
print("  1:    ", cv_membership(trefoil, point_for(trefoil, [1]), 1))
print("  defining ideal:", jump_ideal(trefoil, 1, "V"))

print("\n== finiteness of V_1 (Groebner dimension-zero test) ==")
for pres, label in [(trefoil, "trefoil"), (free_group(2), "F_2"),
                    (raag(complete_graph(2)), "Z^2")]:
    print(f"  V_1({label}) is {finiteness_test(pres, 1)}")

print("\n== resonance: R_1 membership over the rationals ==")
heis = heisenberg_quotient_form()
cd = cup_data(heis)
print("  Heisenberg quotient form, a=(1,0):",
      resonance_membership(cd, [1, 0], 1), " (R_1 = C^2)")
cd2 = cup_data(raag(complete_graph(2)))
print("  Z^2, a=(1,1):", resonance_membership(cd2, [1, 1], 1),
      " (R_1 = {0})")
print("  R_1(Z^2) ideal:", resonance_ideal(cd2, 1))
