"""Chen ranks through the Massey correspondence, and the holonomy
(infinitesimal) pipeline next to it.

Run:  python demos/demo_chen_ranks.py
"""

from math import comb

from alexlab import (chen_ranks, cup_data, free_group,
                     heisenberg_quotient_form, holonomy_chen_ranks,
                     modp_chen_ranks, parse_presentation, path_graph, raag)

print("== rational Chen ranks from the adic filtration of B(G) ==")
for m in (2, 3):
    theta = list(chen_ranks(free_group(m), 8))
    oracle = [m] + [(n - 1) * comb(m + n - 2, n) for n in range(2, 9)]
    print(f"theta(F_{m}) = {theta}")
    print(f"   Chen's classical formula: {oracle}  match: {theta == oracle}")

trefoil = parse_presentation("<x1,x2 | x1 x2 x1 = x2 x1 x2>")
print("theta(trefoil) =", list(chen_ranks(trefoil, 6)),
      " (Alexander roots away from 1 kill the graded module)")

klein = parse_presentation("<t,a | t a t^-1 a>")
print("theta(Klein) =", list(chen_ranks(klein, 6)),
      " (general pipeline: torsion abelianization)")

print("\n== theta-bar: holonomy Chen ranks, equal to theta when formal ==")
for pres in (free_group(2), raag(path_graph(3))):
    cd = cup_data(pres)
    print(f"{pres.label or pres.canonical_str()}:",
          "theta =", list(chen_ranks(pres, 6)),
          " theta-bar =", list(holonomy_chen_ranks(cd, 6)))

heis = heisenberg_quotient_form()
print("Heisenberg (quotient form, not 1-formal):",
      "theta =", list(chen_ranks(heis, 6)),
      " theta-bar =", list(holonomy_chen_ranks(cup_data(heis), 6)),
      " (strict inequality)")

print("\n== mod-p Chen ranks from the nilpotent filtration of B_p ==")
for p in (2, 3, 5):
    print(f"theta^{p}(Z) =", list(modp_chen_ranks(free_group(1), p, 5)))
print("theta^2(F_2) =", list(modp_chen_ranks(free_group(2), 2, 6)))
