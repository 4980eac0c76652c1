"""Alexander invariants in three flavors, on the catalog examples.

Run:  python demos/demo_alexander_invariants.py
"""

from alexlab import (abelianization, b_mod_p, b_presentation_koszul,
                     b_univariate, builtin_group, complete_graph, free_group,
                     parse_presentation, raag)


def show(title):
    print(f"\n== {title} ==")


show("B(F_2) and B(F_3): Koszul presentations over the Laurent ring")
for n in (2, 3):
    mod = b_presentation_koszul(free_group(n))
    print(f"B(F_{n}): generators {mod.generator_labels}, "
          f"{mod.num_relations} relation(s)")
    for col in mod.columns:
        print("   column:", [e.text() for e in col])

show("the trefoil: univariate normal form over Q[t^+-1]")
trefoil = parse_presentation("<x1,x2 | x1 x2 x1 = x2 x1 x2>")
print("abelianization:", abelianization(trefoil))
mod = b_univariate(trefoil)
print("B (x) Q = Q[t^+-1] /", [e.text() for e in mod.columns[0]])

show("one-relator torsion: <x1,x2 | [x1,x2]^n>")
for n in (2, 3):
    mod = b_presentation_koszul(builtin_group("commutator_power", (n,)))
    print(f"n={n}: cyclic with relation", mod.columns[0][0].text(),
          "(coefficients Z_n)")

show("mod-p Alexander invariants: exact finite linear algebra")
print("dim B_2(F_2) =", b_mod_p(free_group(2), 2).dimension,
      " (= p^n(n-1)+1 with n=p=2)")
for n, p in [(2, 3), (3, 2)]:
    fm = b_mod_p(raag(complete_graph(n)), p)
    identity = all(row[j] == (1 if i == j else 0)
                   for mat in fm.actions for i, row in enumerate(mat)
                   for j in range(len(row)))
    print(f"dim B_{p}(Z^{n}) = {fm.dimension}, actions identity: {identity}")
