"""Split extensions with trivial algebraic monodromy: exactness flags
and the Chen-rank transfer theorem.

Run:  python demos/demo_extensions.py
"""

import random

from alexlab import (FreeWord, SplitExtensionData, action_on_h1,
                     bestvina_brady_tree, exactness_check, free_group,
                     path_graph, random_inner_extension,
                     semidirect_presentation, verify_transfer)

print("== the Klein bottle as Z x| Z: not ab-exact, but 2-exact ==")
klein_ext = SplitExtensionData(free_group(1), free_group(1),
                               [[FreeWord.generator(1, -1)]])
print("  monodromy on K_ab:", action_on_h1(klein_ext, "Int"))
print("  ab-exact:", exactness_check(klein_ext, "ab"),
      "  2-exact:", exactness_check(klein_ext, ("p", 2)),
      "  3-exact:", exactness_check(klein_ext, ("p", 3)))

print("\n== Bestvina-Brady kernel of the path tree P_3 ==")
ext = bestvina_brady_tree(path_graph(3))
print("  kernel: free of rank", ext.kernel.num_generators)
print("  action of the section generator:",
      [[ext.kernel.word_str(w) for w in row] for row in ext.action])
print("  ab-exact:", exactness_check(ext, "ab"))
report = verify_transfer(ext, 6)
print("  theta(K) =", list(report.theta_kernel))
print("  theta(G) =", list(report.theta_total))
print("  verdict:", report.verdict)

print("\n== randomized almost-direct products F_m x| Z^s ==")
rng = random.Random(2024)
for _ in range(3):
    ext = random_inner_extension(rng, kernel_rank=rng.randint(2, 3),
                                 quotient_rank=rng.randint(1, 2))
    total = semidirect_presentation(ext)
    report = verify_transfer(ext, 5)
    print(f"  K = F_{ext.kernel.num_generators}, "
          f"Q = Z^{ext.quotient.num_generators}: "
          f"theta(K) = {list(report.theta_kernel)}, "
          f"theta(G) = {list(report.theta_total)} -> {report.verdict}")
