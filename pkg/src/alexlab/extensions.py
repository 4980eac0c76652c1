"""Monodromy-action analysis for split extensions, ab-/abf-/p-exactness
certification, Bestvina-Brady constructors for trees, and verification
of the Chen-rank transfer behavior.

Non-split ab-exactness (via the connecting map of the 5-term sequence)
is not decided here; only the split criterion is automated.
"""

from __future__ import annotations

from . import abelian
from .chen import chen_ranks, modp_chen_ranks
from .errors import InvariantError, PreconditionError
from .presentation import (FreeWord, SplitExtensionData, free_group,
                           semidirect_presentation)
from .words import commutator


def _action_exponent_matrix(ext, j):
    """Columns = exponent vectors of phi(q_j)(a_i) in the K-generators."""
    m = ext.kernel.num_generators
    cols = [w.exponent_vector(m) for w in ext.action[j]]
    return [[cols[i][row] for i in range(m)] for row in range(m)]


def _sections(data):
    """Integer vectors s_j in Z^m with project(s_j) = j-th SNF basis
    vector.  They exist because basis_change rows come from a unimodular
    matrix; solved exactly through the SNF of the row matrix."""
    m = data.num_generators
    rows = [list(r) for r in data.basis_change]
    k = len(rows)
    if k == 0:
        return []
    # rows = U^-1 D V^-1 with U (k x k), V (m x m); rows * x = e_j is
    # solved by x = V (D^+ U e_j) since the diagonal entries are +-1
    # for rows of a unimodular matrix.
    diag, u, v = abelian.smith_normal_form(rows, k, m)
    if any(abs(d) != 1 for d in diag[:k]):
        raise InvariantError("basis_change rows are not part of a unimodular matrix")
    out = []
    for jj in range(k):
        rhs = [u[i][jj] for i in range(k)]  # U e_j
        y = [rhs[i] // diag[i] for i in range(k)] + [0] * (m - k)
        x = [sum(v[row][i] * y[i] for i in range(m)) for row in range(m)]
        out.append(x)
    return out


def action_on_h1(ext, coeff="Int"):
    """Matrices of the abelianized monodromy, one per Q-generator.

    coeff "Int": on K_ab in SNF coordinates (free rows first, then
    torsion rows mod d_i); "Rat": on the free part only; ("ModP", p):
    on H_1(K; Z_p) in the mod-p coordinates.
    """
    kernel = ext.kernel
    out = []
    if coeff == "Int" or coeff == "Rat":
        data = abelian.abelianization(kernel)
        sections = _sections(data)
        r = data.free_rank
        for j in range(ext.quotient.num_generators):
            e = _action_exponent_matrix(ext, j)
            matrix = []
            for sec in sections:
                img = [sum(e[row][i] * sec[i] for i in range(len(sec)))
                       for row in range(len(sec))]
                free, tors = data.project(img)
                matrix.append(list(free) + list(tors))
            # columns = images of SNF basis vectors
            mat = [[matrix[i][row] for i in range(len(sections))]
                   for row in range(len(sections))]
            if coeff == "Rat":
                mat = [row[:r] for row in mat[:r]]
            out.append(mat)
        return out
    if isinstance(coeff, tuple) and coeff[0] == "ModP":
        p = coeff[1]
        b, proj = abelian.mod_p_h1_data(kernel, p)
        m = kernel.num_generators
        # the projection has unit columns at its free columns; use them
        # as sections of H_1(K; Z_p)
        sections = []
        for i in range(b):
            col = next(j for j in range(m)
                       if all(proj[ii][j] == (1 if ii == i else 0)
                              for ii in range(b)))
            sections.append(col)
        for j in range(ext.quotient.num_generators):
            e = _action_exponent_matrix(ext, j)
            mat = [[0] * b for _ in range(b)]
            for i, col_idx in enumerate(sections):
                img = [e[row][col_idx] % p for row in range(m)]
                coords = [sum(proj[ii][row] * img[row] for row in range(m)) % p
                          for ii in range(b)]
                for ii in range(b):
                    mat[ii][i] = coords[ii]
            out.append(mat)
        return out
    raise PreconditionError(f"unknown coefficient flavor {coeff!r}")


def exactness_check(ext, flavor="ab"):
    """Is the split sequence ab-/abf-/p-exact?  Equivalent to triviality
    of the monodromy on K_ab, K_ab (x) Q, or H_1(K; Z_p): the images of
    the K-generators must be fixed."""
    kernel = ext.kernel
    m = kernel.num_generators
    if flavor in ("ab", "abf"):
        data = abelian.abelianization(kernel)
        for j in range(ext.quotient.num_generators):
            for i in range(m):
                img = ext.action[j][i].exponent_vector(m)
                base = [int(t == i) for t in range(m)]
                fi, ti = data.project(img)
                fb, tb = data.project(base)
                if fi != fb:
                    return False
                if flavor == "ab" and ti != tb:
                    return False
        return True
    if isinstance(flavor, tuple) and flavor[0] == "p":
        p = flavor[1]
        abelian.require_prime(p)
        b, proj = abelian.mod_p_h1_data(kernel, p)
        for j in range(ext.quotient.num_generators):
            for i in range(m):
                img = ext.action[j][i].exponent_vector(m)
                for ii in range(b):
                    lhs = sum(proj[ii][t] * img[t] for t in range(m)) % p
                    if lhs != proj[ii][i] % p:
                        return False
        return True
    raise PreconditionError(f"unknown exactness flavor {flavor!r}")


# ---------------------------------------------------------------------------
# Bestvina-Brady constructors for trees


def bestvina_brady_tree(edges):
    """Split-extension data for the Bestvina-Brady kernel of a tree:
    K is free on the edge generators g_v = parent(v) v^-1, Q = Z with
    section the root vertex, and the action is computed by
    Reidemeister-Schreier rewriting in the edge generators."""
    edges = [tuple(sorted(e)) for e in edges]
    vertices = sorted({v for e in edges for v in e})
    n = len(vertices)
    if n < 2:
        raise PreconditionError("tree needs at least 2 vertices")
    if len(edges) != n - 1:
        raise PreconditionError("input graph is not a tree")
    vid = {v: i for i, v in enumerate(vertices)}
    adj = {v: [] for v in vertices}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    root = vertices[0]
    parent = {root: None}
    order = [root]
    queue = [root]
    while queue:
        u = queue.pop(0)
        for w in adj[u]:
            if w not in parent:
                parent[w] = u
                order.append(w)
                queue.append(w)
    if len(order) != n:
        raise PreconditionError("input graph is not a tree (disconnected)")

    non_root = [v for v in order if v != root]
    gen_of = {v: i + 1 for i, v in enumerate(non_root)}  # K-generator index

    # z_v in the edge generators: z_root = 1, z_v = g_v^-1 z_{parent(v)}
    z = {root: FreeWord()}
    for v in non_root:
        z[v] = FreeWord.generator(gen_of[v]).inverse() * z[parent[v]]

    # y_{v,1} by depth: y_{root,*} = 1; for u = parent(v):
    # y_{v,1} = y_{u,0}^-1 y_{v,0} y_{u,1} with y_{*,0} = z_*
    y1 = {root: FreeWord()}
    for v in non_root:
        u = parent[v]
        y1[v] = z[u].inverse() * z[v] * y1[u]

    action = []
    for v in non_root:
        u = parent[v]
        action.append(y1[u] * y1[v].inverse())

    kernel = free_group(n - 1)
    kernel.generator_names = tuple(f"g{v}" for v in non_root)
    kernel.label = f"BB_kernel(tree on {n} vertices)"
    quotient = free_group(1)
    quotient.generator_names = ("t",)
    quotient.label = "Z"
    return SplitExtensionData(kernel, quotient, [action])


# ---------------------------------------------------------------------------
# Transfer verification


def is_visibly_abelian(pres):
    """True when every generator pair has an explicit commutator
    relator (or there is at most one generator)."""
    if pres.num_generators <= 1:
        return True
    rels = set(pres.relators) | {r.inverse() for r in pres.relators}
    for i in range(1, pres.num_generators + 1):
        for j in range(i + 1, pres.num_generators + 1):
            c = commutator(FreeWord.generator(i), FreeWord.generator(j))
            if c not in rels and c.inverse() not in rels:
                return False
    return True


class ExtensionReport:
    """Action matrices, exactness flags, Chen-rank tables, verdict."""

    __slots__ = ("action_int", "action_rat", "action_modp", "flags",
                 "theta_kernel", "theta_total", "theta_p", "verdict",
                 "max_n")

    def __init__(self, action_int, action_rat, action_modp, flags,
                 theta_kernel, theta_total, theta_p, verdict, max_n):
        self.action_int = action_int
        self.action_rat = action_rat
        self.action_modp = action_modp
        self.flags = flags
        self.theta_kernel = theta_kernel
        self.theta_total = theta_total
        self.theta_p = theta_p
        self.verdict = verdict
        self.max_n = max_n

    def serialize(self):
        out = {
            "flags": self.flags,
            "theta_K": list(self.theta_kernel),
            "theta_G": list(self.theta_total),
            "verdict": self.verdict,
        }
        if self.theta_p:
            out["theta_p"] = {
                str(p): {"K": list(tk), "G": list(tg)}
                for p, (tk, tg) in self.theta_p.items()
            }
        return out


def verify_transfer(ext, max_n, primes=()):
    """Chen-rank tables for K and G = K x| Q up to max_n.

    Verdict EQUAL_FROM_2 when the sequence is ab-exact split and Q is
    abelian: theta_n(K) = theta_n(G) must then hold for n >= 2 and a
    mismatch raises (that would contradict the transfer corollary).
    Otherwise the verdict is LEQ.
    """
    total = semidirect_presentation(ext)
    theta_k = chen_ranks(ext.kernel, max_n)
    theta_g = chen_ranks(total, max_n)
    ab_exact = exactness_check(ext, "ab")
    abf_exact = ab_exact or exactness_check(ext, "abf")
    flags = {"ab_exact_split": ab_exact, "abf_exact_split": abf_exact}
    theta_p = {}
    for p in primes:
        flags[f"p_exact_split({p})"] = exactness_check(ext, ("p", p))
        theta_p[p] = (modp_chen_ranks(ext.kernel, p, max_n),
                      modp_chen_ranks(total, p, max_n))
    if ab_exact and is_visibly_abelian(ext.quotient):
        verdict = "EQUAL_FROM_2"
        for n in range(2, max_n + 1):
            if theta_k.dim(n) != theta_g.dim(n):
                raise InvariantError(
                    f"transfer equality failed at n={n}: "
                    f"theta_n(K)={theta_k.dim(n)} != theta_n(G)={theta_g.dim(n)}")
    else:
        verdict = "LEQ"
    for p in primes:
        if flags[f"p_exact_split({p})"] and _is_elementary_p_abelian(ext.quotient, p):
            tk, tg = theta_p[p]
            for n in range(2, max_n + 1):
                if tk.dim(n) != tg.dim(n):
                    raise InvariantError(
                        f"mod-{p} transfer equality failed at n={n}")
    return ExtensionReport(
        action_on_h1(ext, "Int"),
        action_on_h1(ext, "Rat"),
        {p: action_on_h1(ext, ("ModP", p)) for p in primes},
        flags, theta_k, theta_g, theta_p, verdict, max_n)


def _is_elementary_p_abelian(pres, p):
    if not is_visibly_abelian(pres):
        return False
    rels = set(pres.relators) | {r.inverse() for r in pres.relators}
    for i in range(1, pres.num_generators + 1):
        if FreeWord.generator(i, p) not in rels:
            return False
    return True


def random_inner_extension(rng, kernel_rank=2, quotient_rank=1,
                           max_word_length=3):
    """A randomized almost-direct product F_m x| Z^s: every Q-generator
    acts by conjugation by a power of one random word, so the actions
    commute and are trivial on H_1(K)."""
    m = kernel_rank
    kernel = free_group(m)
    length = rng.randint(1, max_word_length)
    letters = [(rng.randint(1, m), rng.choice((1, -1))) for _ in range(length)]
    w = FreeWord(letters)
    if w.is_identity():
        w = FreeWord.generator(1)
    action = []
    for j in range(quotient_rank):
        power = rng.randint(-2, 2)
        wj = w ** power
        action.append([a.conjugate_by(wj)
                       for a in (FreeWord.generator(i + 1) for i in range(m))])
    if quotient_rank == 1:
        quotient = free_group(1)
    else:
        from .presentation import complete_graph, raag

        quotient = raag(complete_graph(quotient_rank))
    return SplitExtensionData(kernel, quotient, action)
