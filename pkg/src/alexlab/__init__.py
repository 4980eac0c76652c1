"""alexlab: exact-arithmetic Alexander invariants, Chen ranks, and
cohomology jump loci for finitely presented groups."""

__version__ = "0.1.0"

from .abelian import AbelianizationData, abelianization, mod_p_h1
from .chen import chen_ranks, modp_chen_ranks
from .errors import (AlexlabError, InvariantError, ParseError,
                     PreconditionError, SizeGuardError)
from .extensions import (ExtensionReport, action_on_h1, bestvina_brady_tree,
                         exactness_check, random_inner_extension,
                         verify_transfer)
from .fox import (FiniteModule, GroupAlgebraMatrix, ModulePresentation,
                  alexander_module, b_mod_p, b_presentation_koszul,
                  b_univariate, fox_matrix)
from .jumploci import (CharacterPoint, cv_membership, finiteness_test,
                       fitting_vanishing, jump_ideal, point_for)
from .lie import (CupData, cup_data, graded_coker_dims,
                  graded_coker_dims_groebner, holonomy_chen_ranks,
                  inf_alexander_invariant, inf_alexander_module,
                  resonance_ideal, resonance_membership)
from .modtools import (GradedDims, Ideal, exterior_power_presentation,
                       fitting_ideal, graded_dims_truncated, ideal_membership,
                       rank_at_character)
from .presentation import (FreeWord, GroupPresentation, SplitExtensionData,
                           baumslag_solitar, builtin_group, commutator_power,
                           complete_graph, cycle_graph, dihedral_inf,
                           free_group, heisenberg, heisenberg_quotient_form,
                           klein_bottle, parse_presentation, parse_word,
                           path_graph, pure_braid, raag,
                           semidirect_presentation, torus_knot, trefoil)
from .ring import (AbelianGroupRing, CyclotomicElem, GroupAlgebraElem,
                   TruncatedLocalElem, laurent_to_truncated)
from .words import commutator

__all__ = [name for name in dir() if not name.startswith("_")]
