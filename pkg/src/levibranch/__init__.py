"""Exact branching from classical simple Lie algebras to Levi subalgebras.

The package decides equality of induced characters through finite
M-functions, finds the Weyl-group diagram automorphism relating equal
pairs, and scans bounded weight boxes for counterexamples.
"""

from .branching import (BranchingRow, MFunction, a_coefficient,
                        branch_by_restriction, branch_multiplicity,
                        branch_row, build_m, e_set, far_from_walls,
                        leading_term)
from .equivalence import (PairVerdict, classify_pair, dominant_box,
                          induced_equal, relating_automorphism, search_box)
from .rootsys import (LeviDatum, RootDatum, Weight, WeightError,
                      build_levi, build_root_system, coroot_pairing,
                      dominance_leq, pairing, parse_system)
from .typea_lr import (Partition, SignedSplit, inverse_kostka,
                       kostka_number, lr_coefficient, multi_lr,
                       polarisation_branch, split_signed)
from .weightpoly import (PartitionTable, WeightPolynomial, alternating_sum,
                         kostant_partition, kostka_multiplicity, nabla_bar,
                         symmetrize, weyl_character, weyl_dim)
from .weylgrp import (Transversal, WeylElement, coset_decompose,
                      diagram_automorphisms, dominant_representative,
                      dot_act, enumerate_group, straighten, transversal,
                      weyl_group)

__version__ = "0.1.0"

__all__ = [
    "BranchingRow", "LeviDatum", "MFunction", "PairVerdict", "Partition",
    "PartitionTable", "RootDatum", "SignedSplit", "Transversal", "Weight",
    "WeightError", "WeightPolynomial", "WeylElement", "a_coefficient",
    "alternating_sum", "branch_by_restriction", "branch_multiplicity",
    "branch_row", "build_levi", "build_m", "build_root_system",
    "classify_pair", "coroot_pairing", "coset_decompose",
    "diagram_automorphisms", "dominance_leq", "dominant_box",
    "dominant_representative", "dot_act", "e_set", "enumerate_group",
    "far_from_walls", "induced_equal", "inverse_kostka", "kostant_partition",
    "kostka_multiplicity", "kostka_number", "leading_term", "lr_coefficient",
    "multi_lr", "nabla_bar", "pairing", "parse_system", "polarisation_branch",
    "relating_automorphism", "search_box", "split_signed", "straighten",
    "symmetrize", "transversal", "weyl_character", "weyl_dim", "weyl_group",
]
