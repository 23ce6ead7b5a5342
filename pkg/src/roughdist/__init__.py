"""Feasibility, counting and indices for distributions of rough objects.

Submodules:

``poset``
    finite posets, width, chain covers, grading, SDRs
``granular``
    granular operator spaces, rough quotient, crisp/rough frameworks
``feasibility``
    crisp-count feasibility on chains, exact Case0/1/2 solvers
``counting``
    bounded distributions and chain-cover model counts
``indices``
    rough distribution index in symbolic form
``figures``, ``formats``, ``cli``
    CSV tables, text file formats, command line
"""

from .counting import (
    PartitionConstraint,
    bounded_model_count,
    branched_chain_count,
    chain_cover_model_count,
    chain_distribution_count,
)
from .feasibility import (
    AlphaSearchConfig,
    FeasibilityQuery,
    alpha_refine,
    alpha_scan,
    case0_k,
    case1_k,
    case1_powerset_models,
    case2_admissible_ks,
    case2_count_values,
    case2_k_from_pi,
    solve,
)
from .granular import (
    ApproximationPair,
    GranularOperatorSpace,
    build_framework,
    pawlak_from_partition,
    rough_quotient,
)
from .indices import iota, iota_star, nu
from .poset import FinitePoset, boolean_lattice, disjoint_chain_cover, from_pairs, width

__version__ = "0.1.0"
