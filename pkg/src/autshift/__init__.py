"""Automorphisms of full shifts acting on their boundary.

Exact, finite computations with eventually periodic configurations, marker
schemes, the boundary action and the reduction of Z^d automata to Z automata.
"""

from .symbolic import (
    BASE_POINT,
    Alphabet,
    BarOmegaPoint,
    BiConfiguration,
    CmClass,
    OmegaPoint,
    ell,
    enumerate_cm,
    normalize,
    omega_distance,
    phi_embed,
    psi_collapse,
    r_value,
    shift_config,
)
from .codes import (
    LocalRule1D,
    PermutationCode,
    RuleCode,
    ShiftCode,
    SlidingBlockCode1D,
    act_omega,
    apply_code,
    compare_codes,
    compose,
    compose_all,
    conjugate,
    equal_codes,
    identity_code,
    in_g_star,
    inverse,
    is_shift_1d,
    minimal_radius,
    shift_code,
)
from .markers import (
    MarkerCode,
    MarkerRule,
    MarkerScheme,
    OverlapVerdict,
    brute_force_conflicts,
    compile_scheme,
    invert_scheme,
    verify_scheme,
)
from .boundary import (
    FiniteMeasure,
    boundary_report,
    build_minimal_gk,
    build_proximal_gk,
    extremal_collapse,
    faithfulness_witness,
    measure_collapse,
    minimality_check,
    proximality_experiment,
    r_additivity_check,
    relation_search,
)
from .lattice import (
    LatticeBasis,
    PatternOnBall,
    PeriodicZdConfiguration,
    basis_mk,
    build_cross_swap,
    check_lk_uniqueness,
    complete_pattern,
    coset_injectivity_threshold,
    decompose,
    memory_radius_zd,
    min_norm_uk,
    phi_k,
    radical_reduction_check,
)
from .dsl import parse_config, parse_scheme, render_scheme

__version__ = "0.1.0"
