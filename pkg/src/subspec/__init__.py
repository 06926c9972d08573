"""Finite-section laboratory for composition semigroups on Hardy spaces.

Truncated power series, monomial-basis compressions of the Cesaro and
composition operators, a catalog of holomorphic semiflows, subordinated
operators int C_phi_t dnu(t), and closed-form and numerical spectral
observables (regions, pseudospectra, local spectral radii).
"""

from .analytic import (
    AliasingError,
    BinomialCoefficients,
    CirclePlan,
    CoeffVector,
    MembershipResult,
    binomial_coeffs,
    circle_values,
    coeffs_from_samples,
    derivative,
    evaluate,
    h2_norm,
    hp_mean,
    hp_membership_classifier,
)
from .matrices import (
    OperatorMatrix,
    SingularResolventError,
    adjoint_matrix,
    cesaro_matrix,
    composition_matrix_affine,
    composition_matrix_general,
    generator_matrix,
    identity_matrix,
    matrix_apply,
    matrix_power,
    matrix_product,
    resolvent_solve,
)
from .semiflows import (
    FLOW_NAMES,
    DiscFunction,
    Semiflow,
    catalog,
    classify,
    eigenfunction,
    estimate_strip_widths,
    get_flow,
    koenigs,
    koenigs_inv,
    phi,
    phi_complement,
)
from .spectral import (
    LocalRadiusTrace,
    PseudospectrumGrid,
    SpectralRegion,
    eigenfield_witness,
    generator_point_spectrum_region,
    generator_spectrum_region,
    local_radius_trace,
    map_region_laplace,
    map_region_resolvent,
    pseudospectral_radius,
    pseudospectrum_grid,
    semigroup_spectrum_region,
    sigma_min,
    spectral_radius_formula,
)
from .subordination import (
    AdmissibilityError,
    BorelMeasure,
    PlanTooSmallError,
    QuadraturePlan,
    SpectralCaveatWarning,
    averaging_apply,
    check_measure_regularity,
    dirac_measure,
    exp_poly_measure,
    exponential_measure,
    general_subordinated_apply,
    laplace_transform,
    measure_from_spec,
    plan_for,
    subordinate_matrix,
)

__version__ = "0.1.0"
