"""Exact joint cumulants of a free unitary flow and its adjoint.

Everything is computed in exact rational arithmetic over the
quasi-polynomial ring Q[t, e^{-t/2}]; floats appear only when a caller
asks for a numeric evaluation at a specific time.
"""

from .alternating import (
    TruncSeries1,
    XiSequence,
    chi_expansion,
    chi_roundtrip_defect,
    lagrange_lambda,
    lambda_series,
    pde_residual,
    pde_z_coefficient,
    xi_by_inversion,
    xi_by_mobius,
    xi_by_recursion,
)
from .cumulants import (
    ZPolynomial,
    canonical_word,
    haar_cumulant,
    switch_number,
    z_mobius,
    z_recursive,
)
from .errors import InsufficientDataError, SizeError, StructureError
from .laplace import (
    check_f_identity,
    f_bivariate,
    i_quadrature,
    suffix_star_cumulant,
    u_poly,
    v_k1_closed,
    v_poly,
    z_from_laplace,
)
from .moments import Word, as_word, biane_Q, diag_cumulant, m_poly
from .ncpart import (
    NCPartition,
    catalan,
    enumerate_nc,
    kreweras,
    moebius_from_zero,
    moebius_to_one,
)
from .qpoly import Poly, QuasiPoly, poly_text, quasipoly_from_json
from .rdiag import (
    Distribution,
    OmegaNC,
    alpha_sequence,
    beta_enumeration,
    beta_mobius,
    haar_derivative,
    haar_limit,
    is_alternating,
    mixed_q_cumulant,
    nc_omega,
    nc_omega_structured,
)

__version__ = "0.1.0"

__all__ = [
    "Distribution",
    "InsufficientDataError",
    "NCPartition",
    "OmegaNC",
    "Poly",
    "QuasiPoly",
    "SizeError",
    "StructureError",
    "TruncSeries1",
    "Word",
    "XiSequence",
    "ZPolynomial",
    "alpha_sequence",
    "as_word",
    "beta_enumeration",
    "beta_mobius",
    "biane_Q",
    "canonical_word",
    "catalan",
    "check_f_identity",
    "chi_expansion",
    "chi_roundtrip_defect",
    "diag_cumulant",
    "enumerate_nc",
    "f_bivariate",
    "haar_cumulant",
    "haar_derivative",
    "haar_limit",
    "i_quadrature",
    "is_alternating",
    "kreweras",
    "lagrange_lambda",
    "lambda_series",
    "m_poly",
    "mixed_q_cumulant",
    "moebius_from_zero",
    "moebius_to_one",
    "nc_omega",
    "nc_omega_structured",
    "pde_residual",
    "pde_z_coefficient",
    "poly_text",
    "quasipoly_from_json",
    "suffix_star_cumulant",
    "switch_number",
    "u_poly",
    "v_k1_closed",
    "v_poly",
    "xi_by_inversion",
    "xi_by_mobius",
    "xi_by_recursion",
    "z_from_laplace",
    "z_mobius",
    "z_recursive",
]
