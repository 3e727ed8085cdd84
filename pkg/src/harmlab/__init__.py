"""Planar harmonic maps on the unit disk that share a Jacobian.

Jets and power series (``jets``, ``series``, ``expr``), harmonic maps and the
Jacobian PDE (``harmonic``), Schwarzian derivatives and Mobius maps
(``schwarzian``, ``mobius``), and the equal-Jacobian families (``family``).
"""
from .analytic import eval_jet, linear_combination
from .catalog import catalog_lookup, catalog_names
from .errors import HarmlabError
from .expr import parse_expr, pretty_print
from .family import (
    FamilyParams,
    RealAffineMap,
    Type1Params,
    affine_map,
    family_member,
    member_dilatation_closed_form,
    rotate_parts,
    special_case_family,
    type1_family_member,
    verify_family,
)
from .grid import GridSpec
from .harmonic import (
    Dilatation,
    HarmonicMap,
    JacobianType,
    ScalarFieldSampler,
    Wirtinger,
    classify_type,
    dilatation,
    is_sense_preserving,
    jacobian,
    verify_jacobian_pde,
    verify_pde_eq1,
    verify_R_harmonic,
    wirtinger_fd,
)
from .jets import Jet, jet_exp, jet_log, jet_mul, jet_recip
from .kernels import BACKEND
from .mobius import (
    Mobius,
    disk_automorphism,
    fit_disk_automorphism,
    is_disk_automorphism,
    mobius_apply,
    mobius_compose,
    mobius_from_3_points,
    mobius_inverse,
)
from .report import CheckReport
from .schwarzian import compute_Q_analytic, compute_Q_blackbox, schwarzian, solve_schwarzian_series
from .series import PowerSeries, series_antiderivative, series_derivative, series_from_expr

__version__ = "0.1.0"
