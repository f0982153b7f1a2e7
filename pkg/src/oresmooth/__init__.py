"""Exact arithmetic in two-generator Ore extensions, their twisted differential
calculi, integral forms and divergences, and the associated Hopf checks."""

from .basering import (
    BaseKind,
    BasePoly,
    SigmaKind,
    SigmaSpec,
    apply_delta,
    apply_sigma,
    apply_sigma_inverse,
    derivative,
)
from .calculus import (
    Calculus,
    IntegralForm1,
    OneForm,
    TwoForm,
    calculus_for,
    check_divergence,
    check_dual_basis,
    check_kernel_of_d,
    differential,
    divergence,
    divergence_preimage,
    left_mul_oneform,
    pi_omega,
    volume_automorphism,
    wedge,
)
from .errors import (
    IncompatibleBaseRing,
    NonInvertibleImage,
    NoPreimage,
    NotAdmissibleSpec,
    OreSmoothError,
    ParseError,
    SpecMismatch,
)
from .hopf import HopfFamily, TensorElement, coproduct, counit, smoothness_pipeline, verify_hopf
from .morphisms import (
    Admissibility,
    NuPair,
    Verdict,
    build_nu_pair,
    check_bar_nu_y_only,
    check_nu_x_constraint,
    check_nu_y_constraint,
    classify,
)
from .ore import AlgebraMap, AlgebraSpec, OreElement, add, normalize_product, scalar_mul
from .parsing import parse_element, parse_value
from .reports import CheckReport
from .scalar import Scalar, format_scalar, parse_scalar

__version__ = "0.1.0"
