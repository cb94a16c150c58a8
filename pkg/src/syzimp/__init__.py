"""Implicitization of rational curves and surfaces by syzygies and moving forms."""

from .basepoints import (
    BasepointData,
    StrongMuBasis,
    degree_formula,
    hilbert_burch_check,
    strong_mu_basis,
    strong_mu_numerology,
)
from .errors import (
    HypothesisFailure,
    InternalConsistencyError,
    ParseError,
    PreconditionError,
    SyzImpError,
)
from .forms import BIHOM, BINARY, TERNARY, Form, RingCtx, gcd_binary, parse_form
from .implicit import (
    ImplicitResult,
    MovingMatrix,
    assemble_M_tp,
    assemble_M_tp_one_bp,
    assemble_M_tri,
    curve_matrix,
    dandrea_ratio,
    implicitize_curve,
    implicitize_surface,
    moving_det,
    mu_resultant,
)
from .syzygy import (
    MuBasis,
    SyzygyVector,
    hilbert_dim,
    is_saturated_up_to,
    koszul_witness,
    mu_basis,
    saturation_piece,
    syzygies,
    vanishes_at_basepoints,
)
from .target import TargetPoly, normalize, parse_target, substitute

__version__ = "0.1.0"
