"""Exact Frobenius singularity invariants over finite prime fields.

Sparse polynomial arithmetic, Groebner bases, bracket powers and their
e-th roots, monomial direct summands with purity certificates, Cartier
operators on such summands, nu invariants, test ideals and jumping
spectra, b-polynomial root checks mod p, and independent brute-force
oracles for cross-validation.
"""

from .bspoly import (
    BCheckReport,
    BCheckRow,
    BPolynomial,
    bs_jump_check,
    bs_threshold_check,
    catalog_divisibility_pairs,
    load_catalog,
    reduce_mod_p,
)
from .cartier import (
    CartierImage,
    ToricCartierMap,
    cartier_image,
    d_image_equal_R,
    enumerate_maps,
)
from .errors import (
    BoxExceededError,
    CoefficientReductionError,
    DegreeCapError,
    FsingError,
    NotInSemigroupError,
    ParseError,
    PurityError,
    RadicalHypothesisError,
    ResourceLimitError,
    RingMismatchError,
)
from .frobenius import FrobeniusContext, bracket_power, d_image, eth_root
from .groebner import (
    Ideal,
    buchberger,
    ideal_contains,
    ideal_equal,
    ideal_member,
    ideal_power,
    ideal_product,
    ideal_sum,
    normal_form,
    radical_member,
)
from .invariants import (
    JumpSpectrum,
    NuResult,
    SummandFilterReport,
    TestIdealResult,
    ThresholdEstimate,
    cyclic_witness,
    fpt_truncation,
    jump_spectrum,
    nu,
    summand_filter,
    test_ideal,
)
from .limits import DEFAULT_LIMITS, Limits
from .oracle import (
    PieceSolution,
    TransportIso,
    cartier_piece_solver,
    eth_root_dense,
    nu_dense,
    transport,
    transport_iso,
)
from .poly import (
    Polynomial,
    PolyRing,
    format_poly,
    parse_poly,
    pe_decompose,
    ring,
)
from .selftest import CriterionResult, run_criteria
from .session import Session, parse_session, parse_session_text
from .summand import (
    AffineSemigroup,
    Presentation,
    PurityCertificate,
    SplitEmbedding,
    beta_project,
    build_embedding,
    monomial_decompose,
    presentation,
    r_ideal_contains,
    r_ideal_equal,
    r_ideal_member,
)

__all__ = [name for name in dir() if not name.startswith("_")]

__version__ = "0.1.0"
