"""Knot Floer data of two-bridge knots and of their lifts to cyclic branched covers."""

__version__ = "0.1.0"

from .algebra import (
    CycloPoly,
    CyclotomicInteger,
    FiniteAbelianGroup,
    GroupAlgebraElem,
    LaurentPoly,
    cyclotomic_eval,
    normalize_alexander,
    smith_normal_form,
)
from .cfk_base import (
    BaseGenerator,
    GradedRanks,
    alexander_polynomial,
    base_generators,
    determinant_check,
    hfk_hat_base,
)
from .cover import (
    CoverGenerator,
    SpincClassSummary,
    central_iso_check,
    cover_generators,
    fingerprint,
    spinc_classes,
)
from .errors import (
    AsymmetricGrading,
    BranchedHFKError,
    InfiniteH1,
    InvalidParameters,
    NotSymmetrizable,
    NotUnit,
)
from .fox import (
    Presentation,
    SplittingMaps,
    Word,
    abelianize,
    fox_derivative,
    lift_presentation,
    splitting_maps,
    two_bridge_presentation,
)
from .torsion import TorsionElement, acyclicity_check, turaev_torsion, twisted_alexander_wada
from .twobridge import (
    TwoBridgeKnot,
    continued_fraction,
    epsilon_sequence,
    from_twists,
    normalize,
    schubert_pairing,
    signature,
)
