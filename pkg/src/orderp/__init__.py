"""Exact computations with group schemes of order p: congruence groups,
Tate-Oort data, the equivalence between them, fiber degenerations over DVRs
and Weil restriction of closed conditions."""

from .algebra import (
    DVRSpec,
    Monic,
    MonomialRewrite,
    PresentedRing,
    RingElement,
    divide_exact,
    extend,
    integers,
    integers_mod,
    inverse,
    is_unit,
    localization,
    normal_form,
    padic_ring,
    polynomial_ring,
    quotient,
    rationals,
    substitute,
)
from .congruence import (
    CongruenceDatum,
    embedding_diagram,
    isogeny_polynomial,
    kernel_hopf,
    universal_datum,
    universal_ring,
    verify_identities,
    verify_universal_identities,
)
from .equivalence import (
    distinguished_t,
    eigenprojector,
    multiplication_by_m,
    rescale_datum,
    tcg_to_tgc,
    tgc_to_tcg,
)
from .fibers import classify_fiber, degeneration_report
from .padic import PAdicInt, derive_w_constants, teichmuller
from .tate_oort import (
    Section,
    TateOortTriple,
    cartier_dual,
    is_cogenerator,
    is_generator,
    katz_mazur_oracle,
)
from .weil import (
    FiniteFreeExtension,
    Ideal,
    equalizer_ideal,
    structure_condition_ideal,
    weil_restrict_closed,
)

__version__ = "0.1.0"

__all__ = [
    "cartier_dual",
    "classify_fiber",
    "CongruenceDatum",
    "degeneration_report",
    "derive_w_constants",
    "distinguished_t",
    "divide_exact",
    "DVRSpec",
    "eigenprojector",
    "embedding_diagram",
    "equalizer_ideal",
    "extend",
    "FiniteFreeExtension",
    "Ideal",
    "integers",
    "integers_mod",
    "inverse",
    "is_cogenerator",
    "is_generator",
    "is_unit",
    "isogeny_polynomial",
    "katz_mazur_oracle",
    "kernel_hopf",
    "localization",
    "Monic",
    "MonomialRewrite",
    "multiplication_by_m",
    "normal_form",
    "padic_ring",
    "PAdicInt",
    "polynomial_ring",
    "PresentedRing",
    "quotient",
    "rationals",
    "rescale_datum",
    "RingElement",
    "Section",
    "structure_condition_ideal",
    "substitute",
    "TateOortTriple",
    "tcg_to_tgc",
    "teichmuller",
    "tgc_to_tcg",
    "universal_datum",
    "universal_ring",
    "verify_identities",
    "verify_universal_identities",
    "weil_restrict_closed",
]
