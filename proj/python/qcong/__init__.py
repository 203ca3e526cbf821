"""q-series expansions and congruence checks for generalized cubic and overcubic partitions."""

from ._core import (
    CatalogError,
    __version__,
    characterize,
    claim_ids,
    density,
    direct_congruence,
    eta_meta,
    expand,
    expand_product,
    identity_ids,
    oracle_count,
    run_cli,
    verify_claim,
    verify_identity,
)

__all__ = [
    "CatalogError",
    "__version__",
    "characterize",
    "claim_ids",
    "density",
    "direct_congruence",
    "eta_meta",
    "expand",
    "expand_product",
    "identity_ids",
    "oracle_count",
    "run_cli",
    "verify_claim",
    "verify_identity",
]
