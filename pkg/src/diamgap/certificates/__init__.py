"""Upper-bound certificates and lower-bound witnesses for the gap-diameter problem."""
from .generate import find_cover_pair, generate_lb, generate_ub_certificate
from .hitting import hitting_set, sample_size
from .model import (
    CertParams,
    GoodSetClaim,
    LbWitness,
    Mode,
    UbCertificate,
    Variant,
    goodness_radius,
    size_bound,
)
from .serialize import dumps, loads, read, write
from .verify import Verdict, check_good_set, verify_lb, verify_ub

__all__ = [
    "CertParams",
    "GoodSetClaim",
    "LbWitness",
    "Mode",
    "UbCertificate",
    "Variant",
    "Verdict",
    "check_good_set",
    "dumps",
    "find_cover_pair",
    "generate_lb",
    "generate_ub_certificate",
    "goodness_radius",
    "hitting_set",
    "loads",
    "read",
    "sample_size",
    "size_bound",
    "verify_lb",
    "verify_ub",
    "write",
]
