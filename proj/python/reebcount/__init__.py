"""Exact index calculus, common index jumps and multiplicity bounds."""

from ._core import *  # noqa: F401,F403
from ._core import (
    CertificateMismatch,
    DegenerateIterate,
    HypothesisViolated,
    InvalidInput,
    IterateOutOfCertifiedRange,
    ReebError,
    SearchExhausted,
    ValidationError,
    ZeroMeanIndex,
)

__version__ = "0.1.0"
