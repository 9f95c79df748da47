"""Trapping sets, redundant parity-check matrices and trapping-redundancy bounds for binary linear codes."""

__version__ = "0.1.0"

from .gf2core import BitMatrix, BitVector, rank  # noqa: E402
from .codes import LinearCode  # noqa: E402

__all__ = ["BitMatrix", "BitVector", "LinearCode", "rank", "__version__"]
