"""
Normal decompositions in finite concrete categories.
"""

from normcat.models import InstanceKind, RecordStatus, ReportRecord
from .__version__ import __version__ as _version
from .core import (
    NormalClosureResult,
    NormalDecomposition,
    NormalDualClosureResult,
    normal_closure,
    normal_decomposition,
    normal_dual_closure,
)
from .normcat import NormCat

__version__ = _version

__all__ = [
    "NormCat",
    "InstanceKind",
    "RecordStatus",
    "ReportRecord",
    "NormalClosureResult",
    "NormalDualClosureResult",
    "NormalDecomposition",
    "normal_closure",
    "normal_dual_closure",
    "normal_decomposition",
]
