from typing import Any, Optional

from .errors import ValidationError
from .instances.algebra import ab_instance, cmon_instance, cring_instance, grp_instance
from .instances.finset import finset_instance, fintop_instance, pointed_instance
from .instances.instance import CategoryInstance
from .instances.slices import CosliceInstance, SliceInstance
from .instances.top1 import top1_instance
from .models import InstanceKind


class NormCat:
    """One instance of every shipped category, sharing a hom-set bound.

    Args:
        max_homset (Optional[int]): Candidate bound for hom enumeration.
            Defaults to ``config.MAX_HOMSET``

    Example:
        ```python
        nc = NormCat()
        S3 = symmetric_group(3)
        f = nc.grp.hom_set(cyclic_group(2), S3)[1]
        decomposition = normal_decomposition(nc.grp, f)
        ```
    """

    def __init__(self, max_homset: Optional[int] = None):
        self.sets = finset_instance(max_homset)
        self.pointed = pointed_instance(max_homset)
        self.top = fintop_instance(max_homset)
        self.top1 = top1_instance(max_homset)
        self.cmon = cmon_instance(max_homset)
        self.ab = ab_instance(max_homset)
        self.grp = grp_instance(max_homset)
        self.cring = cring_instance(max_homset)

    def instance(self, kind: str) -> CategoryInstance:
        """The instance for an :class:`InstanceKind` value such as ``"pointed-set"``.

        Raises:
            ValidationError: If the kind is unknown
        """
        if not InstanceKind.is_valid(kind):
            raise ValidationError(f"Unknown instance kind {kind!r}", which="kind")
        return {
            InstanceKind.SET: self.sets,
            InstanceKind.POINTED_SET: self.pointed,
            InstanceKind.TOP: self.top,
            InstanceKind.TOP1: self.top1,
            InstanceKind.CMON: self.cmon,
            InstanceKind.AB: self.ab,
            InstanceKind.GRP: self.grp,
            InstanceKind.CRING: self.cring,
        }[InstanceKind(kind)]

    def slice(self, kind: str, C: Any) -> SliceInstance:
        return SliceInstance(self.instance(kind), C)

    def coslice(self, kind: str, C: Any) -> CosliceInstance:
        return CosliceInstance(self.instance(kind), C)
