from enum import Enum
from typing import Any, Dict, List, TypedDict

from typing_extensions import NotRequired


class ValidatableEnum(Enum):
    @classmethod
    def is_valid(cls, value: str) -> bool:
        try:
            cls(value)
            return True
        except ValueError:
            return False


class InstanceKind(ValidatableEnum):
    SET = "set"
    POINTED_SET = "pointed-set"
    TOP = "top"
    TOP1 = "top1"
    CMON = "cmon"
    AB = "ab"
    GRP = "grp"
    CRING = "cring"


class RecordStatus(ValidatableEnum):
    PASS = "PASS"
    FAIL = "FAIL"
    EXPECTED_FAIL = "EXPECTED-FAIL"
    SKIPPED = "SKIPPED"


class ReportRecord(TypedDict):
    """One line of a verification or decomposition report.

    Fields:
        statement (str): Stable id of the checked property, e.g. "grp-slice-closure" or "quillen/set"
        status (str): One of PASS, FAIL, EXPECTED-FAIL, SKIPPED
        detail (str): Human readable summary of what was checked
        witness (Dict[str, Any]): Element-listed maps reproducing the result
        seconds (float): Wall time spent on the check
    """
    statement: str
    status: str
    detail: str
    witness: Dict[str, Any]
    seconds: float


class MapDoc(TypedDict):
    dom: str
    cod: str
    map: List[str]


class ObjectDoc(TypedDict):
    """Wire shape of one object in an instance document.

    Exactly one family of keys is used, according to the document kind:
    ``carrier`` alone (set), plus ``basepoint`` (pointed-set), plus
    ``opens`` (top) or ``closure`` (top1), ``op``/``unit`` (cmon),
    ``op``/``unit``/``inv`` (ab, grp), ``add``/``mul``/``zero``/``one``/``neg``
    (cring). ``named`` refers to a catalog entry instead.
    """
    carrier: NotRequired[List[str]]
    named: NotRequired[str]
    basepoint: NotRequired[str]
    opens: NotRequired[List[List[str]]]
    closure: NotRequired[Dict[str, List[str]]]
    t1: NotRequired[bool]
    op: NotRequired[List[List[str]]]
    unit: NotRequired[str]
    inv: NotRequired[List[str]]
    add: NotRequired[List[List[str]]]
    mul: NotRequired[List[List[str]]]
    zero: NotRequired[str]
    one: NotRequired[str]
    neg: NotRequired[List[str]]


class FibreDoc(TypedDict):
    """Slice (``over``) or coslice (``under``) wrapper of a document."""
    over: NotRequired[str]
    under: NotRequired[str]
    structure: Dict[str, str]


class InstanceDoc(TypedDict):
    kind: str
    objects: Dict[str, ObjectDoc]
    morphisms: Dict[str, MapDoc]
    slice: NotRequired[FibreDoc]
    coslice: NotRequired[FibreDoc]
