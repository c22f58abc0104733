"""Instance documents: the JSON wire format read and written by the CLI.

A document names its objects and morphisms. Tables are row-major arrays of
element labels over the declared carrier order, so a document can be
written and diffed by hand::

    {
      "kind": "grp",
      "objects": {"A": {"named": "Z2"}, "B": {"named": "S3"}},
      "morphisms": {"f": {"dom": "A", "cod": "B", "map": ["0", "(0 1)"]}}
    }

An optional ``slice`` (or ``coslice``) wrapper names the object ``C`` and,
for each wrapped object, the morphism serving as its structure map.
"""
import json
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Sequence

from .catalog import monoid_by_name, named
from .errors import ParseError, ValidationError
from .instances.finset import FinSetObj, FinTopObj, PointedObj
from .instances.instance import CategoryInstance, Mor
from .instances.slices import CosliceInstance, SliceInstance
from .instances.top1 import ClosureSpace, closure_space_instance
from .models import InstanceDoc, InstanceKind, MapDoc, ObjectDoc
from .normcat import NormCat
from .tables import GroupTable, MonoidTable, RingTable
from .validations import bit_members, to_bits

logger = logging.getLogger(__name__)

DOC_KEYS = {"kind", "objects", "morphisms", "slice", "coslice"}


def parse_doc(text: str) -> InstanceDoc:
    """Parse and shape-check an instance document.

    Raises:
        ParseError: If the text is not valid JSON
        ValidationError: If a required key is missing or has the wrong shape
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno, e.colno) from None
    validate_doc_shape(doc)
    return doc


def render_doc(doc: InstanceDoc, compact: bool = False) -> str:
    if compact:
        return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False)


def validate_doc_shape(doc: Any) -> None:
    if not isinstance(doc, dict):
        raise ValidationError("Document must be an object", which="document")
    unknown = set(doc) - DOC_KEYS
    if unknown:
        raise ValidationError(f"Unknown keys {sorted(unknown)}", which="document")
    if not InstanceKind.is_valid(doc.get("kind", "")):
        raise ValidationError(f"Unknown instance kind {doc.get('kind')!r}", which="kind")
    for key in ("objects", "morphisms"):
        if not isinstance(doc.get(key), dict):
            raise ValidationError(f"{key!r} must be an object", which=key)
    for name, spec in doc["morphisms"].items():
        if not isinstance(spec, dict) or not {"dom", "cod", "map"} <= set(spec):
            raise ValidationError("Morphism needs dom, cod and map", which=f"morphisms.{name}")
        for end in ("dom", "cod"):
            if spec[end] not in doc["objects"]:
                raise ValidationError(f"Unknown object {spec[end]!r}", which=f"morphisms.{name}.{end}")
    if "slice" in doc and "coslice" in doc:
        raise ValidationError("A document is either sliced or cosliced", which="document")
    for key, side in (("slice", "over"), ("coslice", "under")):
        if key not in doc:
            continue
        wrapper = doc[key]
        if not isinstance(wrapper, dict) or wrapper.get(side) not in doc["objects"]:
            raise ValidationError(f"{key!r} must name the object {side!r}", which=key)
        for obj, structure in wrapper.get("structure", {}).items():
            if obj not in doc["objects"] or structure not in doc["morphisms"]:
                raise ValidationError("Structure maps must name an object and a morphism", which=f"{key}.{obj}")


def _labels(carrier: Sequence[str], values: Sequence[str], which: str) -> List[int]:
    index = {label: i for i, label in enumerate(carrier)}
    result = []
    for i, value in enumerate(values):
        if value not in index:
            raise ValidationError(f"Unknown element {value!r}", which=f"{which}[{i}]")
        result.append(index[value])
    return result


def _table(carrier: Sequence[str], rows: Sequence[Sequence[str]], which: str):
    return tuple(tuple(_labels(carrier, row, f"{which}[{i}]")) for i, row in enumerate(rows))


def _label(carrier: Sequence[str], value: str, which: str) -> int:
    return _labels(carrier, [value], which)[0]


def build_object(kind: str, name: str, spec: ObjectDoc) -> Any:
    """Construct the object a document entry describes.

    Raises:
        ValidationError: If the entry fails the constructor validation of its kind
    """
    if not isinstance(spec, dict):
        raise ValidationError("Object must be a mapping", which=f"objects.{name}")
    if "named" in spec:
        if kind == InstanceKind.CMON.value:
            return monoid_by_name(spec["named"])
        return named(spec["named"])
    carrier = tuple(spec.get("carrier", ()))
    which = f"objects.{name}"
    try:
        if kind == InstanceKind.SET.value:
            return FinSetObj(carrier)
        if kind == InstanceKind.POINTED_SET.value:
            return PointedObj(carrier, _label(carrier, spec["basepoint"], f"{which}.basepoint"))
        if kind == InstanceKind.TOP.value:
            opens = [to_bits(_labels(carrier, u, f"{which}.opens")) for u in spec["opens"]]
            return FinTopObj.from_opens(carrier, opens)
        if kind == InstanceKind.TOP1.value:
            if "closure" not in spec:
                return ClosureSpace.discrete(carrier)
            closure = spec["closure"]
            point_closure = tuple(
                to_bits(_labels(carrier, closure.get(label, [label]), f"{which}.closure.{label}"))
                for label in carrier
            )
            return ClosureSpace(carrier, point_closure, spec.get("t1", True))
        if kind == InstanceKind.CMON.value:
            op = _table(carrier, spec["op"], f"{which}.op")
            return MonoidTable(carrier, op, _label(carrier, spec["unit"], f"{which}.unit"), True, name)
        if kind in (InstanceKind.AB.value, InstanceKind.GRP.value):
            op = _table(carrier, spec["op"], f"{which}.op")
            unit = _label(carrier, spec["unit"], f"{which}.unit")
            inv = tuple(_labels(carrier, spec["inv"], f"{which}.inv"))
            return GroupTable(carrier, op, unit, inv, kind == InstanceKind.AB.value, name)
        if kind == InstanceKind.CRING.value:
            return RingTable(
                carrier,
                _table(carrier, spec["add"], f"{which}.add"),
                _table(carrier, spec["mul"], f"{which}.mul"),
                _label(carrier, spec["zero"], f"{which}.zero"),
                _label(carrier, spec["one"], f"{which}.one"),
                tuple(_labels(carrier, spec["neg"], f"{which}.neg")),
                name,
            )
    except KeyError as e:
        raise ValidationError(f"Missing key {e.args[0]!r}", which=which) from None
    raise ValidationError(f"Unknown instance kind {kind!r}", which="kind")


def object_doc(kind: str, obj: Any) -> ObjectDoc:
    """Render an object as a self-contained document entry, with full tables."""
    carrier = list(obj.carrier)

    def rows(table) -> List[List[str]]:
        return [[carrier[x] for x in row] for row in table]

    if kind == InstanceKind.SET.value:
        return {"carrier": carrier}
    if kind == InstanceKind.POINTED_SET.value:
        return {"carrier": carrier, "basepoint": carrier[obj.basepoint]}
    if kind == InstanceKind.TOP.value:
        opens = sorted(obj.opens, key=lambda u: (bin(u).count("1"), u))
        return {"carrier": carrier, "opens": [[carrier[x] for x in bit_members(u)] for u in opens]}
    if kind == InstanceKind.TOP1.value:
        closure = {carrier[x]: [carrier[y] for y in bit_members(cl)] for x, cl in enumerate(obj.point_closure)}
        return {"carrier": carrier, "closure": closure, "t1": obj.singletons_closed()}
    if kind == InstanceKind.CMON.value:
        return {"carrier": carrier, "op": rows(obj.op), "unit": carrier[obj.unit]}
    if kind in (InstanceKind.AB.value, InstanceKind.GRP.value):
        return {
            "carrier": carrier,
            "op": rows(obj.op),
            "unit": carrier[obj.unit],
            "inv": [carrier[x] for x in obj.inv],
        }
    if kind == InstanceKind.CRING.value:
        return {
            "carrier": carrier,
            "add": rows(obj.add),
            "mul": rows(obj.mul),
            "zero": carrier[obj.zero],
            "one": carrier[obj.one],
            "neg": [carrier[x] for x in obj.neg],
        }
    raise ValidationError(f"Unknown instance kind {kind!r}", which="kind")


def morphism_doc(K: CategoryInstance, f: Mor, dom: str, cod: str) -> MapDoc:
    return {"dom": dom, "cod": cod, "map": K.describe(f)["map"]}


@dataclass
class LoadedDoc:
    """A document turned into live objects and morphisms.

    Fields:
        instance (CategoryInstance): The slice or coslice instance when the
            document is wrapped, otherwise the base instance
        base (CategoryInstance): The instance named by ``kind``
        objects (Dict[str, Any]): Objects by name, wrapped where a structure map is given
        morphisms (Dict[str, Mor]): Morphisms by name, in the instance their endpoints live in
        base_morphisms (Dict[str, Mor]): Every morphism by name, in the base instance
        fibred (List[str]): Names of the morphisms living in the slice or coslice
    """
    instance: CategoryInstance
    base: CategoryInstance
    objects: Dict[str, Any]
    morphisms: Dict[str, Mor]
    base_morphisms: Dict[str, Mor]
    fibred: List[str] = field(default_factory=list)

    def instance_for(self, name: str) -> CategoryInstance:
        """The instance a named morphism is to be decomposed in.

        Raises:
            ValidationError: If the document has no such morphism
        """
        if name not in self.morphisms:
            raise ValidationError(f"Unknown morphism {name!r}", which="morphism")
        return self.instance if name in self.fibred else self.base


def load_doc(nc: NormCat, doc: InstanceDoc) -> LoadedDoc:
    """Validate a parsed document and build its objects and morphisms.

    Objects of kind ``top1`` must be T1 unless some object declares
    ``"t1": false``, in which case the whole document is read as finite
    closure spaces.

    Raises:
        ValidationError: If an object, a morphism or a structure map fails validation
    """
    validate_doc_shape(doc)
    kind = doc["kind"]
    raw = {name: build_object(kind, name, spec) for name, spec in doc["objects"].items()}
    base = nc.instance(kind)
    if kind == InstanceKind.TOP1.value and any(spec.get("t1") is False for spec in doc["objects"].values()):
        logger.info("Reading %s as finite closure spaces", kind)
        base = closure_space_instance(base.max_homset)
    for name, obj in raw.items():
        try:
            base.validate_object(obj)
        except ValidationError as e:
            raise ValidationError(str(e), which=f"objects.{name}") from None
    base_morphisms = {}
    for name, spec in doc["morphisms"].items():
        try:
            base_morphisms[name] = base.map_by_labels(raw[spec["dom"]], raw[spec["cod"]], spec["map"])
        except ValidationError as e:
            raise ValidationError(str(e), which=f"morphisms.{name}") from None

    wrapper_key = "slice" if "slice" in doc else "coslice" if "coslice" in doc else None
    if wrapper_key is None:
        return LoadedDoc(base, base, raw, dict(base_morphisms), base_morphisms)

    wrapper = doc[wrapper_key]
    C = raw[wrapper["over" if wrapper_key == "slice" else "under"]]
    instance: CategoryInstance = SliceInstance(base, C) if wrapper_key == "slice" else CosliceInstance(base, C)
    objects = dict(raw)
    for name, structure in wrapper.get("structure", {}).items():
        s = base_morphisms[structure]
        try:
            objects[name] = (
                instance.over(raw[name], s) if wrapper_key == "slice" else instance.under(raw[name], s)
            )
        except ValidationError as e:
            raise ValidationError(str(e), which=f"{wrapper_key}.{name}") from None
    morphisms = dict(base_morphisms)
    fibred = []
    wrapped = set(wrapper.get("structure", {}))
    for name, spec in doc["morphisms"].items():
        if spec["dom"] in wrapped and spec["cod"] in wrapped:
            try:
                morphisms[name] = instance.morphism(
                    objects[spec["dom"]], objects[spec["cod"]], base_morphisms[name].payload
                )
            except ValidationError as e:
                raise ValidationError(str(e), which=f"morphisms.{name}") from None
            fibred.append(name)
    return LoadedDoc(instance, base, objects, morphisms, base_morphisms, fibred)


def load_text(nc: NormCat, text: str) -> LoadedDoc:
    return load_doc(nc, parse_doc(text))
