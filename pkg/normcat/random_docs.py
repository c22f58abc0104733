"""Seeded pseudo-random structures and morphisms.

Everything is drawn from one :class:`random.Random`, so the same seed always
yields the same documents, byte for byte once rendered.
"""
import logging
import random
from functools import lru_cache
from typing import Iterator, List, Optional, Tuple

from . import config
from .catalog import monoid_by_name, named
from .docs import morphism_doc, object_doc
from .errors import HomSetTooLarge, ValidationError
from .instances.finset import FinSetObj, FinTopObj, PointedObj, exhaustive_spaces
from .instances.instance import CategoryInstance, Mor
from .instances.top1 import ClosureSpace
from .models import InstanceDoc, InstanceKind
from .normcat import NormCat

logger = logging.getLogger(__name__)

POOLS = {
    InstanceKind.CMON: ("T1", "T2", "T3", "Z2", "Z3", "Z4"),
    InstanceKind.AB: ("Z1", "Z2", "Z3", "Z4", "V4", "Z6", "Z8"),
    InstanceKind.GRP: (
        "Z1", "Z2", "Z3", "A3", "V4", "Z4", "Z5", "S3", "Z6", "Z7",
        "D4", "Q8", "Z8", "Z2xZ4", "Z2xZ2xZ2", "Z9", "Z3xZ3", "D5", "Z10", "Z11",
        "A4", "D6", "Dic3", "Z12", "Z2xZ6",
    ),
    InstanceKind.CRING: ("0", "Z/2", "Z/3", "Z/4", "Z/6", "F4", "F2[x]/(x^2)", "F2xF2"),
}


@lru_cache(maxsize=None)
def _spaces(max_carrier: int) -> Tuple[FinTopObj, ...]:
    return tuple(exhaustive_spaces(max_carrier))


def _carrier(n: int) -> Tuple[str, ...]:
    return tuple(str(i) for i in range(n))


def catalog_pool(kind: InstanceKind, max_order: int) -> List:
    """Catalog structures of one algebraic kind with order at most ``max_order``."""
    lookup = monoid_by_name if kind == InstanceKind.CMON else named
    structures = [lookup(name) for name in POOLS[kind]]
    return [S for S in structures if S.size <= max_order]


def random_morphism(
    nc: NormCat,
    kind: str,
    rng: random.Random,
    max_carrier: Optional[int] = None,
    max_order: Optional[int] = None,
) -> Tuple[CategoryInstance, Mor]:
    """Draw one morphism of the given instance kind.

    Sets and pointed sets get uniform element maps between carriers of at
    most ``max_carrier`` points; spaces get a uniform choice from the hom-set
    between two topologies on at most ``max_carrier`` points; algebras get a uniform
    choice from the hom-set between two catalog structures of order at most
    ``max_order``.

    Raises:
        ValidationError: If the kind is unknown
    """
    max_carrier = config.MAX_CARRIER if max_carrier is None else max_carrier
    max_order = config.MAX_ORDER if max_order is None else max_order
    K = nc.instance(kind)
    kind_ = InstanceKind(kind)
    if kind_ == InstanceKind.SET:
        n = rng.randint(0, max_carrier)
        m = rng.randint(1 if n else 0, max(max_carrier, 1))
        table = [rng.randrange(m) for _ in range(n)]
        return K, K.morphism(FinSetObj(_carrier(n)), FinSetObj(_carrier(m)), table)
    if kind_ == InstanceKind.POINTED_SET:
        n, m = rng.randint(1, max(max_carrier, 1)), rng.randint(1, max(max_carrier, 1))
        table = [0] + [rng.randrange(m) for _ in range(n - 1)]
        return K, K.morphism(PointedObj(_carrier(n)), PointedObj(_carrier(m)), table)
    if kind_ == InstanceKind.TOP1:
        n = rng.randint(0, max_carrier)
        m = rng.randint(1 if n else 0, max(max_carrier, 1))
        table = [rng.randrange(m) for _ in range(n)]
        return K, K.morphism(ClosureSpace.discrete(_carrier(n)), ClosureSpace.discrete(_carrier(m)), table)
    if kind_ == InstanceKind.TOP:
        spaces = _spaces(max_carrier)
        while True:
            A, B = rng.choice(spaces), rng.choice(spaces)
            homs = K.hom_set(A, B)
            if homs:
                return K, rng.choice(homs)
    pool = catalog_pool(kind_, max_order)
    if not pool:
        raise ValidationError(f"No {kind} structures of order at most {max_order}", which="max_order")
    pairs = [(A, B) for A in pool for B in pool]
    rng.shuffle(pairs)
    for A, B in pairs:
        try:
            homs = K.hom_set(A, B)
        except HomSetTooLarge as e:
            logger.debug("Skipping random pair: %s", e)
            continue
        if homs:
            return K, rng.choice(homs)
    raise ValidationError(f"No {kind} morphisms among structures of order at most {max_order}", which="max_order")


def random_doc(
    nc: NormCat,
    kind: str,
    rng: random.Random,
    max_carrier: Optional[int] = None,
    max_order: Optional[int] = None,
) -> InstanceDoc:
    """One document holding a random morphism ``f: A -> B`` (``A`` only, for endomorphisms)."""
    K, f = random_morphism(nc, kind, rng, max_carrier, max_order)
    objects = {"A": object_doc(kind, f.dom)}
    cod = "A"
    if f.cod != f.dom:
        objects["B"] = object_doc(kind, f.cod)
        cod = "B"
    return {"kind": kind, "objects": objects, "morphisms": {"f": morphism_doc(K, f, "A", cod)}}


def random_docs(
    kind: str,
    seed: int,
    count: int,
    max_carrier: Optional[int] = None,
    max_order: Optional[int] = None,
    nc: Optional[NormCat] = None,
) -> Iterator[InstanceDoc]:
    """Lazily draw ``count`` documents from ``random.Random(seed)``; the kind is checked up front.

    Raises:
        ValidationError: If the kind is unknown
    """
    nc = nc or NormCat()
    nc.instance(kind)
    rng = random.Random(seed)
    return (random_doc(nc, kind, rng, max_carrier, max_order) for _ in range(count))


def random_sample(
    nc: NormCat,
    kind: str,
    seed: int,
    count: int,
    max_carrier: Optional[int] = None,
    max_order: Optional[int] = None,
) -> List[Mor]:
    """``count`` random morphisms of one instance, without the document round trip."""
    rng = random.Random(seed)
    return [random_morphism(nc, kind, rng, max_carrier, max_order)[1] for _ in range(count)]
