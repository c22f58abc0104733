"""T1 spaces as finite closure spaces.

A finite T1 space is discrete, so every categorical statement about T1
spaces is only checkable here in the discrete case. The closure formulas
below are nonetheless written for arbitrary finite closure spaces and are
exercised on non-T1 inputs as plain functions.
"""
import logging
from dataclasses import dataclass, field
from typing import FrozenSet, Optional, Sequence, Tuple

from ..errors import ValidationError
from ..tables import CongruencePartition
from ..validations import bit_members, to_bits, validate_point_closure
from .finset import FinTopInstance, coslice_set_partition, saturated_part
from .instance import Mor

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ClosureSpace:
    """A finite space given by the closure of each point.

    The closure of a set is the union of the closures of its points. The
    ``t1`` flag asserts that singletons are closed; on a finite carrier that
    makes the closure the identity.
    """
    carrier: Tuple[str, ...]
    point_closure: Tuple[int, ...]
    t1: bool = field(default=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "carrier", tuple(self.carrier))
        object.__setattr__(self, "point_closure", tuple(self.point_closure))
        validate_point_closure(self.carrier, self.point_closure, self.t1)

    @classmethod
    def discrete(cls, carrier: Sequence[str]) -> "ClosureSpace":
        return cls(tuple(carrier), tuple(1 << x for x in range(len(carrier))), True)

    def closure(self, subset: int) -> int:
        bits = 0
        for x in bit_members(subset):
            bits |= self.point_closure[x]
        return bits

    def is_closed(self, subset: int) -> bool:
        return self.closure(subset) == subset

    def singletons_closed(self) -> bool:
        return all(cl == 1 << x for x, cl in enumerate(self.point_closure))

    def __str__(self) -> str:
        return "{" + ", ".join(self.carrier) + "}"


class Top1Instance(FinTopInstance):
    """Finite T1 spaces (equivalently, finite discrete spaces).

    With ``require_t1=False`` the instance accepts every finite closure space
    and is then just finite spaces in closure form, without the T1 overrides.
    """

    def __init__(self, max_homset: Optional[int] = None, require_t1: bool = True):
        super().__init__(max_homset)
        self.require_t1 = require_t1

    @property
    def kind(self) -> str:
        return "top1"

    def neighbourhoods(self, obj):
        n = len(obj.carrier)
        return tuple(
            to_bits(x for x in range(n) if obj.point_closure[x] >> y & 1) for y in range(n)
        )

    def space(self, carrier, neighbourhoods):
        n = len(carrier)
        closure = tuple(to_bits(y for y in range(n) if neighbourhoods[y] >> x & 1) for x in range(n))
        return ClosureSpace(tuple(carrier), closure, all(cl == 1 << x for x, cl in enumerate(closure)))

    def make(self, carrier):
        return ClosureSpace.discrete(carrier)

    def validate_object(self, obj):
        if not isinstance(obj, ClosureSpace):
            raise ValidationError(f"Expected a closure space, got {type(obj).__name__}", which="object")
        if self.require_t1 and not obj.singletons_closed():
            raise ValidationError("Space is not T1", which=str(obj))

    def closure_override(self, f):
        if not self.require_t1:
            return self.image(f)
        return frozenset(bit_members(f.cod.closure(to_bits(f.payload))))

    def slice_closure_override(self, f, p):
        if not self.require_t1:
            return None
        return frozenset(bit_members(fibre_closure_union(f, p)))


def fibres(f: Mor, p: Mor):
    """The sets ``f(q^-1(q a))`` with ``q = p f``, one bitset per distinct value of ``q``."""
    q = tuple(p.payload[y] for y in f.payload)
    grouped = {}
    for a, c in enumerate(q):
        grouped[c] = grouped.get(c, 0) | 1 << f.payload[a]
    return grouped


def fibre_closure_union(f: Mor, p: Mor) -> int:
    """Union over ``a`` of the closures of ``f(q^-1(q a))`` in B."""
    bits = 0
    for image in fibres(f, p).values():
        bits |= f.cod.closure(image)
    return bits


def top1_normal_closure(K: Top1Instance, f: Mor):
    """Closure of the image, and the pushout map collapsing it.

    Returns:
        Tuple[NormalClosureResult, Mor]: The normal closure and the map
        ``B -> B +_A 1``. When ``A`` is empty the pushout is ``B + 1``.
    """
    from ..core import closure_from_subset

    B = f.cod
    closed = B.closure(to_bits(f.payload))
    result = closure_from_subset(K, f, frozenset(bit_members(closed)))
    if f.payload:
        root = min(bit_members(closed))
        collapse = K.quotient(
            B, CongruencePartition(tuple(root if closed >> y & 1 else y for y in range(len(B.carrier))))
        )
        return result, collapse
    S, inclusion, _ = K.sum_object(B, K.terminal_object())
    return result, inclusion


@dataclass(frozen=True)
class Top1SlicePushout:
    """Pushout of a subspace along its restricted map to ``C``.

    Fields:
        D (FrozenSet[int]): Union of the closures of the fibres of ``p`` restricted to ``f(A)``
        i (Mor): ``B -> P``, the identity off ``D`` and ``p`` on ``D``
        j (Mor): ``C -> P``
        fibres_ok (bool): Whether every fibre of ``i`` is a singleton off ``D``,
            a fibre closure on ``D`` and empty over ``C`` minus ``p(f(A))``
    """
    D: FrozenSet[int]
    i: Mor
    j: Mor
    fibres_ok: bool


def top1_slice_pushout(K: Top1Instance, f: Mor, p: Mor) -> Top1SlicePushout:
    B, C = f.cod, p.cod
    groups = fibres(f, p)
    closures = {c: B.closure(bits) for c, bits in groups.items()}
    D = 0
    for bits in closures.values():
        D |= bits
    S, in1, in2 = K.sum_object(B, C)
    pairs = [(in1.payload[b], in2.payload[p.payload[b]]) for b in bit_members(D)]
    q = K.generated_quotient(S, pairs)
    i, j = K.compose(q, in1), K.compose(q, in2)

    fibres_ok = True
    for z in range(len(q.cod.carrier)):
        preimage = to_bits(b for b, image in enumerate(i.payload) if image == z)
        from_c = [c for c, image in enumerate(j.payload) if image == z]
        if from_c:
            c = from_c[0]
            expected = closures.get(c, 0)
        else:
            expected = preimage if bin(preimage).count("1") == 1 and not preimage & D else -1
        fibres_ok &= preimage == expected
    return Top1SlicePushout(frozenset(bit_members(D)), i, j, fibres_ok)


def top1_slice_normal_closure(K: Top1Instance, f: Mor, p: Mor):
    """``N = union of closures of f(q^-1(q a))``, checked against the pushout pullback.

    Raises:
        ValidationError: If the union is not closed, misses ``f(A)``, or
            differs from ``i^-1(C)`` of the materialized pushout
    """
    from ..core import closure_from_subset

    bits = fibre_closure_union(f, p)
    B = f.cod
    if not B.is_closed(bits) or to_bits(f.payload) & ~bits:
        raise ValidationError("Fibre closure union is not a closed set containing f(A)", which=str(B))
    image = K.subobject(B, f.payload)
    square = top1_slice_pushout(K, image, p)
    j_image = set(square.j.payload)
    if frozenset(b for b, z in enumerate(square.i.payload) if z in j_image) != frozenset(bit_members(bits)):
        raise ValidationError("Fibre closure union differs from the pulled back pushout", which=str(B))
    return closure_from_subset(K, f, frozenset(bit_members(bits)))


def top1_slice_normal_mono_test(K: Top1Instance, f: Mor, p: Mor) -> bool:
    """An embedding whose fibre images ``f(q^-1(q a))`` are closed in B."""
    if not K.regular_mono_closed_form(f):
        return False
    return all(f.cod.is_closed(bits) for bits in fibres(f, p).values())


def top1_slice_comparison_test(K: Top1Instance, f: Mor, p: Mor) -> bool:
    """``B = p^-1(q(A))`` and each fibre image is dense in its ``p``-fibre."""
    B = f.cod
    for c, bits in fibres(f, p).items():
        fibre = to_bits(y for y, image in enumerate(p.payload) if image == c)
        if fibre & ~B.closure(bits):
            return False
    hit = set(fibres(f, p))
    return all(c in hit for c in p.payload)


def top1_coslice_dual_closure(K: Top1Instance, j: Mor, f: Mor):
    """The pointwise coslice partition of A with the quotient closure.

    Raises:
        ValidationError: If the quotient of T1 spaces fails to be T1
    """
    from ..core import dual_closure_from_partition

    result = dual_closure_from_partition(K, f, coslice_set_partition(j, f))
    if K.require_t1 and not result.P.singletons_closed():
        raise ValidationError("Coslice dual closure is not T1", which=str(result.P))
    return result


def top1_coslice_normal_epi_test(K: Top1Instance, j: Mor, f: Mor) -> bool:
    """A quotient map that is injective on ``A`` minus ``A_j``."""
    if not K.is_surjective(f):
        return False
    a_j = saturated_part(j, f)
    rest = [y for x, y in enumerate(f.payload) if x not in a_j]
    if len(rest) != len(set(rest)):
        return False
    q = K.quotient(f.dom, CongruencePartition.kernel_of(f.payload))
    return K.is_iso(K.factor_from(q, f))


def top1_instance(max_homset: Optional[int] = None) -> Top1Instance:
    return Top1Instance(max_homset)


def closure_space_instance(max_homset: Optional[int] = None) -> Top1Instance:
    """All finite closure spaces, for exercising the formulas off the T1 case."""
    return Top1Instance(max_homset, require_t1=False)
