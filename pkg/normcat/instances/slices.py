"""Slice and coslice categories over a base instance.

A slice object is a base object with a structure map to ``C``; a coslice
object is a base object with a structure map from ``C``. Morphisms keep the
underlying element map as payload, so composition and equality are those
of the base. Limits and colimits are formed in the base and the structure
maps are induced.
"""
import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ..errors import NoDiagonal, ValidationError
from .finset import coslice_set_partition
from .instance import CategoryInstance, Mor, Pushout

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SliceObject:
    base: Any
    structure: Mor

    def __str__(self) -> str:
        return f"{self.base} -> {self.structure.cod}"


@dataclass(frozen=True)
class CosliceObject:
    base: Any
    structure: Mor

    def __str__(self) -> str:
        return f"{self.structure.dom} -> {self.base}"


class _FibredInstance(CategoryInstance):
    def __init__(self, base: CategoryInstance, C: Any):
        super().__init__(base.max_homset)
        base.validate_object(C)
        self.base = base
        self.C = C

    def labels(self, obj):
        return self.base.labels(obj.base)

    def underlying(self, f: Mor) -> Mor:
        """The base morphism carried by ``f``."""
        return self.base._wrap(f.dom.base, f.cod.base, f.payload)

    def lift(self, dom: Any, cod: Any, f: Mor) -> Mor:
        """View a base morphism as a morphism between (co)slice objects."""
        return self.morphism(dom, cod, f.payload)

    def induced(self, apex, cod, partial):
        base = self.base.induced(apex.base, cod.base, partial)
        try:
            return self.morphism(apex, cod, base.payload)
        except ValidationError as e:
            raise NoDiagonal(f"Induced map does not respect the structure maps: {e}") from e

    def hom_set(self, A, B):
        found = []
        for h in self.base.hom_set(A.base, B.base):
            try:
                self.check_map(A, B, h.payload)
            except ValidationError:
                continue
            found.append(self._wrap(A, B, h.payload))
        return found

    def generated_partition(self, X, pairs):
        return self.base.generated_partition(X.base, pairs)

    def epi_closed_form(self, f):
        return self.base.epi_closed_form(self.underlying(f))

    def regular_mono_closed_form(self, f):
        return self.base.regular_mono_closed_form(self.underlying(f))


class SliceInstance(_FibredInstance):
    """Objects over ``C``."""

    @property
    def kind(self) -> str:
        return f"{self.base.kind}/C"

    def over(self, obj: Any, structure: Mor) -> SliceObject:
        result = SliceObject(obj, structure)
        self.validate_object(result)
        return result

    def validate_object(self, obj):
        if not isinstance(obj, SliceObject):
            raise ValidationError(f"Expected a slice object, got {type(obj).__name__}", which="object")
        self.base.validate_object(obj.base)
        if obj.structure.dom != obj.base or obj.structure.cod != self.C:
            raise ValidationError("Structure map must go from the object to C", which="structure")

    def check_map(self, dom, cod, table):
        self.base.check_map(dom.base, cod.base, table)
        q, p = dom.structure.payload, cod.structure.payload
        for x, y in enumerate(table):
            if p[y] != q[x]:
                raise ValidationError("Map does not commute over C", which=f"map[{x}]")

    def terminal_object(self):
        return SliceObject(self.C, self.base.identity(self.C))

    def bang(self, obj):
        return self._wrap(obj, self.terminal_object(), obj.structure.payload)

    def initial_object(self):
        return SliceObject(self.base.initial_object(), self.base.cobang(self.C))

    def cobang(self, obj):
        return self._wrap(self.initial_object(), obj, self.base.cobang(obj.base).payload)

    def pair_object(self, X, Y, points):
        apex = self.base.pair_object(X.base, Y.base, points)
        structure = self.base._wrap(apex, self.C, tuple(X.structure.payload[a] for a, _ in points))
        return SliceObject(apex, structure)

    def subobject(self, X, elements):
        inclusion = self.base.subobject(X.base, elements)
        sub = SliceObject(inclusion.dom, self.base.compose(X.structure, inclusion))
        return self._wrap(sub, X, inclusion.payload)

    def quotient(self, X, partition):
        projection = self.base.quotient(X.base, partition)
        try:
            structure = self.base.factor_from(projection, X.structure)
        except NoDiagonal as e:
            raise ValidationError("Partition does not respect the structure map", which="quotient") from e
        return self._wrap(X, SliceObject(projection.cod, structure), projection.payload)

    def pushout(self, f, g):
        po = self.base.pushout(self.underlying(f), self.underlying(g))
        structure = po.copair(self.base, f.cod.structure, g.cod.structure)
        apex = SliceObject(po.apex, structure)
        return Pushout(apex, self._wrap(f.cod, apex, po.in1.payload), self._wrap(g.cod, apex, po.in2.payload))

    def closure_override(self, f):
        return self.base.slice_closure_override(self.underlying(f), f.cod.structure)

    def dual_closure_override(self, f):
        return self.base.dual_closure_override(self.underlying(f))


class CosliceInstance(_FibredInstance):
    """Objects under ``C``."""

    @property
    def kind(self) -> str:
        return f"C/{self.base.kind}"

    def under(self, obj: Any, structure: Mor) -> CosliceObject:
        result = CosliceObject(obj, structure)
        self.validate_object(result)
        return result

    def validate_object(self, obj):
        if not isinstance(obj, CosliceObject):
            raise ValidationError(f"Expected a coslice object, got {type(obj).__name__}", which="object")
        self.base.validate_object(obj.base)
        if obj.structure.cod != obj.base or obj.structure.dom != self.C:
            raise ValidationError("Structure map must go from C to the object", which="structure")

    def check_map(self, dom, cod, table):
        self.base.check_map(dom.base, cod.base, table)
        j, k = dom.structure.payload, cod.structure.payload
        for c, a in enumerate(j):
            if table[a] != k[c]:
                raise ValidationError("Map does not commute under C", which=f"map[{a}]")

    def terminal_object(self):
        return CosliceObject(self.base.terminal_object(), self.base.bang(self.C))

    def bang(self, obj):
        return self._wrap(obj, self.terminal_object(), self.base.bang(obj.base).payload)

    def initial_object(self):
        return CosliceObject(self.C, self.base.identity(self.C))

    def cobang(self, obj):
        return self._wrap(self.initial_object(), obj, obj.structure.payload)

    def pair_object(self, X, Y, points):
        apex = self.base.pair_object(X.base, Y.base, points)
        index = {pt: i for i, pt in enumerate(points)}
        try:
            table = tuple(index[pt] for pt in zip(X.structure.payload, Y.structure.payload))
        except KeyError:
            raise ValidationError("Points miss the image of C", which="pair_object") from None
        return CosliceObject(apex, self.base._wrap(self.C, apex, table))

    def subobject(self, X, elements):
        inclusion = self.base.subobject(X.base, elements)
        try:
            structure = self.base.factor_through(inclusion, X.structure)
        except NoDiagonal as e:
            raise ValidationError("Subobject misses the image of C", which="subobject") from e
        return self._wrap(CosliceObject(inclusion.dom, structure), X, inclusion.payload)

    def quotient(self, X, partition):
        projection = self.base.quotient(X.base, partition)
        structure = self.base.compose(projection, X.structure)
        return self._wrap(X, CosliceObject(projection.cod, structure), projection.payload)

    def pushout(self, f, g):
        po = self.base.pushout(self.underlying(f), self.underlying(g))
        apex = CosliceObject(po.apex, self.base.compose(po.in1, f.cod.structure))
        return Pushout(apex, self._wrap(f.cod, apex, po.in1.payload), self._wrap(g.cod, apex, po.in2.payload))

    def closure_override(self, f):
        return self.base.closure_override(self.underlying(f))

    def dual_closure_override(self, f):
        return self.base.coslice_dual_closure_override(f.dom.structure, self.underlying(f))


def slice_category(K: CategoryInstance, C: Any) -> SliceInstance:
    return SliceInstance(K, C)


def coslice_category(K: CategoryInstance, C: Any) -> CosliceInstance:
    return CosliceInstance(K, C)


def slice_normal_closure(Ks: SliceInstance, f: Mor):
    """Normal closure over ``C``, by the two-stage pushout and its pullback.

    Any closed form the base provides for slices is computed as well and
    must agree.
    """
    from ..core import normal_closure

    return normal_closure(Ks, f)


def slice_dual_closure(Ks: SliceInstance, f: Mor):
    """The base dual closure, read over ``C``."""
    from ..core import dual_closure_from_partition, normal_dual_closure

    base = normal_dual_closure(Ks.base, Ks.underlying(f))
    result = dual_closure_from_partition(Ks, f, _partition_of(base.pi))
    if result.pi.payload != base.pi.payload:
        raise NoDiagonal("Slice dual closure differs from the base dual closure")
    return result


def _partition_of(pi: Mor):
    from ..tables import CongruencePartition

    return CongruencePartition.kernel_of(pi.payload)


def tau_comparison(Ks: SliceInstance, f: Mor) -> Mor:
    """The base map ``N_{f/C} -> N_f`` with ``nu_f tau = nu_{f/C}``."""
    from ..core import normal_closure

    sliced = normal_closure(Ks, f)
    base = normal_closure(Ks.base, Ks.underlying(f))
    return Ks.base.factor_through(base.nu, Ks.underlying(sliced.nu))


def sigma_comparison(Kc: CosliceInstance, f: Mor) -> Mor:
    """The base map ``P_f -> P_{C/f}`` with ``sigma pi_f = pi_{C/f}``."""
    from ..core import normal_dual_closure

    sliced = normal_dual_closure(Kc, f)
    base = normal_dual_closure(Kc.base, Kc.underlying(f))
    return Kc.base.factor_from(base.pi, Kc.underlying(sliced.pi))


def coslice_set_dual_closure(Kc: CosliceInstance, f: Mor):
    """Fibres of ``f`` over ``f(j(C))`` collapsed, every other point kept."""
    from ..core import dual_closure_from_partition

    return dual_closure_from_partition(Kc, f, coslice_set_partition(f.dom.structure, Kc.underlying(f)))


@dataclass(frozen=True)
class RectangleFlag:
    """Diagnostic for the two-stage pushout of ``f`` over ``C``.

    Fields:
        regular_mono (bool): ``f`` is a regular mono, i.e. the left rectangle is a pullback
        discrete (bool): ``nu_{f/C}`` is ``f`` itself up to isomorphism
    """
    regular_mono: bool
    discrete: bool


def rectangle_flag(Ks: SliceInstance, f: Mor) -> RectangleFlag:
    from ..core import is_regular_mono, normal_closure

    closure = normal_closure(Ks, f)
    return RectangleFlag(
        regular_mono=is_regular_mono(Ks.base, Ks.underlying(f)),
        discrete=Ks.is_iso(closure.hat),
    )


def is_pre_extensive_on(K: CategoryInstance, samples: Sequence[Tuple[Mor, Any]]) -> bool:
    """Check that ``A -> C`` over ``A + A' -> C + A'`` is a pullback for each ``(q, A')``.

    Raises:
        ValueError: If the instance has no binary coproducts
    """
    if not hasattr(K, "sum_object"):
        raise ValueError(f"{K.kind} has no binary coproducts")
    for q, extra in samples:
        S1, i1, i2 = K.sum_object(q.dom, extra)
        S2, j1, j2 = K.sum_object(q.cod, extra)
        partial: Dict[int, int] = {}
        for a, c in enumerate(q.payload):
            partial[i1.payload[a]] = j1.payload[c]
        for x in range(K.size(extra)):
            partial[i2.payload[x]] = j2.payload[x]
        total = K.induced(S1, S2, partial)
        pb = K.pullback(j1, total)
        comparison = pb.lift(K, q, i1)
        if not K.is_iso(comparison):
            logger.info("Pre-extensive square fails for %s", K.describe(q))
            return False
    return True
