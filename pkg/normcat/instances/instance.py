import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from itertools import product
from typing import Any, Callable, Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from ..config import MAX_HOMSET
from ..errors import HomSetTooLarge, NoDiagonal, NonCommutingSquare, ValidationError
from ..tables import CongruencePartition, equivalence_closure
from ..validations import validate_element_map

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Mor:
    """A morphism of a concrete instance.

    Fields:
        dom: Domain object
        cod: Codomain object
        payload (Tuple[int, ...]): Element map, ``payload[i]`` is the index in
            the codomain carrier of the image of the domain's ``i``-th element
    """
    dom: Any
    cod: Any
    payload: Tuple[int, ...]


@dataclass(frozen=True)
class Pullback:
    apex: Any
    pr1: Mor
    pr2: Mor
    points: Tuple[Tuple[int, int], ...]

    def lift(self, K: "CategoryInstance", h1: Mor, h2: Mor) -> Mor:
        """Return the unique ``t`` with ``pr1 t = h1`` and ``pr2 t = h2``.

        Raises:
            NonCommutingSquare: If ``h1`` and ``h2`` do not form a cone
        """
        index = {pt: i for i, pt in enumerate(self.points)}
        table = []
        for pt in zip(h1.payload, h2.payload):
            if pt not in index:
                raise NonCommutingSquare(f"Cone does not commute at {pt}")
            table.append(index[pt])
        return K.morphism(h1.dom, self.apex, table)


@dataclass(frozen=True)
class Pushout:
    apex: Any
    in1: Mor
    in2: Mor

    def copair(self, K: "CategoryInstance", h1: Mor, h2: Mor) -> Mor:
        """Return the unique ``t`` with ``t in1 = h1`` and ``t in2 = h2``."""
        partial: Dict[int, int] = {}
        for leg, h in ((self.in1, h1), (self.in2, h2)):
            for i, j in zip(leg.payload, h.payload):
                if partial.setdefault(i, j) != j:
                    raise NonCommutingSquare(f"Cocone does not commute at {i}")
        return K.induced(self.apex, h1.cod, partial)


@dataclass(frozen=True)
class Equalizer:
    apex: Any
    eq: Mor

    def lift(self, K: "CategoryInstance", h: Mor) -> Mor:
        return K.factor_through(self.eq, h)


@dataclass(frozen=True)
class Coequalizer:
    apex: Any
    coeq: Mor

    def desc(self, K: "CategoryInstance", h: Mor) -> Mor:
        return K.factor_from(self.coeq, h)


MapSpec = Union[Sequence[int], Sequence[str], Mapping[str, str]]


class CategoryInstance(ABC):
    """Capabilities of a finite concrete category.

    Objects are immutable values carrying an ordered carrier; morphisms are
    :class:`Mor` records with total element maps. Subclasses supply object
    validation, structure preservation, the terminal and initial objects, the
    structured constructions (pair objects, subobjects, quotients, sums) and
    pushouts. Limits and colimits built from these follow the concrete
    recipes: pullbacks and equalizers are subsets of products, coequalizers
    are generated quotients.

    Closed-form overrides are optional hooks returning ``None`` when absent.
    """

    def __init__(self, max_homset: Optional[int] = None):
        self.max_homset = MAX_HOMSET if max_homset is None else max_homset

    @property
    @abstractmethod
    def kind(self) -> str:
        pass

    def __repr__(self) -> str:
        return f"{type(self).__name__}(kind={self.kind!r})"

    # objects

    @abstractmethod
    def labels(self, obj: Any) -> Tuple[str, ...]:
        pass

    def size(self, obj: Any) -> int:
        return len(self.labels(obj))

    @abstractmethod
    def validate_object(self, obj: Any) -> None:
        pass

    # morphisms

    @abstractmethod
    def check_map(self, dom: Any, cod: Any, table: Tuple[int, ...]) -> None:
        """Raise ValidationError unless ``table`` is structure preserving."""

    def _wrap(self, dom: Any, cod: Any, table: Tuple[int, ...]) -> Mor:
        return Mor(dom, cod, table)

    def morphism(self, dom: Any, cod: Any, table: Iterable[int]) -> Mor:
        """Build and validate a morphism from its element map.

        Args:
            dom: Domain object
            cod: Codomain object
            table (Iterable[int]): Codomain index for each domain element

        Returns:
            Mor: The validated morphism

        Raises:
            ValidationError: If the map is not total or not structure preserving
        """
        table = tuple(table)
        validate_element_map(table, self.size(dom), self.size(cod))
        self.check_map(dom, cod, table)
        return self._wrap(dom, cod, table)

    def map_by_labels(self, dom: Any, cod: Any, spec: MapSpec) -> Mor:
        """Build a morphism from labels, either a list in domain order or a dict."""
        dom_labels, cod_labels = self.labels(dom), self.labels(cod)
        index = {label: i for i, label in enumerate(cod_labels)}
        if isinstance(spec, Mapping):
            images = [spec.get(label) for label in dom_labels]
        else:
            images = list(spec)
        table = []
        for i, image in enumerate(images):
            if isinstance(image, int):
                table.append(image)
            elif image in index:
                table.append(index[image])
            else:
                raise ValidationError(f"Unknown codomain label {image!r}", which=f"map[{i}]")
        return self.morphism(dom, cod, table)

    def elements(self, f: Mor) -> Tuple[int, ...]:
        return f.payload

    def identity(self, obj: Any) -> Mor:
        return self._wrap(obj, obj, tuple(range(self.size(obj))))

    def compose(self, g: Mor, f: Mor) -> Mor:
        """Return ``g . f``, defined when ``dom(g) = cod(f)``."""
        if f.cod != g.dom:
            raise ValueError("Morphisms are not composable")
        gt = g.payload
        return self._wrap(f.dom, g.cod, tuple(gt[i] for i in f.payload))

    def compose_all(self, *arrows: Mor) -> Mor:
        """Compose right to left: ``compose_all(h, g, f) = h . g . f``."""
        result = arrows[-1]
        for g in reversed(arrows[:-1]):
            result = self.compose(g, result)
        return result

    def mor_eq(self, f: Mor, g: Mor) -> bool:
        return f.dom == g.dom and f.cod == g.cod and f.payload == g.payload

    def image(self, f: Mor) -> FrozenSet[int]:
        return frozenset(f.payload)

    def is_injective(self, f: Mor) -> bool:
        return len(set(f.payload)) == len(f.payload)

    def is_surjective(self, f: Mor) -> bool:
        return len(set(f.payload)) == self.size(f.cod)

    def inverse(self, f: Mor) -> Optional[Mor]:
        if not (self.is_injective(f) and self.is_surjective(f)):
            return None
        table = [0] * len(f.payload)
        for i, j in enumerate(f.payload):
            table[j] = i
        try:
            return self.morphism(f.cod, f.dom, table)
        except ValidationError:
            return None

    def is_iso(self, f: Mor) -> bool:
        """Bijective with an inverse that is itself a morphism."""
        return self.inverse(f) is not None

    def describe(self, f: Mor) -> Dict[str, Any]:
        """Element-listed, JSON compatible rendering of a morphism."""
        dom, cod = self.labels(f.dom), self.labels(f.cod)
        return {"dom": list(dom), "cod": list(cod), "map": [cod[j] for j in f.payload]}

    # universal constructions

    @abstractmethod
    def terminal_object(self) -> Any:
        pass

    def bang(self, obj: Any) -> Mor:
        return self.morphism(obj, self.terminal_object(), [0] * self.size(obj))

    def terminal(self) -> Tuple[Any, Callable[[Any], Mor]]:
        return self.terminal_object(), self.bang

    @abstractmethod
    def initial_object(self) -> Any:
        pass

    @abstractmethod
    def cobang(self, obj: Any) -> Mor:
        pass

    def initial(self) -> Tuple[Any, Callable[[Any], Mor]]:
        return self.initial_object(), self.cobang

    @abstractmethod
    def pair_object(self, X: Any, Y: Any, points: Sequence[Tuple[int, int]]) -> Any:
        """The object of ``X x Y`` carried by ``points``, with the induced structure."""

    @abstractmethod
    def subobject(self, X: Any, elements: Iterable[int]) -> Mor:
        """Inclusion of the substructure on ``elements`` (kept in carrier order)."""

    @abstractmethod
    def quotient(self, X: Any, partition: CongruencePartition) -> Mor:
        """Projection onto the quotient by ``partition``, least-index representatives."""

    def generated_partition(self, X: Any, pairs: Iterable[Tuple[int, int]]) -> CongruencePartition:
        return equivalence_closure(self.size(X), pairs)

    def generated_quotient(self, X: Any, pairs: Iterable[Tuple[int, int]]) -> Mor:
        return self.quotient(X, self.generated_partition(X, pairs))

    @abstractmethod
    def pushout(self, f: Mor, g: Mor) -> Pushout:
        pass

    def pullback(self, f: Mor, g: Mor) -> Pullback:
        if f.cod != g.cod:
            raise ValueError("Pullback legs must share a codomain")
        ft, gt = f.payload, g.payload
        points = tuple(
            (x, y) for x in range(len(ft)) for y in range(len(gt)) if ft[x] == gt[y]
        )
        apex = self.pair_object(f.dom, g.dom, points)
        pr1 = self._wrap(apex, f.dom, tuple(x for x, _ in points))
        pr2 = self._wrap(apex, g.dom, tuple(y for _, y in points))
        return Pullback(apex, pr1, pr2, points)

    def kernel_pair(self, f: Mor) -> Pullback:
        return self.pullback(f, f)

    def equalizer(self, f: Mor, g: Mor) -> Equalizer:
        if f.dom != g.dom or f.cod != g.cod:
            raise ValueError("Equalizer needs parallel arrows")
        eq = self.subobject(f.dom, [x for x, (a, b) in enumerate(zip(f.payload, g.payload)) if a == b])
        return Equalizer(eq.dom, eq)

    def coequalizer(self, f: Mor, g: Mor) -> Coequalizer:
        if f.dom != g.dom or f.cod != g.cod:
            raise ValueError("Coequalizer needs parallel arrows")
        q = self.generated_quotient(f.cod, zip(f.payload, g.payload))
        return Coequalizer(q.cod, q)

    def cokernel_pair(self, f: Mor) -> Pushout:
        return self.pushout(f, f)

    def induced(self, apex: Any, cod: Any, partial: Dict[int, int]) -> Mor:
        """Morphism out of a colimit apex determined by its values on the leg images."""
        if len(partial) != self.size(apex):
            raise NoDiagonal("Colimit legs do not cover the apex")
        try:
            return self.morphism(apex, cod, [partial[i] for i in range(self.size(apex))])
        except ValidationError as e:
            raise NoDiagonal(f"Induced map is not a morphism: {e}") from e

    def factor_through(self, m: Mor, x: Mor) -> Mor:
        """Return ``t`` with ``m . t = x`` for an injective ``m``.

        Raises:
            NoDiagonal: If ``x`` does not land in the image of ``m`` or the
                factor is not a morphism
        """
        if m.cod != x.cod:
            raise NoDiagonal("Arrows do not share a codomain")
        preimage: Dict[int, int] = {}
        for i, j in enumerate(m.payload):
            if preimage.setdefault(j, i) != i:
                raise NoDiagonal("Cannot factor through a non-injective map")
        try:
            table = [preimage[j] for j in x.payload]
        except KeyError:
            raise NoDiagonal("Arrow does not factor through the image") from None
        try:
            return self.morphism(x.dom, m.dom, table)
        except ValidationError as e:
            raise NoDiagonal(f"Factor is not a morphism: {e}") from e

    def factor_from(self, e: Mor, x: Mor) -> Mor:
        """Return ``t`` with ``t . e = x`` for a surjective ``e``.

        Raises:
            NoDiagonal: If ``x`` is not constant on the fibres of ``e`` or the
                factor is not a morphism
        """
        if e.dom != x.dom:
            raise NoDiagonal("Arrows do not share a domain")
        partial: Dict[int, int] = {}
        for j, y in zip(e.payload, x.payload):
            if partial.setdefault(j, y) != y:
                raise NoDiagonal("Arrow is not constant on fibres")
        if len(partial) != self.size(e.cod):
            raise NoDiagonal("Cannot factor from a non-surjective map")
        try:
            return self.morphism(e.cod, x.cod, [partial[j] for j in range(self.size(e.cod))])
        except ValidationError as err:
            raise NoDiagonal(f"Factor is not a morphism: {err}") from err

    def hom_set(self, A: Any, B: Any) -> List[Mor]:
        """Enumerate every morphism ``A -> B``.

        Raises:
            HomSetTooLarge: If the number of candidate maps exceeds ``max_homset``
        """
        n, m = self.size(A), self.size(B)
        candidates = m ** n
        if candidates > self.max_homset:
            raise HomSetTooLarge(
                f"Hom({self.labels(A)}, {self.labels(B)}) has {candidates} candidates, bound is {self.max_homset}",
                candidates=candidates,
                bound=self.max_homset,
            )
        found = []
        for table in product(range(m), repeat=n):
            try:
                self.check_map(A, B, table)
            except ValidationError:
                continue
            found.append(self._wrap(A, B, table))
        return found

    # closed-form hooks

    def closure_override(self, f: Mor) -> Optional[FrozenSet[int]]:
        """Closed-form normal closure of ``f`` as a subset of its codomain."""
        return None

    def dual_closure_override(self, f: Mor) -> Optional[CongruencePartition]:
        """Closed-form normal dual closure of ``f`` as a partition of its domain."""
        return None

    def epi_closed_form(self, f: Mor) -> Optional[bool]:
        return None

    def regular_mono_closed_form(self, f: Mor) -> Optional[bool]:
        return None

    def slice_closure_override(self, f: Mor, p: Mor) -> Optional[FrozenSet[int]]:
        """Normal closure of ``f: A -> B`` over ``p: B -> C``, as a subset of B."""
        return None

    def coslice_dual_closure_override(self, j: Mor, f: Mor) -> Optional[CongruencePartition]:
        """Normal dual closure of ``f: A -> B`` under ``j: C -> A``, as a partition of A."""
        return None
