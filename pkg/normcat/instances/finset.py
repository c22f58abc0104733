"""Finite sets, pointed finite sets and finite topological spaces.

These instances have every finite limit and colimit and serve as the oracle
the closed forms are checked against.
"""
import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import permutations, product
from typing import Any, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from ..errors import ValidationError
from ..tables import CongruencePartition, pair_label
from ..validations import (
    bit_members,
    to_bits,
    validate_basepoint,
    validate_carrier,
    validate_neighbourhoods,
    validate_opens,
)
from .instance import CategoryInstance, Mor, Pushout

logger = logging.getLogger(__name__)


def side_label(side: int, label: str) -> str:
    return f"{side}:{label}"


@dataclass(frozen=True)
class FinSetObj:
    carrier: Tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "carrier", tuple(self.carrier))
        validate_carrier(self.carrier)

    def __str__(self) -> str:
        return "{" + ", ".join(self.carrier) + "}"


@dataclass(frozen=True)
class PointedObj:
    carrier: Tuple[str, ...]
    basepoint: int = 0

    def __post_init__(self):
        object.__setattr__(self, "carrier", tuple(self.carrier))
        validate_basepoint(self.carrier, self.basepoint)

    def __str__(self) -> str:
        return "(" + "{" + ", ".join(self.carrier) + "}, " + self.carrier[self.basepoint] + ")"


@dataclass(frozen=True)
class FinTopObj:
    """A finite (hence Alexandrov) topological space.

    The topology is stored through the minimal open neighbourhood of each
    point, as a bitset over the carrier; the open sets are exactly the unions
    of these. Use :meth:`from_opens` to build a space from its open sets.
    """
    carrier: Tuple[str, ...]
    neighbourhoods: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "carrier", tuple(self.carrier))
        object.__setattr__(self, "neighbourhoods", tuple(self.neighbourhoods))
        validate_neighbourhoods(self.carrier, self.neighbourhoods)

    @classmethod
    def from_opens(cls, carrier: Sequence[str], opens: Iterable[int]) -> "FinTopObj":
        opens = list(opens)
        validate_opens(carrier, opens)
        full = (1 << len(carrier)) - 1
        neighbourhoods = []
        for x in range(len(carrier)):
            nbhd = full
            for u in opens:
                if u >> x & 1:
                    nbhd &= u
            neighbourhoods.append(nbhd)
        return cls(tuple(carrier), tuple(neighbourhoods))

    @classmethod
    def discrete(cls, carrier: Sequence[str]) -> "FinTopObj":
        return cls(tuple(carrier), tuple(1 << x for x in range(len(carrier))))

    @classmethod
    def indiscrete(cls, carrier: Sequence[str]) -> "FinTopObj":
        full = (1 << len(carrier)) - 1
        return cls(tuple(carrier), tuple(full for _ in carrier))

    @cached_property
    def opens(self) -> FrozenSet[int]:
        family = {0}
        for nbhd in self.neighbourhoods:
            family |= {u | nbhd for u in family}
        return frozenset(family)

    def closure(self, subset: int) -> int:
        """Closure of a set: the points whose minimal neighbourhood meets it."""
        return to_bits(x for x, nbhd in enumerate(self.neighbourhoods) if nbhd & subset)

    def __str__(self) -> str:
        return "{" + ", ".join(self.carrier) + "}"


class FinSetInstance(CategoryInstance):
    """The category of finite sets."""

    @property
    def kind(self) -> str:
        return "set"

    def make(self, carrier: Sequence[str]) -> FinSetObj:
        return FinSetObj(tuple(carrier))

    def labels(self, obj):
        return obj.carrier

    def validate_object(self, obj):
        if not isinstance(obj, FinSetObj):
            raise ValidationError(f"Expected a finite set, got {type(obj).__name__}", which="object")

    def check_map(self, dom, cod, table):
        pass

    def terminal_object(self):
        return self.make(("*",))

    def initial_object(self):
        return self.make(())

    def cobang(self, obj):
        return self.morphism(self.initial_object(), obj, ())

    def pair_object(self, X, Y, points):
        return self.make(pair_label(X.carrier[a], Y.carrier[b]) for a, b in points)

    def subobject(self, X, elements):
        elements = sorted(set(elements))
        return self._wrap(self.make(X.carrier[x] for x in elements), X, tuple(elements))

    def quotient(self, X, partition):
        reps = partition.representatives()
        index = {r: i for i, r in enumerate(reps)}
        return self._wrap(
            X, self.make(X.carrier[r] for r in reps), tuple(index[r] for r in partition.reps)
        )

    def sum_object(self, X: Any, Y: Any) -> Tuple[Any, Mor, Mor]:
        """Disjoint union with side-tagged labels and its two injections."""
        S = self.make(
            [side_label(1, x) for x in X.carrier] + [side_label(2, y) for y in Y.carrier]
        )
        n = len(X.carrier)
        return (
            S,
            self._wrap(X, S, tuple(range(n))),
            self._wrap(Y, S, tuple(range(n, n + len(Y.carrier)))),
        )

    def pushout(self, f: Mor, g: Mor) -> Pushout:
        """Quotient of the disjoint union of the codomains by the generated equivalence."""
        if f.dom != g.dom:
            raise ValueError("Pushout legs must share a domain")
        S, i1, i2 = self.sum_object(f.cod, g.cod)
        q = self.generated_quotient(
            S, [(i1.payload[a], i2.payload[b]) for a, b in zip(f.payload, g.payload)]
        )
        return Pushout(q.cod, self.compose(q, i1), self.compose(q, i2))

    def closure_override(self, f):
        return self.image(f)

    def dual_closure_override(self, f):
        return CongruencePartition.discrete(self.size(f.dom))

    def slice_closure_override(self, f, p):
        return self.image(f)

    def coslice_dual_closure_override(self, j, f):
        return coslice_set_partition(j, f)

    def epi_closed_form(self, f):
        return self.is_surjective(f)

    def regular_mono_closed_form(self, f):
        return self.is_injective(f)


class PointedInstance(FinSetInstance):
    """Pointed finite sets: maps preserve the basepoint, ``1`` is a zero object."""

    @property
    def kind(self) -> str:
        return "pointed-set"

    def make(self, carrier: Sequence[str], basepoint: int = 0) -> PointedObj:
        return PointedObj(tuple(carrier), basepoint)

    def validate_object(self, obj):
        if not isinstance(obj, PointedObj):
            raise ValidationError(f"Expected a pointed set, got {type(obj).__name__}", which="object")

    def check_map(self, dom, cod, table):
        if table[dom.basepoint] != cod.basepoint:
            raise ValidationError("Map does not preserve the basepoint", which=f"map[{dom.basepoint}]")

    def initial_object(self):
        return self.terminal_object()

    def cobang(self, obj):
        return self.morphism(self.initial_object(), obj, (obj.basepoint,))

    def pair_object(self, X, Y, points):
        carrier = [pair_label(X.carrier[a], Y.carrier[b]) for a, b in points]
        return self.make(carrier, list(points).index((X.basepoint, Y.basepoint)))

    def subobject(self, X, elements):
        elements = sorted(set(elements))
        if X.basepoint not in elements:
            raise ValidationError("Pointed subset must contain the basepoint", which="subobject")
        return self._wrap(
            self.make([X.carrier[x] for x in elements], elements.index(X.basepoint)), X, tuple(elements)
        )

    def quotient(self, X, partition):
        reps = partition.representatives()
        index = {r: i for i, r in enumerate(reps)}
        table = tuple(index[r] for r in partition.reps)
        return self._wrap(X, self.make([X.carrier[r] for r in reps], table[X.basepoint]), table)

    def sum_object(self, X, Y):
        """Wedge sum: the pushout of the two maps out of the zero object."""
        po = self.pushout(self.cobang(X), self.cobang(Y))
        return po.apex, po.in1, po.in2

    def pushout(self, f, g):
        if f.dom != g.dom:
            raise ValueError("Pushout legs must share a domain")
        n = len(f.cod.carrier)
        carrier = [side_label(1, x) for x in f.cod.carrier] + [side_label(2, y) for y in g.cod.carrier]
        S = self.make(carrier, f.cod.basepoint)
        pairs = [(a, n + b) for a, b in zip(f.payload, g.payload)]
        pairs.append((f.cod.basepoint, n + g.cod.basepoint))
        i1 = self._wrap(f.cod, S, tuple(range(n)))
        i2 = self._wrap(g.cod, S, tuple(range(n, n + len(g.cod.carrier))))
        q = self.generated_quotient(S, pairs)
        return Pushout(q.cod, self.compose(q, i1), self.compose(q, i2))

    def dual_closure_override(self, f):
        """Collapse the fibre over the basepoint, keep every other point."""
        return pointed_partition(f)

    def slice_closure_override(self, f, p):
        return None

    def coslice_dual_closure_override(self, j, f):
        return None


class FinTopInstance(FinSetInstance):
    """Finite topological spaces with continuous maps."""

    @property
    def kind(self) -> str:
        return "top"

    def neighbourhoods(self, obj: Any) -> Tuple[int, ...]:
        return obj.neighbourhoods

    def space(self, carrier: Sequence[str], neighbourhoods: Sequence[int]) -> Any:
        return FinTopObj(tuple(carrier), tuple(neighbourhoods))

    def make(self, carrier: Sequence[str]) -> Any:
        """Discrete space on ``carrier``."""
        return self.space(carrier, [1 << x for x in range(len(carrier))])

    def validate_object(self, obj):
        if not isinstance(obj, FinTopObj):
            raise ValidationError(f"Expected a finite space, got {type(obj).__name__}", which="object")

    def check_map(self, dom, cod, table):
        """Continuity: every point near ``x`` maps near ``f(x)``."""
        dn, cn = self.neighbourhoods(dom), self.neighbourhoods(cod)
        for x, nbhd in enumerate(dn):
            target = cn[table[x]]
            for y in bit_members(nbhd):
                if not target >> table[y] & 1:
                    raise ValidationError(
                        "Map is not continuous", which=f"map at ({dom.carrier[x]!r}, {dom.carrier[y]!r})"
                    )

    def pair_object(self, X, Y, points):
        xn, yn = self.neighbourhoods(X), self.neighbourhoods(Y)
        neighbourhoods = [
            to_bits(i for i, (c, d) in enumerate(points) if xn[a] >> c & 1 and yn[b] >> d & 1)
            for a, b in points
        ]
        return self.space([pair_label(X.carrier[a], Y.carrier[b]) for a, b in points], neighbourhoods)

    def subobject(self, X, elements):
        elements = sorted(set(elements))
        index = {x: i for i, x in enumerate(elements)}
        xn = self.neighbourhoods(X)
        neighbourhoods = [to_bits(index[y] for y in bit_members(xn[x]) if y in index) for x in elements]
        sub = self.space([X.carrier[x] for x in elements], neighbourhoods)
        return self._wrap(sub, X, tuple(elements))

    def quotient(self, X, partition):
        """Quotient space with the final topology.

        The minimal neighbourhood of a class is the set of classes reachable
        from it through images of point neighbourhoods.
        """
        reps = partition.representatives()
        index = {r: i for i, r in enumerate(reps)}
        table = tuple(index[r] for r in partition.reps)
        step = [0] * len(reps)
        for x, nbhd in enumerate(self.neighbourhoods(X)):
            step[table[x]] |= to_bits(table[y] for y in bit_members(nbhd))
        neighbourhoods = list(step)
        changed = True
        while changed:
            changed = False
            for c in range(len(reps)):
                grown = neighbourhoods[c]
                for d in bit_members(neighbourhoods[c]):
                    grown |= neighbourhoods[d]
                if grown != neighbourhoods[c]:
                    neighbourhoods[c] = grown
                    changed = True
        return self._wrap(X, self.space([X.carrier[r] for r in reps], neighbourhoods), table)

    def sum_object(self, X, Y):
        n = len(X.carrier)
        neighbourhoods = list(self.neighbourhoods(X)) + [u << n for u in self.neighbourhoods(Y)]
        S = self.space(
            [side_label(1, x) for x in X.carrier] + [side_label(2, y) for y in Y.carrier], neighbourhoods
        )
        return (
            S,
            self._wrap(X, S, tuple(range(n))),
            self._wrap(Y, S, tuple(range(n, n + len(Y.carrier)))),
        )

    def regular_mono_closed_form(self, f):
        """Regular monos of spaces are the embeddings."""
        if not self.is_injective(f):
            return False
        image = to_bits(f.payload)
        dn, cn = self.neighbourhoods(f.dom), self.neighbourhoods(f.cod)
        return all(
            to_bits(f.payload[y] for y in bit_members(dn[x])) == cn[f.payload[x]] & image
            for x in range(len(f.payload))
        )

    def slice_closure_override(self, f, p):
        return None


def pointed_partition(f: Mor) -> CongruencePartition:
    b = f.cod.basepoint
    fibre = [x for x, y in enumerate(f.payload) if y == b]
    root = min(fibre)
    return CongruencePartition(tuple(root if y == b else x for x, y in enumerate(f.payload)))


def saturated_part(j: Mor, f: Mor) -> FrozenSet[int]:
    """``A_j``: the points of A mapped by ``f`` into ``f(j(C))``."""
    hit = {f.payload[a] for a in j.payload}
    return frozenset(x for x, y in enumerate(f.payload) if y in hit)


def coslice_set_partition(j: Mor, f: Mor) -> CongruencePartition:
    """Partition of A into the fibres of ``f`` over ``f(j(C))`` and singletons elsewhere."""
    a_j = saturated_part(j, f)
    first = {}
    reps = []
    for x, y in enumerate(f.payload):
        reps.append(first.setdefault(y, x) if x in a_j else x)
    return CongruencePartition(tuple(reps))


def set_closed_forms(K: FinSetInstance, f: Mor):
    """Image inclusion and identity (or basepoint-fibre collapse) factorizations.

    Returns:
        Tuple[NormalClosureResult, NormalDualClosureResult]
    """
    from ..core import closure_from_subset, dual_closure_from_partition

    return (
        closure_from_subset(K, f, K.closure_override(f)),
        dual_closure_from_partition(K, f, K.dual_closure_override(f)),
    )


def top_closed_forms(K: FinTopInstance, f: Mor):
    """Image with the subspace topology; the dual closure is the identity."""
    from ..core import closure_from_subset

    return closure_from_subset(K, f, K.closure_override(f))


def pointed_comparison_test(K: PointedInstance, f: Mor) -> bool:
    """Comparison maps of pointed sets: surjections whose basepoint fibre is a single point."""
    return K.is_surjective(f) and f.payload.count(f.cod.basepoint) == 1


def pointed_normal_epi_test(K: PointedInstance, f: Mor) -> bool:
    """Surjections injective away from the basepoint fibre."""
    rest = [y for y in f.payload if y != f.cod.basepoint]
    return K.is_surjective(f) and len(rest) == len(set(rest))


def coslice_set_normal_epi_test(j: Mor, f: Mor) -> bool:
    a_j = saturated_part(j, f)
    rest = [y for x, y in enumerate(f.payload) if x not in a_j]
    return len(set(f.payload)) == len(f.cod.carrier) and len(rest) == len(set(rest))


def coslice_set_comparison_test(j: Mor, f: Mor) -> bool:
    a_j = saturated_part(j, f)
    inner = [y for x, y in enumerate(f.payload) if x in a_j]
    return len(set(f.payload)) == len(f.cod.carrier) and len(inner) == len(set(inner))


def finset_instance(max_homset: Optional[int] = None) -> FinSetInstance:
    return FinSetInstance(max_homset)


def pointed_instance(max_homset: Optional[int] = None) -> PointedInstance:
    return PointedInstance(max_homset)


def fintop_instance(max_homset: Optional[int] = None) -> FinTopInstance:
    return FinTopInstance(max_homset)


def pointed_top_instance(max_homset: Optional[int] = None):
    """Pointed finite spaces, as the coslice of finite spaces under a point."""
    from .slices import coslice_category

    K = fintop_instance(max_homset)
    return coslice_category(K, K.terminal_object())


def sierpinski() -> FinTopObj:
    """Two points, ``"o"`` open and ``"c"`` closed."""
    return FinTopObj(("o", "c"), (0b01, 0b11))


def exhaustive_sets(max_carrier: int) -> List[FinSetObj]:
    return [FinSetObj(tuple(str(i) for i in range(n))) for n in range(max_carrier + 1)]


def exhaustive_pointed(max_carrier: int) -> List[PointedObj]:
    return [PointedObj(tuple(str(i) for i in range(n))) for n in range(1, max_carrier + 1)]


def exhaustive_spaces(max_carrier: int) -> List[FinTopObj]:
    """Every topology on the carriers ``0..n-1`` with ``n <= max_carrier``."""
    return [space for n in range(max_carrier + 1) for space in _topologies(n)]


def _topologies(n: int) -> List[FinTopObj]:
    carrier = tuple(str(i) for i in range(n))
    spaces = []
    seen = set()
    for choice in _neighbourhood_choices(n):
        try:
            space = FinTopObj(carrier, choice)
        except ValidationError:
            continue
        if space.neighbourhoods not in seen:
            seen.add(space.neighbourhoods)
            spaces.append(space)
    return spaces


def _neighbourhood_choices(n: int):
    options = [[u for u in range(1 << n) if u >> x & 1] for x in range(n)]
    return product(*options)


def _relabelled(neighbourhoods: Tuple[int, ...], sigma: Tuple[int, ...]) -> Tuple[int, ...]:
    moved = [0] * len(sigma)
    for x, nbhd in enumerate(neighbourhoods):
        moved[sigma[x]] = to_bits(sigma[y] for y in bit_members(nbhd))
    return tuple(moved)


def space_types(max_carrier: int, fix_first: bool = False) -> List[FinTopObj]:
    """One space per homeomorphism class on at most ``max_carrier`` points.

    Each class is represented by its least neighbourhood tuple over all
    relabellings. With ``fix_first`` the relabellings keep point ``0`` in
    place, giving the classes of spaces pointed at ``0``; the empty space is
    then left out.

    Example:
        >>> [len(space_types(n)) for n in range(5)]
        [1, 2, 5, 14, 47]
    """
    types = []
    for n in range(1 if fix_first else 0, max_carrier + 1):
        carrier = tuple(str(i) for i in range(n))
        relabellings = [s for s in permutations(range(n)) if not fix_first or s[0] == 0]
        seen = set()
        for space in _topologies(n):
            key = min(_relabelled(space.neighbourhoods, s) for s in relabellings)
            if key not in seen:
                seen.add(key)
                types.append(FinTopObj(carrier, key))
    logger.debug("%d space types on at most %d points", len(types), max_carrier)
    return types
