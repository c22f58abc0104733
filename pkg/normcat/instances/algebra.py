"""Commutative monoids, abelian groups, groups and commutative unital rings.

Objects are operation tables from :mod:`normcat.tables`; morphisms are
homomorphisms given by their element maps. Pullbacks and equalizers are
substructures of products and coequalizers are congruence quotients, so they
always exist. Pushouts are total for commutative monoids and abelian groups,
where the coproduct is the direct product. For groups and rings a pushout
is only formed when one leg is surjective, and the initial ring (the
integers) is never materialized.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from math import lcm
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from ..errors import (
    InitialNotRepresentable,
    NoDiagonal,
    OverrideMismatch,
    PushoutNotRepresentable,
    ValidationError,
)
from ..tables import (
    CongruencePartition,
    GroupTable,
    MonoidTable,
    RingTable,
    Structure,
    congruence_closure,
    enumerate_homomorphisms,
    extend_partial,
    generate,
    homomorphism_violation,
    product_structure,
    quotient_structure,
    substructure,
)
from ..validations import bit_members, to_bits
from .instance import CategoryInstance, Mor, Pushout

logger = logging.getLogger(__name__)


class AlgebraInstance(CategoryInstance):
    """Shared constructions for table-backed algebraic categories."""

    table_type: type = Structure

    def labels(self, obj):
        return obj.carrier

    def validate_object(self, obj):
        if not isinstance(obj, self.table_type):
            raise ValidationError(
                f"Expected a {self.table_type.__name__}, got {type(obj).__name__}", which="object"
            )

    def check_map(self, dom, cod, table):
        violation = homomorphism_violation(dom, cod, table)
        if violation is not None:
            raise ValidationError("Map is not a homomorphism", which=violation)

    def initial_object(self):
        return self.terminal_object()

    def cobang(self, obj):
        unit = obj.signature.constants[0]
        return self.morphism(self.initial_object(), obj, (unit,))

    def pair_object(self, X, Y, points):
        return product_structure(X, Y, points)

    def subobject(self, X, elements):
        elements = sorted(set(elements))
        return self._wrap(substructure(X, elements), X, tuple(elements))

    def quotient(self, X, partition):
        if not partition.is_compatible(X):
            raise ValidationError("Partition is not a congruence", which=str(X))
        Q, projection = quotient_structure(X, partition)
        return self._wrap(X, Q, projection)

    def generated_partition(self, X, pairs):
        return congruence_closure(X, pairs)

    def induced(self, apex, cod, partial):
        table = extend_partial(apex, cod, partial)
        if table is None:
            raise NoDiagonal("Assignment does not extend to a homomorphism")
        return self._wrap(apex, cod, table)

    def hom_set(self, A, B):
        return [self._wrap(A, B, t) for t in enumerate_homomorphisms(A, B, self.max_homset)]

    def sum_object(self, X, Y) -> Tuple[Structure, Mor, Mor]:
        """Direct product with the two unit-padded injections (commutative kinds only)."""
        ex, ey = X.signature.constants[0], Y.signature.constants[0]
        points = [(a, b) for a in range(X.size) for b in range(Y.size)]
        S = product_structure(X, Y, points)
        return (
            S,
            self._wrap(X, S, tuple(a * Y.size + ey for a in range(X.size))),
            self._wrap(Y, S, tuple(ex * Y.size + b for b in range(Y.size))),
        )

    def _product_pushout(self, f: Mor, g: Mor) -> Pushout:
        S, i1, i2 = self.sum_object(f.cod, g.cod)
        q = self.generated_quotient(
            S, [(i1.payload[a], i2.payload[b]) for a, b in zip(f.payload, g.payload)]
        )
        return Pushout(q.cod, self.compose(q, i1), self.compose(q, i2))

    def _pushout_along_surjection(self, f: Mor, g: Mor) -> Pushout:
        """Pushout of ``f`` along a surjective ``g``: the codomain of ``f``
        modulo the congruence generated by the image of the kernel pair of ``g``."""
        first: Dict[int, int] = {}
        pairs = []
        for z, y in enumerate(g.payload):
            pairs.append((f.payload[first.setdefault(y, z)], f.payload[z]))
        q = self.generated_quotient(f.cod, pairs)
        return Pushout(q.cod, q, self.factor_from(g, self.compose(q, f)))

    def _partial_pushout(self, f: Mor, g: Mor) -> Pushout:
        if f.dom != g.dom:
            raise ValueError("Pushout legs must share a domain")
        if self.is_surjective(g):
            return self._pushout_along_surjection(f, g)
        if self.is_surjective(f):
            swapped = self._pushout_along_surjection(g, f)
            return Pushout(swapped.apex, swapped.in2, swapped.in1)
        raise PushoutNotRepresentable(
            f"{self.kind} pushout of {f.dom} -> {f.cod} and {g.dom} -> {g.cod} needs a surjective leg"
        )


class CMonInstance(AlgebraInstance):
    """Finite commutative monoids."""

    table_type = MonoidTable

    @property
    def kind(self) -> str:
        return "cmon"

    def validate_object(self, obj):
        super().validate_object(obj)
        if not obj.commutative:
            raise ValidationError("Monoid is not declared commutative", which=str(obj))

    def terminal_object(self):
        return MonoidTable(("0",), ((0,),), 0, True, "1")

    def pushout(self, f, g):
        if f.dom != g.dom:
            raise ValueError("Pushout legs must share a domain")
        return self._product_pushout(f, g)

    def closure_override(self, f):
        return cmon_closure_subset(f)

    def dual_closure_override(self, f):
        return cmon_dual_partition(f)


class GrpInstance(AlgebraInstance):
    """Finite groups. Pushouts exist here only along a surjective leg."""

    table_type = GroupTable

    @property
    def kind(self) -> str:
        return "grp"

    def terminal_object(self):
        return GroupTable(("e",), ((0,),), 0, (0,), True, "1")

    def pushout(self, f, g):
        return self._partial_pushout(f, g)

    def closure_override(self, f):
        return frozenset(grp_normal_hull(f.payload, f.cod).members())

    def dual_closure_override(self, f):
        return CongruencePartition.kernel_of(f.payload)

    def epi_closed_form(self, f):
        return self.is_surjective(f)

    def regular_mono_closed_form(self, f):
        return self.is_injective(f)

    def slice_closure_override(self, f, p):
        return frozenset(bit_members(grp_slice_closure_bits(f, p)))

    def coslice_dual_closure_override(self, j, f):
        return CongruencePartition.kernel_of(f.payload)


class AbInstance(GrpInstance):
    """Finite abelian groups, with direct sums as coproducts."""

    @property
    def kind(self) -> str:
        return "ab"

    def validate_object(self, obj):
        super().validate_object(obj)
        if not obj.is_abelian():
            raise ValidationError("Group is not abelian", which=str(obj))

    def terminal_object(self):
        return GroupTable(("0",), ((0,),), 0, (0,), True, "0")

    def pushout(self, f, g):
        if f.dom != g.dom:
            raise ValueError("Pushout legs must share a domain")
        return self._product_pushout(f, g)

    def closure_override(self, f):
        return self.image(f)

    def slice_closure_override(self, f, p):
        return self.image(f)


class CRingInstance(AlgebraInstance):
    """Finite commutative unital rings.

    The zero ring is terminal. The initial object (the integers) is not
    finite, so closures that need it go through characteristic arithmetic.

    Pushouts are only formed along a surjective leg and there is no closed
    form for epimorphisms or regular monomorphisms, so ``is_epi`` and
    ``is_regular_mono`` raise :class:`PushoutNotRepresentable` for a map
    that is not surjective.
    """

    table_type = RingTable

    @property
    def kind(self) -> str:
        return "cring"

    def terminal_object(self):
        return RingTable(("0",), ((0,),), ((0,),), 0, 0, (0,), "0")

    def initial_object(self):
        raise InitialNotRepresentable("The initial commutative ring is the integers")

    def cobang(self, obj):
        raise InitialNotRepresentable("The initial commutative ring is the integers")

    def pushout(self, f, g):
        return self._partial_pushout(f, g)

    def closure_override(self, f):
        return frozenset(range(f.cod.size))

    def dual_closure_override(self, f):
        return cring_kernel_partition(f)

    def coslice_dual_closure_override(self, j, f):
        return CongruencePartition.kernel_of(f.payload)


@dataclass(frozen=True)
class Subgroup:
    parent: GroupTable
    elements: int

    def __post_init__(self):
        if not self.elements >> self.parent.unit & 1:
            raise ValidationError("Subgroup must contain the unit", which=str(self.parent))
        if generate(self.parent, bit_members(self.elements)) != self.elements:
            raise ValidationError("Subset is not closed under the group operations", which=str(self.parent))

    def members(self) -> Tuple[int, ...]:
        return bit_members(self.elements)

    @property
    def order(self) -> int:
        return bin(self.elements).count("1")

    def __contains__(self, x: int) -> bool:
        return bool(self.elements >> x & 1)

    def __le__(self, other: "Subgroup") -> bool:
        return self.elements & ~other.elements == 0

    def labels(self) -> List[str]:
        return [self.parent.carrier[x] for x in self.members()]

    def is_normal(self) -> bool:
        B = self.parent
        return all(
            B.op[B.op[g][x]][B.inv[g]] in self for g in range(B.size) for x in self.members()
        )


def subgroup(B: GroupTable, seeds: Sequence[int]) -> Subgroup:
    return Subgroup(B, generate(B, seeds))


def all_subgroups(B: GroupTable) -> List[Subgroup]:
    """Every subgroup of ``B``, smallest first.

    Starts from the cyclic subgroups and adds one element at a time until no
    new subgroup appears, so subgroups needing any number of generators are
    found.
    """
    return [Subgroup(B, bits) for bits in _subgroup_lattice(B)]


@lru_cache(maxsize=None)
def _subgroup_lattice(B: GroupTable) -> Tuple[int, ...]:
    found = {generate(B, [x]) for x in range(B.size)}
    frontier = set(found)
    while frontier:
        grown = set()
        for bits in frontier:
            for x in range(B.size):
                if bits >> x & 1:
                    continue
                joined = generate(B, bit_members(bits) + (x,))
                if joined not in found:
                    grown.add(joined)
        found |= grown
        frontier = grown
    return tuple(sorted(found, key=lambda bits: (bin(bits).count("1"), bits)))


def grp_normal_hull(X: Sequence[int], B: GroupTable) -> Subgroup:
    """Least normal subgroup of ``B`` containing the elements ``X``.

    Closes under the group operations and under conjugation by every element
    of ``B`` until nothing new appears.

    Example:
        >>> S3 = symmetric_group(3)
        >>> grp_normal_hull([S3.index("(0 1)")], S3).order
        6
    """
    bits = generate(B, X)
    while True:
        conjugates = to_bits(
            B.op[B.op[g][x]][B.inv[g]] for g in range(B.size) for x in bit_members(bits)
        )
        if conjugates & ~bits == 0:
            return Subgroup(B, bits)
        bits = generate(B, bit_members(bits | conjugates))


def kernel(f: Mor) -> Subgroup:
    unit = f.cod.signature.constants[0]
    return Subgroup(f.dom, to_bits(x for x, y in enumerate(f.payload) if y == unit))


def product_set(B: GroupTable, X: int, Y: int) -> int:
    return to_bits(B.op[x][y] for x in bit_members(X) for y in bit_members(Y))


def grp_pushout_along_regular_epi(K: GrpInstance, q: Mor, f: Mor) -> Pushout:
    """Pushout of ``f: A -> B`` along a surjective ``q: A -> Q``.

    The apex is ``B`` modulo the normal hull of ``f(Ker q)``; ``in1`` is the
    projection of ``B`` and ``in2`` the induced map out of ``Q``.

    Raises:
        ValueError: If ``q`` is not surjective
    """
    if not K.is_surjective(q):
        raise ValueError("q must be surjective")
    hull = grp_normal_hull([f.payload[a] for a in kernel(q).members()], f.cod)
    projection = K.quotient(f.cod, hull_partition(hull))
    return Pushout(projection.cod, projection, K.factor_from(q, K.compose(projection, f)))


def hull_partition(N: Subgroup) -> CongruencePartition:
    """Cosets of a normal subgroup as a congruence partition."""
    B = N.parent
    reps = []
    for x in range(B.size):
        reps.append(min(B.op[x][n] for n in N.members()))
    return CongruencePartition(tuple(reps))


@dataclass(frozen=True)
class GrpSliceSquare:
    """The pushout rectangle for a subgroup over ``p``.

    Fields:
        E (Subgroup): ``Ker(p) ∩ A``
        hull (Subgroup): normal hull of ``E`` in ``B``
        pushout (Pushout): ``in1`` is ``B -> B/hull``, ``in2`` is ``k: A/E -> B/hull``
        k_injective (bool): Whether ``k`` is injective
        preimage (int): Bitset of the preimage of ``Im k`` in ``B``
        product (int): Bitset of ``A * hull``
    """
    E: Subgroup
    hull: Subgroup
    pushout: Pushout
    k_injective: bool
    preimage: int
    product: int


def grp_slice_square(K: GrpInstance, f: Mor, p: Mor) -> GrpSliceSquare:
    """Pushout of a subgroup inclusion ``f: A -> B`` along ``A -> A/E`` with ``E = Ker(p f)``."""
    if not K.is_injective(f):
        raise ValueError("f must be a subgroup inclusion")
    q = K.quotient(f.dom, CongruencePartition.kernel_of(K.compose(p, f).payload))
    po = grp_pushout_along_regular_epi(K, q, f)
    E = Subgroup(f.cod, to_bits(f.payload[a] for a in kernel(q).members()))
    hull = grp_normal_hull(E.members(), f.cod)
    k_image = frozenset(po.in2.payload)
    preimage = to_bits(y for y, c in enumerate(po.in1.payload) if c in k_image)
    return GrpSliceSquare(
        E=E,
        hull=hull,
        pushout=po,
        k_injective=K.is_injective(po.in2),
        preimage=preimage,
        product=product_set(f.cod, to_bits(f.payload), hull.elements),
    )


def grp_slice_closure_bits(f: Mor, p: Mor) -> int:
    """``Im(f) * hull(E)`` with ``E = Ker(p) ∩ Im(f)``, as a bitset of B."""
    B = f.cod
    image = to_bits(f.payload)
    unit = p.cod.signature.constants[0]
    E = [y for y in bit_members(image) if p.payload[y] == unit]
    hull = grp_normal_hull(E, B)
    return product_set(B, image, hull.elements)


def grp_slice_normal_closure(K: GrpInstance, f: Mor, p: Mor):
    """Normal closure of ``f: A -> B`` in groups over ``p: B -> C``.

    Returns:
        NormalClosureResult: The inclusion of ``Im(f) * hull(Ker(p) ∩ Im(f))`` into ``B``
    """
    from ..core import closure_from_subset

    bits = grp_slice_closure_bits(f, p)
    Subgroup(f.cod, bits)
    return closure_from_subset(K, f, frozenset(bit_members(bits)))


def grp_slice_normal_mono_test(K: GrpInstance, f: Mor, p: Mor) -> bool:
    """Injective, with the normal hull of ``Ker(p) ∩ Im(f)`` inside ``Im(f)``."""
    if not K.is_injective(f):
        return False
    unit = p.cod.signature.constants[0]
    image = to_bits(f.payload)
    hull = grp_normal_hull([y for y in f.payload if p.payload[y] == unit], f.cod)
    return hull.elements & ~image == 0


def grp_slice_decomposition(K: GrpInstance, f: Mor, p: Mor) -> Tuple[Mor, Mor, Mor]:
    """Factor ``f`` as ``A -> A/Ker f -> Im(f) hull(E) -> B``.

    Raises:
        NoDiagonal: If the three factors fail to compose to ``f``
    """
    closure = grp_slice_normal_closure(K, f, p)
    pi = K.quotient(f.dom, CongruencePartition.kernel_of(f.payload))
    kappa = K.factor_from(pi, closure.hat)
    if not K.mor_eq(K.compose_all(closure.nu, kappa, pi), f):
        raise NoDiagonal("Slice decomposition does not recompose")
    return pi, kappa, closure.nu


def grp_coslice_dual_closure(K: GrpInstance, j: Mor, f: Mor):
    """Normal dual closure of ``f`` under ``j``: the projection onto ``A/Ker f``."""
    from ..core import dual_closure_from_partition

    if j.cod != f.dom:
        raise ValueError("j and f are not composable")
    return dual_closure_from_partition(K, f, CongruencePartition.kernel_of(f.payload))


def cmon_closure_subset(f: Mor) -> FrozenSet[int]:
    """``{x in B | f(A) x meets f(A)}``."""
    B = f.cod
    image = set(f.payload)
    return frozenset(x for x in range(B.size) if any(B.op[a][x] in image for a in image))


def cmon_dual_partition(f: Mor) -> CongruencePartition:
    """``a ~ b`` iff ``u a = v b`` for some ``u, v`` in the kernel of ``f``."""
    A = f.dom
    unit = f.cod.unit
    ker = [u for u in range(A.size) if f.payload[u] == unit]
    reps = []
    for a in range(A.size):
        translates = {A.op[u][a] for u in ker}
        reps.append(
            next(b for b in range(A.size) if translates & {A.op[v][b] for v in ker})
        )
    return CongruencePartition(tuple(reps))


def cmon_normal_mono_test(K: CMonInstance, f: Mor) -> bool:
    """Injective with the cancellation property: ``a x`` and ``a`` in f(A) imply ``x`` in f(A)."""
    if not K.is_injective(f):
        return False
    B, image = f.cod, set(f.payload)
    return all(x in image for x in range(B.size) if any(B.op[a][x] in image for a in image))


def cmon_normal_epi_test(K: CMonInstance, f: Mor) -> bool:
    """Surjective and weakly injective: ``fa = fb`` implies ``u a = v b`` for kernel elements."""
    if not K.is_surjective(f):
        return False
    partition = cmon_dual_partition(f)
    return all(
        partition.same(a, b)
        for a in range(f.dom.size)
        for b in range(a)
        if f.payload[a] == f.payload[b]
    )


def cmon_symmetrization(f: Mor) -> Optional[FrozenSet[int]]:
    """``{fa (fb)^-1}`` when every element of f(A) is invertible in B, else ``None``."""
    B = f.cod
    inverses = {}
    for y in set(f.payload):
        inverse = next((z for z in range(B.size) if B.op[y][z] == B.unit), None)
        if inverse is None:
            return None
        inverses[y] = inverse
    return frozenset(B.op[a][inverses[b]] for a in inverses for b in inverses)


def cmon_closed_forms(K: CMonInstance, f: Mor):
    from ..core import closure_from_subset, dual_closure_from_partition

    return (
        closure_from_subset(K, f, cmon_closure_subset(f)),
        dual_closure_from_partition(K, f, cmon_dual_partition(f)),
    )


def cring_kernel_partition(f: Mor) -> CongruencePartition:
    """Kernel congruence of ``f`` derived from the integer points of ``0 x_B A``.

    The unique map from the integers sends ``n`` to ``n * 1``; pairs
    ``(n, a)`` with ``n * 1_B = f(a)`` are enumerated for ``n`` modulo the
    least common multiple of the two characteristics, and ``a`` is
    identified with ``n * 1_A``.
    """
    A, B = f.dom, f.cod
    period = lcm(A.characteristic(), B.characteristic())
    pairs = []
    for n in range(period):
        target = B.multiple(n, B.one)
        for a in range(A.size):
            if f.payload[a] == target:
                pairs.append((a, A.multiple(n, A.one)))
    return congruence_closure(A, pairs)


def cring_closed_forms(K: CRingInstance, f: Mor):
    from ..core import closure_from_subset, dual_closure_from_partition

    return (
        closure_from_subset(K, f, K.closure_override(f)),
        dual_closure_from_partition(K, f, cring_kernel_partition(f)),
    )


def ralg_coslice_decomposition(K: CRingInstance, j: Mor, f: Mor):
    """Decompose ``f: A -> B`` as a map of algebras under ``j: R -> A``.

    Returns:
        NormalDecomposition: The decomposition in the coslice under ``R``

    Raises:
        OverrideMismatch: If it differs from the ring-level decomposition or
            the comparison map from the ring-level dual closure is not bijective
    """
    from ..core import normal_decomposition
    from .slices import CosliceObject, coslice_category, sigma_comparison

    Kc = coslice_category(K, j.dom)
    source = CosliceObject(f.dom, j)
    target = CosliceObject(f.cod, K.compose(f, j))
    fc = Kc.morphism(source, target, f.payload)
    sliced = normal_decomposition(Kc, fc)
    base = normal_decomposition(K, f)
    for name in ("pi", "kappa", "nu"):
        if getattr(sliced, name).payload != getattr(base, name).payload:
            raise OverrideMismatch(f"R-algebra {name} differs from the ring-level factor")
    sigma = sigma_comparison(Kc, fc)
    if not (Kc.base.is_injective(sigma) and Kc.base.is_surjective(sigma)):
        raise OverrideMismatch("R-algebra comparison sigma is not bijective")
    return sliced


def hom_enumerate(K: AlgebraInstance, S: Structure, T: Structure) -> List[Mor]:
    return K.hom_set(S, T)


def cmon_instance(max_homset: Optional[int] = None) -> CMonInstance:
    return CMonInstance(max_homset)


def ab_instance(max_homset: Optional[int] = None) -> AbInstance:
    return AbInstance(max_homset)


def grp_instance(max_homset: Optional[int] = None) -> GrpInstance:
    return GrpInstance(max_homset)


def cring_instance(max_homset: Optional[int] = None) -> CRingInstance:
    return CRingInstance(max_homset)
