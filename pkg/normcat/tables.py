"""Finite algebraic structures given by operation tables.

Every structure is a frozen dataclass over an ordered carrier of labels; all
operations are addressed by carrier index. The generic machinery in this
module (subalgebras, products, congruence quotients, homomorphism search)
works through each structure's :class:`Signature`, so monoids, groups and
rings share one implementation.
"""
import logging
from dataclasses import InitVar, dataclass, field
from functools import lru_cache
from itertools import product
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from .errors import HomSetTooLarge, ValidationError
from .validations import (
    Table,
    bit_members,
    to_bits,
    validate_carrier,
    validate_group,
    validate_monoid,
    validate_ring,
)

logger = logging.getLogger(__name__)


def commutes(op: Table) -> bool:
    return all(op[a][b] == op[b][a] for a in range(len(op)) for b in range(a))


class Signature(NamedTuple):
    binary: Tuple[Table, ...]
    unary: Tuple[Tuple[int, ...], ...]
    constants: Tuple[int, ...]


class Structure:
    """Shared behaviour of table-backed structures."""

    carrier: Tuple[str, ...]
    name: str

    @property
    def size(self) -> int:
        return len(self.carrier)

    @property
    def signature(self) -> Signature:
        raise NotImplementedError

    def assemble(self, carrier: Tuple[str, ...], signature: Signature, name: str = "") -> "Structure":
        """Build a structure of the same kind and flags without re-validation.

        Only used for structures derived from already validated ones
        (substructures, products, quotients), which satisfy the axioms.
        """
        raise NotImplementedError

    def index(self, label: str) -> int:
        try:
            return self.carrier.index(label)
        except ValueError:
            raise ValidationError(f"Unknown element {label!r}", which=self.name or "carrier") from None

    def __str__(self) -> str:
        return self.name or "{" + ", ".join(self.carrier) + "}"


@dataclass(frozen=True)
class MonoidTable(Structure):
    carrier: Tuple[str, ...]
    op: Table
    unit: int
    commutative: bool = field(default=True, compare=False)
    name: str = field(default="", compare=False)
    check: InitVar[bool] = True

    def __post_init__(self, check: bool):
        if check:
            validate_monoid(self.carrier, self.op, self.unit, self.commutative)

    @property
    def signature(self) -> Signature:
        return Signature((self.op,), (), (self.unit,))

    def assemble(self, carrier, signature, name=""):
        op = signature.binary[0]
        return MonoidTable(
            carrier, op, signature.constants[0], self.commutative and commutes(op), name, check=False
        )


@dataclass(frozen=True)
class GroupTable(Structure):
    carrier: Tuple[str, ...]
    op: Table
    unit: int
    inv: Tuple[int, ...]
    abelian: bool = field(default=False, compare=False)
    name: str = field(default="", compare=False)
    check: InitVar[bool] = True

    def __post_init__(self, check: bool):
        if check:
            validate_group(self.carrier, self.op, self.unit, self.inv, self.abelian)

    @property
    def signature(self) -> Signature:
        return Signature((self.op,), (self.inv,), (self.unit,))

    def assemble(self, carrier, signature, name=""):
        return GroupTable(
            carrier,
            signature.binary[0],
            signature.constants[0],
            signature.unary[0],
            self.abelian and commutes(signature.binary[0]),
            name,
            check=False,
        )

    def is_abelian(self) -> bool:
        return commutes(self.op)


@dataclass(frozen=True)
class RingTable(Structure):
    carrier: Tuple[str, ...]
    add: Table
    mul: Table
    zero: int
    one: int
    neg: Tuple[int, ...]
    name: str = field(default="", compare=False)
    check: InitVar[bool] = True

    def __post_init__(self, check: bool):
        if check:
            validate_ring(self.carrier, self.add, self.mul, self.zero, self.one, self.neg)

    @property
    def signature(self) -> Signature:
        return Signature((self.add, self.mul), (self.neg,), (self.zero, self.one))

    def assemble(self, carrier, signature, name=""):
        add, mul = signature.binary
        zero, one = signature.constants
        return RingTable(carrier, add, mul, zero, one, signature.unary[0], name, check=False)

    @property
    def additive(self) -> GroupTable:
        return GroupTable(self.carrier, self.add, self.zero, self.neg, True, self.name, check=False)

    @property
    def multiplicative(self) -> MonoidTable:
        return MonoidTable(self.carrier, self.mul, self.one, True, self.name, check=False)

    def multiple(self, n: int, x: int) -> int:
        """Return ``n * x`` in the additive group (``n`` may be negative)."""
        total = self.zero
        for _ in range(abs(n)):
            total = self.add[total][x]
        return self.neg[total] if n < 0 else total

    def characteristic(self) -> int:
        n, x = 1, self.one
        while x != self.zero:
            x = self.add[x][self.one]
            n += 1
        return n


class UnionFind:
    """Union-find whose class roots are always the least index of the class."""

    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True

    def representatives(self) -> Tuple[int, ...]:
        return tuple(self.find(x) for x in range(len(self.parent)))


@dataclass(frozen=True)
class CongruencePartition:
    """A partition of a carrier, each element mapped to its class's least index."""
    reps: Tuple[int, ...]

    @classmethod
    def discrete(cls, size: int) -> "CongruencePartition":
        return cls(tuple(range(size)))

    @classmethod
    def kernel_of(cls, table: Sequence[int]) -> "CongruencePartition":
        first: Dict[int, int] = {}
        return cls(tuple(first.setdefault(image, x) for x, image in enumerate(table)))

    @property
    def size(self) -> int:
        return len(self.reps)

    def same(self, a: int, b: int) -> bool:
        return self.reps[a] == self.reps[b]

    def representatives(self) -> Tuple[int, ...]:
        return tuple(sorted(set(self.reps)))

    def classes(self) -> List[Tuple[int, ...]]:
        grouped: Dict[int, List[int]] = {}
        for x, r in enumerate(self.reps):
            grouped.setdefault(r, []).append(x)
        return [tuple(grouped[r]) for r in sorted(grouped)]

    def is_discrete(self) -> bool:
        return all(r == x for x, r in enumerate(self.reps))

    def is_compatible(self, S: Structure) -> bool:
        sig = S.signature
        for x, r in enumerate(self.reps):
            if x == r:
                continue
            for t in sig.binary:
                for z in range(S.size):
                    if not self.same(t[x][z], t[r][z]) or not self.same(t[z][x], t[z][r]):
                        return False
            for u in sig.unary:
                if not self.same(u[x], u[r]):
                    return False
        return True


def equivalence_closure(size: int, pairs: Iterable[Tuple[int, int]]) -> CongruencePartition:
    uf = UnionFind(size)
    for a, b in pairs:
        uf.union(a, b)
    return CongruencePartition(uf.representatives())


def congruence_closure(S: Structure, pairs: Iterable[Tuple[int, int]]) -> CongruencePartition:
    """Compute the least congruence of ``S`` containing ``pairs``.

    Saturates a union-find partition to a fixpoint: every element is made
    congruent to its class root under translation by each element in each
    binary operation, and under each unary operation.

    Args:
        S (Structure): The structure whose operations must be respected
        pairs (Iterable[Tuple[int, int]]): Generating pairs of carrier indices

    Returns:
        CongruencePartition: Least-index representatives of the classes

    Example:
        >>> z4 = cyclic_group(4)
        >>> congruence_closure(z4, [(0, 2)]).classes()
        [(0, 2), (1, 3)]
    """
    sig = S.signature
    uf = UnionFind(S.size)
    for a, b in pairs:
        uf.union(a, b)
    changed = True
    while changed:
        changed = False
        for x in range(S.size):
            r = uf.find(x)
            if r == x:
                continue
            for t in sig.binary:
                for z in range(S.size):
                    changed |= uf.union(t[x][z], t[r][z])
                    changed |= uf.union(t[z][x], t[z][r])
            for u in sig.unary:
                changed |= uf.union(u[x], u[r])
    return CongruencePartition(uf.representatives())


def generate(S: Structure, seeds: Iterable[int]) -> int:
    """Return the bitset of the substructure generated by ``seeds``."""
    sig = S.signature
    members = set(seeds) | set(sig.constants)
    frontier = list(members)
    while frontier:
        fresh = []
        current = list(members)
        for x in frontier:
            candidates = [u[x] for u in sig.unary]
            for t in sig.binary:
                for y in current:
                    candidates.append(t[x][y])
                    candidates.append(t[y][x])
            for c in candidates:
                if c not in members:
                    members.add(c)
                    fresh.append(c)
        frontier = fresh
    return to_bits(members)


def substructure(S: Structure, elements: Sequence[int], name: str = "") -> Structure:
    """Restrict ``S`` to the given elements, kept in the given order.

    Raises:
        ValidationError: If the elements are not closed under the operations
    """
    index = {e: i for i, e in enumerate(elements)}
    sig = S.signature
    try:
        signature = Signature(
            tuple(tuple(tuple(index[t[a][b]] for b in elements) for a in elements) for t in sig.binary),
            tuple(tuple(index[u[a]] for a in elements) for u in sig.unary),
            tuple(index[c] for c in sig.constants),
        )
    except KeyError as e:
        raise ValidationError("Subset is not closed under the operations", which=f"element {e.args[0]}") from None
    return S.assemble(tuple(S.carrier[e] for e in elements), signature, name)


def pair_label(left: str, right: str) -> str:
    return f"({left},{right})"


def product_structure(
        S: Structure,
        T: Structure,
        points: Sequence[Tuple[int, int]],
        name: str = "",
) -> Structure:
    """Build the substructure of ``S x T`` carried by ``points``.

    Raises:
        ValidationError: If ``points`` is not closed under the componentwise operations
    """
    index = {pt: i for i, pt in enumerate(points)}
    ss, ts = S.signature, T.signature
    try:
        signature = Signature(
            tuple(
                tuple(tuple(index[(s[a][c], t[b][d])] for c, d in points) for a, b in points)
                for s, t in zip(ss.binary, ts.binary)
            ),
            tuple(tuple(index[(s[a], t[b])] for a, b in points) for s, t in zip(ss.unary, ts.unary)),
            tuple(index[(c, d)] for c, d in zip(ss.constants, ts.constants)),
        )
    except KeyError as e:
        raise ValidationError("Points are not closed under the operations", which=f"pair {e.args[0]}") from None
    carrier = tuple(pair_label(S.carrier[a], T.carrier[b]) for a, b in points)
    return S.assemble(carrier, signature, name)


def direct_product(S: Structure, T: Structure, name: str = "") -> Structure:
    return product_structure(S, T, list(product(range(S.size), range(T.size))), name)


def quotient_structure(
        S: Structure,
        partition: CongruencePartition,
        name: str = "",
) -> Tuple[Structure, Tuple[int, ...]]:
    """Form ``S`` modulo a congruence.

    Returns:
        Tuple[Structure, Tuple[int, ...]]: The quotient, whose elements are
        labelled by their least representative, and the projection table
    """
    reps = partition.representatives()
    index = {r: i for i, r in enumerate(reps)}
    projection = tuple(index[partition.reps[x]] for x in range(S.size))
    sig = S.signature
    signature = Signature(
        tuple(tuple(tuple(projection[t[a][b]] for b in reps) for a in reps) for t in sig.binary),
        tuple(tuple(projection[u[a]] for a in reps) for u in sig.unary),
        tuple(projection[c] for c in sig.constants),
    )
    return S.assemble(tuple(S.carrier[r] for r in reps), signature, name), projection


def homomorphism_violation(S: Structure, T: Structure, table: Sequence[int]) -> Optional[str]:
    """Return a description of the first operation ``table`` fails to preserve, if any."""
    ss, ts = S.signature, T.signature
    for k, (c, d) in enumerate(zip(ss.constants, ts.constants)):
        if table[c] != d:
            return f"constant {k}"
    for k, (s, t) in enumerate(zip(ss.unary, ts.unary)):
        for a in range(S.size):
            if table[s[a]] != t[table[a]]:
                return f"unary {k} at {S.carrier[a]!r}"
    for k, (s, t) in enumerate(zip(ss.binary, ts.binary)):
        for a in range(S.size):
            row, image = s[a], t[table[a]]
            for b in range(S.size):
                if table[row[b]] != image[table[b]]:
                    return f"binary {k} at ({S.carrier[a]!r}, {S.carrier[b]!r})"
    return None


def extend_partial(S: Structure, T: Structure, partial: Dict[int, int]) -> Optional[Tuple[int, ...]]:
    """Extend a partial assignment to a homomorphism ``S -> T``.

    The assignment is propagated through the operations. Returns ``None`` when
    the propagation conflicts, does not reach every element, or the result
    fails to be a homomorphism.
    """
    ss, ts = S.signature, T.signature
    image: Dict[int, int] = {}

    def assign(x: int, y: int) -> bool:
        if x in image:
            return image[x] == y
        image[x] = y
        return True

    for c, d in zip(ss.constants, ts.constants):
        if not assign(c, d):
            return None
    for x, y in partial.items():
        if not assign(x, y):
            return None
    frontier = list(image)
    while frontier:
        fresh = []
        known = list(image)
        for x in frontier:
            steps = [(s[x], t[image[x]]) for s, t in zip(ss.unary, ts.unary)]
            for s, t in zip(ss.binary, ts.binary):
                for y in known:
                    steps.append((s[x][y], t[image[x]][image[y]]))
                    steps.append((s[y][x], t[image[y]][image[x]]))
            for a, b in steps:
                if a not in image:
                    image[a] = b
                    fresh.append(a)
                elif image[a] != b:
                    return None
        frontier = fresh
    if len(image) != S.size:
        return None
    table = tuple(image[x] for x in range(S.size))
    if homomorphism_violation(S, T, table) is not None:
        return None
    return table


@lru_cache(maxsize=512)
def generating_set(S: Structure) -> Tuple[int, ...]:
    """Greedy small generating set: repeatedly add the element generating the most."""
    full = (1 << S.size) - 1
    gens: List[int] = []
    current = generate(S, [])
    while current != full:
        best, best_bits = -1, current
        for x in range(S.size):
            if current >> x & 1:
                continue
            bits = generate(S, gens + [x])
            if bin(bits).count("1") > bin(best_bits).count("1"):
                best, best_bits = x, bits
        gens.append(best)
        current = best_bits
    return tuple(gens)


@lru_cache(maxsize=4096)
def enumerate_homomorphisms(S: Structure, T: Structure, bound: int) -> Tuple[Tuple[int, ...], ...]:
    """All homomorphisms ``S -> T``, found by extending generator images.

    Results are cached per pair of tables.

    Raises:
        HomSetTooLarge: If ``|T| ** len(generators)`` exceeds ``bound``
    """
    gens = generating_set(S)
    candidates = T.size ** len(gens)
    if candidates > bound:
        raise HomSetTooLarge(
            f"Hom({S}, {T}) has {candidates} generator assignments, bound is {bound}",
            candidates=candidates,
            bound=bound,
        )
    found = []
    for images in product(range(T.size), repeat=len(gens)):
        table = extend_partial(S, T, dict(zip(gens, images)))
        if table is not None:
            found.append(table)
    logger.debug("Hom(%s, %s): %d of %d assignments extend", S, T, len(found), candidates)
    return tuple(found)


def members(bits: int) -> Tuple[int, ...]:
    return bit_members(bits)


def cyclic_group(n: int, name: str = "") -> GroupTable:
    carrier = tuple(str(i) for i in range(n))
    op = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
    inv = tuple((-a) % n for a in range(n))
    return GroupTable(carrier, op, 0, inv, True, name or f"Z{n}")


def truncated_monoid(k: int, elements: Optional[Sequence[int]] = None, name: str = "") -> MonoidTable:
    """The monoid ``{0..k}`` under ``min(a + b, k)``, optionally restricted to a submonoid."""
    values = list(range(k + 1)) if elements is None else list(elements)
    index = {v: i for i, v in enumerate(values)}
    validate_carrier([str(v) for v in values], allow_empty=False)
    try:
        op = tuple(tuple(index[min(a + b, k)] for b in values) for a in values)
        unit = index[0]
    except KeyError:
        raise ValidationError("Values are not closed under truncated addition", which="carrier") from None
    return MonoidTable(tuple(str(v) for v in values), op, unit, True, name or f"T{k}")
