from itertools import product
from typing import Iterable, Sequence, Tuple

from .errors import ValidationError

Table = Tuple[Tuple[int, ...], ...]


def validate_carrier(carrier: Sequence[str], allow_empty: bool = True) -> None:
    """Validate the ordered label list of a finite structure.

    Args:
        carrier (Sequence[str]): Element labels in canonical order
        allow_empty (bool): Whether the empty carrier is legal for this kind

    Raises:
        ValidationError: If a label is not a string, is repeated, or the
            carrier is empty where the structure has no empty models
    """
    if not allow_empty and not carrier:
        raise ValidationError("Carrier must not be empty", which="carrier")
    seen = set()
    for i, label in enumerate(carrier):
        if not isinstance(label, str):
            raise ValidationError("Carrier labels must be strings", which=f"carrier[{i}]")
        if label in seen:
            raise ValidationError(f"Duplicate label {label!r}", which=f"carrier[{i}]")
        seen.add(label)


def validate_element_map(table: Sequence[int], dom_size: int, cod_size: int) -> None:
    if len(table) != dom_size:
        raise ValidationError(
            f"Map lists {len(table)} images for a domain of {dom_size} elements",
            which="map",
        )
    for i, image in enumerate(table):
        if not isinstance(image, int) or not 0 <= image < cod_size:
            raise ValidationError(f"Image {image!r} outside codomain", which=f"map[{i}]")


def validate_binary_table(name: str, table: Table, size: int) -> None:
    if len(table) != size or any(len(row) != size for row in table):
        raise ValidationError(f"Table must be {size}x{size}", which=name)
    for i, j in product(range(size), repeat=2):
        if not 0 <= table[i][j] < size:
            raise ValidationError("Entry outside carrier", which=f"{name}[{i}][{j}]")


def validate_unary_table(name: str, table: Tuple[int, ...], size: int) -> None:
    if len(table) != size:
        raise ValidationError(f"Table must list {size} entries", which=name)
    for i, image in enumerate(table):
        if not 0 <= image < size:
            raise ValidationError("Entry outside carrier", which=f"{name}[{i}]")


def validate_constant(name: str, value: int, size: int) -> None:
    if not isinstance(value, int) or not 0 <= value < size:
        raise ValidationError("Constant outside carrier", which=name)


def validate_associative(name: str, table: Table) -> None:
    size = len(table)
    for a, b, c in product(range(size), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise ValidationError("Operation is not associative", which=f"{name} at ({a}, {b}, {c})")


def validate_commutative(name: str, table: Table) -> None:
    size = len(table)
    for a in range(size):
        for b in range(a + 1, size):
            if table[a][b] != table[b][a]:
                raise ValidationError("Operation is not commutative", which=f"{name} at ({a}, {b})")


def validate_unit(name: str, table: Table, unit: int) -> None:
    for a in range(len(table)):
        if table[unit][a] != a or table[a][unit] != a:
            raise ValidationError("Unit law fails", which=f"{name} at {a}")


def validate_inverse(name: str, table: Table, inv: Tuple[int, ...], unit: int) -> None:
    for a in range(len(table)):
        if table[a][inv[a]] != unit or table[inv[a]][a] != unit:
            raise ValidationError("Inverse law fails", which=f"{name} at {a}")


def validate_monoid(
        carrier: Sequence[str],
        op: Table,
        unit: int,
        commutative: bool,
) -> None:
    """Validate a monoid given by its multiplication table.

    Args:
        carrier (Sequence[str]): Element labels
        op (Table): Row-major table, ``op[a][b]`` is the index of ``a*b``
        unit (int): Index of the unit
        commutative (bool): Whether commutativity is asserted and must be checked

    Raises:
        ValidationError: Naming the violated axiom and the offending cell
    """
    validate_carrier(carrier, allow_empty=False)
    size = len(carrier)
    validate_binary_table("op", op, size)
    validate_constant("unit", unit, size)
    validate_unit("op", op, unit)
    if commutative:
        validate_commutative("op", op)
    validate_associative("op", op)


def validate_group(
        carrier: Sequence[str],
        op: Table,
        unit: int,
        inv: Tuple[int, ...],
        abelian: bool,
) -> None:
    validate_monoid(carrier, op, unit, abelian)
    validate_unary_table("inv", inv, len(carrier))
    validate_inverse("op", op, inv, unit)


def validate_ring(
        carrier: Sequence[str],
        add: Table,
        mul: Table,
        zero: int,
        one: int,
        neg: Tuple[int, ...],
) -> None:
    """Validate a commutative unital ring.

    The additive structure must be an abelian group and the multiplicative one
    a commutative monoid on the same carrier, related by distributivity.
    """
    validate_group(carrier, add, zero, neg, abelian=True)
    size = len(carrier)
    validate_binary_table("mul", mul, size)
    validate_constant("one", one, size)
    validate_unit("mul", mul, one)
    validate_commutative("mul", mul)
    validate_associative("mul", mul)
    for a, b, c in product(range(size), repeat=3):
        if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]]:
            raise ValidationError("Distributivity fails", which=f"mul/add at ({a}, {b}, {c})")


def validate_basepoint(carrier: Sequence[str], basepoint: int) -> None:
    validate_carrier(carrier, allow_empty=False)
    validate_constant("basepoint", basepoint, len(carrier))


def validate_neighbourhoods(carrier: Sequence[str], neighbourhoods: Tuple[int, ...]) -> None:
    """Validate the minimal open neighbourhoods of a finite space.

    Each point lies in its own neighbourhood, and a point of a neighbourhood
    has a neighbourhood contained in it (transitivity of the specialization
    preorder).
    """
    validate_carrier(carrier)
    if len(neighbourhoods) != len(carrier):
        raise ValidationError("One neighbourhood per point is required", which="opens")
    full = (1 << len(carrier)) - 1
    for x, nbhd in enumerate(neighbourhoods):
        if nbhd & ~full or not nbhd >> x & 1:
            raise ValidationError("Point outside its neighbourhood", which=f"opens at {carrier[x]!r}")
        for y in bit_members(nbhd):
            if neighbourhoods[y] & ~nbhd:
                raise ValidationError(
                    "Neighbourhoods are not transitive",
                    which=f"opens at ({carrier[x]!r}, {carrier[y]!r})",
                )


def validate_opens(carrier: Sequence[str], opens: Iterable[int]) -> None:
    """Validate a finite family of open sets.

    Raises:
        ValidationError: If the empty set or the whole carrier is missing, or
            the family is not closed under pairwise union and intersection
    """
    validate_carrier(carrier)
    family = set(opens)
    full = (1 << len(carrier)) - 1
    if 0 not in family or full not in family:
        raise ValidationError("Opens must contain the empty set and the carrier", which="opens")
    for u in family:
        if u & ~full:
            raise ValidationError("Open set outside carrier", which="opens")
        for v in family:
            if u | v not in family:
                raise ValidationError("Opens not closed under union", which="opens")
            if u & v not in family:
                raise ValidationError("Opens not closed under intersection", which="opens")


def validate_point_closure(carrier: Sequence[str], closure: Tuple[int, ...], t1: bool) -> None:
    """Validate a point-closure table under the Kuratowski axioms.

    With additive extension ``cl(S) = union of cl{x}``, the axioms reduce to
    extensiveness on points and transitivity of point closures. A ``t1`` flag
    demands closed singletons, which on a finite carrier forces the discrete
    closure.
    """
    validate_carrier(carrier)
    if len(closure) != len(carrier):
        raise ValidationError("One point closure per point is required", which="closure")
    full = (1 << len(carrier)) - 1
    for x, cl in enumerate(closure):
        if cl & ~full or not cl >> x & 1:
            raise ValidationError("Closure is not extensive", which=f"closure at {carrier[x]!r}")
        for y in bit_members(cl):
            if closure[y] & ~cl:
                raise ValidationError(
                    "Closure is not idempotent",
                    which=f"closure at ({carrier[x]!r}, {carrier[y]!r})",
                )
        if t1 and cl != 1 << x:
            raise ValidationError("Singleton is not closed under the t1 flag", which=f"closure at {carrier[x]!r}")


def bit_members(bits: int) -> Tuple[int, ...]:
    members = []
    i = 0
    while bits:
        if bits & 1:
            members.append(i)
        bits >>= 1
        i += 1
    return tuple(members)


def to_bits(members: Iterable[int]) -> int:
    bits = 0
    for i in members:
        bits |= 1 << i
    return bits
