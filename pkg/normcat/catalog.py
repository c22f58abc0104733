"""Named finite structures used by the suites, tests and instance documents.

Permutation groups are generated with sympy and turned into Cayley tables;
small rings are built from polynomial arithmetic over prime fields.
"""
import logging
from functools import lru_cache
from typing import Callable, Dict, List, Sequence

from sympy import Poly, symbols
from sympy.combinatorics import Permutation, PermutationGroup
from sympy.combinatorics.named_groups import AlternatingGroup, DihedralGroup, SymmetricGroup

from .errors import ValidationError
from .tables import GroupTable, MonoidTable, RingTable, Structure, cyclic_group, direct_product, truncated_monoid

logger = logging.getLogger(__name__)

x = symbols("x")


def cycle_label(perm: Permutation) -> str:
    """``"e"`` for the identity, cycle notation such as ``"(0 1)(2 3)"`` otherwise."""
    cycles = perm.cyclic_form
    if not cycles:
        return "e"
    return "".join("(" + " ".join(str(i) for i in cycle) + ")" for cycle in cycles)


def permutation_group_table(group: PermutationGroup, name: str = "") -> GroupTable:
    """Cayley table of a sympy permutation group.

    Elements are ordered by order and then by cycle form, so the identity
    is always element 0.
    """
    elements: List[Permutation] = sorted(group.generate(), key=lambda p: (p.order(), p.cyclic_form))
    index = {p: i for i, p in enumerate(elements)}
    op = tuple(tuple(index[a * b] for b in elements) for a in elements)
    inv = tuple(index[~a] for a in elements)
    table = GroupTable(
        tuple(cycle_label(p) for p in elements), op, 0, inv, group.is_abelian, name
    )
    logger.debug("Built %s of order %d", name or "permutation group", table.size)
    return table


@lru_cache(maxsize=None)
def symmetric_group(n: int) -> GroupTable:
    return permutation_group_table(SymmetricGroup(n), f"S{n}")


@lru_cache(maxsize=None)
def alternating_group(n: int) -> GroupTable:
    return permutation_group_table(AlternatingGroup(n), f"A{n}")


@lru_cache(maxsize=None)
def dihedral_group(n: int) -> GroupTable:
    """Symmetries of the ``n``-gon, of order ``2n``."""
    return permutation_group_table(DihedralGroup(n), f"D{n}")


@lru_cache(maxsize=None)
def klein_group() -> GroupTable:
    return direct_product(cyclic_group(2), cyclic_group(2), "V4")


@lru_cache(maxsize=None)
def dicyclic_group(n: int) -> GroupTable:
    """``<a, x | a^2n = 1, x^2 = a^n, x a x^-1 = a^-1>``, of order ``4n``.

    Element ``e * 2n + k`` is ``a^k x^e``; ``dicyclic_group(2)`` is the
    quaternion group.
    """
    if n < 2:
        raise ValidationError("Dicyclic groups need n >= 2", which="n")
    m = 2 * n

    def mul(i: int, j: int) -> int:
        (e, k), (f, l) = divmod(i, m), divmod(j, m)
        if e == 0:
            return f * m + (k + l) % m
        if f == 0:
            return m + (k - l) % m
        return (k - l + n) % m

    def label(i: int) -> str:
        e, k = divmod(i, m)
        power = "" if k == 0 else "a" if k == 1 else f"a^{k}"
        return (power + "x" * e) or "1"

    op = tuple(tuple(mul(i, j) for j in range(2 * m)) for i in range(2 * m))
    inv = tuple(row.index(0) for row in op)
    name = "Q8" if n == 2 else f"Dic{n}"
    return GroupTable(tuple(label(i) for i in range(2 * m)), op, 0, inv, False, name)


def zmod_ring(n: int) -> RingTable:
    """The integers modulo ``n``."""
    carrier = tuple(str(i) for i in range(n))
    add = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
    mul = tuple(tuple((a * b) % n for b in range(n)) for a in range(n))
    return RingTable(carrier, add, mul, 0, 1 % n, tuple((-a) % n for a in range(n)), f"Z/{n}")


def _value(poly: Poly, p: int) -> int:
    value = 0
    for c in poly.all_coeffs():
        value = value * p + int(c) % p
    return value


def polynomial_quotient_ring(modulus: Sequence[int], p: int, name: str = "") -> RingTable:
    """``F_p[x]`` modulo a monic polynomial, given by its coefficients, highest first.

    Elements are ordered by the base-``p`` value of their coefficients.

    Example:
        >>> polynomial_quotient_ring([1, 1, 1], 2).carrier
        ('0', '1', 'x', 'x + 1')
    """
    m = Poly(list(modulus), x, modulus=p)
    degree = m.degree()
    if degree < 1:
        raise ValidationError("Modulus must have positive degree", which="modulus")
    elements = [
        Poly([(k // p**i) % p for i in reversed(range(degree))], x, modulus=p) for k in range(p**degree)
    ]

    def lookup(poly: Poly) -> int:
        return _value(poly.rem(m), p)

    add = tuple(tuple(lookup(a + b) for b in elements) for a in elements)
    mul = tuple(tuple(lookup(a * b) for b in elements) for a in elements)
    neg = tuple(lookup(-a) for a in elements)
    carrier = tuple(str(poly.as_expr()) for poly in elements)
    return RingTable(carrier, add, mul, 0, 1, neg, name)


@lru_cache(maxsize=None)
def field_f4() -> RingTable:
    return polynomial_quotient_ring([1, 1, 1], 2, "F4")


@lru_cache(maxsize=None)
def dual_numbers_f2() -> RingTable:
    """``F_2[x]/(x^2)``."""
    return polynomial_quotient_ring([1, 0, 0], 2, "F2[x]/(x^2)")


def product_ring(R: RingTable, S: RingTable) -> RingTable:
    return direct_product(R, S, f"{R.name}x{S.name}")


def zero_ring() -> RingTable:
    return RingTable(("0",), ((0,),), ((0,),), 0, 0, (0,), "0")


NAMED: Dict[str, Callable[[], Structure]] = {
    "Z1": lambda: cyclic_group(1),
    "Z2": lambda: cyclic_group(2),
    "Z3": lambda: cyclic_group(3),
    "Z4": lambda: cyclic_group(4),
    "Z5": lambda: cyclic_group(5),
    "Z6": lambda: cyclic_group(6),
    "Z7": lambda: cyclic_group(7),
    "Z8": lambda: cyclic_group(8),
    "Z9": lambda: cyclic_group(9),
    "Z10": lambda: cyclic_group(10),
    "Z11": lambda: cyclic_group(11),
    "Z12": lambda: cyclic_group(12),
    "V4": klein_group,
    "Z2xZ4": lambda: direct_product(cyclic_group(2), cyclic_group(4), "Z2xZ4"),
    "Z2xZ2xZ2": lambda: direct_product(klein_group(), cyclic_group(2), "Z2xZ2xZ2"),
    "Z3xZ3": lambda: direct_product(cyclic_group(3), cyclic_group(3), "Z3xZ3"),
    "Z2xZ6": lambda: direct_product(cyclic_group(2), cyclic_group(6), "Z2xZ6"),
    "S3": lambda: symmetric_group(3),
    "S4": lambda: symmetric_group(4),
    "A3": lambda: alternating_group(3),
    "A4": lambda: alternating_group(4),
    "D4": lambda: dihedral_group(4),
    "D5": lambda: dihedral_group(5),
    "D6": lambda: dihedral_group(6),
    "Q8": lambda: dicyclic_group(2),
    "Dic3": lambda: dicyclic_group(3),
    "T1": lambda: truncated_monoid(1),
    "T2": lambda: truncated_monoid(2),
    "T3": lambda: truncated_monoid(3),
    "Z/2": lambda: zmod_ring(2),
    "Z/3": lambda: zmod_ring(3),
    "Z/4": lambda: zmod_ring(4),
    "Z/6": lambda: zmod_ring(6),
    "F4": field_f4,
    "F2[x]/(x^2)": dual_numbers_f2,
    "F2xF2": lambda: product_ring(zmod_ring(2), zmod_ring(2)),
    "0": zero_ring,
}


def named(name: str) -> Structure:
    """Look up a catalog structure by name.

    Raises:
        ValidationError: If the name is not in the catalog
    """
    try:
        return NAMED[name]()
    except KeyError:
        raise ValidationError(f"Unknown structure {name!r}", which="named") from None


def monoid_by_name(name: str) -> MonoidTable:
    structure = named(name)
    if isinstance(structure, GroupTable):
        return MonoidTable(structure.carrier, structure.op, structure.unit, structure.abelian, structure.name)
    if not isinstance(structure, MonoidTable):
        raise ValidationError(f"{name!r} is not a monoid", which="named")
    return structure
