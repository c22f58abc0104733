import pytest

from normcat.errors import ValidationError
from normcat.instances.finset import FinTopObj, PointedObj
from normcat.instances.top1 import ClosureSpace
from normcat.tables import GroupTable, MonoidTable
from normcat.validations import (
    bit_members,
    to_bits,
    validate_carrier,
    validate_element_map,
    validate_neighbourhoods,
    validate_opens,
    validate_point_closure,
)

# Unit adjoined to the left-zero semigroup on {a, b}
LEFT_ZERO = ((0, 1, 2), (1, 1, 1), (2, 2, 2))


class TestCarrier:
    def test_duplicate_label(self):
        with pytest.raises(ValidationError, match="Duplicate label 'a'") as e:
            validate_carrier(["a", "b", "a"])
        assert e.value.which == "carrier[2]"

    def test_empty_carrier(self):
        validate_carrier([])
        with pytest.raises(ValidationError, match="must not be empty"):
            validate_carrier([], allow_empty=False)

    def test_non_string_label(self):
        with pytest.raises(ValidationError, match="must be strings"):
            validate_carrier(["a", 1])

    def test_pointed_set_needs_a_point(self):
        with pytest.raises(ValidationError, match="must not be empty"):
            PointedObj(())
        with pytest.raises(ValidationError, match="Constant outside carrier"):
            PointedObj(("a",), 1)


class TestElementMap:
    def test_wrong_length(self):
        with pytest.raises(ValidationError, match="Map lists 1 images for a domain of 2 elements"):
            validate_element_map([0], 2, 2)

    def test_image_outside_codomain(self):
        with pytest.raises(ValidationError, match=r"Image 3 outside codomain \(map\[1\]\)"):
            validate_element_map([0, 3], 2, 2)


class TestTables:
    def test_unit_law(self):
        with pytest.raises(ValidationError, match="Unit law fails"):
            MonoidTable(("a", "b"), ((0, 0), (0, 0)), 0)

    def test_commutativity_is_checked_only_when_asserted(self):
        with pytest.raises(ValidationError, match="not commutative"):
            MonoidTable(("e", "a", "b"), LEFT_ZERO, 0)
        monoid = MonoidTable(("e", "a", "b"), LEFT_ZERO, 0, commutative=False)
        assert monoid.size == 3

    def test_associativity(self):
        # Commutative with a unit, but (r r) p != r (r p)
        op = ((0, 1, 2, 3), (1, 1, 3, 1), (2, 3, 2, 2), (3, 1, 2, 3))
        with pytest.raises(ValidationError, match="not associative"):
            MonoidTable(("e", "r", "p", "s"), op, 0)

    def test_inverse_law(self):
        with pytest.raises(ValidationError, match="Inverse law fails"):
            GroupTable(("0", "1"), ((0, 1), (1, 0)), 0, (0, 0), True)

    def test_table_shape(self):
        with pytest.raises(ValidationError, match="Table must be 2x2"):
            MonoidTable(("a", "b"), ((0, 1),), 0)


class TestSpaces:
    def test_point_outside_neighbourhood(self):
        with pytest.raises(ValidationError, match="Point outside its neighbourhood"):
            validate_neighbourhoods(("a", "b"), (0b10, 0b10))

    def test_neighbourhoods_transitive(self):
        with pytest.raises(ValidationError, match="not transitive"):
            FinTopObj(("a", "b", "c"), (0b011, 0b110, 0b100))

    def test_opens_need_union(self):
        with pytest.raises(ValidationError, match="not closed under union"):
            validate_opens(("a", "b", "c"), [0, 0b111, 0b001, 0b010])

    def test_opens_need_empty_and_full(self):
        with pytest.raises(ValidationError, match="empty set and the carrier"):
            validate_opens(("a", "b"), [0b11])

    def test_from_opens_matches_neighbourhoods(self):
        space = FinTopObj.from_opens(("a", "b"), [0, 0b01, 0b11])
        assert space.neighbourhoods == (0b01, 0b11)
        assert space.opens == frozenset({0, 0b01, 0b11})
        assert space.closure(0b01) == 0b11
        assert space.closure(0b10) == 0b10

    def test_t1_flag_forces_discrete(self):
        validate_point_closure(("a", "b"), (0b11, 0b10), t1=False)
        with pytest.raises(ValidationError, match="Singleton is not closed"):
            validate_point_closure(("a", "b"), (0b11, 0b10), t1=True)

    def test_closure_must_be_idempotent(self):
        with pytest.raises(ValidationError, match="not idempotent"):
            ClosureSpace(("a", "b", "c"), (0b011, 0b110, 0b100))


class TestBits:
    def test_bit_members(self):
        assert bit_members(0b1011) == (0, 1, 3)
        assert bit_members(0) == ()

    def test_to_bits(self):
        assert to_bits([0, 3]) == 9
        assert to_bits(bit_members(0b10110)) == 0b10110
