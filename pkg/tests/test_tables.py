from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from normcat.catalog import named, symmetric_group
from normcat.errors import HomSetTooLarge, ValidationError
from normcat.tables import (
    CongruencePartition,
    GroupTable,
    MonoidTable,
    UnionFind,
    congruence_closure,
    cyclic_group,
    direct_product,
    enumerate_homomorphisms,
    equivalence_closure,
    generate,
    homomorphism_violation,
    quotient_structure,
    substructure,
    truncated_monoid,
)
from normcat.validations import bit_members, to_bits


def pairs_on(n):
    return st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=6)


class TestUnionFind:
    def test_roots_are_least_index(self):
        uf = UnionFind(5)
        uf.union(4, 2)
        uf.union(2, 3)
        assert uf.representatives() == (0, 1, 2, 2, 2)

    def test_union_reports_merges(self):
        uf = UnionFind(3)
        assert uf.union(0, 1) is True
        assert uf.union(1, 0) is False

    @given(pairs_on(7))
    def test_equivalence_closure_joins_pairs(self, pairs):
        partition = equivalence_closure(7, pairs)
        assert all(partition.same(a, b) for a, b in pairs)
        assert all(partition.reps[r] == r for r in partition.reps)
        assert all(r <= x for x, r in enumerate(partition.reps))


class TestCongruencePartition:
    def test_kernel_of(self):
        partition = CongruencePartition.kernel_of([1, 0, 1, 2])
        assert partition.reps == (0, 1, 0, 3)
        assert partition.classes() == [(0, 2), (1,), (3,)]
        assert partition.representatives() == (0, 1, 3)

    def test_discrete(self):
        assert CongruencePartition.discrete(3).is_discrete()
        assert not CongruencePartition.kernel_of([0, 0]).is_discrete()

    def test_compatibility(self):
        z4 = cyclic_group(4)
        assert CongruencePartition((0, 1, 0, 1)).is_compatible(z4)
        assert not CongruencePartition((0, 1, 1, 3)).is_compatible(z4)


class TestCongruenceClosure:
    def test_cyclic_example(self):
        assert congruence_closure(cyclic_group(4), [(0, 2)]).classes() == [(0, 2), (1, 3)]

    def test_group_congruence_is_normal_subgroup_cosets(self):
        S3 = symmetric_group(3)
        # a 3-cycle generates A3, so the quotient has two classes
        three_cycle = next(x for x in range(S3.size) if S3.op[x][x] != S3.unit and S3.op[S3.op[x][x]][x] == S3.unit)
        assert len(congruence_closure(S3, [(S3.unit, three_cycle)]).classes()) == 2

    def test_transposition_collapses_s3(self):
        S3 = symmetric_group(3)
        assert len(congruence_closure(S3, [(S3.unit, S3.index("(0 1)"))]).classes()) == 1

    @settings(max_examples=50)
    @given(pairs_on(6))
    def test_closure_is_compatible_and_contains_pairs(self, pairs):
        z6 = cyclic_group(6)
        partition = congruence_closure(z6, pairs)
        assert partition.is_compatible(z6)
        assert all(partition.same(a, b) for a, b in pairs)
        assert partition == congruence_closure(z6, pairs + [(a, a) for a in range(6)])

    @settings(max_examples=30)
    @given(pairs_on(4))
    def test_truncated_monoid_closure_is_compatible(self, pairs):
        T3 = truncated_monoid(3)
        assert congruence_closure(T3, pairs).is_compatible(T3)


class TestConstructions:
    def test_generate_subgroup(self):
        z6 = cyclic_group(6)
        assert bit_members(generate(z6, [2])) == (0, 2, 4)
        assert generate(z6, []) == 1

    def test_substructure(self):
        sub = substructure(cyclic_group(6), [0, 3])
        assert sub.carrier == ("0", "3")
        assert sub.op == ((0, 1), (1, 0))

    def test_substructure_not_closed(self):
        with pytest.raises(ValidationError, match="not closed"):
            substructure(cyclic_group(6), [0, 1])

    def test_direct_product(self):
        V = direct_product(cyclic_group(2), cyclic_group(2))
        assert V.size == 4
        assert V.carrier[3] == "(1,1)"
        assert all(V.op[x][x] == V.unit for x in range(4))

    def test_quotient(self):
        Q, projection = quotient_structure(cyclic_group(4), CongruencePartition((0, 1, 0, 1)))
        assert Q.carrier == ("0", "1")
        assert projection == (0, 1, 0, 1)
        assert Q == cyclic_group(2)

    def test_truncated_monoid(self):
        T2 = truncated_monoid(2)
        assert T2.op[1][1] == 2
        assert T2.op[2][1] == 2

    def test_truncated_submonoid_must_close(self):
        with pytest.raises(ValidationError, match="not closed"):
            truncated_monoid(3, [0, 1])


class TestHomomorphisms:
    @pytest.mark.parametrize("m,n", [(2, 4), (4, 6), (3, 5), (6, 6)])
    def test_cyclic_hom_count(self, m, n):
        assert len(enumerate_homomorphisms(cyclic_group(m), cyclic_group(n), 10_000)) == gcd(m, n)

    def test_klein_to_z2(self):
        assert len(enumerate_homomorphisms(named("V4"), cyclic_group(2), 10_000)) == 4

    def test_z4_to_s3(self):
        assert len(enumerate_homomorphisms(cyclic_group(4), symmetric_group(3), 10_000)) == 4

    def test_bound(self):
        with pytest.raises(HomSetTooLarge) as excinfo:
            enumerate_homomorphisms(named("V4"), cyclic_group(8), 3)
        assert excinfo.value.bound == 3

    def test_violation_names_operation(self):
        z2, z3 = cyclic_group(2), cyclic_group(3)
        assert homomorphism_violation(z3, z2, (0, 1, 1)) is not None
        assert homomorphism_violation(z2, z2, (0, 1)) is None


class TestValidatedTables:
    def test_rejects_non_associative(self):
        # unit 0 with 1*1 = 2 and 2*2 = 1, 1*2 = 1 breaks associativity
        op = ((0, 1, 2), (1, 2, 1), (2, 1, 1))
        with pytest.raises(ValidationError, match="not associative"):
            MonoidTable(("e", "a", "b"), op, 0)

    def test_rejects_bad_inverse(self):
        op = ((0, 1), (1, 0))
        with pytest.raises(ValidationError, match="Inverse law fails"):
            GroupTable(("e", "a"), op, 0, (0, 0), True)

    def test_bits(self):
        assert to_bits([0, 2]) == 5
        assert bit_members(5) == (0, 2)
