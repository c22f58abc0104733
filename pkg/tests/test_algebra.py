import pytest

from normcat.catalog import cyclic_group, dihedral_group, dual_numbers_f2, monoid_by_name, named, symmetric_group, zmod_ring
from normcat.core import comparisons, is_epi, is_normal_epi, is_normal_mono, is_regular_mono, normal_decomposition
from normcat.errors import InitialNotRepresentable, PushoutNotRepresentable, ValidationError
from normcat.instances.algebra import (
    Subgroup,
    all_subgroups,
    cmon_closure_subset,
    cmon_dual_partition,
    cmon_normal_epi_test,
    cmon_normal_mono_test,
    cmon_symmetrization,
    cring_kernel_partition,
    grp_normal_hull,
    grp_pushout_along_regular_epi,
    grp_slice_closure_bits,
    grp_slice_decomposition,
    grp_slice_normal_mono_test,
    grp_slice_square,
    hom_enumerate,
    hull_partition,
    kernel,
    ralg_coslice_decomposition,
    subgroup,
)
from normcat.tables import truncated_monoid
from normcat.validations import to_bits


@pytest.fixture(scope="module")
def S3():
    return symmetric_group(3)


@pytest.fixture
def sign(nc, S3):
    return next(p for p in nc.grp.hom_set(S3, cyclic_group(2)) if nc.grp.is_surjective(p))


@pytest.fixture
def transposition(nc, S3):
    # Inclusion of {e, (0 1)} into S3
    return nc.grp.subobject(S3, [S3.unit, S3.index("(0 1)")])


class TestSubgroups:
    def test_labels(self, S3):
        assert S3.carrier == ("e", "(0 1)", "(0 2)", "(1 2)", "(0 1 2)", "(0 2 1)")

    def test_normal_hull(self, S3):
        assert grp_normal_hull([S3.index("(0 1)")], S3).order == 6
        rotations = grp_normal_hull([S3.index("(0 1 2)")], S3)
        assert rotations.order == 3
        assert rotations.is_normal()

    def test_subgroup(self, S3):
        H = subgroup(S3, [S3.index("(0 1)")])
        assert H.labels() == ["e", "(0 1)"]
        assert not H.is_normal()
        assert H <= grp_normal_hull(H.members(), S3)
        assert S3.index("(0 2)") not in H

    def test_subgroup_validation(self, S3):
        with pytest.raises(ValidationError, match="must contain the unit"):
            Subgroup(S3, 0b10)
        with pytest.raises(ValidationError, match="not closed under the group operations"):
            Subgroup(S3, to_bits([0, 1, 2]))

    def test_lattices(self, S3):
        subgroups = all_subgroups(S3)
        assert len(subgroups) == 6
        assert sum(1 for H in subgroups if H.is_normal()) == 3
        assert len(all_subgroups(dihedral_group(4))) == 10

    @pytest.mark.parametrize(
        "name, count",
        [("Z2xZ2xZ2", 16), ("Z3xZ3", 6), ("A4", 10), ("Q8", 6), ("Dic3", 8), ("D6", 16), ("S4", 30)],
    )
    def test_larger_lattices(self, name, count):
        subgroups = all_subgroups(named(name))
        assert len(subgroups) == count
        assert subgroups[-1].order == named(name).size

    def test_hull_partition(self, S3):
        A3 = grp_normal_hull([S3.index("(0 1 2)")], S3)
        assert hull_partition(A3).reps == (0, 1, 1, 1, 0, 0)

    def test_sign_kernel(self, nc, S3, sign):
        assert len(nc.grp.hom_set(S3, cyclic_group(2))) == 2
        assert kernel(sign).order == 3


class TestGroups:
    def test_transposition_is_a_comparison_over_the_point(self, nc, S3):
        K = nc.grp
        f = K.morphism(cyclic_group(2), S3, [0, S3.index("(0 1)")])
        d = normal_decomposition(K, f, cross_check=True)
        assert K.is_iso(d.nu)
        assert K.is_iso(d.pi)
        assert not K.is_iso(d.kappa)
        assert not is_normal_mono(K, f)
        assert comparisons(K)(f)

    def test_rotations_are_normal(self, nc, S3):
        K = nc.grp
        g = K.morphism(cyclic_group(3), S3, [0, S3.index("(0 1 2)"), S3.index("(0 2 1)")])
        assert is_normal_mono(K, g)

    def test_pushout_needs_a_surjective_leg(self, nc):
        Z1 = cyclic_group(1)
        f = nc.grp.morphism(Z1, cyclic_group(2), [0])
        g = nc.grp.morphism(Z1, cyclic_group(3), [0])
        with pytest.raises(PushoutNotRepresentable, match="needs a surjective leg"):
            nc.grp.pushout(f, g)
        assert nc.ab.size(nc.ab.pushout(f, g).apex) == 6

    def test_pushout_along_regular_epi(self, nc, S3, sign):
        K = nc.grp
        po = grp_pushout_along_regular_epi(K, sign, K.identity(S3))
        assert K.size(po.apex) == 2
        assert K.mor_eq(K.compose(po.in1, K.identity(S3)), K.compose(po.in2, sign))

    def test_pushout_along_non_surjection(self, nc, S3, transposition):
        with pytest.raises(ValueError, match="q must be surjective"):
            grp_pushout_along_regular_epi(nc.grp, transposition, nc.grp.identity(transposition.dom))

    def test_hom_enumerate(self, nc):
        assert len(hom_enumerate(nc.ab, cyclic_group(2), cyclic_group(4))) == 2
        assert len(hom_enumerate(nc.ab, named("V4"), cyclic_group(2))) == 4


class TestGroupSlices:
    def test_closure_over_the_sign(self, nc, S3, sign, transposition):
        assert grp_slice_closure_bits(transposition, sign) == 0b11
        assert grp_slice_normal_mono_test(nc.grp, transposition, sign)

    def test_closure_over_the_point_is_the_hull(self, nc, S3, transposition):
        point = nc.grp.bang(S3)
        assert grp_slice_closure_bits(transposition, point) == 0b111111
        assert not grp_slice_normal_mono_test(nc.grp, transposition, point)

    def test_decomposition(self, nc, sign, transposition):
        K = nc.grp
        pi, kappa, nu = grp_slice_decomposition(K, transposition, sign)
        assert nu.payload == (0, 1)
        assert K.is_iso(pi)
        assert K.is_iso(kappa)

    def test_square(self, nc, S3, sign, transposition):
        square = grp_slice_square(nc.grp, transposition, sign)
        assert square.E.order == 1
        assert nc.grp.size(square.pushout.apex) == 6
        assert square.k_injective
        assert square.product == 0b11

        collapsed = grp_slice_square(nc.grp, transposition, nc.grp.bang(S3))
        assert collapsed.hull.order == 6
        assert nc.grp.size(collapsed.pushout.apex) == 1
        assert collapsed.preimage == 0b111111

    def test_square_needs_an_inclusion(self, nc, sign):
        with pytest.raises(ValueError, match="subgroup inclusion"):
            grp_slice_square(nc.grp, sign, nc.grp.bang(sign.cod))


class TestCommutativeMonoids:
    @pytest.fixture
    def T2(self):
        return truncated_monoid(2)

    def test_non_cancellative_inclusion(self, nc, T2):
        K = nc.cmon
        f = K.morphism(truncated_monoid(2, [0, 2]), T2, [0, 2])
        assert cmon_closure_subset(f) == frozenset({0, 1, 2})
        assert not cmon_normal_mono_test(K, f)
        assert not is_normal_mono(K, f)

    def test_unit_inclusion_is_normal(self, nc, T2):
        f = nc.cmon.cobang(T2)
        assert cmon_closure_subset(f) == frozenset({0})
        assert is_normal_mono(nc.cmon, f)

    def test_collapse_is_a_normal_epi(self, nc, T2):
        f = nc.cmon.bang(T2)
        assert cmon_dual_partition(f).reps == (0, 0, 0)
        assert cmon_normal_epi_test(nc.cmon, f)
        assert is_normal_epi(nc.cmon, f)

    def test_truncation_is_not_a_normal_epi(self, nc, T2):
        f = nc.cmon.morphism(T2, truncated_monoid(1), [0, 1, 1])
        assert cmon_dual_partition(f).is_discrete()
        assert not cmon_normal_epi_test(nc.cmon, f)
        assert not is_normal_epi(nc.cmon, f)

    def test_symmetrization(self, nc, T2):
        Z2 = monoid_by_name("Z2")
        assert cmon_symmetrization(nc.cmon.identity(Z2)) == frozenset({0, 1})
        assert cmon_symmetrization(nc.cmon.identity(T2)) is None


class TestRings:
    def test_no_initial_ring(self, nc):
        with pytest.raises(InitialNotRepresentable):
            nc.cring.initial_object()

    def test_reduction_mod_two(self, nc):
        (f,) = nc.cring.hom_set(zmod_ring(4), zmod_ring(2))
        assert f.payload == (0, 1, 0, 1)
        assert cring_kernel_partition(f).classes() == [(0, 2), (1, 3)]
        assert is_normal_epi(nc.cring, f)

    def test_diagonal_is_a_comparison(self, nc):
        K = nc.cring
        diagonal = K.morphism(zmod_ring(2), named("F2xF2"), [0, 3])
        d = normal_decomposition(K, diagonal, cross_check=True)
        assert K.is_iso(d.pi)
        assert K.is_iso(d.nu)
        assert not K.is_iso(d.kappa)
        assert comparisons(K)(diagonal)

    def test_epi_tests_need_a_surjection(self, nc):
        K = nc.cring
        diagonal = K.morphism(zmod_ring(2), named("F2xF2"), [0, 3])
        with pytest.raises(PushoutNotRepresentable, match="needs a surjective leg"):
            is_epi(K, diagonal)
        with pytest.raises(PushoutNotRepresentable, match="needs a surjective leg"):
            is_regular_mono(K, diagonal)
        (onto,) = K.hom_set(zmod_ring(4), zmod_ring(2))
        assert is_epi(K, onto)
        assert not is_regular_mono(K, onto)

    def test_algebra_decomposition_matches_ring_decomposition(self, nc):
        K = nc.cring
        A = dual_numbers_f2()
        j = K.morphism(zmod_ring(2), A, [0, 1])
        f = K.morphism(A, zmod_ring(2), [0, 1, 0, 1])
        d = ralg_coslice_decomposition(K, j, f)
        assert d.pi.payload == (0, 1, 0, 1)
        assert K.size(d.nu.dom.base) == 2
