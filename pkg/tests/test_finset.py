import pytest

from normcat.core import comparisons, is_epi, is_regular_mono, normal_decomposition, normal_dual_closure
from normcat.errors import HomSetTooLarge, ValidationError
from normcat.instances.finset import (
    FinSetInstance,
    FinSetObj,
    FinTopObj,
    PointedObj,
    coslice_set_comparison_test,
    coslice_set_normal_epi_test,
    coslice_set_partition,
    exhaustive_pointed,
    exhaustive_sets,
    exhaustive_spaces,
    pointed_comparison_test,
    pointed_normal_epi_test,
    set_closed_forms,
    sierpinski,
    space_types,
)


@pytest.fixture
def abc():
    return FinSetObj(("a", "b", "c"))


@pytest.fixture
def xyz():
    return FinSetObj(("x", "y", "z"))


class TestFinSet:
    def test_map_by_labels(self, nc, abc, xyz):
        f = nc.sets.map_by_labels(abc, xyz, ["x", "x", "y"])
        assert f.payload == (0, 0, 1)
        g = nc.sets.map_by_labels(abc, xyz, {"a": "z", "b": "y", "c": "x"})
        assert g.payload == (2, 1, 0)

    def test_unknown_label(self, nc, abc, xyz):
        with pytest.raises(ValidationError, match="Unknown codomain label 'w'"):
            nc.sets.map_by_labels(abc, xyz, ["x", "w", "y"])

    def test_compose_all_is_right_to_left(self, nc, abc, xyz):
        f = nc.sets.morphism(abc, xyz, [0, 0, 1])
        g = nc.sets.morphism(xyz, abc, [2, 1, 0])
        assert nc.sets.compose_all(g, f).payload == (2, 2, 1)
        assert nc.sets.compose_all(f, g, f).payload == (1, 1, 0)

    def test_not_composable(self, nc, abc, xyz):
        f = nc.sets.morphism(abc, xyz, [0, 0, 1])
        with pytest.raises(ValueError, match="not composable"):
            nc.sets.compose(f, f)

    def test_sum_object_labels(self, nc):
        S, i1, i2 = nc.sets.sum_object(FinSetObj(("a",)), FinSetObj(("a", "b")))
        assert S.carrier == ("1:a", "2:a", "2:b")
        assert i1.payload == (0,)
        assert i2.payload == (1, 2)

    def test_pushout(self, nc):
        K = nc.sets
        f = K.morphism(FinSetObj(("p",)), FinSetObj(("x", "y")), [0])
        g = K.morphism(FinSetObj(("p",)), FinSetObj(("u",)), [0])
        po = K.pushout(f, g)
        assert K.labels(po.apex) == ("1:x", "1:y")
        assert K.mor_eq(K.compose(po.in1, f), K.compose(po.in2, g))

    def test_pullback_lift(self, nc, abc, xyz):
        K = nc.sets
        f = K.morphism(abc, xyz, [0, 0, 1])
        kp = K.kernel_pair(f)
        assert kp.points == ((0, 0), (0, 1), (1, 0), (1, 1), (2, 2))
        diagonal = kp.lift(K, K.identity(abc), K.identity(abc))
        assert diagonal.payload == (0, 3, 4)

    def test_hom_set(self, nc, abc):
        assert len(nc.sets.hom_set(abc, FinSetObj(("0", "1")))) == 8
        with pytest.raises(HomSetTooLarge) as e:
            FinSetInstance(max_homset=4).hom_set(abc, FinSetObj(("0", "1")))
        assert e.value.candidates == 8
        assert e.value.bound == 4

    def test_closed_forms(self, nc, abc, xyz):
        f = nc.sets.morphism(abc, xyz, [0, 0, 1])
        closure, dual = set_closed_forms(nc.sets, f)
        assert nc.sets.labels(closure.N) == ("x", "y")
        assert closure.hat.payload == (0, 0, 1)
        assert nc.sets.is_iso(dual.pi)

    def test_exhaustive_objects(self):
        assert [len(X.carrier) for X in exhaustive_sets(2)] == [0, 1, 2]
        assert [len(X.carrier) for X in exhaustive_pointed(3)] == [1, 2, 3]


class TestPointed:
    @pytest.fixture
    def A(self):
        return PointedObj(("0", "1", "2"))

    @pytest.fixture
    def B(self):
        return PointedObj(("0", "1"))

    def test_basepoint_preserved(self, nc, B):
        with pytest.raises(ValidationError, match="does not preserve the basepoint"):
            nc.pointed.morphism(B, B, [1, 0])

    def test_normal_epi_collapses_basepoint_fibre(self, nc, A, B):
        K = nc.pointed
        f = K.morphism(A, B, [0, 0, 1])
        dual = normal_dual_closure(K, f, cross_check=True)
        assert dual.pi.payload == (0, 0, 1)
        assert K.is_iso(dual.check)
        assert pointed_normal_epi_test(K, f)
        assert not pointed_comparison_test(K, f)

    def test_comparison_map(self, nc, A, B):
        K = nc.pointed
        g = K.morphism(A, B, [0, 1, 1])
        d = normal_decomposition(K, g, cross_check=True)
        assert K.is_iso(d.pi)
        assert K.is_iso(d.nu)
        assert not K.is_iso(d.kappa)
        assert pointed_comparison_test(K, g)
        assert comparisons(K)(g)

    def test_wedge_sum(self, nc, B):
        S, i1, i2 = nc.pointed.sum_object(B, B)
        assert nc.pointed.size(S) == 3
        assert i1.payload[0] == i2.payload[0] == S.basepoint


class TestCosliceSet:
    def test_partition_collapses_saturated_fibres(self, nc, abc):
        K = nc.sets
        j = K.morphism(FinSetObj(("c",)), abc, [0])
        f = K.morphism(abc, FinSetObj(("x", "y")), [0, 0, 1])
        assert coslice_set_partition(j, f).reps == (0, 0, 2)
        assert coslice_set_normal_epi_test(j, f)
        assert not coslice_set_comparison_test(j, f)

    def test_generic_dual_closure_agrees(self, nc, abc):
        K = nc.sets
        C = FinSetObj(("c",))
        B = FinSetObj(("x", "y"))
        j = K.morphism(C, abc, [0])
        f = K.morphism(abc, B, [0, 0, 1])
        Kc = nc.coslice("set", C)
        fc = Kc.lift(Kc.under(abc, j), Kc.under(B, K.compose(f, j)), f)
        dual = normal_dual_closure(Kc, fc, cross_check=True)
        assert Kc.size(dual.P) == 2
        assert dual.pi.payload == (0, 0, 1)


class TestFinTop:
    def test_topology_counts(self):
        counts = {}
        for space in exhaustive_spaces(3):
            counts[len(space.carrier)] = counts.get(len(space.carrier), 0) + 1
        assert counts == {0: 1, 1: 1, 2: 4, 3: 29}

    def test_homeomorphism_types(self):
        counts = {}
        for space in space_types(4):
            counts[len(space.carrier)] = counts.get(len(space.carrier), 0) + 1
        assert counts == {0: 1, 1: 1, 2: 3, 3: 9, 4: 33}

    def test_types_are_pairwise_non_homeomorphic(self, nc):
        types = space_types(3)
        for i, X in enumerate(types):
            for Y in types[i + 1 :]:
                if len(X.carrier) == len(Y.carrier):
                    assert not any(nc.top.is_iso(h) for h in nc.top.hom_set(X, Y))

    def test_every_space_has_its_type(self, nc):
        types = space_types(3)
        for X in exhaustive_spaces(3):
            assert any(
                nc.top.is_iso(h) for Y in types if len(Y.carrier) == len(X.carrier) for h in nc.top.hom_set(X, Y)
            )

    def test_pointed_types(self):
        pointed = space_types(2, fix_first=True)
        # the Sierpinski space counts twice, pointed at its open or its closed point
        assert [len(X.carrier) for X in pointed] == [1, 2, 2, 2, 2]

    def test_continuity(self, nc):
        S = sierpinski()
        with pytest.raises(ValidationError, match="not continuous"):
            nc.top.morphism(S, FinTopObj.discrete(("o", "c")), [0, 1])
        assert len(nc.top.hom_set(S, S)) == 3

    def test_bijection_onto_sierpinski_is_a_comparison(self, nc):
        K = nc.top
        f = K.morphism(FinTopObj.discrete(("o", "c")), sierpinski(), [0, 1])
        assert not K.is_iso(f)
        d = normal_decomposition(K, f, cross_check=True)
        assert K.is_iso(d.nu)
        assert K.is_iso(d.pi)
        assert d.kappa.payload == (0, 1)
        assert not is_regular_mono(K, f)
        assert is_epi(K, f)

    def test_open_point_is_an_embedding(self, nc):
        K = nc.top
        inclusion = K.subobject(sierpinski(), [0])
        assert K.regular_mono_closed_form(inclusion)
        assert is_regular_mono(K, inclusion, cross_check=True)

    def test_quotient_topology(self, nc):
        K = nc.top
        X = FinTopObj.from_opens(("a", "b", "c"), [0, 0b001, 0b111])
        q = K.generated_quotient(X, [(1, 2)])
        assert K.labels(q.cod) == ("a", "b")
        assert q.cod.neighbourhoods == (0b01, 0b11)
