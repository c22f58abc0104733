from dataclasses import replace

import pytest

from normcat.core import (
    NATURALITY_IDENTITIES,
    CheckReport,
    ClassSpec,
    Square,
    check_naturality,
    check_pushout_property,
    check_quillen_conditions,
    check_reflection_property,
    closure_operator_laws,
    check_composition_closure,
    cwf_to_otfs,
    everything,
    check_image_invariance,
    in_left_complement_of_normal_monos,
    induced_closure_morphisms,
    injective,
    is_epi,
    is_mono,
    is_normal_epi,
    is_normal_mono,
    is_orthogonal,
    is_regular_epi,
    isos,
    monos,
    normal_closure,
    normal_closure_via_equalizer,
    normal_decomposition,
    normal_monos,
    normal_system,
    otfs_to_cwf,
    check_pullback_stability,
    regular_image_factorization,
    check_repleteness,
    check_strong_mono_normality,
    subobject_leq,
    surjective,
    trivial_system,
    verify_ofs,
    verify_otfs,
    check_weak_left_cancellation,
)
from normcat.errors import NonCommutingSquare, OverrideMismatch
from normcat.instances.finset import FinSetInstance, FinSetObj
from normcat.instances.instance import Mor


class WrongClosure(FinSetInstance):
    def closure_override(self, f):
        return frozenset(range(self.size(f.cod)))


def carrier(n):
    return FinSetObj(tuple(str(i) for i in range(n)))


@pytest.fixture
def K(nc):
    return nc.sets


@pytest.fixture
def f(K):
    # a, b -> x and c -> y, missing z
    return K.morphism(FinSetObj(("a", "b", "c")), FinSetObj(("x", "y", "z")), [0, 0, 1])


@pytest.fixture
def small_maps(K):
    return K.hom_set(carrier(2), carrier(2)) + K.hom_set(carrier(3), carrier(2))


class TestDecomposition:
    def test_factors(self, K, f):
        d = normal_decomposition(K, f, cross_check=True)
        assert K.is_iso(d.pi)
        assert d.kappa.payload == (0, 0, 1)
        assert d.nu.payload == (0, 1)
        assert K.labels(d.nu.dom) == ("x", "y")
        assert K.mor_eq(K.compose_all(d.nu, d.kappa, d.pi), f)
        assert K.mor_eq(K.compose(d.kappa, d.pi), d.hat)
        assert K.mor_eq(K.compose(d.nu, d.kappa), d.check)

    def test_result_views(self, K, f):
        d = normal_decomposition(K, f)
        assert d.closure.N == d.nu.dom
        assert d.dual_closure.P == d.pi.cod

    def test_empty_domain(self, K):
        f = K.morphism(carrier(0), FinSetObj(("x",)), [])
        closure = normal_closure(K, f, cross_check=True)
        assert K.size(closure.N) == 0
        assert is_normal_mono(K, f)

    def test_equalizer_route_agrees(self, K, f):
        assert K.image(normal_closure_via_equalizer(K, f).nu) == K.image(normal_closure(K, f).nu)

    def test_override_mismatch(self, f):
        K = WrongClosure()
        with pytest.raises(OverrideMismatch, match="closed form gives"):
            normal_closure(K, f, cross_check=True)
        assert K.size(normal_closure(K, f, cross_check=False).N) == 3


class TestMembership:
    def test_set_classes(self, K, f):
        assert not is_normal_mono(K, f)
        assert is_normal_mono(K, normal_closure(K, f).nu)
        assert not is_normal_epi(K, f)
        assert is_normal_epi(K, K.identity(f.dom))

    def test_left_complement(self, K):
        onto = K.morphism(carrier(3), carrier(2), [0, 1, 1])
        assert in_left_complement_of_normal_monos(K, onto)

    def test_monos_and_epis(self, K, f):
        assert not is_mono(K, f)
        assert not is_epi(K, f)
        assert is_mono(K, normal_closure(K, f).nu)
        assert monos(K)(K.identity(f.cod))

    def test_regular_image(self, K, f):
        q, m = regular_image_factorization(K, f)
        assert q.payload == (0, 0, 1)
        assert m.payload == (0, 1)
        assert not is_regular_epi(K, f)
        assert is_regular_epi(K, q)

    def test_subobject_leq(self, K, f):
        nu = normal_closure(K, f).nu
        assert subobject_leq(K, nu, K.identity(f.cod))
        with pytest.raises(ValueError, match="different objects"):
            subobject_leq(K, nu, K.identity(f.dom))

    def test_class_names(self, K):
        assert isos(K).name == "iso"
        assert everything(K).name == "all"
        assert normal_monos(K).name == "normal-mono"
        assert (injective(K) & surjective(K)).name == "injective&surjective"

    def test_class_intersection(self, K, f):
        both = injective(K) & surjective(K)
        assert both(K.identity(f.dom))
        assert not both(f)


class TestSquares:
    def test_identity_square(self, K, f):
        sq = Square.identity(K, f).check(K)
        P_map, N_map = induced_closure_morphisms(K, sq)
        assert K.is_iso(P_map)
        assert K.is_iso(N_map)

    def test_non_commuting(self, K, f):
        swap = K.morphism(f.cod, f.cod, [1, 0, 2])
        with pytest.raises(NonCommutingSquare):
            Square(K.identity(f.dom), f, f, swap).check(K)

    def test_paste(self, K, f):
        sq = Square.identity(K, f)
        pasted = sq.paste(K, sq)
        assert K.mor_eq(pasted.u, K.identity(f.dom))
        with pytest.raises(ValueError, match="not composable"):
            sq.paste(K, Square.identity(K, K.identity(f.dom)))

    def test_naturality(self, K, f):
        swap = K.morphism(f.dom, f.dom, [1, 0, 2])
        report = check_naturality(K, Square(swap, f, f, K.identity(f.cod)))
        assert report.passed
        assert report.checked == len(NATURALITY_IDENTITIES)

    def test_naturality_mutation(self, K, f):
        def constant_kappa(d):
            return replace(d, kappa=Mor(d.kappa.dom, d.kappa.cod, (0,) * len(d.kappa.payload)))

        report = check_naturality(K, Square.identity(K, f), constant_kappa)
        assert not report.passed
        assert report.first_failure == "kappa"


class TestReflection:
    def test_unique_fill_in(self, K, f):
        square = (K.identity(f.cod), f, K.identity(f.cod))
        assert check_reflection_property(K, f, [square])

    def test_non_normal_square(self, K, f):
        bang = K.bang(f.cod)
        with pytest.raises(ValueError, match="is not a normal mono"):
            check_reflection_property(K, f, [(bang, f, bang)])

    def test_non_commuting_square(self, K, f):
        swap = K.morphism(f.cod, f.cod, [1, 0, 2])
        with pytest.raises(NonCommutingSquare):
            check_reflection_property(K, f, [(K.identity(f.cod), f, swap)])

    def test_orthogonality(self, K):
        onto = K.morphism(carrier(3), carrier(2), [0, 1, 1])
        into = K.morphism(carrier(1), carrier(2), [0])
        assert is_orthogonal(K, onto, into)
        assert not is_orthogonal(K, into, into)


class TestFactorizationSystems:
    def test_surjective_injective_system(self, K, small_maps):
        report = verify_ofs(K, surjective(K), injective(K), small_maps, pairs=12)
        assert report.passed
        assert report.checked > len(small_maps)

    def test_normal_system(self, K, small_maps):
        report = verify_otfs(K, normal_system(K), small_maps[:6], pairs=4)
        assert report.passed

    def test_trivial_system(self, K, small_maps):
        system = trivial_system(K, surjective(K), injective(K), lambda g: regular_image_factorization(K, g))
        assert system.Kc.name == "iso"
        assert verify_otfs(K, system, small_maps[:6], pairs=4).passed

    def test_model_triple(self, K):
        onto = K.morphism(carrier(3), carrier(2), [0, 1, 1])
        triple = otfs_to_cwf(K, normal_system(K))
        assert triple.C(onto)
        assert not triple.W(onto)
        assert triple.F(onto)
        (c, fw), (cw, fib) = triple.ofs_pairs()
        assert fw.name == "F&W"
        assert cw.name == "C&W"
        assert cwf_to_otfs(K, triple).Kc.name == "C&F"

    def test_quillen_conditions(self, K):
        n = K.morphism(carrier(1), carrier(2), [0])
        k = K.morphism(carrier(2), carrier(1), [0, 0])
        report = check_quillen_conditions(K, normal_system(K), [n, k])
        assert (report.c1, report.c2, report.c3) == (True, True, False)
        assert set(report.witnesses) == {"c3"}

    def test_repleteness(self, K, small_maps):
        assert check_repleteness(K, surjective(K), small_maps).passed
        with pytest.raises(ValueError, match="Unknown side"):
            check_repleteness(K, surjective(K), small_maps, side="middle")


class TestClassChecks:
    def test_closure_operator_laws(self, K):
        monos_ = [K.subobject(carrier(3), elements) for elements in ([], [0], [0, 1], [1, 2])]
        maps = [K.morphism(carrier(3), carrier(2), [0, 1, 1])]
        report = closure_operator_laws(K, monos_, maps)
        assert report.passed
        assert report.checked > 0

    def test_composition_closure(self, K):
        first = K.morphism(carrier(1), carrier(2), [1])
        second = K.morphism(carrier(2), carrier(3), [2, 0])
        assert check_composition_closure(K, normal_monos(K), [(first, second)]) is None
        collapse = K.morphism(carrier(2), carrier(1), [0, 0])
        with pytest.raises(ValueError, match="not in normal-mono"):
            check_composition_closure(K, normal_monos(K), [(first, collapse)])

    def test_weak_left_cancellation(self, K):
        m = K.morphism(carrier(1), carrier(2), [0])
        n = K.morphism(carrier(2), carrier(3), [0, 2])
        report = check_weak_left_cancellation(K, [(m, n)])
        assert report.passed
        assert report.checked == 1

    def test_pullback_stability(self, K):
        m = K.morphism(carrier(1), carrier(2), [1])
        g = K.morphism(carrier(3), carrier(2), [0, 1, 1])
        assert check_pullback_stability(K, [m], [g]).passed
        with pytest.raises(ValueError, match="is not a normal mono"):
            check_pullback_stability(K, [g], [])

    def test_image_invariance(self, K, f):
        assert check_image_invariance(K, f).passed

    def test_strong_monos_are_normal(self, K):
        m = K.morphism(carrier(1), carrier(2), [0])
        onto = K.morphism(carrier(2), carrier(1), [0, 0])
        assert check_strong_mono_normality(K, [m], [onto]).passed

    def test_pushout_property(self, K):
        f = K.morphism(carrier(1), carrier(2), [0])
        g = K.morphism(carrier(1), carrier(1), [0])
        po = K.pushout(f, g)
        report = check_pushout_property(K, f, g, po.in1, po.in2, [carrier(2)])
        assert report.passed
        assert report.checked > 1

    def test_apex_with_a_spare_point_is_not_a_pushout(self, K):
        f = K.morphism(carrier(1), carrier(2), [0])
        g = K.morphism(carrier(1), carrier(1), [0])
        in1 = K.morphism(carrier(2), carrier(3), [0, 1])
        in2 = K.morphism(carrier(1), carrier(3), [0])
        report = check_pushout_property(K, f, g, in1, in2, [carrier(2)])
        assert report.first_failure == "unique-copair"
        assert all(witness["copairs"] == 2 for _, witness in report.failures)


class TestCheckReport:
    def test_record_and_merge(self):
        report = CheckReport("a")
        assert report.record(True, "one")
        assert not report.record(False, "two", {"x": 1})
        other = CheckReport("b", skipped=2)
        other.record(False, "three")
        report.merge(other)
        assert report.checked == 3
        assert report.skipped == 2
        assert report.first_failure == "two"
        assert [name for name, _ in report.failures] == ["two", "three"]

    def test_class_spec_is_callable(self):
        spec = ClassSpec("odd", lambda n: n % 2 == 1)
        assert spec(3)
        assert not (spec & ClassSpec("big", lambda n: n > 5))(3)
