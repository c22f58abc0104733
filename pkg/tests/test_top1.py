import pytest

from normcat.errors import ValidationError
from normcat.instances.top1 import (
    ClosureSpace,
    closure_space_instance,
    fibre_closure_union,
    fibres,
    top1_coslice_dual_closure,
    top1_coslice_normal_epi_test,
    top1_instance,
    top1_normal_closure,
    top1_slice_comparison_test,
    top1_slice_normal_closure,
    top1_slice_normal_mono_test,
    top1_slice_pushout,
)


@pytest.fixture
def K():
    return top1_instance()


@pytest.fixture
def spaces():
    return closure_space_instance()


@pytest.fixture
def S():
    # o is open, c is closed and lies in the closure of o
    return ClosureSpace(("o", "c"), (0b11, 0b10))


def discrete(n):
    return ClosureSpace.discrete(tuple(str(i) for i in range(n)))


class TestClosureSpace:
    def test_discrete(self):
        X = discrete(2)
        assert X.singletons_closed()
        assert X.closure(0b11) == 0b11
        assert X.t1

    def test_closure(self, S):
        assert S.closure(0b01) == 0b11
        assert S.is_closed(0b10)
        assert not S.is_closed(0b01)
        assert not S.singletons_closed()

    def test_t1_is_required(self, K, S):
        with pytest.raises(ValidationError, match="Space is not T1"):
            K.validate_object(S)

    def test_neighbourhoods(self, spaces, S):
        assert spaces.neighbourhoods(S) == (0b01, 0b11)
        assert spaces.kind == "top1"


class TestClosure:
    def test_fibres(self, K):
        f = K.morphism(discrete(3), discrete(3), [0, 0, 1])
        p = K.morphism(discrete(3), discrete(2), [0, 1, 1])
        assert fibres(f, p) == {0: 0b001, 1: 0b010}
        assert fibre_closure_union(f, p) == 0b011

    def test_normal_closure_is_the_image(self, K):
        f = K.morphism(discrete(2), discrete(3), [0, 1])
        result, collapse = top1_normal_closure(K, f)
        assert K.size(result.N) == 2
        assert K.size(collapse.cod) == 2
        assert K.closure_override(f) == frozenset({0, 1})

    def test_empty_domain(self, K):
        f = K.morphism(discrete(0), discrete(3), [])
        result, inclusion = top1_normal_closure(K, f)
        assert K.size(result.N) == 0
        assert K.size(inclusion.cod) == 4

    def test_closure_of_an_open_point(self, spaces, S):
        point = spaces.morphism(discrete(1), S, [0])
        result, collapse = top1_normal_closure(spaces, point)
        assert spaces.size(result.N) == 2
        assert spaces.size(collapse.cod) == 1
        assert spaces.closure_override(point) == frozenset({0})


class TestSlices:
    @pytest.fixture
    def p(self, K):
        return K.morphism(discrete(3), discrete(2), [0, 1, 1])

    def test_pushout(self, K, p):
        f = K.morphism(discrete(2), discrete(3), [0, 1])
        square = top1_slice_pushout(K, f, p)
        assert square.D == frozenset({0, 1})
        assert square.fibres_ok
        assert K.size(square.i.cod) == 3
        assert set(square.j.payload) == {square.i.payload[0], square.i.payload[1]}

    def test_normal_closure(self, K, p):
        f = K.morphism(discrete(2), discrete(3), [0, 1])
        assert K.size(top1_slice_normal_closure(K, f, p).N) == 2
        assert K.slice_closure_override(f, p) == frozenset({0, 1})
        assert top1_slice_normal_mono_test(K, f, p)

    def test_non_injective_map_is_not_normal(self, K, p):
        f = K.morphism(discrete(3), discrete(3), [0, 0, 1])
        assert not top1_slice_normal_mono_test(K, f, p)
        assert not top1_slice_comparison_test(K, f, p)

    def test_comparison_over_the_point(self, K):
        f = K.morphism(discrete(2), discrete(2), [0, 1])
        assert top1_slice_comparison_test(K, f, K.bang(discrete(2)))

    def test_dense_point_is_a_comparison(self, spaces, S):
        point = spaces.morphism(discrete(1), S, [0])
        bang = spaces.bang(S)
        assert top1_slice_comparison_test(spaces, point, bang)
        assert spaces.size(top1_slice_normal_closure(spaces, point, bang).N) == 2
        assert spaces.slice_closure_override(point, bang) is None


class TestCoslices:
    @pytest.fixture
    def j(self, K):
        return K.morphism(discrete(1), discrete(3), [0])

    def test_dual_closure(self, K, j):
        f = K.morphism(discrete(3), discrete(2), [0, 0, 1])
        dual = top1_coslice_dual_closure(K, j, f)
        assert dual.pi.payload == (0, 0, 1)
        assert dual.P.singletons_closed()

    def test_normal_epi(self, K, j):
        assert top1_coslice_normal_epi_test(K, j, K.morphism(discrete(3), discrete(2), [0, 0, 1]))
        assert not top1_coslice_normal_epi_test(K, j, K.morphism(discrete(3), discrete(2), [0, 1, 1]))
        assert not top1_coslice_normal_epi_test(K, j, K.morphism(discrete(3), discrete(3), [0, 0, 1]))
