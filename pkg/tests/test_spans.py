import pytest

from normcat.catalog import cyclic_group, symmetric_group
from normcat.instances.finset import FinSetObj
from normcat.spans import (
    Cospan,
    Span,
    ab_doolittle_closed_forms,
    closure_span_agreement,
    counit_eps,
    dual_closure_cospan_agreement,
    is_doolittle_cospan,
    is_doolittle_span,
    pb_of_cospan,
    po_of_span,
    pullback_idempotent,
    pushout_idempotent,
    triangle_identities,
    unit_eta,
)


def carrier(n):
    return FinSetObj(tuple(str(i) for i in range(n)))


@pytest.fixture
def Z2():
    return cyclic_group(2)


@pytest.fixture
def Z4():
    return cyclic_group(4)


class TestShapes:
    def test_span_legs_share_a_domain(self, nc):
        with pytest.raises(ValueError, match="must share a domain"):
            Span(nc.sets.identity(carrier(1)), nc.sets.identity(carrier(2)))

    def test_cospan_legs_share_a_codomain(self, nc):
        with pytest.raises(ValueError, match="must share a codomain"):
            Cospan(nc.sets.identity(carrier(1)), nc.sets.identity(carrier(2)))

    def test_round_trip_shapes(self, nc):
        K = nc.sets
        s = Span(K.morphism(carrier(1), carrier(2), [0]), K.identity(carrier(1)))
        c = po_of_span(K, s)
        assert K.size(c.apex) == 2
        assert K.size(pb_of_cospan(K, c).apex) == 1
        assert K.is_iso(unit_eta(K, s))


class TestAbelianGroups:
    def test_span_with_common_kernel(self, nc, Z2):
        K = nc.ab
        zero = K.morphism(Z2, Z2, [0, 0])
        s = Span(zero, zero)
        assert not ab_doolittle_closed_forms(K, s)
        assert not is_doolittle_span(K, s)
        assert K.size(unit_eta(K, s).cod) == 1

    def test_span_with_a_mono_leg(self, nc, Z2):
        K = nc.ab
        s = Span(K.identity(Z2), K.morphism(Z2, Z2, [0, 0]))
        assert ab_doolittle_closed_forms(K, s)
        assert is_doolittle_span(K, s)

    def test_cospan_missing_the_apex(self, nc, Z2, Z4):
        K = nc.ab
        p = K.morphism(Z2, Z4, [0, 2])
        c = Cospan(p, p)
        assert not ab_doolittle_closed_forms(K, c)
        assert not is_doolittle_cospan(K, c)
        assert not K.is_iso(counit_eps(K, c))

    def test_cospan_with_an_epi_leg(self, nc, Z2, Z4):
        K = nc.ab
        c = Cospan(K.identity(Z4), K.morphism(Z2, Z4, [0, 2]))
        assert ab_doolittle_closed_forms(K, c)
        assert is_doolittle_cospan(K, c)

    def test_closed_forms_need_abelian_groups(self, nc, Z2):
        s = Span(nc.grp.identity(Z2), nc.grp.identity(Z2))
        with pytest.raises(ValueError, match="not grp"):
            ab_doolittle_closed_forms(nc.grp, s)


class TestAdjunction:
    @pytest.fixture
    def span(self, nc):
        return Span(nc.sets.morphism(carrier(1), carrier(2), [0]), nc.sets.identity(carrier(1)))

    @pytest.fixture
    def cospan(self, nc):
        return Cospan(nc.sets.bang(carrier(2)), nc.sets.identity(carrier(1)))

    def test_triangle_identities(self, nc, span, cospan):
        assert triangle_identities(nc.sets, span, cospan)

    def test_idempotence(self, nc, span, cospan):
        assert pushout_idempotent(nc.sets, span)
        assert pullback_idempotent(nc.sets, cospan)

    def test_closure_agreement(self, nc):
        f = nc.sets.morphism(carrier(3), carrier(3), [0, 0, 1])
        assert closure_span_agreement(nc.sets, f)
        assert dual_closure_cospan_agreement(nc.sets, f)

    def test_closure_agreement_in_groups(self, nc):
        S3 = symmetric_group(3)
        transposition = nc.grp.subobject(S3, [S3.unit, S3.index("(0 1)")])
        assert closure_span_agreement(nc.grp, transposition)
