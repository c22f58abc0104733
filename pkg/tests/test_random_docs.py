import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from normcat.docs import load_doc, render_doc
from normcat.errors import ValidationError
from normcat.models import InstanceKind
from normcat.random_docs import catalog_pool, random_docs, random_morphism, random_sample


class TestRandomDocs:
    def test_same_seed_same_documents(self, nc):
        first = [render_doc(doc) for doc in random_docs("grp", 7, 3, nc=nc)]
        second = [render_doc(doc) for doc in random_docs("grp", 7, 3, nc=nc)]
        assert first == second
        assert len(first) == 3

    def test_unknown_kind_fails_before_drawing(self, nc):
        with pytest.raises(ValidationError, match="Unknown instance kind 'ring'"):
            random_docs("ring", 0, 0, nc=nc)

    def test_zero_count(self, nc):
        assert list(random_docs("set", 0, 0, nc=nc)) == []

    @pytest.mark.parametrize("kind", [k.value for k in InstanceKind])
    def test_documents_load(self, nc, kind):
        for doc in random_docs(kind, 11, 2, max_carrier=3, max_order=4, nc=nc):
            loaded = load_doc(nc, doc)
            assert set(loaded.morphisms) == {"f"}
            assert doc["morphisms"]["f"]["cod"] in doc["objects"]

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 10_000))
    def test_set_maps_survive_the_document(self, nc, seed):
        (doc,) = random_docs("set", seed, 1, max_carrier=4, nc=nc)
        f = load_doc(nc, doc).morphisms["f"]
        assert nc.sets.describe(f)["map"] == doc["morphisms"]["f"]["map"]


class TestPools:
    def test_catalog_pool_respects_the_order(self):
        assert len(catalog_pool(InstanceKind.GRP, 4)) == 6
        assert all(S.size <= 4 for S in catalog_pool(InstanceKind.AB, 4))

    def test_every_group_up_to_order_twelve(self):
        pool = catalog_pool(InstanceKind.GRP, 12)
        assert len(pool) == 25
        assert [G.size for G in pool] == sorted(G.size for G in pool)
        assert {G.name for G in pool if G.size == 12} == {"A4", "D6", "Dic3", "Z12", "Z2xZ6"}

    def test_empty_pool(self, nc):
        with pytest.raises(ValidationError, match="No grp structures of order at most 0"):
            random_morphism(nc, "grp", random.Random(0), max_order=0)

    def test_pointed_maps_keep_the_basepoint(self, nc):
        for f in random_sample(nc, "pointed-set", 3, 10, max_carrier=3):
            assert f.payload[0] == 0

    def test_sample_is_seeded(self, nc):
        first = [f.payload for f in random_sample(nc, "set", 5, 6)]
        assert first == [f.payload for f in random_sample(nc, "set", 5, 6)]
