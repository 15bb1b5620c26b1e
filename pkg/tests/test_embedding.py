from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from argweave.embedding import (
    HashedEmbedder,
    cosine_similarity,
    hashed_embed,
    load_vectors,
    save_vectors,
)
from argweave.errors import DimensionMismatchError, VectorFormatError


def reference_fnv1a_64(data: bytes) -> int:
    """Independent restatement of the hash for cross-checking."""
    h = 14695981039346656037
    for b in data:
        h = ((h ^ b) * 1099511628211) % (1 << 64)
    return h


class TestHashedEmbed:
    def test_empty_text_zero_vector(self):
        v = hashed_embed("", 256)
        assert v.dtype == np.float32
        assert not v.any()

    def test_token_order_invariant(self):
        a = hashed_embed("climate warming", 256)
        b = hashed_embed("warming climate", 256)
        assert cosine_similarity(a, b) == pytest.approx(1.0, abs=1e-6)
        assert np.array_equal(a, b)

    def test_deterministic(self):
        assert np.array_equal(hashed_embed("warming", 256), hashed_embed("warming", 256))

    def test_single_token_lands_in_hash_bucket(self):
        # derive bucket and sign by hand from the hash definition
        h = reference_fnv1a_64(b"warming")
        bucket = h % 256
        sign = 1.0 if (h >> 63) == 0 else -1.0
        v = hashed_embed("Warming", 256)  # lowercased before hashing
        assert v[bucket] == pytest.approx(sign, abs=1e-6)
        assert np.count_nonzero(v) == 1

    def test_whitespace_and_punctuation_runs(self):
        a = hashed_embed("global   warming", 64)
        b = hashed_embed("global-warming", 64)
        c = hashed_embed("  global\nwarming  ", 64)
        assert np.array_equal(a, b)
        assert np.array_equal(a, c)

    def test_token_multiset_scaling_invariance(self):
        base = hashed_embed("carbon tax policy", 128)
        tripled = hashed_embed("carbon tax policy " * 3, 128)
        assert cosine_similarity(base, tripled) == pytest.approx(1.0, abs=1e-6)

    def test_unit_norm_or_zero(self):
        for text in ("a", "a b c", "many words in this longer text", ""):
            v = hashed_embed(text, 32)
            norm = float(np.linalg.norm(v))
            assert norm == 0.0 or norm == pytest.approx(1.0, abs=1e-5)

    def test_dim_validation(self):
        with pytest.raises(ValueError):
            hashed_embed("x", 0)


class TestCosine:
    def test_identity(self):
        v = hashed_embed("solar grid", 64)
        assert cosine_similarity(v, v) == pytest.approx(1.0, abs=1e-6)

    def test_orthogonal(self):
        a = np.array([1.0, 0.0], dtype=np.float32)
        b = np.array([0.0, 1.0], dtype=np.float32)
        assert cosine_similarity(a, b) == 0.0

    def test_hand_computed(self):
        # 0.6*0.8 + 0.8*0.6 = 0.96 over unit vectors
        a = np.array([0.6, 0.8], dtype=np.float32)
        b = np.array([0.8, 0.6], dtype=np.float32)
        assert cosine_similarity(a, b) == pytest.approx(0.96, abs=1e-6)

    def test_zero_vector_similarity_is_zero(self):
        z = np.zeros(8, dtype=np.float32)
        v = hashed_embed("water", 8)
        assert cosine_similarity(z, v) == 0.0
        assert cosine_similarity(z, z) == 0.0

    def test_dim_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            cosine_similarity(np.zeros(4, np.float32), np.zeros(5, np.float32))

    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=50, deadline=None)
    def test_symmetry_and_bound(self, seed):
        rng = np.random.default_rng(seed)
        a = rng.normal(size=16).astype(np.float32)
        b = rng.normal(size=16).astype(np.float32)
        ab = cosine_similarity(a, b)
        ba = cosine_similarity(b, a)
        assert ab == pytest.approx(ba, abs=1e-6)
        assert abs(ab) <= 1.0 + 1e-6


class TestVectorFile:
    def make_vectors(self, n=5, dim=4, seed=0):
        rng = np.random.default_rng(seed)
        out = {}
        for i in range(n):
            v = rng.normal(size=dim)
            v = (v / np.linalg.norm(v)).astype(np.float32)
            out[f"e{i:03d}"] = v
        return out

    def test_round_trip_bit_exact(self, tmp_path):
        vectors = self.make_vectors()
        path = tmp_path / "v.awev"
        count = save_vectors(path, vectors, 4)
        assert count == 5
        loaded = load_vectors(path, expected_dim=4)
        assert set(loaded) == set(vectors)
        for key in vectors:
            assert loaded[key].tobytes() == vectors[key].tobytes()

    def test_two_vector_file(self, tmp_path):
        vectors = self.make_vectors(n=2)
        path = tmp_path / "v.awev"
        save_vectors(path, vectors, 4)
        assert len(load_vectors(path)) == 2

    def test_dim_mismatch_error(self, tmp_path):
        path = tmp_path / "v.awev"
        save_vectors(path, self.make_vectors(dim=8), 8)
        with pytest.raises(DimensionMismatchError):
            load_vectors(path, expected_dim=256)

    def test_denormalized_vector_renormalized(self, tmp_path):
        # norm-2 vector comes back unit with the same direction: components halved
        raw = np.array([1.2, 1.6, 0.0, 0.0], dtype=np.float32)  # norm 2.0
        path = tmp_path / "v.awev"
        save_vectors(path, {"e1": raw}, 4)
        loaded = load_vectors(path)["e1"]
        assert float(np.linalg.norm(loaded)) == pytest.approx(1.0, abs=1e-5)
        assert loaded[0] == pytest.approx(0.6, abs=1e-6)
        assert loaded[1] == pytest.approx(0.8, abs=1e-6)

    def test_zero_vector_left_alone(self, tmp_path):
        path = tmp_path / "v.awev"
        save_vectors(path, {"e1": np.zeros(4, np.float32)}, 4)
        assert not load_vectors(path)["e1"].any()

    def test_truncated_file(self, tmp_path):
        path = tmp_path / "v.awev"
        save_vectors(path, self.make_vectors(), 4)
        data = path.read_bytes()
        path.write_bytes(data[:-3])
        with pytest.raises(VectorFormatError):
            load_vectors(path)

    def test_unknown_version(self, tmp_path):
        path = tmp_path / "v.awev"
        save_vectors(path, self.make_vectors(), 4)
        data = bytearray(path.read_bytes())
        data[4] = 0x7F
        path.write_bytes(bytes(data))
        with pytest.raises(VectorFormatError):
            load_vectors(path)

    def test_bad_magic(self, tmp_path):
        path = tmp_path / "v.awev"
        path.write_bytes(b"NOPE" + b"\x00" * 16)
        with pytest.raises(VectorFormatError):
            load_vectors(path)

    def test_provider_round_trip(self, tmp_path):
        emb = HashedEmbedder(32)
        vectors = {"a": emb.embed("water rights"), "b": emb.embed("ocean law")}
        path = tmp_path / "v.awev"
        save_vectors(path, vectors, 32)
        loaded = load_vectors(path, expected_dim=32)
        for key in vectors:
            assert loaded[key].tobytes() == vectors[key].tobytes()


class TestVectorFileEdgeCases:
    def test_trailing_bytes_rejected(self, tmp_path):
        emb = HashedEmbedder(8)
        path = tmp_path / "v.awev"
        save_vectors(path, {"a": emb.embed("x")}, 8)
        path.write_bytes(path.read_bytes() + b"\x00")
        with pytest.raises(VectorFormatError, match="trailing"):
            load_vectors(path)

    def test_empty_file_round_trip(self, tmp_path):
        path = tmp_path / "v.awev"
        save_vectors(path, {}, 16)
        assert load_vectors(path, expected_dim=16) == {}
