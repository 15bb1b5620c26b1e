"""Embedding providers, cosine similarity, and the vector file format.

Vectors are float32 and either unit-norm (within 1e-5) or exactly zero (the
sentinel for empty text). The built-in provider is signed feature hashing
with 64-bit FNV-1a, so every algorithm in the engine runs deterministically
without model inference; real transformer vectors can be dropped in through
the binary vector file instead.

Similarity math deliberately avoids BLAS-backed reductions (matmul/np.dot on
large arrays) so results are reproducible bit-for-bit across runs regardless
of thread scheduling: all reductions go through np.sum's fixed pairwise
scheme.
"""

from __future__ import annotations

import re
import struct
from pathlib import Path
from typing import Mapping, Protocol

import numpy as np

from .errors import DimensionMismatchError, VectorFormatError

VECTOR_MAGIC = b"AWEV"
VECTOR_VERSION = 0x01

DEFAULT_DIM = 256

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_MASK64 = 0xFFFFFFFFFFFFFFFF

_TOKEN_RE = re.compile(r"[0-9a-z]+")


def fnv1a_64(data: bytes) -> int:
    h = _FNV_OFFSET
    for byte in data:
        h ^= byte
        h = (h * _FNV_PRIME) & _MASK64
    return h


def _l2_norm(values: np.ndarray) -> float:
    v = values.astype(np.float64, copy=False)
    return float(np.sqrt(np.sum(v * v)))


def hashed_embed(text: str, dim: int = DEFAULT_DIM) -> np.ndarray:
    """Signed feature hashing of the lowercased alphanumeric tokens of ``text``.

    Each token hashes to a bucket (h mod dim) and a sign (+1 when the top bit
    of h is clear, else -1); the accumulator is L2-normalized. An empty token
    set yields the zero vector.
    """
    if dim <= 0:
        raise ValueError("dim must be positive")
    acc = np.zeros(dim, dtype=np.float64)
    tokens = _TOKEN_RE.findall(text.lower())
    for token in tokens:
        h = fnv1a_64(token.encode("utf-8"))
        sign = 1.0 if (h >> 63) == 0 else -1.0
        acc[h % dim] += sign
    norm = _l2_norm(acc)
    if norm == 0.0:
        return np.zeros(dim, dtype=np.float32)
    return (acc / norm).astype(np.float32)


class EmbeddingProvider(Protocol):
    """Deterministic text-to-vector mapping: same text, bit-identical vector."""

    provider_id: str
    dim: int

    def embed(self, text: str) -> np.ndarray: ...


class HashedEmbedder:
    """The built-in fallback provider. Stateless; safe for concurrent use."""

    def __init__(self, dim: int = DEFAULT_DIM):
        if dim <= 0:
            raise ValueError("dim must be positive")
        self.dim = dim
        self.provider_id = f"hashed-{dim}"

    def embed(self, text: str) -> np.ndarray:
        return hashed_embed(text, self.dim)


def cosine_similarity(a: np.ndarray, b: np.ndarray) -> float:
    """Cosine of two vectors; 0.0 when either is the zero sentinel."""
    if a.shape != b.shape:
        raise DimensionMismatchError(f"vector dims differ: {a.shape} vs {b.shape}")
    a64 = a.astype(np.float64, copy=False)
    b64 = b.astype(np.float64, copy=False)
    na = float(np.sqrt(np.sum(a64 * a64)))
    nb = float(np.sqrt(np.sum(b64 * b64)))
    if na == 0.0 or nb == 0.0:
        return 0.0
    return float(np.sum(a64 * b64) / (na * nb))


def embed_entities(
    entities, provider: EmbeddingProvider
) -> dict[str, np.ndarray]:
    """Embed each entity's text; returns entity_id -> vector."""
    return {e.entity_id: provider.embed(e.text) for e in entities}


def save_vectors(path: str | Path, vectors: Mapping[str, np.ndarray], dim: int) -> int:
    """Write the binary vector file; returns the record count.

    Layout (little-endian): magic "AWEV", version byte, uint32 dim,
    uint64 count, then per record uint16 id length, UTF-8 id, dim float32.
    Insertion order of ``vectors`` is preserved, so writes are deterministic.
    """
    path = Path(path)
    with path.open("wb") as fh:
        fh.write(VECTOR_MAGIC)
        fh.write(struct.pack("<B", VECTOR_VERSION))
        fh.write(struct.pack("<I", dim))
        fh.write(struct.pack("<Q", len(vectors)))
        for entity_id, vec in vectors.items():
            if vec.shape != (dim,):
                raise DimensionMismatchError(
                    f"vector for {entity_id!r} has dim {vec.shape}, expected ({dim},)"
                )
            id_bytes = entity_id.encode("utf-8")
            if len(id_bytes) > 0xFFFF:
                raise VectorFormatError(f"entity id too long: {entity_id[:32]!r}...")
            fh.write(struct.pack("<H", len(id_bytes)))
            fh.write(id_bytes)
            fh.write(np.ascontiguousarray(vec, dtype="<f4").tobytes())
    return len(vectors)


def _read_exact(fh, n: int, what: str) -> bytes:
    data = fh.read(n)
    if len(data) != n:
        raise VectorFormatError(f"truncated vector file while reading {what}")
    return data


def load_vectors(path: str | Path, expected_dim: int | None = None) -> dict[str, np.ndarray]:
    """Load a binary vector file, renormalizing any vector whose norm drifted.

    Vectors already unit within 1e-6 are returned untouched so that
    save/load round-trips are bit-exact; zero vectors stay zero.
    """
    path = Path(path)
    with path.open("rb") as fh:
        magic = _read_exact(fh, 4, "magic")
        if magic != VECTOR_MAGIC:
            raise VectorFormatError(f"bad magic {magic!r}, expected {VECTOR_MAGIC!r}")
        (version,) = struct.unpack("<B", _read_exact(fh, 1, "version"))
        if version != VECTOR_VERSION:
            raise VectorFormatError(f"unknown version byte 0x{version:02x}")
        (dim,) = struct.unpack("<I", _read_exact(fh, 4, "dim"))
        if expected_dim is not None and dim != expected_dim:
            raise DimensionMismatchError(
                f"vector file declares dim {dim}, expected {expected_dim}"
            )
        (count,) = struct.unpack("<Q", _read_exact(fh, 8, "count"))
        vectors: dict[str, np.ndarray] = {}
        for i in range(count):
            (id_len,) = struct.unpack("<H", _read_exact(fh, 2, f"record {i} id length"))
            entity_id = _read_exact(fh, id_len, f"record {i} id").decode("utf-8")
            raw = _read_exact(fh, 4 * dim, f"record {i} vector")
            vec = np.frombuffer(raw, dtype="<f4").astype(np.float32)
            norm = _l2_norm(vec)
            if norm != 0.0 and abs(norm - 1.0) > 1e-6:
                vec = (vec.astype(np.float64) / norm).astype(np.float32)
            vectors[entity_id] = vec
        trailing = fh.read(1)
        if trailing:
            raise VectorFormatError("trailing bytes after final record")
    return vectors
