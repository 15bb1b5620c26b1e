"""Nearest-neighbor retrieval over entity embeddings.

Two modes share one query contract:

* EXACT scans every stored vector and is always available; results are
  totally ordered by (descending similarity, ascending entity id).
* APPROXIMATE is a navigable small-world graph (greedy beam search over a
  proximity graph). It trades exactness for speed under a recall contract:
  top-10 overlap with EXACT of at least 0.9 on random unit vectors.

EXACT similarity math uses np.sum-based reductions only, keeping results
bit-stable across runs (no BLAS thread nondeterminism).
"""

from __future__ import annotations

import heapq
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatchError, IndexBuildError

MAX_CONNECTIONS = 16
BUILD_BEAM = 200
QUERY_BEAM = 64

# Reverse edges may accumulate past MAX_CONNECTIONS; prune at double.
_MAX_DEGREE = MAX_CONNECTIONS * 2


class IndexMode(Enum):
    EXACT = "exact"
    APPROXIMATE = "approximate"


class VectorIndex:
    """Immutable after build; safe for concurrent queries."""

    def __init__(self, ids: list[str], matrix: np.ndarray, mode: IndexMode):
        self.ids = ids
        self.matrix = matrix  # (n, dim) float32
        self.mode = mode
        self.dim = int(matrix.shape[1])
        self.size = len(ids)
        m64 = matrix.astype(np.float64)
        self._norms = np.sqrt(np.sum(m64 * m64, axis=1))
        self._neighbors: list[list[int]] = []
        self._entry = 0
        if mode is IndexMode.APPROXIMATE and self.size > 0:
            self._build_nsw()

    # -- construction ------------------------------------------------------

    def _sims_for(self, indices: Sequence[int], q64: np.ndarray, q_norm: float) -> np.ndarray:
        rows = self.matrix[list(indices)].astype(np.float64)
        dots = np.sum(rows * q64, axis=1)
        denom = self._norms[list(indices)] * q_norm
        out = np.zeros(len(indices), dtype=np.float64)
        nz = denom != 0.0
        out[nz] = dots[nz] / denom[nz]
        return out

    def _all_sims(self, q: np.ndarray) -> np.ndarray:
        q64 = q.astype(np.float64)
        q_norm = float(np.sqrt(np.sum(q64 * q64)))
        if q_norm == 0.0 or self.size == 0:
            return np.zeros(self.size, dtype=np.float64)
        dots = np.sum(self.matrix.astype(np.float64) * q64, axis=1)
        out = np.zeros(self.size, dtype=np.float64)
        nz = self._norms != 0.0
        out[nz] = dots[nz] / (self._norms[nz] * q_norm)
        return out

    def _build_nsw(self) -> None:
        self._neighbors = [[] for _ in range(self.size)]
        self._entry = 0
        m64 = self.matrix.astype(np.float64)
        for i in range(1, self.size):
            q64 = m64[i]
            q_norm = float(self._norms[i])
            if q_norm == 0.0:
                # Zero vectors are unreachable by similarity; park them on the
                # entry point so the graph stays connected.
                self._connect(i, [self._entry])
                continue
            found = self._beam_search_impl(q64, q_norm, BUILD_BEAM, self._entry)
            found.sort(key=lambda t: (-t[0], self.ids[t[1]]))
            self._connect(i, [idx for _, idx in found[:MAX_CONNECTIONS]])

    def _beam_search_impl(self, q64, q_norm, ef, entry) -> list[tuple[float, int]]:
        """Greedy beam search over the NSW graph; returns (sim, idx) pairs.

        candidates is a max-heap by similarity (negated), results a bounded
        min-heap of the best ef seen so far.
        """
        entry_sim = float(self._sims_for([entry], q64, q_norm)[0])
        visited = {entry}
        candidates = [(-entry_sim, entry)]
        results = [(entry_sim, entry)]
        while candidates:
            neg_sim, node = heapq.heappop(candidates)
            if len(results) >= ef and -neg_sim < results[0][0]:
                break
            fresh = [n for n in self._neighbors[node] if n not in visited]
            if not fresh:
                continue
            visited.update(fresh)
            sims = self._sims_for(fresh, q64, q_norm)
            for idx, sim in zip(fresh, sims):
                sim = float(sim)
                if len(results) < ef or sim > results[0][0]:
                    heapq.heappush(candidates, (-sim, idx))
                    heapq.heappush(results, (sim, idx))
                    if len(results) > ef:
                        heapq.heappop(results)
        return results

    def _connect(self, node: int, targets: list[int]) -> None:
        for t in targets:
            if t == node or t in self._neighbors[node]:
                continue
            self._neighbors[node].append(t)
            self._neighbors[t].append(node)
            if len(self._neighbors[t]) > _MAX_DEGREE:
                self._prune(t)

    def _prune(self, node: int) -> None:
        v64 = self.matrix[node].astype(np.float64)
        v_norm = float(self._norms[node])
        nbrs = self._neighbors[node]
        sims = self._sims_for(nbrs, v64, v_norm) if v_norm != 0.0 else np.zeros(len(nbrs))
        ranked = sorted(zip(nbrs, sims), key=lambda t: (-t[1], self.ids[t[0]]))
        keep = [idx for idx, _ in ranked[:_MAX_DEGREE]]
        dropped = set(nbrs) - set(keep)
        self._neighbors[node] = keep
        for d in dropped:
            if node in self._neighbors[d]:
                self._neighbors[d].remove(node)

    # -- queries -----------------------------------------------------------

    def query_topk(
        self, q: np.ndarray, k: int, exclude: str | None = None
    ) -> list[tuple[str, float]]:
        """Top-k by (descending similarity, ascending entity id)."""
        if k < 0:
            raise ValueError("k must be >= 0")
        if k == 0 or self.size == 0:
            return []
        if q.shape != (self.dim,):
            raise DimensionMismatchError(f"query dim {q.shape} != index dim ({self.dim},)")
        if self.mode is IndexMode.EXACT:
            sims = self._all_sims(q)
            order = np.lexsort((np.asarray(self.ids), -sims))
            out: list[tuple[str, float]] = []
            for idx in order:
                entity_id = self.ids[idx]
                if entity_id == exclude:
                    continue
                out.append((entity_id, float(sims[idx])))
                if len(out) == k:
                    break
            return out
        q64 = q.astype(np.float64)
        q_norm = float(np.sqrt(np.sum(q64 * q64)))
        if q_norm == 0.0:
            # Zero query: similarity 0 to everything; fall back to id order.
            ranked_ids = sorted(i for i in self.ids if i != exclude)
            return [(i, 0.0) for i in ranked_ids[:k]]
        ef = max(QUERY_BEAM, k + 1)
        found = self._beam_search_impl(q64, q_norm, ef, self._entry)
        found.sort(key=lambda t: (-t[0], self.ids[t[1]]))
        out = []
        for sim, idx in found:
            entity_id = self.ids[idx]
            if entity_id == exclude:
                continue
            out.append((entity_id, float(sim)))
            if len(out) == k:
                break
        return out


def build_index(
    entities: Iterable[tuple[str, np.ndarray]], mode: IndexMode = IndexMode.EXACT
) -> VectorIndex:
    """Build an index over (entity_id, vector) pairs.

    All vectors must share one dimension and ids must be unique; an empty
    input produces an empty index whose every query returns [].
    """
    ids: list[str] = []
    vectors: list[np.ndarray] = []
    seen: set[str] = set()
    dim: int | None = None
    for entity_id, vec in entities:
        if entity_id in seen:
            raise IndexBuildError(f"duplicate entity id {entity_id!r}")
        seen.add(entity_id)
        if dim is None:
            dim = int(vec.shape[0])
        elif vec.shape != (dim,):
            raise IndexBuildError(
                f"mixed dims: {entity_id!r} has {vec.shape}, expected ({dim},)"
            )
        ids.append(entity_id)
        vectors.append(np.asarray(vec, dtype=np.float32))
    if dim is None:
        matrix = np.zeros((0, 1), dtype=np.float32)
    else:
        matrix = np.stack(vectors).astype(np.float32) if vectors else np.zeros((0, dim), np.float32)
    return VectorIndex(ids, matrix, mode)
