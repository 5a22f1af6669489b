"""Implicit symmetric nonnegative tensors built from uniform weighted
hypergraphs: contraction (tensor apply), flattening matrix, and a dense
materialization oracle for verification.

A tensor is stored as one (support multiset, value) entry per distinct
hyperedge; the represented array has that value at every index tuple whose
multiset of indices equals the support. Nothing is densified in production
paths; `dense_oracle` exists for cross-checking on small instances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Union

import numpy as np

from .errors import DataError
from .hypergraph import Hypergraph, Support

NORMS = ("l1", "l2", "max", "none")

_MAX_ORDER = 20  # factorial-based arrangement counts; no real dataset gets close


def _norm_value(values: np.ndarray, norm: str) -> float:
    if norm == "l1":
        return float(np.abs(values).sum())
    if norm == "l2":
        return float(np.sqrt((values * values).sum()))
    if norm == "max":
        return float(np.abs(values).max()) if values.size else 0.0
    return 1.0


@dataclass(frozen=True, eq=False)
class ScoreVector:
    """A real vector tagged with the normalization it satisfies."""

    values: np.ndarray
    normalization: str = "none"

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float).copy()
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)
        if self.normalization not in NORMS:
            raise DataError(f"unknown normalization {self.normalization!r}")
        if self.normalization != "none":
            actual = _norm_value(vals, self.normalization)
            if abs(actual - 1.0) > 1e-12:
                raise DataError(
                    f"vector does not satisfy {self.normalization} norm: {actual}"
                )

    @staticmethod
    def normalized(values: Iterable[float], norm: str = "l1") -> "ScoreVector":
        vals = np.asarray(list(values) if not isinstance(values, np.ndarray) else values,
                          dtype=float)
        scale = _norm_value(vals, norm)
        if norm != "none":
            if scale == 0:
                raise DataError("cannot normalize the zero vector")
            vals = vals / scale
        return ScoreVector(vals, norm)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]


ArrayLike = Union[np.ndarray, ScoreVector, Iterable[float]]


def _as_array(x: ArrayLike, n: int) -> np.ndarray:
    if isinstance(x, ScoreVector):
        x = x.values
    arr = np.asarray(x, dtype=float)
    if arr.shape != (n,):
        raise DataError(f"vector has shape {arr.shape}, expected ({n},)")
    return arr


@dataclass(frozen=True, eq=False)
class UniformTensor:
    """Order-m symmetric tensor stored as (support, value) entries."""

    order: int
    dim: int
    entries: tuple[tuple[Support, float], ...]

    def __post_init__(self):
        if self.order < 2:
            raise DataError("tensor order must be >= 2")
        if self.order > _MAX_ORDER:
            raise DataError(f"tensor order {self.order} exceeds supported {_MAX_ORDER}")
        seen = set()
        for support, value in self.entries:
            if sum(c for _, c in support) != self.order:
                raise DataError(f"support {support} does not sum to order {self.order}")
            if any(v < 0 or v >= self.dim for v, _ in support):
                raise DataError(f"support {support} out of range for dim {self.dim}")
            if support in seen:
                raise DataError(f"duplicate support {support}")
            if not value > 0:
                raise DataError(f"entry value must be positive, got {value}")
            seen.add(support)

    @cached_property
    def _apply_arrays(self):
        """Flattened (lead index, coefficient, remaining indices) rows.

        Row for entry e and node i carries value(e) * N(e, i) with N the
        count of arrangements of the other m-1 indices, and the m-1 remaining
        indices (with repetition) whose x-components get multiplied.
        """
        m = self.order
        fact = math.factorial
        lead, coef, rest = [], [], []
        for support, value in self.entries:
            for node, mult in support:
                c = fact(m - 1) // fact(mult - 1)
                row = [node] * (mult - 1)
                for other, omult in support:
                    if other != node:
                        c //= fact(omult)
                        row.extend([other] * omult)
                lead.append(node)
                coef.append(value * c)
                rest.append(row)
        if not lead:
            return (np.zeros(0, dtype=np.int64), np.zeros(0),
                    np.zeros((0, m - 1), dtype=np.int64))
        return (np.asarray(lead, dtype=np.int64), np.asarray(coef, dtype=float),
                np.asarray(rest, dtype=np.int64))


def from_hypergraph(h: Hypergraph) -> UniformTensor:
    """Adjacency tensor of a uniform weighted hypergraph.

    Auxiliary nodes are ordinary indices; duplicate supports (if any) merge
    additively.
    """
    if not h.edges:
        raise DataError("cannot build a tensor from an edgeless hypergraph")
    if not h.is_uniform():
        raise DataError(
            f"hypergraph is not uniform (sizes {sorted(h.edge_sizes())}); "
            "uniformize it first"
        )
    merged: dict[Support, float] = {}
    for e in h.edges:
        merged[e.support] = merged.get(e.support, 0.0) + e.weight
    entries = tuple(sorted(merged.items()))
    return UniformTensor(h.max_size, h.n, entries)


def apply(t: UniformTensor, x: ArrayLike) -> np.ndarray:
    """Contract the tensor with m-1 copies of x.

    Returns y with y_i = sum over index tuples starting at i of the tensor
    component times the product of the x components at the remaining indices.
    Accepts signed input; equals the dense contraction exactly up to float
    rounding of an entry-ordered reduction (deterministic).
    """
    vec = _as_array(x, t.dim)
    lead, coef, rest = t._apply_arrays
    if lead.size == 0:
        return np.zeros(t.dim)
    terms = coef * np.prod(vec[rest], axis=1)
    return np.bincount(lead, weights=terms, minlength=t.dim)[: t.dim]


def flattening_matrix(t: UniformTensor) -> np.ndarray:
    """Pairwise flattening: M[i, j] sums all components with first index i and
    second index j. Cells are accumulated with an exactly rounded summation,
    so the result is independent of entry order.
    """
    m = t.order
    fact = math.factorial
    cells: dict[tuple[int, int], list[float]] = {}
    for support, value in t.entries:
        for i, mi in support:
            for j, mj in support:
                need = 2 if i == j else 1
                if (mi if i == j else mj) < need:
                    continue
                count = fact(m - 2)
                for v, c in support:
                    rem = c - (1 if v == i else 0) - (1 if v == j else 0)
                    count //= fact(rem)
                cells.setdefault((i, j), []).append(value * count)
    out = np.zeros((t.dim, t.dim))
    for (i, j), vals in cells.items():
        out[i, j] = math.fsum(vals)
    return out


def _multiset_permutations(items: tuple[int, ...]):
    """Yield all distinct orderings of a sorted tuple with repetitions."""
    if not items:
        yield ()
        return
    prev = None
    for k, v in enumerate(items):
        if v == prev:
            continue
        prev = v
        for tail in _multiset_permutations(items[:k] + items[k + 1:]):
            yield (v,) + tail


def dense_oracle(t: UniformTensor) -> np.ndarray:
    """Materialize the full m-way array (verification only; size-guarded)."""
    if t.dim ** t.order > 10**7:
        raise DataError(
            f"dense tensor would hold {t.dim ** t.order} components (> 1e7)"
        )
    out = np.zeros((t.dim,) * t.order)
    for support, value in t.entries:
        expanded = []
        for v, c in support:
            expanded.extend([v] * c)
        for tup in _multiset_permutations(tuple(expanded)):
            out[tup] = value
    return out
