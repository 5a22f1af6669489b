"""Hypergraph rewriting: uplift, multi-uplift, projection, the combined
uplift-project construction, and the composition-based alternative
uniformization used for comparison runs.

Edge weights double as tensor component values throughout: the uplift
multiplies weights by the combinatorial star factor, projection assigns
participation counts, and the multi-uplift leaves weights untouched
(its combinatorics are accounted for at contraction time).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .errors import DataError
from .hypergraph import AuxSpec, HyperEdge, Hypergraph

__all__ = [
    "BuildCounter",
    "star_factor",
    "uplift",
    "multi_uplift",
    "project",
    "uplift_project",
    "alternative_uniformization",
]


@dataclass
class BuildCounter:
    """Edge-touch operation counters for tensor construction.

    Uplifting a size-s edge to order m costs m-s insertions; projecting a
    size-k edge to order p costs p touches per generated p-subset.
    """

    uplift_ops: int = 0
    project_ops: int = 0


def star_factor(m: int, s: int) -> float:
    """Weight multiplier for a size-s edge padded up to order m."""
    m_star = m - s
    return (m_star * math.factorial(m - m_star)) / math.factorial(m)


def _fresh_label(existing, base: str):
    label = base
    while label in existing:
        label += "'"
    return label


def uplift(h: Hypergraph, m: int, counter: BuildCounter | None = None) -> Hypergraph:
    """Pad every hyperedge below size m with a shared auxiliary node.

    A size-s edge gains the auxiliary node with multiplicity m-s and its
    weight is multiplied by (m-s) * s! / m!; edges already at size m pass
    through. Identity when nothing needs padding (no auxiliary node added).
    """
    if m < h.max_size:
        raise DataError(
            f"cannot uplift below max edge size: m={m} < M={h.max_size}"
        )
    if all(e.size == m for e in h.edges):
        return h
    star = h.n
    star_label = _fresh_label(set(h.labels), "*")
    new_edges = []
    for e in h.edges:
        s = e.size
        if s == m:
            new_edges.append(e)
        else:
            if counter is not None:
                counter.uplift_ops += m - s
            support = e.support + ((star, m - s),)
            new_edges.append(HyperEdge(support, e.weight * star_factor(m, s)))
    aux = AuxSpec(h.aux.nodes + (star,), h.aux.multiplicities + (None,))
    return Hypergraph(h.n + 1, tuple(new_edges), h.labels + (star_label,), aux)


def multi_uplift(
    h: Hypergraph, m: int, p: tuple[int, ...] | list[int],
    counter: BuildCounter | None = None,
) -> Hypergraph:
    """Pad a uniform hypergraph with s distinct auxiliary nodes, the k-th one
    appearing p[k] times in every edge. Weights are left unchanged.
    """
    p = tuple(int(v) for v in p)
    if not h.edges or not h.is_uniform():
        raise DataError("multi_uplift requires a uniform hypergraph with edges")
    big_m = h.max_size
    if m <= big_m:
        raise DataError(f"target order must exceed edge size: m={m}, M={big_m}")
    if any(v < 1 for v in p) or sum(p) != m - big_m:
        raise DataError(f"multiplicities {p} must be positive and sum to {m - big_m}")
    labels = list(h.labels)
    aux_nodes = []
    for k in range(len(p)):
        labels.append(_fresh_label(set(labels), f"*{k + 1}"))
        aux_nodes.append(h.n + k)
    pad = tuple((a, pk) for a, pk in zip(aux_nodes, p))
    new_edges = []
    for e in h.edges:
        if counter is not None:
            counter.uplift_ops += m - big_m
        new_edges.append(HyperEdge(e.support + pad, e.weight))
    aux = AuxSpec(h.aux.nodes + tuple(aux_nodes), h.aux.multiplicities + p)
    return Hypergraph(h.n + len(p), tuple(new_edges), tuple(labels), aux)


def project(h: Hypergraph, p: int, counter: BuildCounter | None = None) -> Hypergraph:
    """Replace every hyperedge larger than p by all of its p-subsets.

    Each distinct p-subset is weighted by the total weight of the larger
    edges containing it, aggregated with the weight of the subset if it was
    already an edge. Edges of size <= p pass through unchanged.
    """
    if p < 2:
        raise DataError(f"projection order must be >= 2, got {p}")
    merged: dict[tuple, float] = {}
    for e in h.edges:
        if e.size <= p:
            merged[e.support] = merged.get(e.support, 0.0) + e.weight
            continue
        if not e.is_simple:
            raise DataError("projection requires simple (set) hyperedges")
        for sub in combinations(e.nodes, p):
            if counter is not None:
                counter.project_ops += p
            support = tuple((v, 1) for v in sub)
            merged[support] = merged.get(support, 0.0) + e.weight
    edges = tuple(HyperEdge(s, w) for s, w in sorted(merged.items()))
    return Hypergraph(h.n, edges, h.labels, h.aux)


def uplift_project(
    h: Hypergraph, p: int, counter: BuildCounter | None = None
) -> Hypergraph:
    """Project edges above p, then uplift the rest: a p-uniform result."""
    if not 2 <= p <= h.max_size:
        raise DataError(f"order p={p} must satisfy 2 <= p <= M={h.max_size}")
    return uplift(project(h, p, counter), p, counter)


@lru_cache(maxsize=None)
def _compositions(total: int, parts: int) -> tuple[tuple[int, ...], ...]:
    """All orderings of positive integers summing to `total` in `parts` slots."""
    out = []
    for cuts in combinations(range(1, total), parts - 1):
        prev = 0
        comp = []
        for c in cuts + (total,):
            comp.append(c - prev)
            prev = c
        out.append(tuple(comp))
    return tuple(out)


@lru_cache(maxsize=None)
def _alpha(m: int, s: int) -> int:
    """Number of index tuples of length m drawn onto s nodes, all present."""
    total = 0
    for comp in _compositions(m, s):
        term = math.factorial(m)
        for k in comp:
            term //= math.factorial(k)
        total += term
    return total


def alternative_uniformization(h: Hypergraph, m: int) -> Hypergraph:
    """Uniformize by index duplication: a size-s edge becomes every multiset
    over its nodes with all multiplicities >= 1 summing to m, each entry
    valued at weight * s / alpha with alpha the total arrangement count.
    """
    if m < h.max_size:
        raise DataError(
            f"cannot uniformize below max edge size: m={m} < M={h.max_size}"
        )
    merged: dict[tuple, float] = {}
    for e in h.edges:
        if not e.is_simple:
            raise DataError("alternative uniformization requires simple hyperedges")
        s = e.size
        value = e.weight * s / _alpha(m, s)
        for comp in _compositions(m, s):
            support = tuple((v, c) for v, c in zip(e.nodes, comp))
            merged[support] = merged.get(support, 0.0) + value
    edges = tuple(HyperEdge(sup, w) for sup, w in sorted(merged.items()))
    return Hypergraph(h.n, edges, h.labels, h.aux)
