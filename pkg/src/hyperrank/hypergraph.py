"""Hypergraph data model: multiset hyperedges, connectivity, order slicing,
summary statistics, and the ingestion preprocessing pipeline.

Nodes are dense internal indices 0..n-1; every hypergraph carries a label
tuple mapping indices back to the caller's node names. All values are
immutable after construction and safe to share across threads.
"""

from __future__ import annotations

import warnings
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Mapping, Optional, Sequence

from .errors import DataError

Support = tuple[tuple[int, int], ...]


def _label_sort_key(label):
    # stable ordering for mixed label types: group by type name, then value
    try:
        hash(label)
    except TypeError:
        raise DataError(f"node labels must be hashable, got {label!r}")
    return (type(label).__name__, str(label))


def sort_labels(labels: Iterable[Hashable]) -> list:
    """Sort labels naturally when comparable, otherwise by (type, repr)."""
    labels = list(labels)
    try:
        return sorted(labels)
    except TypeError:
        return sorted(labels, key=_label_sort_key)


@dataclass(frozen=True)
class HyperEdge:
    """A weighted multiset of node indices.

    `support` is a canonical sorted tuple of (node, multiplicity) pairs with
    total multiplicity >= 2. Multiplicities above 1 only arise for auxiliary
    nodes introduced by uplifting; plain input edges are simple sets.
    """

    support: Support
    weight: float = 1.0

    def __post_init__(self):
        sup = tuple(sorted((int(v), int(c)) for v, c in self.support))
        object.__setattr__(self, "support", sup)
        if any(c < 1 for _, c in sup):
            raise DataError(f"multiplicities must be positive: {sup}")
        if len({v for v, _ in sup}) != len(sup):
            raise DataError(f"duplicate nodes in support: {sup}")
        if self.size < 2:
            raise DataError(f"hyperedge must have total size >= 2: {sup}")
        if not self.weight > 0:
            raise DataError(f"edge weight must be positive, got {self.weight}")

    @staticmethod
    def from_nodes(nodes: Iterable[int], weight: float = 1.0) -> "HyperEdge":
        """Build a simple (multiplicity-1) edge from distinct node indices."""
        return HyperEdge(tuple((v, 1) for v in nodes), weight)

    @staticmethod
    def from_multiset(mults: Mapping[int, int], weight: float = 1.0) -> "HyperEdge":
        return HyperEdge(tuple(mults.items()), weight)

    @property
    def size(self) -> int:
        return sum(c for _, c in self.support)

    @property
    def nodes(self) -> tuple[int, ...]:
        """Distinct node indices, ascending."""
        return tuple(v for v, _ in self.support)

    def multiplicity(self, node: int) -> int:
        for v, c in self.support:
            if v == node:
                return c
        return 0

    def expanded(self) -> tuple[int, ...]:
        """Node indices with repetition, ascending."""
        out = []
        for v, c in self.support:
            out.extend([v] * c)
        return tuple(out)

    @property
    def is_simple(self) -> bool:
        return all(c == 1 for _, c in self.support)


@dataclass(frozen=True)
class AuxSpec:
    """Bookkeeping for auxiliary nodes introduced by uplifting.

    `multiplicities[k]` is the per-edge multiplicity of `nodes[k]` when it is
    the same in every edge (multi-uplift), and None when it varies by edge
    (plain uplift, where short edges absorb the slack).
    """

    nodes: tuple[int, ...] = ()
    multiplicities: tuple[Optional[int], ...] = ()

    def __post_init__(self):
        if len(self.nodes) != len(self.multiplicities):
            raise DataError("aux nodes and multiplicities must align")

    def __bool__(self) -> bool:
        return bool(self.nodes)


@dataclass(frozen=True)
class Hypergraph:
    """Immutable hypergraph on dense indices 0..n-1 with weighted edges."""

    n: int
    edges: tuple[HyperEdge, ...]
    labels: tuple = ()
    aux: AuxSpec = field(default_factory=AuxSpec)

    def __post_init__(self):
        if self.n < 0:
            raise DataError("node count must be nonnegative")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(range(self.n)))
        if len(self.labels) != self.n:
            raise DataError("labels must have length n")
        if len(set(self.labels)) != self.n:
            raise DataError("labels must be distinct")
        object.__setattr__(self, "edges", tuple(self.edges))
        for e in self.edges:
            if e.support and e.support[-1][0] >= self.n:
                raise DataError(f"edge references node >= n: {e.support}")
        for a in self.aux.nodes:
            if a >= self.n:
                raise DataError("aux node out of range")

    @cached_property
    def max_size(self) -> int:
        """Largest hyperedge size M (0 for an edgeless hypergraph)."""
        return max((e.size for e in self.edges), default=0)

    @cached_property
    def label_to_index(self) -> dict:
        return {lab: i for i, lab in enumerate(self.labels)}

    @property
    def aux_set(self) -> frozenset:
        return frozenset(self.aux.nodes)

    def is_uniform(self) -> bool:
        sizes = {e.size for e in self.edges}
        return len(sizes) == 1

    def edge_sizes(self) -> Counter:
        return Counter(e.size for e in self.edges)

    @staticmethod
    def from_edge_list(
        edge_lists: Iterable[Sequence[Hashable]],
        weights: Optional[Sequence[float]] = None,
        nodes: Iterable[Hashable] = (),
        keep_multiplicities: bool = False,
    ) -> "Hypergraph":
        """Build a hypergraph from edges given as sequences of node labels.

        Repeated labels inside one edge are collapsed to a set with a warning
        unless `keep_multiplicities` is set. Duplicate edges are merged by
        summing weights. `nodes` adds isolated nodes to the universe.
        """
        edge_lists = [list(e) for e in edge_lists]
        if weights is None:
            weights = [1.0] * len(edge_lists)
        universe = set(nodes)
        for e in edge_lists:
            universe.update(e)
        labels = tuple(sort_labels(universe))
        index = {lab: i for i, lab in enumerate(labels)}

        merged: dict[Support, float] = {}
        for e, w in zip(edge_lists, weights):
            counts = Counter(index[v] for v in e)
            if not keep_multiplicities:
                if any(c > 1 for c in counts.values()):
                    warnings.warn(
                        f"collapsing repeated nodes within edge {e!r} to a set",
                        stacklevel=2,
                    )
                counts = Counter(dict.fromkeys(counts, 1))
            support = tuple(sorted(counts.items()))
            merged[support] = merged.get(support, 0.0) + float(w)

        edges = tuple(HyperEdge(s, w) for s, w in sorted(merged.items()))
        return Hypergraph(len(labels), edges, labels)

    def induced(self, keep: Sequence[int], edges: Iterable[HyperEdge]) -> "Hypergraph":
        """Sub-hypergraph on the index subset `keep`, re-densified; labels kept."""
        keep = sorted(keep)
        remap = {old: new for new, old in enumerate(keep)}
        new_edges = tuple(
            HyperEdge(tuple((remap[v], c) for v, c in e.support), e.weight)
            for e in edges
        )
        keep_set = set(keep)
        aux_pairs = [
            (remap[a], m)
            for a, m in zip(self.aux.nodes, self.aux.multiplicities)
            if a in keep_set
        ]
        aux = AuxSpec(tuple(a for a, _ in aux_pairs), tuple(m for _, m in aux_pairs))
        return Hypergraph(len(keep), new_edges, tuple(self.labels[i] for i in keep), aux)


class _UnionFind:
    """Union-find with path compression and union by size."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, v: int) -> int:
        root = v
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[v] != root:
            self.parent[v], v = root, self.parent[v]
        return root

    def union(self, a: int, b: int):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]


def connected_components(h: Hypergraph) -> list[list[int]]:
    """Partition of node indices induced by shared hyperedge membership.

    Two nodes are connected when some chain of hyperedges joins them; isolated
    nodes form singleton components. Components are sorted largest first,
    ties broken by the smallest minimum node label.
    """
    uf = _UnionFind(h.n)
    for e in h.edges:
        first = e.support[0][0]
        for v, _ in e.support[1:]:
            uf.union(first, v)
    groups: dict[int, list[int]] = {}
    for v in range(h.n):
        groups.setdefault(uf.find(v), []).append(v)
    comps = sorted(
        groups.values(),
        key=lambda c: (-len(c), min(_label_sort_key(h.labels[v]) for v in c)),
    )
    return comps


def is_strongly_connected(h: Hypergraph) -> bool:
    if h.n == 0:
        return False
    comps = connected_components(h)
    return len(comps) == 1


def largest_connected_component(h: Hypergraph) -> Hypergraph:
    """Sub-hypergraph induced by the largest component (labels preserved)."""
    if h.n == 0:
        return h
    comp = set(connected_components(h)[0])
    kept_edges = [e for e in h.edges if all(v in comp for v in e.nodes)]
    return h.induced(sorted(comp), kept_edges)


def order_slice(h: Hypergraph, m: int) -> Hypergraph:
    """Keep only hyperedges of size m and the nodes incident to them.

    Returns an empty hypergraph when no edge has size m.
    """
    if m < 2:
        raise DataError(f"order must be >= 2, got {m}")
    kept = [e for e in h.edges if e.size == m]
    incident: set[int] = set()
    for e in kept:
        incident.update(e.nodes)
    return h.induced(sorted(incident), kept)


@dataclass(frozen=True)
class OrderStats:
    nodes: int
    edges: int
    lcc_fraction: float


@dataclass(frozen=True)
class HypergraphStats:
    """Node/edge counts, edge-size histogram, and LCC fractions per order."""

    nodes: int
    edges: int
    size_histogram: dict[int, int]
    per_order: dict[int, OrderStats]
    lcc_fraction: float

    def as_dict(self) -> dict:
        return {
            "nodes": self.nodes,
            "edges": self.edges,
            "size_histogram": dict(self.size_histogram),
            "per_order": {
                m: {"nodes": s.nodes, "edges": s.edges, "lcc_fraction": s.lcc_fraction}
                for m, s in self.per_order.items()
            },
            "lcc_fraction": self.lcc_fraction,
        }


def _lcc_fraction(h: Hypergraph) -> float:
    if h.n == 0:
        return 0.0
    return len(connected_components(h)[0]) / h.n


def stats(h: Hypergraph) -> HypergraphStats:
    """Summary statistics: counts, size histogram, per-order LCC fractions."""
    hist = dict(sorted(h.edge_sizes().items()))
    per_order = {}
    for m in hist:
        sl = order_slice(h, m)
        per_order[m] = OrderStats(sl.n, len(sl.edges), _lcc_fraction(sl))
    return HypergraphStats(h.n, len(h.edges), hist, per_order, _lcc_fraction(h))


@dataclass(frozen=True)
class PreprocessReport:
    """Counts from the ingestion pipeline, for run manifests."""

    raw_simplices: int
    simplices_with_repeats: int
    dropped_small: int
    merged_duplicates: int
    raw_node_ids: int
    dropped_isolated: int
    final_nodes: int
    final_edges: int

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def build_preprocessed(
    simplices: Iterable[Sequence[Hashable]],
    keep_multiplicities: bool = False,
) -> tuple[Hypergraph, PreprocessReport]:
    """Standard cleanup: collapse within-simplex repeats (unless asked to keep
    them), drop simplices smaller than 2, merge duplicate edges by summing
    weights, and drop nodes left incident to no edge.
    """
    raw = [list(s) for s in simplices]
    seen_ids: set = set()
    for s in raw:
        seen_ids.update(s)

    with_repeats = 0
    dropped_small = 0
    merged: dict[tuple, float] = {}
    kept = 0
    for s in raw:
        counts = Counter(s)
        if any(c > 1 for c in counts.values()):
            with_repeats += 1
            if not keep_multiplicities:
                counts = Counter(dict.fromkeys(counts, 1))
        if sum(counts.values()) < 2:
            dropped_small += 1
            continue
        kept += 1
        key = tuple(sorted(((_label_sort_key(v), v, c) for v, c in counts.items())))
        merged[key] = merged.get(key, 0.0) + 1.0

    labels_set = set()
    for key in merged:
        labels_set.update(v for _, v, _ in key)
    labels = tuple(sort_labels(labels_set))
    index = {lab: i for i, lab in enumerate(labels)}
    edges = tuple(
        HyperEdge(tuple(sorted((index[v], c) for _, v, c in key)), w)
        for key, w in sorted(merged.items())
    )
    h = Hypergraph(len(labels), edges, labels)
    report = PreprocessReport(
        raw_simplices=len(raw),
        simplices_with_repeats=with_repeats,
        dropped_small=dropped_small,
        merged_duplicates=kept - len(edges),
        raw_node_ids=len(seen_ids),
        dropped_isolated=len(seen_ids) - len(labels),
        final_nodes=h.n,
        final_edges=len(h.edges),
    )
    return h, report
