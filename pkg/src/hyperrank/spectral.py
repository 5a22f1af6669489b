"""Eigenvector solvers and verifiers: pairwise eigenvector centrality, the
shifted tensor power method for Perron H-eigenpairs, the uplift/projection
centrality pipelines, closed-form Z-eigenpairs for hypergraphs recognizable
as uplifts of pairwise graphs, and residual checks.

Two solver conventions are exposed for the uniformized pipelines. The default
solves the order-m H-eigenproblem of the constructed tensor directly. With
``aux_gauge=True`` the tensor is uplifted one more order and the solve runs
there, with the extra auxiliary component acting as the scale gauge; this is
equivalent to the fixed point of ``lambda * c^[m] = T c^(m-1)`` and produces
flatter score distributions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

import numpy as np

from .errors import ConvergenceError, DataError
from .hypergraph import (
    AuxSpec,
    Hypergraph,
    _UnionFind,
    is_strongly_connected,
)
from .tensor import ScoreVector, UniformTensor, _as_array, apply, from_hypergraph
from .uniformize import alternative_uniformization, project, uplift, uplift_project

__all__ = [
    "SolverOptions",
    "CentralityResult",
    "ZEigenpair",
    "EigenpairCheck",
    "eigenvector_centrality",
    "h_eigen_power",
    "hec",
    "uhec",
    "uphec",
    "alt_centrality",
    "detect_uplift_structure",
    "z_via_uplift",
    "verify_h_eigenpair",
    "verify_z_eigenpair",
]

_DISCONNECTED_MSG = (
    "input is not strongly connected; extract the largest connected component "
    "first (largest_connected_component / --lcc)"
)


@dataclass(frozen=True)
class SolverOptions:
    """Power-method settings.

    A positive diagonal shift keeps the iteration from oscillating on
    non-primitive tensors. The start vector must be strictly positive; when
    absent it defaults to uniform, or to a seeded random draw when `seed` is
    set (useful for restart-agreement checks).
    """

    tol: float = 1e-10
    max_iter: int = 100_000
    shift: float = 1.0
    start: Optional[np.ndarray] = None
    seed: Optional[int] = None


@dataclass(frozen=True, eq=False)
class CentralityResult:
    """Perron-like centrality scores over the real (non-auxiliary) nodes."""

    method: str
    labels: tuple
    scores: ScoreVector
    eigenvalue: float
    residual: float
    iterations: int
    converged: bool
    aux_scores: dict = field(default_factory=dict)

    def as_mapping(self) -> dict:
        return {lab: float(s) for lab, s in zip(self.labels, self.scores.values)}


@dataclass(frozen=True, eq=False)
class ZEigenpair:
    """A Z-eigenpair over all nodes (auxiliaries included), unit in `norm`."""

    labels: tuple
    eigenvector: ScoreVector
    eigenvalue: float
    norm: str
    omega: int
    aux: AuxSpec
    base_eigenvalue: float


@dataclass(frozen=True)
class EigenpairCheck:
    residual: float
    norm_violation: float
    passed: bool


def _require_connected(h: Hypergraph):
    if not is_strongly_connected(h):
        raise DataError(_DISCONNECTED_MSG)


def _require_weakly_irreducible(t: UniformTensor):
    """Weak irreducibility equals connectivity of the co-occurrence graph."""
    uf = _UnionFind(t.dim)
    for support, _ in t.entries:
        first = support[0][0]
        for v, _ in support[1:]:
            uf.union(first, v)
    roots = {uf.find(v) for v in range(t.dim)}
    if len(roots) != 1:
        raise DataError(_DISCONNECTED_MSG)


# ──────────────────────────────────────────────────────────────────────
#  Power method
# ──────────────────────────────────────────────────────────────────────

def h_eigen_power(
    t: UniformTensor,
    options: Optional[SolverOptions] = None,
    labels: Optional[tuple] = None,
    aux_indices: tuple[int, ...] = (),
    method: str = "HEC",
) -> CentralityResult:
    """Perron H-eigenpair of a nonnegative weakly irreducible tensor.

    Shifted power iteration: y = T x^(m-1) + shift * x^[m-1], then
    x <- y^[1/(m-1)] renormalized to unit l1 norm. The eigenvalue estimate is
    bracketed by min/max of y_i / x_i^(m-1) - shift and iteration stops when
    the bracket's relative width falls below `tol`. Exceeding `max_iter`
    returns the best iterate flagged as non-converged.
    """
    opts = options or SolverOptions()
    _require_weakly_irreducible(t)
    m, n = t.order, t.dim
    if opts.start is None:
        if opts.seed is not None:
            x = np.random.default_rng(opts.seed).uniform(0.5, 1.5, size=n)
            x /= x.sum()
        else:
            x = np.full(n, 1.0 / n)
    else:
        x = np.asarray(opts.start, dtype=float)
        if x.shape != (n,) or not (x > 0).all():
            raise DataError("start vector must be strictly positive of length n")
        x = x / x.sum()
    rho = float(opts.shift)
    if rho < 0:
        raise DataError("shift must be nonnegative")
    e = m - 1
    converged = False
    iterations = 0
    lam_lo = lam_hi = 0.0
    for iterations in range(1, opts.max_iter + 1):
        xe = x**e
        y = apply(t, x) + rho * xe
        if rho == 0.0 and not (y > 0).all():
            raise ConvergenceError(
                "iteration produced a zero component; use a positive shift"
            )
        ratios = y / xe - rho
        lam_lo, lam_hi = float(ratios.min()), float(ratios.max())
        if lam_hi - lam_lo <= opts.tol * lam_hi:
            converged = True
            break
        x = y ** (1.0 / e)
        x /= x.sum()
    eigenvalue = 0.5 * (lam_lo + lam_hi)
    residual = float(
        np.max(np.abs(apply(t, x) - eigenvalue * x**e)) / max(abs(eigenvalue), 1e-300)
    )

    if labels is None:
        labels = tuple(range(n))
    aux_set = set(aux_indices)
    real = [i for i in range(n) if i not in aux_set]
    scores = ScoreVector.normalized(x[real], "l1")
    aux_scores = {labels[i]: float(x[i]) for i in sorted(aux_set)}
    return CentralityResult(
        method=method,
        labels=tuple(labels[i] for i in real),
        scores=scores,
        eigenvalue=eigenvalue,
        residual=residual,
        iterations=iterations,
        converged=converged,
        aux_scores=aux_scores,
    )


def eigenvector_centrality(
    t: UniformTensor,
    options: Optional[SolverOptions] = None,
    labels: Optional[tuple] = None,
) -> CentralityResult:
    """Perron eigenvector of an order-2 tensor (a weighted adjacency matrix),
    l1-normalized, by the shifted power method."""
    if t.order != 2:
        raise DataError(f"eigenvector centrality needs an order-2 tensor, got {t.order}")
    return h_eigen_power(t, options, labels, method="EC")


# ──────────────────────────────────────────────────────────────────────
#  Uniformization pipelines
# ──────────────────────────────────────────────────────────────────────

def _solve_uniformized(
    g: Hypergraph, method: str, options: Optional[SolverOptions]
) -> CentralityResult:
    t = from_hypergraph(g)
    return h_eigen_power(t, options, labels=g.labels, aux_indices=g.aux.nodes,
                         method=method)


def hec(
    h: Hypergraph,
    options: Optional[SolverOptions] = None,
    aux_gauge: bool = False,
) -> CentralityResult:
    """H-eigenvector centrality of a uniform hypergraph."""
    if not h.edges:
        raise DataError("hypergraph has no edges")
    if not h.is_uniform():
        raise DataError("hec requires a uniform hypergraph; see uhec/uphec")
    _require_connected(h)
    g = uplift(h, h.max_size + 1) if aux_gauge else h
    return _solve_uniformized(g, f"HEC({h.max_size})", options)


def uhec(
    h: Hypergraph,
    m: int,
    options: Optional[SolverOptions] = None,
    aux_gauge: bool = False,
) -> CentralityResult:
    """Uplift to order m, then solve for the Perron H-eigenvector.

    Scores cover the non-auxiliary nodes, renormalized to unit l1 norm;
    auxiliary components are reported separately at their raw solver values.
    """
    _require_connected(h)
    g = uplift(h, m)
    if aux_gauge:
        g = uplift(g, m + 1)
    return _solve_uniformized(g, f"UHEC({m})", options)


def uphec(
    h: Hypergraph,
    p: int,
    options: Optional[SolverOptions] = None,
    aux_gauge: bool = False,
) -> CentralityResult:
    """Project edges above order p, uplift the rest, and solve at order p."""
    _require_connected(h)
    g = uplift_project(h, p)
    if aux_gauge:
        g = uplift(g, p + 1)
    return _solve_uniformized(g, f"UPHEC({p})", options)


def alt_centrality(
    h: Hypergraph,
    m: int,
    options: Optional[SolverOptions] = None,
    aux_gauge: bool = False,
) -> CentralityResult:
    """Centrality from the composition-based uniformization at order m.

    Edges above m are first projected down (the composition construction only
    reaches upward), then every edge is expanded over its index multisets.
    """
    _require_connected(h)
    g = alternative_uniformization(project(h, m), m)
    if aux_gauge:
        g = uplift(g, m + 1)
    return _solve_uniformized(g, f"ALT({m})", options)


# ──────────────────────────────────────────────────────────────────────
#  Z-eigenpairs via uplift structure
# ──────────────────────────────────────────────────────────────────────

def detect_uplift_structure(h: Hypergraph) -> Optional[AuxSpec]:
    """Find auxiliary nodes exposing the hypergraph as a padded pairwise graph.

    Looks for a node subset present in every hyperedge with edge-independent
    multiplicities summing to (order - 2) whose removal leaves simple pairs.
    Candidate subsets are tried preferring the highest node indices, so
    freshly appended auxiliaries win when several decompositions exist.
    """
    if not h.edges or not h.is_uniform():
        return None
    m = h.max_size
    slack = m - 2
    if slack < 1:
        return None

    common: dict[int, int] = {}
    for v, c in h.edges[0].support:
        if all(e.multiplicity(v) == c for e in h.edges[1:]):
            common[v] = c
    for e in h.edges:
        for v, c in e.support:
            if c >= 2 and common.get(v) != c:
                return None  # a repeated node that cannot be removed

    mandatory = [v for v, c in common.items() if c >= 2]
    base = sum(common[v] for v in mandatory)
    if base > slack:
        return None
    unit = sorted((v for v, c in common.items() if c == 1), reverse=True)
    need = slack - base
    if need > len(unit):
        return None
    for pick in combinations(unit, need):
        sel = set(mandatory) | set(pick)
        if _leftover_is_pairwise(h, sel):
            nodes = tuple(sorted(sel))
            return AuxSpec(nodes, tuple(common[v] for v in nodes))
    return None


def _leftover_is_pairwise(h: Hypergraph, sel: set[int]) -> bool:
    for e in h.edges:
        rest = [(v, c) for v, c in e.support if v not in sel]
        if len(rest) != 2 or rest[0][1] != 1 or rest[1][1] != 1:
            return False
    return True


def z_via_uplift(h: Hypergraph, norm: str) -> ZEigenpair:
    """Positive Z-eigenpair of a hypergraph that pads a pairwise graph.

    The real components come from the Perron eigenpair of the underlying
    weighted graph; each auxiliary component is the positive root of
    lambda * c_a^2 = multiplicity_a * sum over graph edges of w c_i c_j.
    The whole vector is scaled to the requested unit norm (z1 or z2), and the
    tensor eigenvalue is the graph eigenvalue times the arrangement factor
    omega = (slack+1)! / prod(multiplicity_k!) times the product of scaled
    auxiliary components raised to their multiplicities.
    """
    norm = norm.lower()
    if norm not in ("z1", "z2"):
        raise DataError(f"norm must be 'z1' or 'z2', got {norm!r}")
    aux = detect_uplift_structure(h)
    if aux is None:
        raise DataError(
            "hypergraph is not recognizable as an uplift of a pairwise graph; "
            "general Z-eigenvector computation is out of scope"
        )
    sel = set(aux.nodes)
    real = [i for i in range(h.n) if i not in sel]
    pos = {v: k for k, v in enumerate(real)}
    n_g = len(real)
    if n_g < 2:
        raise DataError("underlying pairwise graph needs at least 2 nodes")

    A = np.zeros((n_g, n_g))
    uf = _UnionFind(n_g)
    for e in h.edges:
        pair = [pos[v] for v, c in e.support if v not in sel]
        i, j = pair
        A[i, j] += e.weight
        A[j, i] += e.weight
        uf.union(i, j)
    if len({uf.find(v) for v in range(n_g)}) != 1:
        raise DataError("underlying pairwise graph is disconnected; " + _DISCONNECTED_MSG)

    eigvals, eigvecs = np.linalg.eigh(A)
    lam = float(eigvals[-1])
    c = eigvecs[:, -1]
    if c.sum() < 0:
        c = -c
    if not (c > 0).all():
        raise ConvergenceError("dense eigensolver returned a non-positive Perron vector")

    q = 0.5 * float(c @ A @ c)  # sum over graph edges of w * c_i * c_j
    full = np.zeros(h.n)
    full[real] = c
    for a, p_a in zip(aux.nodes, aux.multiplicities):
        full[a] = math.sqrt(p_a * q / lam)

    vector = ScoreVector.normalized(full, "l1" if norm == "z1" else "l2")
    slack = h.max_size - 2
    omega = math.factorial(slack + 1)
    for p_a in aux.multiplicities:
        omega //= math.factorial(p_a)
    lam_tensor = lam * omega
    for a, p_a in zip(aux.nodes, aux.multiplicities):
        lam_tensor *= float(vector.values[a]) ** p_a
    return ZEigenpair(
        labels=h.labels,
        eigenvector=vector,
        eigenvalue=lam_tensor,
        norm=norm,
        omega=omega,
        aux=aux,
        base_eigenvalue=lam,
    )


# ──────────────────────────────────────────────────────────────────────
#  Residual checks
# ──────────────────────────────────────────────────────────────────────

def verify_h_eigenpair(
    t: UniformTensor, eigenvalue: float, vector, tol: float = 1e-10
) -> EigenpairCheck:
    """Relative infinity-norm residual of T c^(m-1) = lambda c^[m-1]."""
    c = _as_array(vector, t.dim)
    resid = float(
        np.max(np.abs(apply(t, c) - eigenvalue * c ** (t.order - 1)))
        / max(abs(eigenvalue), 1e-300)
    )
    return EigenpairCheck(resid, 0.0, resid <= tol)


def verify_z_eigenpair(
    t: UniformTensor, eigenvalue: float, vector, norm: str = "z2",
    tol: float = 1e-9,
) -> EigenpairCheck:
    """Residual of T c^(m-1) = lambda c plus the unit-norm violation."""
    c = _as_array(vector, t.dim)
    resid = float(
        np.max(np.abs(apply(t, c) - eigenvalue * c)) / max(abs(eigenvalue), 1e-300)
    )
    norm = norm.lower()
    if norm == "z1":
        nv = abs(float(np.abs(c).sum()) - 1.0)
    elif norm == "z2":
        nv = abs(float(np.sqrt((c * c).sum())) - 1.0)
    else:
        raise DataError(f"norm must be 'z1' or 'z2', got {norm!r}")
    return EigenpairCheck(resid, nv, resid <= tol and nv <= tol)
