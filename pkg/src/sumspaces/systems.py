"""n-tuple analysis: spectral-gap criterion, dilation to a pair, and
graph-weighted complement certificates.

The sum of H1..Hn is closed iff sigma(P1+...+Pn) has a gap above 0; the
dilation P_delta, P_Htilde on C^{nd} turns the n-tuple question into a pair
question through sigma(P_delta P_Htilde P_delta) = {0} U sigma((P1+...+Pn)/n).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, GraphDisconnected
from .numerics import DEFAULT_TOL, Tolerances, eig_hermitian
from .reports import MarginReport
from .subspaces import SubspaceSystem, complement, sum_span


@dataclass
class WeightedGraph:
    """Simple undirected graph with positive edge weights, 1-based vertices."""

    n: int
    edges: list = field(default_factory=list)  # (i, j, weight)

    def __post_init__(self):
        seen = set()
        cleaned = []
        for i, j, w in self.edges:
            i, j, w = int(i), int(j), float(w)
            if not (1 <= i <= self.n and 1 <= j <= self.n) or i == j:
                raise DimensionMismatch(f"bad edge ({i},{j})")
            if w <= 0:
                raise ValueError("edge weights must be positive")
            key = (min(i, j), max(i, j))
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)
            cleaned.append((key[0], key[1], w))
        self.edges = cleaned

    def rho(self) -> np.ndarray:
        """Weighted degrees rho_i = sum of gamma over edges at i."""
        out = np.zeros(self.n)
        for i, j, w in self.edges:
            out[i - 1] += w
            out[j - 1] += w
        return out

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        adj = {v: [] for v in range(1, self.n + 1)}
        for i, j, _ in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        seen, stack = {1}, [1]
        while stack:
            for u in adj[stack.pop()]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == self.n

    @classmethod
    def complete(cls, n: int, weight: float = 1.0) -> "WeightedGraph":
        edges = [(i, j, weight) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
        return cls(n, edges)

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [[i, j, w] for i, j, w in self.edges]}

    @classmethod
    def from_json(cls, data: dict) -> "WeightedGraph":
        return cls(int(data["n"]), [tuple(e) for e in data["edges"]])


def sum_gap(S: SubspaceSystem, tol: Tolerances = DEFAULT_TOL) -> MarginReport:
    """Smallest nonzero eigenvalue of P1+...+Pn, plus the full-sum flag."""
    total = sum(S.projectors())
    w = eig_hermitian(total, tol).eigenvalues
    zero_cut = 100 * tol.eig_tol
    nonzero = w[w > zero_cut]
    kernel_dim = int(np.sum(w <= zero_cut))
    report = MarginReport()
    report.add("sum_gap", float(nonzero[0]) if len(nonzero) else 0.0,
               tol.margin_tol, vacuous=len(nonzero) == 0)
    report.extras["sum_dim"] = S.ambient_dim - kernel_dim
    report.extras["kernel_dim"] = kernel_dim
    report.extras["full_sum"] = kernel_dim == 0
    return report


def dilation(S: SubspaceSystem):
    """The pair (P_delta, P_Htilde) on C^{nd}.

    P_delta has every d x d block equal to I/n; P_Htilde = diag(P1,...,Pn).
    """
    n, d = len(S), S.ambient_dim
    eye = np.eye(d, dtype=complex)
    P_delta = np.tile(eye / n, (n, n))
    P_H = np.zeros((n * d, n * d), dtype=complex)
    for k, P in enumerate(S.projectors()):
        P_H[k * d:(k + 1) * d, k * d:(k + 1) * d] = P
    return P_delta, P_H


def _complement_quadratic(S: SubspaceSystem, G: WeightedGraph, phases=None):
    """Block operator of the (phase-twisted) difference form on +Hk-perp."""
    comps = [complement(m) for m in S.members]
    dims = [c.dim for c in comps]
    total = sum(dims)
    if total == 0:
        return None, comps
    offs = np.cumsum([0] + dims)
    rho = G.rho()
    Q = np.zeros((total, total), dtype=complex)
    for i in range(len(S)):
        Q[offs[i]:offs[i + 1], offs[i]:offs[i + 1]] = rho[i] * np.eye(dims[i])
    for idx, (i, j, w) in enumerate(G.edges):
        a, b = i - 1, j - 1
        cross = comps[a].basis.conj().T @ comps[b].basis
        factor = w if phases is None else w * np.exp(1j * phases[idx])
        block = -factor * cross
        Q[offs[a]:offs[a + 1], offs[b]:offs[b + 1]] = block
        Q[offs[b]:offs[b + 1], offs[a]:offs[a + 1]] = block.conj().T
    return Q, comps


def complement_graph_margin(S: SubspaceSystem, G: WeightedGraph,
                            tol: Tolerances = DEFAULT_TOL,
                            modulus: bool = False, seed: int = 0,
                            restarts: int = 16, phases_per_restart: int = 64) -> MarginReport:
    """Best constant eps in the graph criterion on the complements.

    Difference form (exact): the quadratic form
    sum_edges gamma_ij ||x_i - x_j||^2 - eps sum rho-normalized is analyzed as
    the smallest eigenvalue of a Hermitian block operator on +Hk-perp.
    The modulus form 2 sum gamma |(x_i,x_j)| <= sum (rho_i - eps) ||x_i||^2 is
    not quadratic; its best eps is estimated by random phase search and
    flagged as an estimate.
    """
    if G.n != len(S):
        raise DimensionMismatch("graph order must match member count")
    if not G.is_connected():
        raise GraphDisconnected("criterion requires a connected graph")
    report = MarginReport()
    Q, _ = _complement_quadratic(S, G)
    if Q is None:
        report.add("difference_form_epsilon", 1.0, tol.margin_tol, vacuous=True)
        if modulus:
            report.add("modulus_form_epsilon", 1.0, tol.margin_tol, vacuous=True)
        return report
    exact = float(eig_hermitian(Q, tol).eigenvalues[0])
    report.add("difference_form_epsilon", exact, tol.margin_tol)

    if modulus:
        rng = np.random.default_rng(seed)
        best = exact
        m = len(G.edges)
        for _ in range(restarts):
            for _ in range(phases_per_restart):
                phases = rng.uniform(0.0, 2 * np.pi, size=m)
                Qp, _ = _complement_quadratic(S, G, phases)
                best = min(best, float(eig_hermitian(Qp, tol).eigenvalues[0]))
        report.add("modulus_form_epsilon", best, tol.margin_tol, estimate=True)
    return report


def linear_combination_check(S: SubspaceSystem, alpha,
                             tol: Tolerances = DEFAULT_TOL) -> MarginReport:
    """Spectral bound for positive combinations of the projectors.

    With eps = min eig(sum alpha_i P_i) > 0 and the system independent,
    lambda_max(sum alpha_i P_i) <= sum alpha_i - (n-1) eps.  Reports the
    slack of that bound.
    """
    alpha = np.asarray(alpha, dtype=float)
    if len(alpha) != len(S) or np.any(alpha <= 0):
        raise DimensionMismatch("alpha must be positive, one weight per member")
    A = sum(a * P for a, P in zip(alpha, S.projectors()))
    w = eig_hermitian(A, tol).eigenvalues
    eps, lam_max = float(w[0]), float(w[-1])
    slack = (float(alpha.sum()) - (len(S) - 1) * eps) - lam_max
    report = MarginReport()
    report.add("combination_bound_slack", slack, tol.margin_tol)
    report.extras["epsilon"] = eps
    report.extras["lambda_max"] = lam_max
    # independence via the block Gram of the concatenated bases
    stacked = np.hstack([m.basis for m in S.members])
    if stacked.shape[1] == 0:
        gram_eps = 1.0
    elif stacked.shape[1] > S.ambient_dim:
        gram_eps = 0.0
    else:
        sv = np.linalg.svd(stacked, compute_uv=False)
        gram_eps = float(sv[-1] ** 2)
    report.extras["independence_epsilon"] = gram_eps
    report.extras["applicable"] = bool(eps > tol.margin_tol and gram_eps > tol.margin_tol)
    return report
