"""Linear-independence constants and constructive reductions.

A system H1..Hn with a spectral gap eps (sum of projectors bounded below by
eps on the sum) can be shrunk, touching only H2..Hn, to a linearly
independent system M-subspaces with an explicit operator certificate

    P_H1 + P_M2 + w3 P_M3 + ... + wn P_Mn >= c_n eps^{n-1} I,

where the constants follow the recursion c_2 = 1/2,
c_n = c_{n-1} / (16 * 24^{n-2}).  A companion construction performs the
shrink inside the direct-sum dilation so the sum is preserved exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import (EigenvalueOnBoundary, GapTooSmall, IndexOutOfRange,
                     NotIndependent, SumNotFull)
from .numerics import (DEFAULT_TOL, Tolerances, eig_hermitian, operator_norm,
                       svd, numerical_rank)
from .reports import MarginReport
from .subspaces import (Subspace, SubspaceSystem, from_spanning, intersect,
                        sum_span, zero_subspace)
from .systems import sum_gap
from . import pairs as _pairs


@dataclass
class IndependenceCertificate:
    """Best quadratic-form constant in ||sum x_i||^2 >= eps sum ||x_i||^2."""

    epsilon: float
    independent: bool


@dataclass
class ReductionResult:
    """Shrunk system plus the operator-inequality certificate.

    ``reduced`` lists (H1, M2, ..., Mn); ``weights`` are the certificate
    coefficients aligned with the members; the inequality right-hand side is
    ``rhs`` = c_n * eps^(n-1).
    """

    reduced: SubspaceSystem
    weights: list = field(default_factory=list)
    c_n: Fraction = Fraction(1)
    epsilon: float = 0.0
    rhs: float = 0.0
    certificate_slack: float = 0.0
    sum_preserved: bool = False
    numerically_vacuous: bool = False
    report: MarginReport = field(default_factory=MarginReport)


def independence_certificate(S: SubspaceSystem,
                             tol: Tolerances = DEFAULT_TOL) -> IndependenceCertificate:
    """Smallest eigenvalue of the block Gram of the concatenated bases."""
    stacked = np.hstack([m.basis for m in S.members])
    cols = stacked.shape[1]
    if cols == 0:
        return IndependenceCertificate(1.0, True)
    if cols > S.ambient_dim:
        return IndependenceCertificate(0.0, False)
    sv = np.linalg.svd(stacked, compute_uv=False)
    eps = float(sv[-1] ** 2)
    return IndependenceCertificate(eps, eps > tol.margin_tol)


def oblique_projections(S: SubspaceSystem, tol: Tolerances = DEFAULT_TOL):
    """The idempotents Q1..Qn of the direct-sum decomposition H = +Hk.

    Requires an independent system with full sum; then every x splits
    uniquely as x = x_1 + ... + x_n with x_k in H_k and Q_k x = x_k.
    """
    cert = independence_certificate(S, tol)
    if not cert.independent:
        raise NotIndependent("system is not linearly independent")
    stacked = np.hstack([m.basis for m in S.members])
    if stacked.shape[1] != S.ambient_dim:
        raise SumNotFull("sum of the members must be the whole space")
    inv = np.linalg.inv(stacked)
    out = []
    offset = 0
    for m in S.members:
        rows = inv[offset:offset + m.dim, :]
        out.append(m.basis @ rows)
        offset += m.dim
    return out


def combine_with_spectrum(projections, lambdas) -> np.ndarray:
    """Assemble A = sum lambda_k Q_k; sigma(A) = {lambda_k}."""
    return sum(lam * Q for lam, Q in zip(lambdas, projections))


def rps_margin(S: SubspaceSystem, m: int, tol: Tolerances = DEFAULT_TOL) -> MarginReport:
    """Membership margin for reducibility that touches only H_{m+1}..H_n.

    On the kernel Z of the summation map on +H_j the system must satisfy
    sum_{j>m} ||y_j||^2 >= eps^2 sum_{j<=m} ||y_j||^2; the best constant is a
    generalized eigenvalue on Z.  Quadratic forms replace the l1 sums of the
    norm phrasing; constants agree up to a factor <= n.
    """
    n = len(S)
    if not (1 <= m <= n):
        raise IndexOutOfRange(f"m={m} outside 1..{n}")
    report = MarginReport()
    head_cert = independence_certificate(
        SubspaceSystem(S.ambient_dim, S.members[:m]), tol)
    report.extras["head_independent"] = head_cert.independent
    report.extras["head_epsilon"] = head_cert.epsilon

    stacked = np.hstack([s.basis for s in S.members])
    dims = [s.dim for s in S.members]
    offs = np.cumsum([0] + dims)
    if stacked.shape[1] == 0:
        report.add("rps_epsilon", 1.0, tol.margin_tol, vacuous=True)
        return report
    U, s, V = svd(stacked, tol)
    r = numerical_rank(s, tol)
    Z = V[:, r:]  # orthonormal basis of the kernel, in block coordinates
    if Z.shape[1] == 0:
        report.add("rps_epsilon", 1.0, tol.margin_tol, vacuous=True)
        return report
    head_rows = Z[:offs[m], :]
    tail_rows = Z[offs[m]:, :]
    H = head_rows.conj().T @ head_rows
    T = tail_rows.conj().T @ tail_rows
    hw, hv = np.linalg.eigh((H + H.conj().T) / 2)
    keep = hw > tol.rank_tol * max(1.0, hw[-1])
    if not np.any(keep):
        # every kernel vector has zero head part: condition vacuous
        report.add("rps_epsilon", 1.0, tol.margin_tol, vacuous=True)
        return report
    W = hv[:, keep] / np.sqrt(hw[keep])
    M = W.conj().T @ T @ W
    mu = float(np.linalg.eigvalsh((M + M.conj().T) / 2)[0])
    eps = float(np.sqrt(max(mu, 0.0)))
    report.add("rps_epsilon", eps, tol.margin_tol)
    return report


def reduce_pair(H1: Subspace, H2: Subspace, eps: float,
                tol: Tolerances = DEFAULT_TOL):
    """Shrink H2 to M2 so that H1 + M2 is closed with explicit inequalities.

    In the canonical coordinates of the pair with H2 flat, M2 keeps the
    non-generic part of H2 outside H1 & H2 plus the spectral slice of the
    generic part with compression eigenvalue below delta = 1 - eps/2.
    Conclusions (verified as operator inequalities):
      3 (P_H1 + P_M2) + eps I >= P_H1 + P_H2
      P_H1 + P_M2 >= (eps/4) P_{H1+M2}
    """
    if not (0.0 < eps < 1.0):
        raise ValueError("eps must be in (0, 1)")
    d = H1.ambient_dim
    dec = _pairs.halmos_decompose(H2, H1, tol)  # H2 in the flat role
    delta = 1.0 - eps / 2.0
    x = dec.a_eigenvalues
    if np.any(np.abs(x - delta) <= tol.eig_tol):
        delta += 10 * tol.eig_tol
        if np.any(np.abs(x - delta) <= tol.eig_tol):
            raise EigenvalueOnBoundary("delta collides with sigma(a) twice")
    keep = x < delta
    pieces = [dec.first_only.basis, dec.k_basis_1[:, keep]]  # H2 & H1-perp part
    M2 = from_spanning(np.hstack(pieces), d, tol)

    P1, P2, PM2 = H1.projector(), H2.projector(), M2.projector()
    report = MarginReport()
    report.extras["delta"] = delta
    sum_sub = sum_span([H1, M2], tol)
    closed_gap = sum_gap(SubspaceSystem(d, [H1, M2]), tol).margin("sum_gap")
    report.add("closed_margin", closed_gap, tol.margin_tol,
               vacuous=np.isinf(closed_gap))
    dom = 3 * (P1 + PM2) + eps * np.eye(d) - P1 - P2
    report.add("domination_slack",
               float(eig_hermitian(dom, tol).eigenvalues[0]), tol.margin_tol)
    low = P1 + PM2 - (eps / 4.0) * sum_sub.projector()
    report.add("lower_bound_slack",
               float(eig_hermitian(low, tol).eigenvalues[0]), tol.margin_tol)
    return M2, report


def _reduce_recursive(members, eps, tol):
    """Recursion of the reduction theorem.

    Returns (reduced members, weights, rhs) with
    sum_i w_i P_reduced_i >= rhs I on the sum of the originals.
    """
    n = len(members)
    if n == 1:
        return [members[0]], [1.0], eps
    H1, H2 = members[0], members[1]
    meet = intersect(H1, H2, tol)
    if meet.dim:
        P = np.eye(H1.ambient_dim) - meet.projector()
        H2p = from_spanning(P @ H2.basis, H1.ambient_dim, tol, scale=1.0)
    else:
        H2p = H2
    if n == 2:
        return [H1, H2p], [1.0, 1.0], eps / 2.0
    M2, _ = reduce_pair(H1, H2p, eps / 4.0, tol)
    H1M2 = sum_span([H1, M2], tol)
    inner_members = [H1M2] + list(members[2:])
    inner_red, inner_w, inner_rhs = _reduce_recursive(inner_members, eps / 24.0, tol)
    scale = eps / 16.0
    reduced = [H1, M2] + inner_red[1:]
    weights = [1.0, 1.0] + [scale * w for w in inner_w[1:]]
    return reduced, weights, scale * inner_rhs


def c_constant(n: int) -> Fraction:
    """The exact rational chain c_2 = 1/2, c_n = c_{n-1} / (16 * 24^(n-2))."""
    if n < 2:
        return Fraction(1)
    c = Fraction(1, 2)
    for k in range(3, n + 1):
        c /= 16 * 24 ** (k - 2)
    return c


def reduce_system(S: SubspaceSystem, tol: Tolerances = DEFAULT_TOL) -> ReductionResult:
    """Shrink H2..Hn to an independent system with a certificate.

    Requires the spectral gap eps of sum P_k to exceed margin_tol; the
    certificate inequality is evaluated on the sum span when the sum is not
    the whole space.
    """
    d = S.ambient_dim
    gap_rep = sum_gap(S, tol)
    eps = gap_rep.margin("sum_gap")
    if not np.isfinite(eps) or eps <= tol.margin_tol:
        if np.isinf(eps):
            eps = 0.0
        raise GapTooSmall(f"gap {eps} below margin_tol")
    eps_used = min(eps, 1.0 - 10 * tol.eig_tol)
    reduced, weights, rhs = _reduce_recursive(list(S.members), eps_used, tol)

    original_sum = sum_span(S.members, tol)
    reduced_sys = SubspaceSystem(d, reduced)
    cert_op = sum(w * m.projector() for w, m in zip(weights, reduced))
    B = original_sum.basis
    restricted = B.conj().T @ (cert_op - rhs * np.eye(d)) @ B
    slack = float(eig_hermitian(restricted, tol).eigenvalues[0]) if B.shape[1] else 0.0

    reduced_sum = sum_span(reduced, tol)
    sum_preserved = (reduced_sum.dim == original_sum.dim
                     and operator_norm(reduced_sum.projector()
                                       - original_sum.projector()) <= tol.margin_tol)
    cert = independence_certificate(reduced_sys, tol)
    report = MarginReport()
    report.add("certificate_slack", slack, tol.margin_tol)
    report.add("independence_epsilon", cert.epsilon, tol.margin_tol)
    report.extras["sum_preserved"] = sum_preserved
    n = len(S)
    c_n = c_constant(n)
    return ReductionResult(
        reduced=reduced_sys, weights=weights, c_n=c_n, epsilon=eps_used,
        rhs=rhs, certificate_slack=slack, sum_preserved=sum_preserved,
        numerically_vacuous=rhs < tol.margin_tol, report=report)


def reduce_preserving_sum(S: SubspaceSystem, tol: Tolerances = DEFAULT_TOL) -> ReductionResult:
    """Shrink H2..Hn to an independent system with the same sum.

    Works inside the dilation space: with Htilde_k the block copies of H_k
    in C^{nd} and Delta0 the kernel of the summation map, the theorem is
    applied to (Delta0 + Htilde_1, Htilde_2, ..., Htilde_n) and the reduced
    blocks are pulled back to the original ambient space.
    """
    n, d = len(S), S.ambient_dim
    dims = [m.dim for m in S.members]
    if sum(dims) == 0:
        result = ReductionResult(reduced=S, sum_preserved=True)
        result.report.extras["sum_preserved"] = True
        return result
    offs = np.cumsum([0] + dims)

    def embed(k: int, cols: np.ndarray) -> np.ndarray:
        out = np.zeros((n * d, cols.shape[1]), dtype=complex)
        out[k * d:(k + 1) * d, :] = cols
        return out

    tilde = [Subspace(n * d, embed(k, m.basis)) for k, m in enumerate(S.members)]
    # G1 = Delta0 + Htilde_1 = {(x_1..x_n): x_k in H_k, sum x_k in H_1}
    W = np.zeros((n * d, sum(dims)), dtype=complex)
    summap = np.zeros((d, sum(dims)), dtype=complex)
    for k, m in enumerate(S.members):
        W[k * d:(k + 1) * d, offs[k]:offs[k + 1]] = m.basis
        summap[:, offs[k]:offs[k + 1]] = m.basis
    P1 = S.members[0].projector()
    constraint = (np.eye(d) - P1) @ summap
    _, s, V = svd(constraint, tol)
    # columns are projections of unit vectors: rank cutoff on absolute scale
    r = int(np.sum(s > tol.rank_tol * max(s[0] if len(s) else 0.0, 1.0)))
    N = V[:, r:]
    G1 = from_spanning(W @ N, n * d, tol)

    embedded = SubspaceSystem(n * d, [G1] + tilde[1:])
    inner = reduce_system(embedded, tol)
    reduced = [S.members[0]]
    for k, Mt in enumerate(inner.reduced.members[1:], start=1):
        block = Mt.basis[k * d:(k + 1) * d, :]
        reduced.append(from_spanning(block, d, tol, scale=1.0) if Mt.dim
                       else zero_subspace(d))

    reduced_sys = SubspaceSystem(d, reduced)
    cert = independence_certificate(reduced_sys, tol)
    original_sum = sum_span(S.members, tol)
    reduced_sum = sum_span(reduced, tol)
    sum_preserved = (reduced_sum.dim == original_sum.dim
                     and operator_norm(reduced_sum.projector()
                                       - original_sum.projector()) <= tol.margin_tol)
    report = MarginReport()
    report.add("independence_epsilon", cert.epsilon, tol.margin_tol)
    report.extras["sum_preserved"] = sum_preserved
    return ReductionResult(
        reduced=reduced_sys, weights=[1.0] * n, c_n=inner.c_n,
        epsilon=inner.epsilon, rhs=inner.rhs,
        certificate_slack=inner.certificate_slack,
        sum_preserved=sum_preserved,
        numerically_vacuous=inner.numerically_vacuous, report=report)
