"""Operator-range machinery: Douglas factorization, sums of images, product
bounds, the p-radius certificate, and quadratic projector combinations with
the beta-matrix criteria."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import (BudgetExceeded, DiagonalNotPositive, DimensionMismatch,
                     NormTooLarge, NotInvertible, RangeConditionViolated,
                     RangeNotIncluded)
from .numerics import (DEFAULT_TOL, Tolerances, eig_hermitian, matrix_function,
                       numerical_rank, operator_norm, pinv,
                       smallest_nonzero_singular_value, svd)
from .reports import MarginReport
from .subspaces import Subspace, SubspaceSystem, from_spanning, sum_span


@dataclass
class OperatorFamily:
    """A finite list of d x d operators with a nonnegativity flag each."""

    ambient_dim: int
    members: list = field(default_factory=list)
    kinds: list = field(default_factory=list)  # "nonnegative" | "general"

    def __post_init__(self):
        self.members = [np.asarray(M, dtype=complex) for M in self.members]
        for M in self.members:
            if M.shape != (self.ambient_dim, self.ambient_dim):
                raise DimensionMismatch("operator shape mismatch")
        if not self.kinds:
            self.kinds = ["general"] * len(self.members)

    def all_nonnegative(self) -> bool:
        return all(k == "nonnegative" for k in self.kinds)

    def to_json(self) -> dict:
        mats = []
        for M in self.members:
            mats.append([[[float(z.real), float(z.imag)] for z in row] for row in M])
        return {"ambient_dim": self.ambient_dim, "matrices": mats,
                "kind": list(self.kinds)}

    @classmethod
    def from_json(cls, data: dict) -> "OperatorFamily":
        d = int(data["ambient_dim"])
        members = []
        for rows in data["matrices"]:
            members.append(np.array(
                [[complex(re, im) for re, im in row] for row in rows]))
        return cls(d, members, list(data.get("kind", [])))


def douglas_factor(A: np.ndarray, B: np.ndarray, tol: Tolerances = DEFAULT_TOL):
    """Factor A = B C when Im(A) is contained in Im(B).

    Returns (C, inclusion_margin) with C = pinv(B) A, so that ker C = ker A
    and Im C lies in the orthocomplement of ker B.  The inclusion margin is
    the smallest lambda with A A* <= lambda B B*, computed as a generalized
    eigenvalue compressed to Im(B).
    """
    A = np.asarray(A, dtype=complex)
    B = np.asarray(B, dtype=complex)
    imB = from_spanning(B, tol=tol)
    P = imB.projector()
    resid = operator_norm((np.eye(A.shape[0]) - P) @ A)
    if resid > tol.margin_tol:
        raise RangeNotIncluded(f"Im(A) outside Im(B) by {resid:.3e}")
    C = pinv(B, tol) @ A
    if imB.dim == 0:
        return C, 0.0
    U = imB.basis
    M1 = U.conj().T @ (A @ A.conj().T) @ U
    M2 = U.conj().T @ (B @ B.conj().T) @ U
    lam = scipy.linalg.eigh((M1 + M1.conj().T) / 2, (M2 + M2.conj().T) / 2,
                            eigvals_only=True)[-1]
    return C, float(lam)


def sum_of_images(F: OperatorFamily, tol: Tolerances = DEFAULT_TOL):
    """Sum of the operator ranges as Im(sqrt(sum a_k a_k*)).

    Returns the subspace and a report: the range equality against the column
    space of the concatenation, and for nonnegative families the gap of
    sigma(sum a_k) above zero.
    """
    d = F.ambient_dim
    S2 = sum(M @ M.conj().T for M in F.members)
    root = matrix_function((S2 + S2.conj().T) / 2, lambda x: np.sqrt(max(x, 0.0)), tol)
    image = from_spanning(root, d, tol)
    concat = from_spanning(np.hstack(F.members), d, tol)
    report = MarginReport()
    dist = operator_norm(image.projector() - concat.projector())
    report.extras["range_equality_residual"] = dist
    if F.all_nonnegative():
        total = sum(F.members)
        w = eig_hermitian((total + total.conj().T) / 2, tol).eigenvalues
        nonzero = w[w > 100 * tol.eig_tol]
        report.add("nonnegative_sum_gap",
                   float(nonzero[0]) if len(nonzero) else 0.0,
                   tol.margin_tol, vacuous=len(nonzero) == 0)
        report.extras["sum_image_dim"] = image.dim
    return image, report


def product_bound(F: OperatorFamily, x: np.ndarray,
                  tol: Tolerances = DEFAULT_TOL) -> float:
    """Slack of the product inequality for nonnegative T_k with ||T_k|| < 2.

    With E = (I - T_n) ... (I - T_1) and omega = max ||T_k||:
    ((2 + omega^2 n (n-1)) / (2 - omega)) (||x||^2 - ||Ex||^2) >= sum (T_k x, x).
    """
    x = np.asarray(x, dtype=complex).reshape(-1)
    n = len(F.members)
    omega = max((operator_norm(M) for M in F.members), default=0.0)
    if omega >= 2.0:
        raise NormTooLarge(f"omega = {omega} >= 2")
    E = np.eye(F.ambient_dim, dtype=complex)
    for M in F.members:
        E = (np.eye(F.ambient_dim) - M) @ E
    lhs = ((2.0 + omega ** 2 * n * (n - 1)) / (2.0 - omega)) \
        * (np.linalg.norm(x) ** 2 - np.linalg.norm(E @ x) ** 2)
    rhs = sum(float(np.real(np.vdot(x, M @ x))) for M in F.members)
    return float(lhs - rhs)


def p_radius(F: OperatorFamily, p: float = 2.0, depth: int = 4,
             tol: Tolerances = DEFAULT_TOL, budget: int = 10 ** 6):
    """Averaged p-radius certificate for sum Im(T_k) = H.

    Enumerates all products of A_i = I - T_i up to the given depth and
    returns the sequence a_{k,p}^{1/k}; some value below 1 certifies that the
    images of T_1..T_n sum to the whole space.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    n = len(F.members)
    d = F.ambient_dim
    total = sum(n ** k for k in range(1, depth + 1))
    if total > budget:
        raise BudgetExceeded(f"{total} products exceed budget {budget}")
    A = [np.eye(d) - M for M in F.members]
    sequence = []
    current = [np.eye(d, dtype=complex)]
    for k in range(1, depth + 1):
        nxt = []
        for prod in current:
            for Ai in A:
                nxt.append(Ai @ prod)
        current = nxt
        mean = sum(operator_norm(M) ** p for M in current) / (n ** k)
        sequence.append(mean ** (1.0 / (p * k)))
    certified = any(v < 1.0 - tol.margin_tol for v in sequence)
    if certified:
        verdict = "certified"
    else:
        stacked = np.vstack(F.members)
        sv = np.linalg.svd(stacked, compute_uv=False)
        common_kernel = numerical_rank(sv, tol) < d
        stationary = abs(sequence[-1] - 1.0) <= tol.margin_tol
        verdict = "deficient" if (stationary and common_kernel) else "inconclusive"
    return sequence, verdict


def m_membership_identity(F: OperatorFamily, tol: Tolerances = DEFAULT_TOL) -> float:
    """Residual of the membership identity for nonnegative a_k.

    With S = sum a_k^2 invertible:
    S^{1/2} = sum_{i,j} a_i^2 S^{-3/2} a_j^2.
    """
    S = sum(M @ M for M in F.members)
    S = (S + S.conj().T) / 2
    w = eig_hermitian(S, tol).eigenvalues
    if w[0] <= tol.margin_tol:
        raise NotInvertible(f"sum of squares has min eigenvalue {w[0]:.3e}")
    half = matrix_function(S, lambda x: np.sqrt(x), tol)
    inv32 = matrix_function(S, lambda x: x ** -1.5, tol)
    acc = np.zeros_like(S)
    for Mi in F.members:
        for Mj in F.members:
            acc += (Mi @ Mi) @ inv32 @ (Mj @ Mj)
    return float(operator_norm(half - acc))


@dataclass
class BetaMatrix:
    """Real symmetric comparison matrix for A = sum alpha_ij P_i P_j."""

    alpha: np.ndarray
    beta: np.ndarray
    classification: str  # positive_definite | B1B2 | borderline | neither
    graph_connected: bool
    kernel_vector: np.ndarray | None = None


def build_beta(alpha: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> BetaMatrix:
    """Beta matrix: beta_ii = alpha_ii,
    beta_ij = -(1/2) sqrt((Re a_ij + Re a_ji)^2 + (Im a_ij - Im a_ji)^2)."""
    alpha = np.asarray(alpha, dtype=complex)
    n = alpha.shape[0]
    diag = np.real(np.diag(alpha))
    if np.any(diag <= 0) or np.any(np.abs(np.imag(np.diag(alpha))) > tol.eig_tol):
        raise DiagonalNotPositive("alpha diagonal must be positive real")
    beta = np.zeros((n, n))
    np.fill_diagonal(beta, diag)
    for i in range(n):
        for j in range(i + 1, n):
            re = np.real(alpha[i, j]) + np.real(alpha[j, i])
            im = np.imag(alpha[i, j]) - np.imag(alpha[j, i])
            beta[i, j] = beta[j, i] = -0.5 * np.hypot(re, im)

    w, v = np.linalg.eigh(beta)
    zero_count = int(np.sum(np.abs(w) <= 100 * tol.rank_tol * max(1.0, abs(w[-1]))))
    # connectivity of the off-diagonal support graph
    adj = np.abs(beta) > tol.eig_tol
    np.fill_diagonal(adj, False)
    seen, stack = {0}, [0]
    while stack:
        u = stack.pop()
        for vtx in np.nonzero(adj[u])[0]:
            if vtx not in seen:
                seen.add(int(vtx))
                stack.append(int(vtx))
    connected = len(seen) == n

    kernel_vector = None
    if w[0] > tol.margin_tol:
        classification = "positive_definite"
    elif w[0] >= -tol.margin_tol:
        if zero_count == 1 and connected:
            classification = "B1B2"
            vec = v[:, 0]
            anchor = vec[np.argmax(np.abs(vec))]
            kernel_vector = np.real(vec * np.conj(anchor) / abs(anchor))
        else:
            classification = "borderline"
    else:
        classification = "neither"
    return BetaMatrix(alpha, beta, classification, connected, kernel_vector)


def cycle_alpha(n: int) -> np.ndarray:
    """Coefficients of A = sum P_i - sum P_i P_{i+1} (cyclic, xi = 1)."""
    alpha = np.eye(n, dtype=complex)
    for i in range(n):
        alpha[i, (i + 1) % n] = -1.0
    return alpha


def xi_graph_alpha(n: int, xi: dict) -> np.ndarray:
    """Coefficients of the xi-graph family.

    ``xi`` maps ordered pairs (i, j), 1-based, to xi_ij > 0 for edges of an
    undirected graph (both orientations may be given).  The diagonal is
    xi_i = (1/2) sum over incident edges of (xi_ij + xi_ji).
    """
    alpha = np.zeros((n, n), dtype=complex)
    for (i, j), val in xi.items():
        alpha[i - 1, j - 1] = -val
    for i in range(n):
        alpha[i, i] = 0.5 * sum(
            -np.real(alpha[i, j] + alpha[j, i]) for j in range(n) if j != i)
    return alpha


def quadratic_projector_criterion(S: SubspaceSystem, alpha,
                                  tol: Tolerances = DEFAULT_TOL):
    """Criteria for A = sum alpha_ij P_i P_j via the beta matrix.

    When B is positive definite, closedness of the sum, Im(A) = sum H_k and
    closedness of Im(A) are all equivalent; under (B1)(B2) the kernel of B
    has a strictly positive eigenvector s and one-sided implications hold.
    """
    alpha = np.asarray(alpha, dtype=complex)
    if alpha.shape != (len(S), len(S)):
        raise DimensionMismatch("alpha must be n x n")
    beta = build_beta(alpha, tol)
    P = S.projectors()
    d = S.ambient_dim
    A = np.zeros((d, d), dtype=complex)
    for i in range(len(S)):
        for j in range(len(S)):
            A += alpha[i, j] * (P[i] @ P[j])

    report = MarginReport()
    sv = smallest_nonzero_singular_value(A, tol)
    report.add("closed_range_margin", sv, tol.margin_tol, vacuous=np.isinf(sv))
    imA = from_spanning(A, d, tol)
    total = sum_span(S.members, tol)
    report.extras["range_equality_residual"] = operator_norm(
        imA.projector() - total.projector())
    report.extras["range_equals_sum"] = bool(
        report.extras["range_equality_residual"] <= 100 * tol.margin_tol)
    report.extras["beta_classification"] = beta.classification
    report.extras["beta_graph_connected"] = beta.graph_connected

    comp_total = sum_span(
        [from_spanning(np.eye(d) - Pk, d, tol) for Pk in P], tol)
    if total.dim == d and comp_total.dim == d:
        s = np.linalg.svd(A, compute_uv=False)
        report.add("invertibility_margin", float(s[-1]), tol.margin_tol)
    return beta, report


def ibap_check(S: SubspaceSystem, F: OperatorFamily,
               tol: Tolerances = DEFAULT_TOL) -> MarginReport:
    """Inverse best approximation property margins for operators A_k.

    Requires Im(A_k) inside H_k.  The joint constant is the smallest singular
    value of the stacked map (y_1..y_n) -> sum A_k* y_k on +H_k; it is
    positive iff each A_k* embeds H_k isomorphically and the ranges
    A_k*(H_k) form an independent system with closed sum.
    """
    if len(F.members) != len(S):
        raise DimensionMismatch("one operator per member required")
    d = S.ambient_dim
    blocks = []
    report = MarginReport()
    for k, (M, H) in enumerate(zip(F.members, S.members), start=1):
        resid = operator_norm((np.eye(d) - H.projector()) @ M)
        if resid > tol.margin_tol:
            raise RangeConditionViolated(f"Im(A_{k}) outside H_{k} by {resid:.3e}")
        block = M.conj().T @ H.basis  # A_k* restricted to H_k
        blocks.append(block)
        if H.dim == 0:
            report.add(f"embedding_margin_{k}", 1.0, tol.margin_tol, vacuous=True)
        else:
            sv = np.linalg.svd(block, compute_uv=False)
            report.add(f"embedding_margin_{k}", float(sv[-1]), tol.margin_tol)
    stacked = np.hstack(blocks) if blocks else np.zeros((d, 0))
    if stacked.shape[1] == 0:
        report.add("joint_epsilon", 1.0, tol.margin_tol, vacuous=True)
    else:
        sv = np.linalg.svd(stacked, compute_uv=False)
        joint = float(sv[-1]) if stacked.shape[1] <= d else 0.0
        report.add("joint_epsilon", joint, tol.margin_tol)
    ranges = [from_spanning(M.conj().T @ H.basis, d, tol)
              for M, H in zip(F.members, S.members)]
    from .reduction import independence_certificate
    cert = independence_certificate(SubspaceSystem(d, ranges), tol)
    report.add("range_independence_epsilon", cert.epsilon, tol.margin_tol)
    return report
