"""Operator-range criteria for closed sums.

Douglas factorization, the sum of operator images, the averaged p-radius
certificate, and the beta-matrix test for quadratic projector combinations.
Run: python3 demos/operator_ranges.py
"""

import numpy as np

import sumspaces as ss


def simplex_lines(n):
    E = np.eye(n) - np.ones((n, n)) / n
    U, s, _ = np.linalg.svd(E)
    pts = (U[:, :n - 1] * s[:n - 1]).T
    return ss.SubspaceSystem(n - 1, [ss.from_spanning(pts[:, [k]]) for k in range(n)])


def main():
    rng = np.random.default_rng(5)

    print("Douglas factorization A = B C when Im(A) is inside Im(B):")
    B = rng.normal(size=(4, 2)) @ rng.normal(size=(2, 4))
    A = B @ rng.normal(size=(4, 4))
    C, lam = ss.douglas_factor(A, B)
    print(f"  ||A - B C|| = {np.linalg.norm(A - B @ C, 2):.2e}, "
          f"smallest lambda with A A* <= lambda B B*: {lam:.4f}")

    print("\nsum of images via Im(sqrt(sum a a*)):")
    F = ss.OperatorFamily(4, [B, A])
    image, rep = ss.sum_of_images(F)
    print(f"  dim = {image.dim}, residual vs column space = "
          f"{rep.extras['range_equality_residual']:.2e}")

    print("\np-radius certificate (three equiangular lines in C^2):")
    S = simplex_lines(3)
    T = ss.OperatorFamily(2, S.projectors(), ["nonnegative"] * 3)
    seq, verdict = ss.p_radius(T, p=2.0, depth=4)
    print(f"  sequence = {np.round(seq, 4)} -> {verdict}")
    single = ss.OperatorFamily(2, [np.diag([1.0, 0.0])], ["nonnegative"])
    seq1, verdict1 = ss.p_radius(single, depth=4)
    print(f"  single proper projector: {np.round(seq1, 4)} -> {verdict1}")

    print("\nmembership identity for nonnegative a_k with invertible sum:")
    members = []
    for _ in range(3):
        X = rng.normal(size=(3, 3))
        Q, _ = np.linalg.qr(X)
        members.append((Q * rng.uniform(0.5, 1.5, size=3)) @ Q.conj().T)
    print(f"  residual = "
          f"{ss.m_membership_identity(ss.OperatorFamily(3, members)):.2e}")

    print("\nbeta matrix of the cyclic combination sum P_i - sum P_i P_(i+1):")
    beta = ss.build_beta(ss.cycle_alpha(4))
    print(f"  classification = {beta.classification}, "
          f"kernel direction = {np.round(beta.kernel_vector, 4)}")
    Srand = ss.SubspaceSystem(5, [
        ss.from_spanning(rng.normal(size=(5, 2))) for _ in range(4)])
    _, rep = ss.quadratic_projector_criterion(Srand, ss.cycle_alpha(4))
    print(f"  on a random 4-system in C^5: range equals sum = "
          f"{rep.extras['range_equals_sum']}")


if __name__ == "__main__":
    main()
