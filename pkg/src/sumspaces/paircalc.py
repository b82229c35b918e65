"""Function calculus for two projections.

For continuous f1..f4 on [0,1] the operator

    b = P1 f1(P1P2P1) + P2 f2(P2P1P2) + P1P2 f3(P2P1P2) + P2P1 f4(P1P2P1)

acts blockwise on the canonical components of the pair, and on the generic
part its spectrum is governed by the scalar polynomials

    T(x) = f1 + f2 + x (f3 + f4),
    D(x) = (1 - x)(f1 f2 - x f3 f4),
    F(x) = f1 f2 - x f3 f4,

through the roots of lambda^2 - T(x) lambda + D(x) = 0 over x in sigma(a).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import HypothesisViolated
from .numerics import DEFAULT_TOL, Tolerances, smallest_nonzero_singular_value
from .pairs import PairDecomposition
from .reports import MarginReport


@dataclass
class ScalarFunction:
    """A continuous complex-valued function on [0, 1].

    Stored as a callable plus optional polynomial coefficients (ascending
    order); only polynomial functions are serializable through the CLI.
    """

    evaluator: object
    coefficients: list | None = None

    def __call__(self, x):
        return complex(self.evaluator(x))

    @classmethod
    def from_poly(cls, coefficients) -> "ScalarFunction":
        coeffs = [complex(c) for c in coefficients]
        return cls(lambda x: complex(np.polynomial.polynomial.polyval(x, coeffs)),
                   coeffs)

    @classmethod
    def constant(cls, c) -> "ScalarFunction":
        return cls.from_poly([c])

    @classmethod
    def from_callable(cls, f) -> "ScalarFunction":
        return cls(f, None)


def _component_values(fs, present):
    """Spectrum contributions of the four flat components."""
    f1, f2, f3, f4 = fs
    values = []
    if present[0]:  # H1 & H2
        values.append(f1(1.0) + f2(1.0) + f3(1.0) + f4(1.0))
    if present[1]:  # H1 & H2'
        values.append(f1(0.0))
    if present[2]:  # H1' & H2
        values.append(f2(0.0))
    if present[3]:  # H1' & H2'
        values.append(0.0 + 0.0j)
    return values


def build_b(pair: PairDecomposition, f1, f2, f3, f4,
            tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Assemble b blockwise on the canonical components."""
    fs = (f1, f2, f3, f4)
    d = pair.ambient_dim
    b = np.zeros((d, d), dtype=complex)
    s11 = f1(1.0) + f2(1.0) + f3(1.0) + f4(1.0)
    b += s11 * pair.both.projector()
    b += f1(0.0) * pair.first_only.projector()
    b += f2(0.0) * pair.second_only.projector()

    r = pair.k_dim
    if r:
        x = pair.a_eigenvalues
        fx = [np.array([f(v) for v in x], dtype=complex) for f in fs]
        s = np.sqrt(x * (1.0 - x))
        top_left = fx[0] + x * (fx[1] + fx[2] + fx[3])
        top_right = s * (fx[1] + fx[2])
        bot_left = s * (fx[1] + fx[3])
        bot_right = (1.0 - x) * fx[1]
        Q1, Q2 = pair.k_basis_1, pair.k_basis_2
        b += (Q1 * top_left) @ Q1.conj().T
        b += (Q1 * top_right) @ Q2.conj().T
        b += (Q2 * bot_left) @ Q1.conj().T
        b += (Q2 * bot_right) @ Q2.conj().T
    return b


def spectrum_of_b(pair: PairDecomposition, f1, f2, f3, f4) -> np.ndarray:
    """Analytic spectrum of b as a multiset of complex values.

    Flat components contribute their scalar values; each generic eigenvalue x
    of a contributes the two roots of lambda^2 - T(x) lambda + D(x) = 0.
    """
    present = (pair.both.dim > 0, pair.first_only.dim > 0,
               pair.second_only.dim > 0, pair.neither.dim > 0)
    counts = (pair.both.dim, pair.first_only.dim,
              pair.second_only.dim, pair.neither.dim)
    fs = (f1, f2, f3, f4)
    values = []
    for value, count in zip(_component_values(fs, (True,) * 4), counts):
        values.extend([value] * count)
    for x in pair.a_eigenvalues:
        T = f1(x) + f2(x) + x * (f3(x) + f4(x))
        D = (1.0 - x) * (f1(x) * f2(x) - x * f3(x) * f4(x))
        values.extend(np.roots([1.0, -T, D]))
    return np.array(values, dtype=complex)


def calculus_criteria(pair: PairDecomposition, f1, f2, f3, f4,
                      tol: Tolerances = DEFAULT_TOL) -> MarginReport:
    """Closedness/invertibility margins of Im(b).

    Requires F(x) = f1 f2 - x f3 f4 nonzero on [0, 1); checked on a
    1001-point uniform grid plus sigma(a).  Pathologies between grid points
    are the caller's responsibility.
    """
    grid = np.linspace(0.0, 1.0, 1001, endpoint=False)
    points = np.concatenate([grid, pair.a_eigenvalues])
    for x in points:
        F = f1(x) * f2(x) - x * f3(x) * f4(x)
        if abs(F) <= tol.margin_tol:
            raise HypothesisViolated(f"F({x}) = {F} vanishes on [0,1)")

    spectrum = spectrum_of_b(pair, f1, f2, f3, f4)
    report = MarginReport()
    nonzero = np.abs(spectrum)[np.abs(spectrum) > 100 * tol.eig_tol]
    report.add("punctured_disk_margin",
               float(nonzero.min()) if len(nonzero) else 1.0,
               tol.margin_tol, vacuous=len(nonzero) == 0)
    if len(spectrum):
        report.add("invertibility_margin", float(np.abs(spectrum).min()), tol.margin_tol)
    else:
        report.add("invertibility_margin", 1.0, tol.margin_tol, vacuous=True)
    s11 = f1(1.0) + f2(1.0) + f3(1.0) + f4(1.0)
    report.extras["sum_at_one_nonzero"] = bool(abs(s11) > tol.margin_tol)

    b = build_b(pair, f1, f2, f3, f4, tol)
    sv = smallest_nonzero_singular_value(b, tol)
    report.add("closed_range_margin", sv, tol.margin_tol, vacuous=np.isinf(sv))
    return report
