"""Roots of the per-mode characteristic polynomial and their spectral weights.

For an alphabet size ``n`` and a classical eigenvalue ``rho`` the polynomial

    p(z) = (-z)^n + 2 rho sum_{i=1}^{n-1} (-z)^i + 1

has all of its zeros on the unit circle whenever ``-1/(n-1) <= rho <= 1``.
Its zeros are the eigenvalues of one Fourier block of the quantum walk, and
the weights ``c`` expand the block's scalar mode sum ``a(t)`` in powers of
those zeros.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .hamming_scheme import eta_powers, is_prime, PrimalityError

UNIT_CIRCLE_TOL = 1e-9
DEGENERACY_GAP = 1e-8
COEFF_AGREEMENT_TOL = 1e-9


class UnitCircleViolation(ArithmeticError):
    """A computed root is off the unit circle by more than the tolerance."""


class DegenerateSpectrum(ArithmeticError):
    """Two roots (nearly) coincide, so the distinct-root expansion is unavailable."""


class CoefficientMismatch(ArithmeticError):
    """The closed-form weights disagree with the Vandermonde solve."""


def lower_bound(n: int) -> float:
    return -1.0 / (n - 1)


def _check_rho(rho, n: int) -> None:
    if not -Fraction(1, n - 1) - Fraction(1, 10**12) <= rho <= 1 + Fraction(1, 10**12):
        raise ValueError(f"rho={float(rho)!r} outside [-1/{n - 1}, 1]")


def _check_prime(n: int) -> None:
    if not is_prime(n):
        raise PrimalityError(f"n={n} is not prime")


@dataclass(frozen=True)
class SelfReciprocalPoly:
    """Coefficients (ascending powers of z) of the mode polynomial."""

    n: int
    rho: float
    coeffs: tuple

    def __call__(self, z):
        return np.polynomial.polynomial.polyval(z, np.array(self.coeffs, dtype=float))

    def derivative(self, z):
        c = np.polynomial.polynomial.polyder(np.array(self.coeffs, dtype=float))
        return np.polynomial.polynomial.polyval(z, c)


def build_poly(rho, n: int) -> SelfReciprocalPoly:
    _check_prime(n)
    _check_rho(rho, n)
    coeffs = [1] + [2 * rho * (-1) ** i for i in range(1, n)] + [(-1) ** n]
    return SelfReciprocalPoly(n, rho, tuple(coeffs))


def parent_poly_coeffs(rho, n: int) -> tuple:
    """Ascending coefficients of ``z^n + 2 rho sum_{i=1}^{n-1} z^i + 1``."""
    return tuple([1] + [2 * rho] * (n - 1) + [1])


def _sort_by_angle(z: np.ndarray) -> np.ndarray:
    theta = np.mod(np.angle(z), 2 * np.pi)
    # angles within rounding of 2*pi belong at 0
    theta[theta > 2 * np.pi - 1e-13] = 0.0
    return z[np.argsort(theta, kind="stable")]


def _project(z: np.ndarray) -> np.ndarray:
    dev = np.abs(np.abs(z) - 1)
    if np.any(dev > UNIT_CIRCLE_TOL):
        raise UnitCircleViolation(f"root modulus deviates from 1 by {dev.max():.3e}")
    return z / np.abs(z)


def _companion_roots(coeffs: Sequence[float]) -> np.ndarray:
    c = np.asarray(coeffs, dtype=float)
    c = c / c[-1]
    m = len(c) - 1
    if m == 0:
        return np.array([], dtype=complex)
    A = np.zeros((m, m))
    A[1:, :-1] = np.eye(m - 1)
    A[:, -1] = -c[:-1]
    # LAPACK geev balances the companion matrix before the QR iteration
    return np.linalg.eigvals(A).astype(complex)


def _newton_polish(z: np.ndarray, coeffs: Sequence[float]) -> np.ndarray:
    c = np.asarray(coeffs, dtype=float)
    dc = np.polynomial.polynomial.polyder(c)
    fz = np.polynomial.polynomial.polyval(z, c)
    dfz = np.polynomial.polynomial.polyval(z, dc)
    step = np.where(np.abs(dfz) > 1e-300, fz / np.where(dfz == 0, 1, dfz), 0)
    polished = z - step
    # keep the polished value only where it actually lowers the residual
    better = np.abs(np.polynomial.polynomial.polyval(polished, c)) <= np.abs(fz)
    return np.where(better, polished, z)


def _is_lower_boundary(rho, n: int) -> bool:
    return abs(float(rho) + 1.0 / (n - 1)) <= 1e-14


def residual_factor_coeffs(n: int) -> tuple:
    """Ascending coefficients of the degree ``n-3`` cofactor at ``rho = -1/(n-1)``.

    The parent polynomial factors as ``(z-1)^2 (z+1) r(z)``; this returns
    ``r`` exactly as rationals.
    """
    _check_prime(n)
    if n < 3:
        raise ValueError("the cofactor exists only for n >= 3")
    desc = [
        Fraction(math.ceil(i / 2) * (n - 2 * (i // 2) - 1), n - 1) for i in range(1, n - 1)
    ]
    # desc[i-1] multiplies z^(n-i-2); reverse to ascending order
    return tuple(reversed(desc))


def roots(poly: SelfReciprocalPoly) -> np.ndarray:
    """All ``n`` zeros, projected onto the unit circle and sorted by argument."""
    n, rho = poly.n, float(poly.rho)
    if n == 2:
        s = math.sqrt(max(0.0, 1.0 - rho * rho))
        z = np.array([complex(rho, s), complex(rho, -s)])
    elif n == 3:
        # -(z - 1)(z^2 - (2 rho - 1) z + 1)
        c = rho - 0.5
        s = math.sqrt(max(0.0, 1.0 - c * c))
        z = np.array([1.0 + 0j, complex(c, s), complex(c, -s)])
    elif _is_lower_boundary(poly.rho, n):
        # pol- has (z + 1)^2 (z - 1) times the negated cofactor
        r = residual_factor_coeffs(n)
        neg = [float(a) * (-1) ** k for k, a in enumerate(r)]
        rest = _newton_polish(_companion_roots(neg), neg)
        z = np.concatenate([np.array([-1.0, -1.0, 1.0], dtype=complex), rest])
    else:
        z = _companion_roots(poly.coeffs)
        z = _newton_polish(z, poly.coeffs)
    return _sort_by_angle(_project(z))


def special_roots(case: str, n: int, minus: bool = False) -> np.ndarray:
    """Zeros at the special values ``rho`` in {1, 0, -1/(n-1)}.

    ``case`` is one of ``"rho=1"``, ``"rho=0"``, ``"rho=-1/(n-1)"``.  The
    zeros are those of the parent polynomial ``z^n + 2 rho sum z^i + 1``;
    ``minus=True`` negates them to give the zeros of the mode polynomial.
    """
    _check_prime(n)
    powers = eta_powers(n)
    if case == "rho=1":
        z = np.concatenate([[-1.0 + 0j], powers[1:]])
    elif case == "rho=0":
        # zeros of z^n + 1; equal to -eta^k when n is odd
        z = np.exp(1j * np.pi * (2 * np.arange(n) + 1) / n)
    elif case == "rho=-1/(n-1)":
        if n < 3:
            raise ValueError("rho=-1/(n-1) case requires n >= 3")
        r = residual_factor_coeffs(n)
        rest = _companion_roots([float(a) for a in r]) if n > 3 else np.array([], dtype=complex)
        rest = _newton_polish(rest, [float(a) for a in r]) if len(rest) else rest
        z = np.concatenate([np.array([1.0, 1.0, -1.0], dtype=complex), rest])
    else:
        raise ValueError(f"unknown special case {case!r}")
    z = -z if minus else z
    return _sort_by_angle(_project(z))


def min_root_gap(mu: np.ndarray) -> float:
    if len(mu) < 2:
        return math.inf
    diff = np.abs(mu[:, None] - mu[None, :])
    diff[np.diag_indices(len(mu))] = np.inf
    return float(diff.min())


def closed_form_coefficients(mu: np.ndarray, rho, n: int) -> np.ndarray:
    """Weights ``c^(i)`` from the explicit rational expression in each root."""
    rho = float(rho)
    mu = np.asarray(mu, dtype=complex)
    sign = (-1) ** n
    num = mu**n + (1 - rho) * mu ** (n - 1) - rho * sign
    tail = sum((-mu) ** k for k in range(n - 1))
    den = n * mu**n + (n - 2 * rho * (n - 1)) * mu ** (n - 1) - 2 * rho * sign * tail
    return num / den


def initial_mode_sums(rho, n: int) -> np.ndarray:
    """Normalized ``a(0..n-1)``: ``1, rho, (2 rho - 1) rho, ..., (2 rho - 1)^(n-2) rho``."""
    rho = float(rho)
    return np.array([1.0] + [(2 * rho - 1) ** (t - 1) * rho for t in range(1, n)])


def vandermonde_coefficients(mu: np.ndarray, rho, n: int) -> np.ndarray:
    """Weights ``c`` solving ``sum_i c_i mu_i^t = a(t)`` for ``t < n``."""
    V = np.vander(np.asarray(mu, dtype=complex), n, increasing=True).T
    return np.linalg.solve(V, initial_mode_sums(rho, n).astype(complex))


def spectral_coefficients(mu: np.ndarray, rho, n: int, check: bool = True) -> np.ndarray:
    """Closed-form weights, cross-checked against the Vandermonde solve."""
    mu = np.asarray(mu, dtype=complex)
    if min_root_gap(mu) < DEGENERACY_GAP:
        raise DegenerateSpectrum(f"roots for rho={float(rho)!r}, n={n} are not distinct")
    c = closed_form_coefficients(mu, rho, n)
    if check:
        cv = vandermonde_coefficients(mu, rho, n)
        gap = float(np.max(np.abs(c - cv)))
        if gap > COEFF_AGREEMENT_TOL:
            raise CoefficientMismatch(f"closed form and Vandermonde differ by {gap:.3e}")
    return c


@dataclass(frozen=True)
class ModeSpectrum:
    """Roots and weights for one distance class ``j`` of Fourier modes.

    ``c`` is ``None`` when the distinct-root expansion does not exist
    (degenerate roots, or ``rho`` on the boundary of its range).
    """

    j: int
    n: int
    rho: float
    mu: np.ndarray
    theta: np.ndarray
    c: Optional[np.ndarray]
    degenerate: bool

    @property
    def interior(self) -> bool:
        return lower_bound(self.n) + 1e-14 < float(self.rho) < 1 - 1e-14

    @property
    def expandable(self) -> bool:
        """Whether the distinct-root closed form applies to this class."""
        return self.c is not None and self.interior

    def to_json(self) -> dict:
        return {
            "j": self.j,
            "rho": float(self.rho),
            "mu": [[float(z.real), float(z.imag)] for z in self.mu],
            "theta": [float(a) for a in self.theta],
            "c": None if self.c is None else [[float(z.real), float(z.imag)] for z in self.c],
            "degenerate": self.degenerate,
        }


def mode_spectrum(j: int, rho, n: int) -> ModeSpectrum:
    poly = build_poly(rho, n)
    mu = roots(poly)
    theta = np.mod(np.angle(mu), 2 * np.pi)
    theta[theta > 2 * np.pi - 1e-13] = 0.0
    degenerate = min_root_gap(mu) < DEGENERACY_GAP
    c = None
    if not degenerate:
        c = spectral_coefficients(mu, rho, n)
    return ModeSpectrum(j, n, float(rho), mu, theta, c, degenerate)


def mode_sum_sequence(spec: ModeSpectrum, t, state_size: int):
    """``a(t) = n^{-d/2} sum_i c^(i) mu_i^t``; ``t`` may be an int or an array."""
    if spec.c is None:
        raise DegenerateSpectrum(f"class {spec.j} has no distinct-root expansion")
    t = np.asarray(t)
    if np.any(t < 0):
        raise ValueError("t must be >= 0")
    vals = (spec.c[None, :] * spec.mu[None, :] ** t.reshape(-1, 1)).sum(axis=1)
    vals = vals / math.sqrt(state_size)
    return vals.reshape(t.shape) if t.ndim else complex(vals[0])


def mode_sum_recurrence(rho, n: int, T: int, state_size: int = 1) -> np.ndarray:
    """``a(0..T-1)`` from the initial values and the order-n linear recurrence.

    Valid for every ``rho`` in range, degenerate or not.
    """
    rho = float(rho)
    a = np.zeros(max(T, n))
    a[:n] = initial_mode_sums(rho, n)
    for t in range(n, T):
        a[t] = 2 * rho * sum((-1) ** (j - 1) * a[t - j] for j in range(1, n)) + (-1) ** (n - 1) * a[t - n]
    return a[:T] / math.sqrt(state_size)


def angle_equation_residual(theta, rho, n: int):
    """Residual of ``2 rho = 1 + (cos t - cos n t) / (1 - cos (n-1) t)``."""
    theta = np.asarray(theta, dtype=float)
    return 1 + (np.cos(theta) - np.cos(n * theta)) / (1 - np.cos((n - 1) * theta)) - 2 * float(rho)
