"""Symmetric random walks on H(d, n) whose transition law depends only on distance.

A walk is fixed by class weights ``w_0..w_d``: from ``x`` the walker picks a
distance ``i`` with probability ``w_i`` and then a uniform vertex on the
sphere of radius ``i`` around ``x``.  Weights given as ``Fraction`` keep the
eigenvalues and t-step law exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Optional, Sequence

import numpy as np

from .hamming_scheme import (
    HammingParams,
    KrawtchoukTable,
    SizeError,
    all_vertices,
    build_krawtchouk_table,
    sphere,
    vertex_weights,
)

WALK_KINDS = ("simple", "independent", "nonlocal", "mixture")

# n^d above which the dense transition matrix is refused
DENSE_STATE_LIMIT = 4096
# n^d above which the class-aggregated Markov oracle is refused
MARKOV_STATE_LIMIT = 2**16


def _is_exact(values) -> bool:
    return all(isinstance(v, Rational) for v in values)


@dataclass(frozen=True)
class WalkWeights:
    """Probability ``w[i]`` of jumping to distance ``i``."""

    params: HammingParams
    w: tuple

    def __post_init__(self):
        if len(self.w) != self.params.d + 1:
            raise ValueError(f"need {self.params.d + 1} weights, got {len(self.w)}")
        if any(v < 0 for v in self.w):
            raise ValueError("weights must be nonnegative")
        total = sum(self.w)
        if abs(total - 1) > 1e-12:
            raise ValueError(f"weights sum to {float(total)!r}, not 1")

    @property
    def exact(self) -> bool:
        return _is_exact(self.w)

    def as_array(self) -> np.ndarray:
        return np.array([float(v) for v in self.w])

    def per_vertex(self, table: Optional[KrawtchoukTable] = None) -> tuple:
        """``w_i / kappa_i``: probability of one particular vertex at distance i."""
        table = table or build_krawtchouk_table(self.params)
        if self.exact:
            return tuple(Fraction(v) / k for v, k in zip(self.w, table.kappa))
        return tuple(float(v) / k for v, k in zip(self.w, table.kappa))


@dataclass(frozen=True)
class ClassicalSpectrum:
    """Eigenvalues ``rho[i]`` of the transition matrix, one per distance class."""

    params: HammingParams
    rho: tuple

    def __post_init__(self):
        if self.rho[0] != 1 and abs(self.rho[0] - 1) > 1e-12:
            raise ValueError(f"rho[0] must be 1, got {self.rho[0]!r}")
        lower = -1 / (self.params.n - 1)
        for i, r in enumerate(self.rho):
            if not lower - 1e-12 <= r <= 1 + 1e-12:
                raise ValueError(f"rho[{i}]={float(r)!r} outside [{lower}, 1]")

    @property
    def exact(self) -> bool:
        return _is_exact(self.rho)

    def as_array(self) -> np.ndarray:
        return np.array([float(r) for r in self.rho])


@dataclass(frozen=True)
class ClassDistribution:
    """Per-vertex probability ``p[h]`` at distance ``h`` from the start."""

    params: HammingParams
    p: np.ndarray

    def __post_init__(self):
        kappa = build_krawtchouk_table(self.params).kappa_array()
        total = float(np.dot(kappa, self.p))
        if abs(total - 1) > 1e-10:
            raise ValueError(f"class distribution has total mass {total!r}")

    def class_mass(self) -> np.ndarray:
        return build_krawtchouk_table(self.params).kappa_array() * self.p


def weights_for(kind: str, params: HammingParams, m: Optional[int] = None,
                alpha=None) -> WalkWeights:
    """Class weights for the named walk families.

    ``simple`` moves to a uniform neighbour, ``independent`` to a uniform
    vertex, ``nonlocal`` to a uniform vertex at distance ``m``, and
    ``mixture`` updates each coordinate independently with probability
    ``alpha`` (so the jump distance is Binomial(d, alpha)).
    """
    d, n = params.d, params.n
    if kind == "simple":
        w = [Fraction(int(i == 1)) for i in range(d + 1)]
    elif kind == "independent":
        table = build_krawtchouk_table(params)
        w = [Fraction(k, n**d) for k in table.kappa]
    elif kind == "nonlocal":
        if m is None:
            raise ValueError("nonlocal walk needs the cardinality m")
        if not 2 <= m <= d:
            raise ValueError(f"cardinality m={m} outside 2..{d}")
        w = [Fraction(int(i == m)) for i in range(d + 1)]
    elif kind == "mixture":
        if alpha is None:
            raise ValueError("mixture walk needs the atom alpha")
        if not 0 < alpha < 1:
            raise ValueError(f"alpha={alpha!r} outside (0, 1)")
        w = [math.comb(d, i) * alpha**i * (1 - alpha) ** (d - i) for i in range(d + 1)]
    else:
        raise ValueError(f"unknown walk kind {kind!r}; expected one of {WALK_KINDS}")
    return WalkWeights(params, tuple(w))


def custom_weights(values: Sequence, params: HammingParams, tol: float = 1e-9) -> WalkWeights:
    """Weights from a user list; renormalizes small rounding drift (``tol``)."""
    vals = list(values)
    if len(vals) != params.d + 1:
        raise ValueError(f"need {params.d + 1} weights, got {len(vals)}")
    if any(v < 0 for v in vals):
        raise ValueError("weights must be nonnegative")
    total = sum(vals)
    if abs(total - 1) > tol:
        raise ValueError(f"weights sum to {float(total)!r}, not 1")
    if not _is_exact(vals):
        vals = [float(v) / float(total) for v in vals]
    return WalkWeights(params, tuple(vals))


def eigenvalues(weights: WalkWeights, table: Optional[KrawtchoukTable] = None) -> ClassicalSpectrum:
    """``rho_i = sum_j (w_j / kappa_j) K_j(i)``."""
    table = table or build_krawtchouk_table(weights.params)
    d = weights.params.d
    per_vertex = weights.per_vertex(table)
    rho = [sum(per_vertex[j] * table.K[j][i] for j in range(d + 1)) for i in range(d + 1)]
    if weights.exact:
        rho[0] = Fraction(1) if rho[0] == 1 else rho[0]
    else:
        rho[0] = 1.0 if abs(rho[0] - 1) < 1e-12 else rho[0]
    return ClassicalSpectrum(weights.params, tuple(rho))


def eigenvalues_dual(weights: WalkWeights, table: Optional[KrawtchoukTable] = None) -> tuple:
    """``rho_i = sum_j w_j K_i(j) / kappa_i`` (the dual form of :func:`eigenvalues`)."""
    table = table or build_krawtchouk_table(weights.params)
    d = weights.params.d
    if weights.exact:
        return tuple(
            sum(Fraction(weights.w[j]) * table.K[i][j] for j in range(d + 1)) / table.kappa[i]
            for i in range(d + 1)
        )
    return tuple(
        sum(float(weights.w[j]) * table.K[i][j] for j in range(d + 1)) / table.kappa[i]
        for i in range(d + 1)
    )


def walk_metadata(spec: ClassicalSpectrum, tol: float = 1e-12) -> dict:
    """Periodicity and reducibility read off the spectrum.

    -1 among the eigenvalues means the walk is periodic; eigenvalue 1 with
    multiplicity above one (some ``rho_i == 1`` with ``i > 0``) means it is
    reducible.
    """
    rho = spec.as_array()
    return {
        "periodic": bool(np.any(np.abs(rho + 1) <= tol)),
        "reducible": bool(np.any(np.abs(rho[1:] - 1) <= tol)),
    }


def spectral_transition(spec: ClassicalSpectrum, t: int,
                        table: Optional[KrawtchoukTable] = None) -> ClassDistribution:
    """t-step law ``P_t(h) = n^-d sum_i rho_i^t K_i(h)`` (exact when rho is rational)."""
    if t < 0:
        raise ValueError("t must be >= 0")
    table = table or build_krawtchouk_table(spec.params)
    d, N = spec.params.d, spec.params.size
    if spec.exact:
        powers = [Fraction(r) ** t for r in spec.rho]
        p = [sum(powers[i] * table.K[i][h] for i in range(d + 1)) / N for h in range(d + 1)]
        return ClassDistribution(spec.params, np.array([float(v) for v in p]))
    powers = spec.as_array() ** t
    p = table.as_array().T @ powers / N
    return ClassDistribution(spec.params, p)


def exact_spectral_transition(spec: ClassicalSpectrum, t: int,
                              table: Optional[KrawtchoukTable] = None) -> tuple:
    """Rational ``P_t(h)`` for rational spectra."""
    if not spec.exact:
        raise TypeError("spectrum is not rational")
    table = table or build_krawtchouk_table(spec.params)
    d, N = spec.params.d, spec.params.size
    powers = [Fraction(r) ** t for r in spec.rho]
    return tuple(sum(powers[i] * table.K[i][h] for i in range(d + 1)) / N for h in range(d + 1))


def _shifts_by_class(params: HammingParams):
    """For each class h, the index maps ``x -> x + z`` for every ``|z| = h``."""
    digits = all_vertices(params)
    n, d = params.n, params.d
    radix = n ** np.arange(d - 1, -1, -1)
    out = []
    for h in range(d + 1):
        zs = digits[sphere(h, params)]
        out.append(((digits[None, :, :] + zs[:, None, :]) % n) @ radix)
    return out


def _aggregate(params: HammingParams, prob: np.ndarray) -> np.ndarray:
    w = vertex_weights(params)
    return np.array([prob[w == h].mean() for h in range(params.d + 1)])


def brute_force_markov(weights: WalkWeights, t: int, dense: bool = False) -> ClassDistribution:
    """t-step law from vertex 0 by direct iteration, aggregated by distance.

    The default path pushes mass along every jump vector class by class
    (``O(n^{2d})`` per step, no matrix).  ``dense=True`` forms the full
    transition matrix and takes its t-th power; it is limited to
    ``n^d <= DENSE_STATE_LIMIT``.
    """
    params = weights.params
    N = params.size
    if t < 0:
        raise ValueError("t must be >= 0")
    per_vertex = np.array([float(v) for v in weights.per_vertex()])
    if dense:
        if N > DENSE_STATE_LIMIT:
            raise SizeError(f"dense transition matrix needs n^d <= {DENSE_STATE_LIMIT}, got {N}")
        digits = all_vertices(params)
        dist = (digits[:, None, :] != digits[None, :, :]).sum(axis=2)
        P = per_vertex[dist]
        row = np.linalg.matrix_power(P, t)[0]
        return ClassDistribution(params, _aggregate(params, row))
    if N > MARKOV_STATE_LIMIT:
        raise SizeError(f"Markov oracle needs n^d <= {MARKOV_STATE_LIMIT}, got {N}")
    shifts = _shifts_by_class(params)
    prob = np.zeros(N)
    prob[0] = 1.0
    for _ in range(t):
        new = np.zeros(N)
        for h, targets in enumerate(shifts):
            if per_vertex[h] == 0:
                continue
            # mass at x flows to every x + z with |z| = h
            np.add.at(new, targets.ravel(), np.tile(per_vertex[h] * prob, len(targets)))
        prob = new
    return ClassDistribution(params, _aggregate(params, prob))


def eagleson_kernel(spec: ClassicalSpectrum, table: Optional[KrawtchoukTable] = None) -> np.ndarray:
    """Transition kernel ``P(L(t+1)=l' | L(t)=l)`` of the distance-class chain.

    Row ``l`` is the law of the next distance given the current one; the
    Binomial(d, 1-1/n) law is stationary.
    """
    table = table or build_krawtchouk_table(spec.params)
    d, n = spec.params.d, spec.params.n
    Q = table.as_array() / table.kappa_array()[:, None]
    rho = spec.as_array()
    binom = np.array([math.comb(d, l) * (1 - 1 / n) ** l * (1 / n) ** (d - l) for l in range(d + 1)])
    # kernel[l, l'] = binom[l'] * sum_i rho_i Q_i(l') Q_i(l)
    return binom[None, :] * (Q.T @ (rho[:, None] * Q))


def binomial_stationary(params: HammingParams) -> np.ndarray:
    d, n = params.d, params.n
    return np.array([math.comb(d, l) * (1 - 1 / n) ** l * (1 / n) ** (d - l) for l in range(d + 1)])
