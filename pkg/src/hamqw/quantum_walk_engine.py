"""Coined quantum walk on H(d, n) with the Szegedy coin of a symmetric walk.

The state is a complex array ``psi[y, x]`` (coin register ``y``, position
``x``, both as vertex indices).  One step applies the coin ``C = 2 p p^T - I``
to the coin register and then moves amplitude by the coin value:

    psi_{y,x}(t+1) = sum_{y'} C_{y,y'} psi_{y', x+y}(t).

Three independent ways of getting ``psi(t)`` are provided:

* ``bruteforce``  -- iterate the step above on the full ``n^{2d}`` array;
* ``fourier``     -- transform the position register and iterate the
  decoupled per-mode recursion;
* ``spectral``    -- evaluate the closed form built from the roots of the
  mode polynomials and the Krawtchouk table.

The initial state puts the walker at position 0 with coin amplitudes
``sqrt(w_|y| / kappa_|y|)``, i.e. ``psi_{y,x}(0) = delta_{x,0} p_y``.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .classical_walk import ClassicalSpectrum, WalkWeights, eigenvalues
from .hamming_scheme import (
    HammingParams,
    KrawtchoukTable,
    SizeError,
    all_vertices,
    as_vertex,
    build_krawtchouk_table,
    class_representative,
    eta_powers,
    vertex_index,
    vertex_weights,
)
from .unit_circle_spectrum import (
    ModeSpectrum,
    build_poly,
    mode_spectrum,
    mode_sum_recurrence,
    roots,
)

# n^{2d} above which full wave vectors (and the index tables behind them) are refused
MAX_AMPLITUDES = 2**22
# n^d above which dense coin / mode matrices are refused
DENSE_COIN_LIMIT = 1024

PATHS = ("bruteforce", "fourier", "spectral")


class HypothesisViolated(ValueError):
    """The closed-form wave vector does not apply to this walk.

    Raised when some class eigenvalue sits on the boundary of its range or
    its mode roots are not distinct.
    """


def _guard_amplitudes(params: HammingParams) -> None:
    if params.size**2 > MAX_AMPLITUDES:
        raise SizeError(f"{params.size}^2 amplitudes exceed the limit {MAX_AMPLITUDES}")


@functools.lru_cache(maxsize=8)
def _add_table(d: int, n: int, times: int) -> np.ndarray:
    """``table[y, x] = index(x + times*y)``."""
    digits = all_vertices(HammingParams(d, n))
    radix = n ** np.arange(d - 1, -1, -1)
    out = ((digits[None, :, :] + times * digits[:, None, :]) % n) @ radix
    out.setflags(write=False)
    return out


@functools.lru_cache(maxsize=8)
def _dot_table(d: int, n: int) -> np.ndarray:
    """``table[y, xi] = (y . xi) mod n``."""
    digits = all_vertices(HammingParams(d, n))
    out = (digits @ digits.T) % n
    out.setflags(write=False)
    return out


def _class_of_sum(params: HammingParams, times: int, xs: Optional[np.ndarray] = None) -> np.ndarray:
    """``|x + times*y|`` for all y (rows) and the positions ``xs`` (columns)."""
    digits = all_vertices(params)
    pos = digits if xs is None else digits[xs]
    return np.count_nonzero((pos[None, :, :] + times * digits[:, None, :]) % params.n, axis=2)


@dataclass(frozen=True)
class CoinSpec:
    """Szegedy coin ``C = 2 p p^T - I`` with ``p_y = sqrt(w_|y| / kappa_|y|)``."""

    weights: WalkWeights
    p: np.ndarray = field(init=False, repr=False)
    p_class: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        params = self.weights.params
        pv = np.array([float(v) for v in self.weights.per_vertex()])
        p_class = np.sqrt(pv)
        p = p_class[vertex_weights(params)]
        if abs(np.dot(p, p) - 1) > 1e-12:
            raise ValueError(f"coin vector has squared norm {np.dot(p, p)!r}")
        p.setflags(write=False)
        p_class.setflags(write=False)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "p_class", p_class)

    @property
    def params(self) -> HammingParams:
        return self.weights.params

    def apply(self, psi: np.ndarray) -> np.ndarray:
        """Coin on axis 0 via the rank-one form: ``2 p (p . psi) - psi``."""
        return 2 * np.multiply.outer(self.p, self.p @ psi) - psi

    def dense(self) -> np.ndarray:
        N = self.params.size
        if N > DENSE_COIN_LIMIT:
            raise SizeError(f"dense coin needs n^d <= {DENSE_COIN_LIMIT}, got {N}")
        return 2 * np.outer(self.p, self.p) - np.eye(N)


def coin_for(weights: WalkWeights) -> CoinSpec:
    return CoinSpec(weights)


@dataclass
class WaveVector:
    t: int
    psi: np.ndarray
    params: HammingParams
    path: str = "bruteforce"

    def norm2(self) -> float:
        return float(np.sum(np.abs(self.psi) ** 2))

    def max_imag(self) -> float:
        return float(np.max(np.abs(self.psi.imag)))

    def amplitude(self, y: Sequence[int], x: Sequence[int]) -> complex:
        return complex(self.psi[vertex_index(y, self.params), vertex_index(x, self.params)])

    def to_json(self) -> dict:
        return {
            "t": self.t,
            "d": self.params.d,
            "n": self.params.n,
            "path": self.path,
            "psi": [[[float(v.real), float(v.imag)] for v in row] for row in self.psi],
        }


@dataclass
class FourierField:
    t: int
    psi_tilde: np.ndarray
    params: HammingParams


@dataclass
class PositionDistribution:
    t: int
    P: np.ndarray
    params: HammingParams

    def class_values(self) -> np.ndarray:
        """Per-vertex probability on each sphere, read at the class representative."""
        reps = [vertex_index(class_representative(h, self.params), self.params)
                for h in range(self.params.d + 1)]
        return self.P[reps]

    def class_spread(self) -> float:
        """Largest deviation of ``P`` from constancy on a sphere."""
        w = vertex_weights(self.params)
        return max(float(np.ptp(self.P[w == h])) for h in range(self.params.d + 1))


def initial_state(coin: CoinSpec) -> WaveVector:
    params = coin.params
    _guard_amplitudes(params)
    psi = np.zeros((params.size, params.size), dtype=complex)
    psi[:, 0] = coin.p
    return WaveVector(0, psi, params)


def step_bruteforce(state: WaveVector, coin: CoinSpec) -> WaveVector:
    params = state.params
    _guard_amplitudes(params)
    phi = coin.apply(state.psi)
    add = _add_table(params.d, params.n, 1)
    return WaveVector(state.t + 1, np.take_along_axis(phi, add, axis=1), params, state.path)


def evolve_bruteforce(coin: CoinSpec, t: int) -> WaveVector:
    state = initial_state(coin)
    for _ in range(t):
        state = step_bruteforce(state, coin)
    return state


def position_distribution(state: WaveVector) -> PositionDistribution:
    return PositionDistribution(state.t, np.sum(np.abs(state.psi) ** 2, axis=0), state.params)


def fourier_forward(state: WaveVector) -> FourierField:
    """``psi~_{y,xi} = n^{-d/2} sum_x eta^{xi.x} psi_{y,x}``."""
    params = state.params
    params.require_prime()
    shape = (params.size,) + (params.n,) * params.d
    axes = tuple(range(1, params.d + 1))
    out = np.fft.ifftn(state.psi.reshape(shape), axes=axes, norm="ortho")
    return FourierField(state.t, out.reshape(params.size, params.size), params)


def fourier_inverse(field_: FourierField) -> WaveVector:
    """``psi_{y,x} = n^{-d/2} sum_xi eta^{-xi.x} psi~_{y,xi}``."""
    params = field_.params
    params.require_prime()
    shape = (params.size,) + (params.n,) * params.d
    axes = tuple(range(1, params.d + 1))
    out = np.fft.fftn(field_.psi_tilde.reshape(shape), axes=axes, norm="ortho")
    return WaveVector(field_.t, out.reshape(params.size, params.size), params, "fourier")


def mode_phases(params: HammingParams) -> np.ndarray:
    """``eta^{-(xi . y)}`` indexed ``[y, xi]``."""
    dots = _dot_table(params.d, params.n)
    return eta_powers(params.n)[(-dots) % params.n]


def fourier_step(field_: FourierField, coin: CoinSpec) -> FourierField:
    """``psi~_{y,xi}(t+1) = eta^{-xi.y} sum_{y'} C_{y,y'} psi~_{y',xi}(t)``."""
    params = field_.params
    params.require_prime()
    _guard_amplitudes(params)
    out = mode_phases(params) * coin.apply(field_.psi_tilde)
    return FourierField(field_.t + 1, out, params)


def evolve_fourier(coin: CoinSpec, t: int) -> WaveVector:
    field_ = fourier_forward(initial_state(coin))
    for _ in range(t):
        field_ = fourier_step(field_, coin)
    return fourier_inverse(field_)


def mode_matrix(coin: CoinSpec, xi: Sequence[int]) -> np.ndarray:
    """Dense per-mode unitary ``diag(eta^{-xi.y}) C``."""
    params = coin.params
    params.require_prime()
    xi_idx = vertex_index(xi, params)
    phases = mode_phases(params)[:, xi_idx]
    return phases[:, None] * coin.dense()


# ---------------------------------------------------------------------------
# closed forms

def class_spectrum(coin: CoinSpec) -> ClassicalSpectrum:
    return eigenvalues(coin.weights)


def mode_spectra(coin: CoinSpec) -> list:
    """One :class:`ModeSpectrum` per class ``j = 1..d``."""
    params = coin.params
    params.require_prime()
    rho = class_spectrum(coin).rho
    return [mode_spectrum(j, rho[j], params.n) for j in range(1, params.d + 1)]


def _check_mode_args(spec: ModeSpectrum, n: int) -> None:
    if spec.n != n:
        raise ValueError(f"mode spectrum is for n={spec.n}, walk has n={n}")
    if not spec.expandable:
        raise HypothesisViolated(
            f"class {spec.j}: rho={spec.rho!r} is on the boundary or its roots are not distinct"
        )


def bracket_closed(spec: ModeSpectrum, k: int, t) -> np.ndarray:
    """Growth factor ``psi~(t) / psi~(0)`` of a mode with ``y . xi = k``.

    ``(-eta^{-k})^t (1 - sum_i 2c_i / (1 + eta^k mu_i)) + sum_i 2 c_i mu_i^t / (1 + eta^k mu_i)``
    """
    n = spec.n
    _check_mode_args(spec, n)
    powers = eta_powers(n)
    t = np.asarray(t)
    ek = powers[k % n]
    denom = 1 + ek * spec.mu
    weights = 2 * spec.c / denom
    transient_phase = -powers[(-k) % n]
    tt = t.reshape(-1, 1)
    osc = (weights[None, :] * spec.mu[None, :] ** tt).sum(axis=1)
    out = transient_phase ** t.reshape(-1) * (1 - weights.sum()) + osc
    return out.reshape(t.shape)


def bracket_recurrence(rho, n: int, k: int, T: int) -> np.ndarray:
    """Same growth factor for ``t = 0..T-1`` by iterating the reduced recursion.

    Uses only the scalar mode sum recurrence, so it is valid on the boundary
    of the eigenvalue range and for repeated roots.
    """
    a = mode_sum_recurrence(rho, n, T)
    ph = eta_powers(n)[(-k) % n]
    f = np.empty(T, dtype=complex)
    f[0] = 1.0
    for s in range(T - 1):
        f[s + 1] = ph * (2 * a[s] - f[s])
    return f


def mode_closed_form(coin: CoinSpec, spec: ModeSpectrum, y: Sequence[int],
                     xi: Sequence[int], t: int) -> complex:
    """Closed-form ``psi~_{y,xi}(t)`` for a nonzero mode ``xi`` with ``|xi| = spec.j``."""
    params = coin.params
    params.require_prime()
    y = as_vertex(y, params)
    xi = as_vertex(xi, params)
    if not any(xi):
        raise ValueError("xi = 0 is the constant mode; use psi~(0)")
    if sum(1 for a in xi if a) != spec.j:
        raise ValueError(f"|xi| = {sum(1 for a in xi if a)} but spectrum is for class {spec.j}")
    _check_mode_args(spec, params.n)
    k = sum(a * b for a, b in zip(y, xi)) % params.n
    psi0 = coin.p[vertex_index(y, params)] / math.sqrt(params.size)
    return complex(bracket_closed(spec, k, t) * psi0)


@dataclass
class BracketTable:
    """Growth factors ``B[j, k, s]`` for classes ``j``, residues ``k``, times ``t[s]``.

    ``path[j]`` records whether class ``j`` came from the root expansion
    (``"closed"``) or from the scalar recurrence (``"recurrence"``).
    """

    t: np.ndarray
    B: np.ndarray
    path: dict


def bracket_table(coin: CoinSpec, t, fallback: bool = False) -> BracketTable:
    params = coin.params
    n, d = params.n, params.d
    t = np.atleast_1d(np.asarray(t, dtype=np.int64))
    specs = mode_spectra(coin)
    B = np.zeros((d + 1, n, len(t)), dtype=complex)
    B[0] = 1.0
    paths = {}
    T = int(t.max()) + 1 if len(t) else 1
    for spec in specs:
        if spec.expandable:
            for k in range(n):
                B[spec.j, k] = bracket_closed(spec, k, t)
            paths[spec.j] = "closed"
        elif fallback:
            for k in range(n):
                B[spec.j, k] = bracket_recurrence(spec.rho, n, k, T)[t]
            paths[spec.j] = "recurrence"
        else:
            raise HypothesisViolated(
                f"class {spec.j}: rho={spec.rho!r} is on the boundary or its roots are not distinct"
            )
    return BracketTable(t, B, paths)


def _wave_from_brackets(coin: CoinSpec, table: KrawtchoukTable, B: np.ndarray,
                        xs: Optional[np.ndarray]) -> np.ndarray:
    """Assemble ``psi[y, x]`` for one time from growth factors ``B[j, k]``.

    ``psi_{y,x} = n^{-d} p_y sum_{k,l} eta^{lk}/n (1 + sum_j K_j(|x + l y|) B[j, k])``
    """
    params = coin.params
    n, d = params.n, params.d
    powers = eta_powers(n)
    lk = np.outer(np.arange(n), np.arange(n)) % n
    # G[l, j] = sum_k eta^{lk}/n B[j, k]; B[0] = 1 yields the leading 1
    G = (powers[lk] / n) @ B.T
    H = G @ table.as_array()  # H[l, h] = sum_j G[l, j] K_j(h)
    acc = np.zeros((params.size, params.size if xs is None else len(xs)), dtype=complex)
    for l in range(n):
        acc += H[l][_class_of_sum(params, l, xs)]
    return coin.p[:, None] * acc / params.size


def wave_spectral_general(coin: CoinSpec, t: int, fallback: bool = False,
                          xs: Optional[np.ndarray] = None) -> WaveVector:
    """Closed-form wave vector for prime ``n``.

    Every class ``j >= 1`` must have ``-1/(n-1) < rho_j < 1`` with distinct
    roots; otherwise :class:`HypothesisViolated` is raised, unless
    ``fallback=True``, in which case the offending classes are evaluated
    from the scalar mode recurrence and the result's ``path`` says which.
    ``xs`` restricts the position columns (vertex indices).
    """
    params = coin.params
    params.require_prime()
    if xs is None:
        _guard_amplitudes(params)
    table = build_krawtchouk_table(params)
    bt = bracket_table(coin, [t], fallback=fallback)
    psi = _wave_from_brackets(coin, table, bt.B[:, :, 0], xs)
    rec = sorted(j for j, p in bt.path.items() if p == "recurrence")
    path = "spectral" if not rec else f"spectral+recurrence{rec}"
    return WaveVector(t, psi, params, path)


def _n2_coefficients(rho: np.ndarray, t: int):
    """Per-class multipliers of ``K_j(|x|)`` and ``K_j(|x+y|)`` in the n = 2 form."""
    d = len(rho) - 1
    alpha = np.zeros(d + 1, dtype=complex)
    beta = np.zeros(d + 1, dtype=complex)
    for j in range(1, d + 1):
        r = float(rho[j])
        if abs(r - 1) <= 1e-14:
            alpha[j] = 1 - t
            beta[j] = t
        elif abs(r + 1) <= 1e-14:
            alpha[j] = (-1) ** t * (1 - t)
            beta[j] = -((-1) ** t) * t
        else:
            s = math.sqrt(1 - r * r)
            mu = np.array([complex(r, s), complex(r, -s)])
            den = 1 - r * mu
            alpha[j] = 0.5 * np.sum(mu**t / den)
            beta[j] = -0.5 * np.sum(mu ** (t + 1) / den)
    return alpha, beta


def wave_spectral_n2(coin: CoinSpec, t: int, xs: Optional[np.ndarray] = None) -> WaveVector:
    """Closed-form wave vector on the hypercube (all eigenvalue cases)."""
    params = coin.params
    if params.n != 2:
        raise ValueError("wave_spectral_n2 needs n = 2")
    if t < 0:
        raise ValueError("t must be >= 0")
    if xs is None:
        _guard_amplitudes(params)
    table = build_krawtchouk_table(params)
    Kmat = table.as_array()
    rho = class_spectrum(coin).as_array()
    alpha, beta = _n2_coefficients(rho, t)
    h_x = alpha @ Kmat        # sum_j alpha_j K_j(h)
    h_xy = beta @ Kmat
    acc = 1 + h_x[_class_of_sum(params, 0, xs)] + h_xy[_class_of_sum(params, 1, xs)]
    return WaveVector(t, coin.p[:, None] * acc / params.size, params, "spectral")


def wave_vector(coin: CoinSpec, t: int, path: str = "auto") -> WaveVector:
    """``psi(t)`` by the requested path.

    ``auto`` prefers the closed form and falls back to the per-class scalar
    recurrence wherever the closed form's hypotheses fail; ``spectral``
    raises :class:`HypothesisViolated` instead.
    """
    params = coin.params
    if path == "bruteforce":
        return evolve_bruteforce(coin, t)
    if path == "fourier":
        return evolve_fourier(coin, t)
    if path in ("spectral", "auto"):
        if params.n == 2:
            return wave_spectral_n2(coin, t)
        return wave_spectral_general(coin, t, fallback=(path == "auto"))
    raise ValueError(f"unknown path {path!r}; expected one of {PATHS + ('auto',)}")


def class_position_probabilities(coin: CoinSpec, ts, path: str = "auto") -> tuple:
    """Per-vertex ``P_t`` on each sphere for every ``t`` in ``ts``.

    Uses the class-representative columns only, so the closed-form paths
    cost ``O(n^d (d+1))`` per time instead of ``O(n^{2d})``.  Returns
    ``(probs[s, h], path_used)``.
    """
    params = coin.params
    ts = np.atleast_1d(np.asarray(ts, dtype=np.int64))
    reps = np.array([vertex_index(class_representative(h, params), params)
                     for h in range(params.d + 1)])
    out = np.empty((len(ts), params.d + 1))
    if path in ("bruteforce", "fourier"):
        if np.any(np.diff(ts) < 0):
            raise ValueError("iterative paths need nondecreasing times")
        if path == "bruteforce":
            state = initial_state(coin)
            advance = lambda s: step_bruteforce(s, coin)  # noqa: E731
            read = lambda s: s.psi  # noqa: E731
        else:
            state = fourier_forward(initial_state(coin))
            advance = lambda s: fourier_step(s, coin)  # noqa: E731
            read = lambda s: fourier_inverse(s).psi  # noqa: E731
        for s, t in enumerate(ts):
            while state.t < t:
                state = advance(state)
            out[s] = np.sum(np.abs(read(state)[:, reps]) ** 2, axis=0)
        return out, path
    if path not in ("spectral", "auto"):
        raise ValueError(f"unknown path {path!r}")
    table = build_krawtchouk_table(params)
    if params.n == 2:
        for s, t in enumerate(ts):
            out[s] = np.sum(np.abs(wave_spectral_n2(coin, int(t), xs=reps).psi) ** 2, axis=0)
        return out, "spectral"
    bt = bracket_table(coin, ts, fallback=(path == "auto"))
    for s in range(len(ts)):
        psi = _wave_from_brackets(coin, table, bt.B[:, :, s], reps)
        out[s] = np.sum(np.abs(psi) ** 2, axis=0)
    rec = sorted(j for j, p in bt.path.items() if p == "recurrence")
    return out, ("spectral" if not rec else f"spectral+recurrence{rec}")


def mode_unitary_eigencheck(coin: CoinSpec, xi: Sequence[int], tol: float = 1e-8) -> dict:
    """Compare the mode polynomial's roots with the spectrum of the mode unitary.

    Returns the distance from each root to the nearest eigenvalue of
    ``diag(eta^{-xi.y}) C`` together with the eigenvalues themselves.
    """
    params = coin.params
    xi = as_vertex(xi, params)
    M = mode_matrix(coin, xi)
    ev = np.linalg.eigvals(M)
    j = sum(1 for a in xi if a)
    rho = class_spectrum(coin).rho[j]
    mu = roots(build_poly(rho, params.n))
    dist = np.array([np.min(np.abs(ev - z)) for z in mu])
    return {
        "xi": xi,
        "class": j,
        "rho": float(rho),
        "roots": mu,
        "eigenvalues": ev,
        "distances": dist,
        "contained": bool(np.all(dist <= tol)),
    }
