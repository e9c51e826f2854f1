"""Hamming scheme H(d, n): vertices, distances, Krawtchouk tables.

Vertices of ``X = {0, ..., n-1}^d`` are addressed either by their digit
tuple or by their index in base-n lexicographic order (the first digit is
the most significant).  Every other module in the package relies on this
layout, so ``vertex_index``/``index_vertex`` are part of the public API.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence, Union

import numpy as np

# Largest state space n^d we agree to describe at all.
MAX_STATES = 2**40
# Largest n^d for which per-vertex arrays are materialized.
MAX_INDEXED_STATES = 2**22

Vertex = tuple


class SizeError(ValueError):
    """A requested object would exceed a configured size guard."""


class PrimalityError(ValueError):
    """An operation that needs a prime alphabet size got a composite one."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in range(2, math.isqrt(n) + 1):
        if n % p == 0:
            return False
    return True


@dataclass(frozen=True)
class HammingParams:
    """Dimension ``d`` and alphabet size ``n`` of the Hamming graph."""

    d: int
    n: int
    prime: bool = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.d, (int, np.integer)) or not isinstance(self.n, (int, np.integer)):
            raise TypeError("d and n must be integers")
        if self.d < 2 or self.n < 2:
            raise ValueError(f"need d >= 2 and n >= 2, got d={self.d}, n={self.n}")
        if self.n**self.d > MAX_STATES:
            raise SizeError(f"state space {self.n}^{self.d} exceeds {MAX_STATES}")
        object.__setattr__(self, "prime", is_prime(int(self.n)))

    @property
    def size(self) -> int:
        """Number of vertices ``n**d``."""
        return self.n**self.d

    def require_prime(self) -> None:
        if not self.prime:
            raise PrimalityError(f"n={self.n} is not prime")


def as_vertex(x: Sequence[int], params: HammingParams) -> Vertex:
    """Validate a digit sequence and return it as a tuple of ints."""
    v = tuple(int(a) for a in x)
    if len(v) != params.d:
        raise ValueError(f"vertex {v} has length {len(v)}, expected d={params.d}")
    if any(a < 0 or a >= params.n for a in v):
        raise ValueError(f"vertex {v} has digits outside 0..{params.n - 1}")
    return v


def weight(x: Sequence[int]) -> int:
    """Number of nonzero digits, i.e. the distance from the origin."""
    return sum(1 for a in x if a != 0)


def distance(x: Sequence[int], y: Sequence[int]) -> int:
    """Hamming distance: the number of coordinates where ``x`` and ``y`` differ."""
    if len(x) != len(y):
        raise ValueError(f"dimension mismatch: {len(x)} vs {len(y)}")
    return sum(1 for a, b in zip(x, y) if a != b)


def vertex_index(x: Sequence[int], params: HammingParams) -> int:
    idx = 0
    for a in as_vertex(x, params):
        idx = idx * params.n + a
    return idx


def index_vertex(i: int, params: HammingParams) -> Vertex:
    if not 0 <= i < params.size:
        raise IndexError(f"index {i} outside 0..{params.size - 1}")
    digits = []
    for _ in range(params.d):
        i, r = divmod(i, params.n)
        digits.append(r)
    return tuple(reversed(digits))


def vertex_add(x: Sequence[int], y: Sequence[int], n: int, times: int = 1) -> Vertex:
    """Componentwise ``x + times*y`` modulo ``n``."""
    return tuple((a + times * b) % n for a, b in zip(x, y))


@functools.lru_cache(maxsize=None)
def _digits_cached(d: int, n: int) -> np.ndarray:
    if n**d > MAX_INDEXED_STATES:
        raise SizeError(f"{n}^{d} vertices exceed the indexing limit {MAX_INDEXED_STATES}")
    grids = np.indices((n,) * d).reshape(d, -1).T
    grids = np.ascontiguousarray(grids, dtype=np.int64)
    grids.setflags(write=False)
    return grids


def all_vertices(params: HammingParams) -> np.ndarray:
    """Digits of every vertex, shape ``(n**d, d)``, in index order (read-only)."""
    return _digits_cached(params.d, params.n)


@functools.lru_cache(maxsize=None)
def _weights_cached(d: int, n: int) -> np.ndarray:
    w = np.count_nonzero(_digits_cached(d, n), axis=1)
    w.setflags(write=False)
    return w


def vertex_weights(params: HammingParams) -> np.ndarray:
    """``|x|`` for every vertex index (read-only int array)."""
    return _weights_cached(params.d, params.n)


def sphere(h: int, params: HammingParams) -> np.ndarray:
    """Indices of all vertices at distance ``h`` from the origin."""
    if not 0 <= h <= params.d:
        raise ValueError(f"distance class {h} outside 0..{params.d}")
    return np.flatnonzero(vertex_weights(params) == h)


def class_representative(h: int, params: HammingParams) -> Vertex:
    """The vertex ``(1, ..., 1, 0, ..., 0)`` with ``h`` leading ones."""
    return tuple([1] * h + [0] * (params.d - h))


@dataclass(frozen=True)
class KrawtchoukTable:
    """Exact Krawtchouk values ``K[i][j] = K_i(j)`` and sphere sizes."""

    params: HammingParams
    K: tuple
    kappa: tuple

    def Q(self, i: int, j: int) -> Fraction:
        """Normalized value ``K_i(j) / kappa_i``."""
        return Fraction(self.K[i][j], self.kappa[i])

    def as_array(self) -> np.ndarray:
        return np.array(self.K, dtype=float)

    def kappa_array(self) -> np.ndarray:
        return np.array(self.kappa, dtype=float)

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.K)


def krawtchouk_value(i: int, j: int, d: int, n: int) -> int:
    """Alternating binomial sum for ``K_i(j)`` on H(d, n)."""
    return sum(
        (-1) ** l * (n - 1) ** (i - l) * math.comb(j, l) * math.comb(d - j, i - l)
        for l in range(i + 1)
    )


# Python ints never overflow; the guard protects the float conversion
# done at the linear-algebra boundary.
_FLOAT_SAFE = 2**53


@functools.lru_cache(maxsize=None)
def _table_cached(d: int, n: int) -> KrawtchoukTable:
    params = HammingParams(d, n)
    K = tuple(tuple(krawtchouk_value(i, j, d, n) for j in range(d + 1)) for i in range(d + 1))
    kappa = tuple((n - 1) ** i * math.comb(d, i) for i in range(d + 1))
    if max(kappa) > _FLOAT_SAFE:
        raise SizeError(f"Krawtchouk values for H({d},{n}) are not exactly representable as floats")
    return KrawtchoukTable(params, K, kappa)


def build_krawtchouk_table(params: HammingParams) -> KrawtchoukTable:
    return _table_cached(params.d, params.n)


def krawtchouk_by_genfun(j: int, params: HammingParams) -> tuple:
    """Coefficients of ``(1 + (n-1)s)^(d-j) (1-s)^j`` for ``s^0..s^d``.

    Entry ``l`` equals ``K_l(j)``; this is an independent construction of
    column ``j`` of the Krawtchouk table by polynomial multiplication.
    """
    d, n = params.d, params.n
    if not 0 <= j <= d:
        raise ValueError(f"j={j} outside 0..{d}")
    poly = [1]
    for factor in [(1, n - 1)] * (d - j) + [(1, -1)] * j:
        out = [0] * (len(poly) + 1)
        for a, c in enumerate(poly):
            out[a] += c * factor[0]
            out[a + 1] += c * factor[1]
        poly = out
    return tuple(poly)


def check_orthogonality(table: KrawtchoukTable) -> bool:
    """Binomial(d, 1-1/n) orthogonality, in exact rational arithmetic."""
    d, n = table.params.d, table.params.n
    q = Fraction(n - 1, n)
    mass = [math.comb(d, l) * q**l * (1 - q) ** (d - l) for l in range(d + 1)]
    for i in range(d + 1):
        for j in range(i, d + 1):
            s = sum(table.K[i][l] * table.K[j][l] * mass[l] for l in range(d + 1))
            if s != (table.kappa[i] if i == j else 0):
                return False
    return True


def check_duality(table: KrawtchoukTable) -> bool:
    """``K_i(j)/kappa_i == K_j(i)/kappa_j`` exactly for all i, j."""
    d = table.params.d
    return all(table.Q(i, j) == table.Q(j, i) for i in range(d + 1) for j in range(d + 1))


def eta(n: int) -> complex:
    """Principal n-th root of unity ``exp(2 pi i / n)``."""
    if n < 2:
        raise ValueError("n must be >= 2")
    return eta_powers(n)[1]


@functools.lru_cache(maxsize=None)
def _eta_powers_cached(n: int) -> np.ndarray:
    k = np.arange(n)
    table = np.exp(2j * np.pi * k / n)
    # quarter turns are exact
    for m in range(n):
        if (4 * m) % n == 0:
            table[m] = (1, 1j, -1, -1j)[(4 * m // n) % 4]
    table.setflags(write=False)
    return table


def eta_powers(n: int) -> np.ndarray:
    """``eta**k`` for ``k = 0..n-1``; index with ``k % n`` to avoid phase drift."""
    return _eta_powers_cached(n)


FunctionOnClasses = Union[Sequence[complex], Callable[[int], complex]]


def _class_values(f: FunctionOnClasses, d: int) -> list:
    if callable(f):
        return [f(h) for h in range(d + 1)]
    vals = list(f)
    if len(vals) != d + 1:
        raise ValueError(f"expected {d + 1} class values, got {len(vals)}")
    return vals


def character_sum(f: FunctionOnClasses, xi: Sequence[int], k: int, params: HammingParams) -> complex:
    """Brute-force ``sum_z eta^(k xi.z) f(|z|)`` over all of ``X``."""
    params.require_prime()
    n = params.n
    if not 1 <= k <= n - 1:
        raise ValueError(f"k={k} outside 1..{n - 1}")
    xi = as_vertex(xi, params)
    vals = _class_values(f, params.d)
    powers = eta_powers(n)
    total = 0j
    for z in itertools.product(range(n), repeat=params.d):
        phase = (k * sum(a * b for a, b in zip(xi, z))) % n
        total += powers[phase] * vals[weight(z)]
    return complex(total)


def character_sum_dual(f: FunctionOnClasses, z: Sequence[int], k: int, params: HammingParams) -> complex:
    """Brute-force ``sum_xi eta^(-k xi.z) f(|xi|)``."""
    params.require_prime()
    n = params.n
    if not 1 <= k <= n - 1:
        raise ValueError(f"k={k} outside 1..{n - 1}")
    z = as_vertex(z, params)
    vals = _class_values(f, params.d)
    powers = eta_powers(n)
    total = 0j
    for xi in itertools.product(range(n), repeat=params.d):
        phase = (-k * sum(a * b for a, b in zip(xi, z))) % n
        total += powers[phase] * vals[weight(xi)]
    return complex(total)


def krawtchouk_transform(f: FunctionOnClasses, h: int, table: KrawtchoukTable) -> complex:
    """``sum_j K_j(h) f(j)``, the class-level value of both character sums."""
    vals = _class_values(f, table.params.d)
    return sum(table.K[j][h] * vals[j] for j in range(table.params.d + 1))
