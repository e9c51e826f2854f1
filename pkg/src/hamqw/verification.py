"""Self-check suites shared by the command line and the test-suite.

Each suite returns a list of result dicts with keys ``suite``, ``name``,
``passed``, ``max_residual`` and ``tolerance``.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .classical_walk import brute_force_markov, eigenvalues, spectral_transition, weights_for
from .hamming_scheme import HammingParams
from .limit_distributions import (
    LIMIT_FORMS,
    cesaro_sequence,
    identity_suite,
    limit_example,
    walk_for_example,
)
from .quantum_walk_engine import CoinSpec, class_position_probabilities, wave_vector
from .unit_circle_spectrum import (
    DegenerateSpectrum,
    build_poly,
    closed_form_coefficients,
    lower_bound,
    min_root_gap,
    roots,
    vandermonde_coefficients,
)

SUITES = ("identities", "oracle", "spectrum", "limits")

ORACLE_CASES = ((2, 3), (3, 2))
ORACLE_WALKS = (("simple", {}), ("independent", {}), ("nonlocal", {"m": 2}),
                ("mixture", {"alpha": Fraction(3, 10)}))

LIMIT_CASES = (
    ("simple_n2", 4, 2, None),
    ("independent_n2", 2, 2, None),
    ("nonlocal2_n2", 3, 2, None),
    ("mixture_n2", 3, 2, Fraction(3, 10)),
    ("independent_general", 2, 3, None),
    ("simple_n3", 3, 3, None),
)


def _result(suite: str, name: str, residual: float, tol: float, **extra) -> dict:
    out = {"suite": suite, "name": name, "passed": bool(residual <= tol),
           "max_residual": float(residual), "tolerance": tol}
    out.update(extra)
    return out


def identities_suite() -> list:
    return [
        {"suite": "identities", "name": r["name"], "passed": r["passed"],
         "max_residual": r["max_residual"], "tolerance": 0.0 if r["exact"] else 1e-12}
        for r in identity_suite()
    ]


def oracle_suite(t_max: int = 20, tol: float = 1e-9) -> list:
    """Wave-vector agreement of the three engine paths and the classical laws."""
    out = []
    for n, d in ORACLE_CASES:
        params = HammingParams(d, n)
        for kind, kw in ORACLE_WALKS:
            weights = weights_for(kind, params, **kw)
            coin = CoinSpec(weights)
            worst, paths = 0.0, set()
            for t in range(t_max + 1):
                ref = wave_vector(coin, t, "bruteforce").psi
                four = wave_vector(coin, t, "fourier").psi
                spec = wave_vector(coin, t, "auto")
                paths.add(spec.path)
                worst = max(worst, np.abs(ref - four).max(), np.abs(ref - spec.psi).max())
            out.append(_result("oracle", f"wave_vector n={n} d={d} {kind}", worst, tol,
                               paths=sorted(paths)))
            spectrum = eigenvalues(weights)
            cworst = max(
                np.abs(spectral_transition(spectrum, t).p - brute_force_markov(weights, t).p).max()
                for t in range(t_max + 1)
            )
            out.append(_result("oracle", f"classical n={n} d={d} {kind}", cworst, 1e-12))
    return out


def spectrum_suite(draws: int = 1000, seed: int = 0, tol: float = 1e-9) -> list:
    """Roots on the unit circle and agreement of the two coefficient formulas."""
    rng = np.random.default_rng(seed)
    ns = np.array([2, 3, 5, 7, 11])
    circle = coeff = csum = 0.0
    skipped = 0
    for _ in range(draws):
        n = int(rng.choice(ns))
        rho = rng.uniform(lower_bound(n), 1.0)
        mu = roots(build_poly(rho, n))
        circle = max(circle, np.abs(np.abs(mu) - 1).max())
        if min_root_gap(mu) < 1e-6:
            skipped += 1
            continue
        try:
            c = closed_form_coefficients(mu, rho, n)
            cv = vandermonde_coefficients(mu, rho, n)
        except DegenerateSpectrum:
            skipped += 1
            continue
        coeff = max(coeff, np.abs(c - cv).max())
        csum = max(csum, abs(c.sum() - 1))
    return [
        _result("spectrum", "roots_on_unit_circle", circle, tol, draws=draws),
        _result("spectrum", "coefficient_duality", coeff, tol, skipped=skipped),
        _result("spectrum", "coefficients_sum_to_one", csum, tol),
    ]


def limits_suite(T: int = 2000, tol: float = 5e-3, form: str = "printed") -> list:
    """Cesaro average at horizon ``T`` against each named closed form."""
    if form not in LIMIT_FORMS:
        raise ValueError(f"unknown form {form!r}")
    out = []
    for kind, d, n, r in LIMIT_CASES:
        coin = CoinSpec(walk_for_example(kind, d, n, r))
        ces = cesaro_sequence(coin, [T])[0]
        ref = limit_example(kind, d, n, r, form=form)
        gap = np.abs(ces.per_vertex - ref.per_vertex).max()
        out.append(_result("limits", f"{kind} d={d} n={n} ({form})", gap, min(tol, 10 / T),
                           provenance=[ces.provenance, ref.provenance]))
    return out


def run_suite(name: str, form: str = "printed") -> list:
    if name == "all":
        return [row for s in SUITES for row in run_suite(s, form)]
    if name == "identities":
        return identities_suite()
    if name == "oracle":
        return oracle_suite()
    if name == "spectrum":
        return spectrum_suite()
    if name == "limits":
        return limits_suite(form=form)
    raise ValueError(f"unknown suite {name!r}; expected one of {SUITES + ('all',)}")
