from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hamqw.classical_walk import (
    WalkWeights,
    binomial_stationary,
    brute_force_markov,
    custom_weights,
    eagleson_kernel,
    eigenvalues,
    eigenvalues_dual,
    exact_spectral_transition,
    spectral_transition,
    walk_metadata,
    weights_for,
)
from hamqw.hamming_scheme import HammingParams, all_vertices, build_krawtchouk_table, character_sum

EXAMPLE_WALKS = [
    ("simple", {}),
    ("independent", {}),
    ("nonlocal", {"m": 2}),
    ("mixture", {"alpha": Fraction(3, 10)}),
    ("mixture", {"alpha": Fraction(7, 10)}),
]


def weight_vectors(d):
    return st.lists(st.floats(0, 1), min_size=d + 1, max_size=d + 1).filter(
        lambda v: sum(v) > 1e-3).map(lambda v: [x / sum(v) for x in v])


def test_named_weights():
    p = HammingParams(4, 3)
    assert weights_for("simple", p).w == (0, 1, 0, 0, 0)
    assert weights_for("nonlocal", p, m=3).w == (0, 0, 0, 1, 0)
    assert weights_for("independent", HammingParams(2, 2)).w == (
        Fraction(1, 4), Fraction(1, 2), Fraction(1, 4))
    for d in (2, 3, 6):
        q = HammingParams(d, 2)
        assert weights_for("mixture", q, alpha=Fraction(1, 2)).w == weights_for("independent", q).w


def test_weights_errors():
    p = HammingParams(3, 2)
    with pytest.raises(ValueError):
        weights_for("lazy", p)
    with pytest.raises(ValueError):
        weights_for("nonlocal", p)
    with pytest.raises(ValueError):
        weights_for("nonlocal", p, m=4)
    with pytest.raises(ValueError):
        weights_for("mixture", p, alpha=Fraction(3, 2))
    with pytest.raises(ValueError):
        custom_weights([0.5, 0.6, 0.0, 0.0], p)
    with pytest.raises(ValueError):
        custom_weights([1.2, -0.2, 0.0, 0.0], p)
    with pytest.raises(ValueError):
        custom_weights([1.0, 0.0], p)


def test_simple_walk_eigenvalues_exact():
    spec = eigenvalues(weights_for("simple", HammingParams(4, 2)))
    assert spec.rho == (1, Fraction(1, 2), 0, Fraction(-1, 2), -1)
    for d, n in [(3, 3), (5, 5), (7, 2)]:
        rho = eigenvalues(weights_for("simple", HammingParams(d, n))).rho
        assert rho == tuple(1 - Fraction(n * i, (n - 1) * d) for i in range(d + 1))


@pytest.mark.parametrize("d,n", [(3, 2), (4, 3), (3, 5)])
def test_independent_and_mixture_eigenvalues(d, n):
    p = HammingParams(d, n)
    assert eigenvalues(weights_for("independent", p)).rho == (1,) + (0,) * d
    a = Fraction(2, 7)
    rho = eigenvalues(weights_for("mixture", p, alpha=a)).rho
    assert rho == tuple((1 - n * a / (n - 1)) ** i for i in range(d + 1))


@pytest.mark.parametrize("d,n", [(3, 2), (3, 3), (4, 5)])
@given(data=st.data())
def test_eigenvalue_bound_and_duality(d, n, data):
    p = HammingParams(d, n)
    w = custom_weights(data.draw(weight_vectors(d)), p)
    rho = eigenvalues(w).as_array()
    assert rho[0] == pytest.approx(1, abs=1e-12)
    assert np.all(rho >= -1 / (n - 1) - 1e-12) and np.all(rho <= 1 + 1e-12)
    assert np.allclose(np.array(eigenvalues_dual(w), dtype=float), rho, atol=1e-12)


@pytest.mark.parametrize("d,n", [(2, 2), (3, 2), (2, 3), (2, 5)])
def test_eigenvalues_are_character_sums(d, n):
    p = HammingParams(d, n)
    table = build_krawtchouk_table(p)
    w = custom_weights(np.linspace(1, 2, d + 1) / np.linspace(1, 2, d + 1).sum(), p)
    f = [w.w[j] / table.kappa[j] for j in range(d + 1)]
    rho = eigenvalues(w).as_array()
    for xi in all_vertices(p):
        for k in range(1, n):
            assert abs(character_sum(f, tuple(xi), k, p) - rho[int(np.count_nonzero(xi))]) < 1e-12


@pytest.mark.parametrize("kind,kw", EXAMPLE_WALKS)
@pytest.mark.parametrize("d,n", [(2, 2), (3, 2), (2, 3), (3, 3)])
def test_spectral_law_matches_markov_oracle(kind, kw, d, n):
    p = HammingParams(d, n)
    w = weights_for(kind, p, **kw)
    spec = eigenvalues(w)
    for t in range(0, 65):
        a = spectral_transition(spec, t).p
        b = brute_force_markov(w, t).p
        assert np.abs(a - b).max() <= 1e-12, t
    dense = brute_force_markov(w, 5, dense=True).p
    assert np.abs(dense - spectral_transition(spec, 5).p).max() <= 1e-12


def test_spectral_transition_examples():
    p = HammingParams(3, 3)
    w = weights_for("mixture", p, alpha=Fraction(1, 5))
    spec = eigenvalues(w)
    assert np.array_equal(spectral_transition(spec, 0).p, [1, 0, 0, 0])
    table = build_krawtchouk_table(p)
    one = spectral_transition(spec, 1).p
    assert np.allclose(one, [float(w.w[h]) / table.kappa[h] for h in range(4)], atol=1e-15)
    far = spectral_transition(spec, 400)
    assert np.allclose(far.p, 1 / 27, atol=1e-12)
    assert far.class_mass().sum() == pytest.approx(1, abs=1e-12)
    exact = exact_spectral_transition(spec, 3)
    assert all(isinstance(v, Fraction) for v in exact)
    assert np.allclose(np.array(exact, dtype=float), spectral_transition(spec, 3).p, atol=1e-15)


def test_simple_walk_parity():
    w = weights_for("simple", HammingParams(5, 2))
    for t in range(12):
        p = brute_force_markov(w, t).p
        assert all(p[h] == 0 for h in range(6) if (h + t) % 2)


def test_metadata_flags():
    meta = walk_metadata(eigenvalues(weights_for("simple", HammingParams(3, 2))))
    assert meta["periodic"] and not meta["reducible"]
    meta = walk_metadata(eigenvalues(weights_for("nonlocal", HammingParams(4, 2), m=2)))
    assert meta["reducible"]
    meta = walk_metadata(eigenvalues(weights_for("independent", HammingParams(3, 3))))
    assert not meta["periodic"] and not meta["reducible"]


def test_eagleson_examples():
    p = HammingParams(3, 2)
    K = eagleson_kernel(eigenvalues(weights_for("independent", p)))
    assert np.allclose(K, np.tile(binomial_stationary(p), (4, 1)), atol=1e-15)
    K = eagleson_kernel(eigenvalues(weights_for("simple", p)))
    assert K.min() >= -1e-12
    assert binomial_stationary(p) == pytest.approx([1 / 8, 3 / 8, 3 / 8, 1 / 8])


@pytest.mark.parametrize("d,n", [(3, 2), (4, 3)])
@given(data=st.data())
def test_eagleson_rows_and_stationarity(d, n, data):
    p = HammingParams(d, n)
    w = custom_weights(data.draw(weight_vectors(d)), p)
    K = eagleson_kernel(eigenvalues(w))
    pi = binomial_stationary(p)
    assert np.allclose(K.sum(axis=1), 1, atol=1e-10)
    assert np.allclose(pi @ K, pi, atol=1e-10)


def test_class_distribution_normalised():
    w = weights_for("mixture", HammingParams(4, 3), alpha=0.4)
    assert isinstance(w, WalkWeights) and not w.exact
    for t in (0, 1, 7):
        assert brute_force_markov(w, t).class_mass().sum() == pytest.approx(1, abs=1e-10)
