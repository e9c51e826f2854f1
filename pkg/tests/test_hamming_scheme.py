import cmath
import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hamqw.hamming_scheme import (
    HammingParams,
    KrawtchoukTable,
    PrimalityError,
    SizeError,
    all_vertices,
    as_vertex,
    build_krawtchouk_table,
    character_sum,
    character_sum_dual,
    check_duality,
    check_orthogonality,
    class_representative,
    distance,
    eta,
    eta_powers,
    index_vertex,
    is_prime,
    krawtchouk_by_genfun,
    krawtchouk_transform,
    krawtchouk_value,
    sphere,
    vertex_add,
    vertex_index,
    vertex_weights,
    weight,
)

small_params = st.sampled_from([(d, n) for d in range(2, 5) for n in (2, 3, 5) if n**d <= 625])


def test_distance_examples():
    assert distance((0, 1, 1), (0, 1, 1)) == 0
    assert distance((0, 0, 0), (1, 0, 1)) == 2
    assert distance((1, 2), (2, 2)) == 1


def test_distance_dimension_mismatch():
    with pytest.raises(ValueError):
        distance((0, 1), (0, 1, 1))


@given(small_params, st.data())
def test_distance_is_a_metric(dn, data):
    d, n = dn
    vert = st.lists(st.integers(0, n - 1), min_size=d, max_size=d)
    x, y, z = (tuple(data.draw(vert)) for _ in range(3))
    assert distance(x, y) == distance(y, x)
    assert distance(x, z) <= distance(x, y) + distance(y, z)
    assert distance(x, y) == weight(vertex_add(x, y, n, times=n - 1))


def test_params_validation():
    with pytest.raises(ValueError):
        HammingParams(1, 2)
    with pytest.raises(ValueError):
        HammingParams(2, 1)
    with pytest.raises(PrimalityError):
        HammingParams(2, 4).require_prime()
    assert HammingParams(3, 4).size == 64
    assert [m for m in range(20) if is_prime(m)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_as_vertex_rejects_bad_digits():
    p = HammingParams(2, 3)
    with pytest.raises(ValueError):
        as_vertex((0, 3), p)
    with pytest.raises(ValueError):
        as_vertex((0, 1, 2), p)


@pytest.mark.parametrize("d,n", [(3, 2), (2, 3), (2, 5), (4, 3)])
def test_vertex_codec_is_lexicographic(d, n):
    p = HammingParams(d, n)
    verts = all_vertices(p)
    assert [tuple(v) for v in verts] == list(itertools.product(range(n), repeat=d))
    for i in range(p.size):
        assert vertex_index(index_vertex(i, p), p) == i
    assert np.array_equal(vertex_weights(p), (verts != 0).sum(axis=1))


@pytest.mark.parametrize("d,n", [(3, 2), (3, 3)])
def test_spheres_partition_vertices(d, n):
    p = HammingParams(d, n)
    table = build_krawtchouk_table(p)
    seen = []
    for h in range(d + 1):
        members = sphere(h, p)
        assert len(members) == table.kappa[h]
        assert weight(class_representative(h, p)) == h
        seen.extend(members.tolist())
    assert sorted(seen) == list(range(p.size))


def test_size_guard():
    with pytest.raises(SizeError):
        all_vertices(HammingParams(30, 2))


def test_krawtchouk_examples():
    t = build_krawtchouk_table(HammingParams(3, 2))
    assert t.kappa[2] == t.K[2][0] == 3
    assert t.K[1][1] == 1
    assert all(t.K[0][j] == 1 for j in range(4))
    assert krawtchouk_by_genfun(0, HammingParams(3, 2)) == (1, 3, 3, 1)
    assert krawtchouk_by_genfun(3, HammingParams(3, 2)) == (1, -3, 3, -1)
    assert t.Q(1, 1) == Fraction(1, 3)


@pytest.mark.parametrize("n", [2, 3, 5, 7])
@pytest.mark.parametrize("d", [2, 3, 5, 9, 12])
def test_table_matches_generating_function(d, n):
    p = HammingParams(d, n)
    t = build_krawtchouk_table(p)
    for j in range(d + 1):
        col = krawtchouk_by_genfun(j, p)
        assert all(type(v) is int for v in col)
        assert col == t.column(j)
    assert t.kappa == tuple((n - 1) ** i * math.comb(d, i) for i in range(d + 1))
    assert sum(t.kappa) == n**d
    assert check_orthogonality(t)
    assert check_duality(t)


def test_large_values_stay_exact():
    # values above 2**53 must not pass through floats
    assert krawtchouk_value(20, 0, 40, 7) == 6**20 * math.comb(40, 20)


def test_broken_table_fails_checks():
    t = build_krawtchouk_table(HammingParams(3, 2))
    rows = [list(r) for r in t.K]
    rows[1][2] += 1
    bad = KrawtchoukTable(t.params, tuple(tuple(r) for r in rows), t.kappa)
    assert not check_orthogonality(bad)
    assert not check_duality(bad)


def test_eta_examples():
    assert eta(2) == -1
    assert eta(4) == 1j
    for n in range(2, 12):
        assert abs(abs(eta(n)) - 1) < 1e-15
        assert abs(eta(n) - cmath.exp(2j * math.pi / n)) < 1e-15


@pytest.mark.parametrize("n", [2, 3, 5, 7])
def test_root_of_unity_delta(n):
    w = eta_powers(n)
    assert len(w) == n and w[0] == 1
    for m in range(-(n - 1), n):
        s = sum(w[(k * m) % n] for k in range(n))
        assert abs(s - (n if m % n == 0 else 0)) < 1e-12


def test_character_sum_examples():
    p = HammingParams(2, 3)
    assert abs(character_sum(lambda j: 1.0, (0, 0), 1, p) - 9) < 1e-12
    t = build_krawtchouk_table(p)
    w = (0, 1, 0)
    f = [Fraction(w[j], t.kappa[j]) for j in range(3)]
    for xi in all_vertices(p):
        rho = 1 - Fraction(3 * weight(xi), 2 * 2)
        for k in (1, 2):
            assert abs(character_sum(f, tuple(xi), k, p) - float(rho)) < 1e-12


@pytest.mark.parametrize("d,n", [(2, 2), (3, 2), (4, 2), (2, 3), (3, 3), (2, 5)])
@given(data=st.data())
def test_character_sums_match_krawtchouk(d, n, data):
    p = HammingParams(d, n)
    t = build_krawtchouk_table(p)
    f = data.draw(st.lists(st.floats(-2, 2), min_size=d + 1, max_size=d + 1))
    verts = all_vertices(p)
    for xi in verts[:: max(1, len(verts) // 7)]:
        h = weight(xi)
        want = sum(t.K[j][h] * f[j] for j in range(d + 1))
        brute = sum(f[weight(z)] * eta(n) ** (int(np.dot(xi, z)) % n) for z in verts)
        for k in range(1, n):
            assert abs(character_sum(f, tuple(xi), k, p) - want) < 1e-12
            assert abs(character_sum_dual(f, tuple(xi), k, p) - want) < 1e-12
        assert abs(brute - want) < 1e-10
        assert abs(krawtchouk_transform(f, h, t) - want) < 1e-12
