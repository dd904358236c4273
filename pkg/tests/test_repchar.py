"""Character arithmetic tests: Freudenthal, Racah-Speiser, powers, coefficients."""

import math
from itertools import product

import pytest

from krchar.repchar import (
    IsoChar,
    ModuleSpec,
    TensorCache,
    WeightChar,
    active_tensor_cache,
    adjoint_char,
    c_coefficient,
    dominant_multiplicities,
    ext_power,
    freudenthal,
    iso_decompose,
    set_active_tensor_cache,
    sym_coefficient,
    sym_power,
    tensor_decompose,
)
from krchar.rootsys import build_root_system, omega_weight, weyl_dim

A1 = build_root_system("A1")
D4 = build_root_system("D4")
D5 = build_root_system("D5")


# -- Freudenthal ----------------------------------------------------------------

def test_freudenthal_trivial():
    assert freudenthal(A1, (0,)) == WeightChar({(0,): 1})


def test_freudenthal_a1_adjoint():
    assert freudenthal(A1, (2,)) == WeightChar({(2,): 1, (0,): 1, (-2,): 1})


def test_freudenthal_d4_adjoint_matches_root_enumeration():
    # Independent oracle: the adjoint character is the roots plus rank copies
    # of the zero weight.
    ch = freudenthal(D4, omega_weight(4, (2, 1)))
    assert ch == adjoint_char(D4)
    zero = (0, 0, 0, 0)
    assert ch.entries[zero] == 4
    assert sum(1 for w, m in ch.entries.items() if w != zero and m == 1) == 24
    assert ch.dimension() == 28 == weyl_dim(D4, omega_weight(4, (2, 1)))


@pytest.mark.parametrize("label,lam", [
    ("A2", (1, 2)),
    ("B2", (2, 1)),
    ("C3", (1, 0, 1)),
    ("D4", (0, 1, 1, 0)),
    ("D5", (0, 0, 2, 0, 0)),
])
def test_freudenthal_total_dimension(label, lam):
    rs = build_root_system(label)
    assert freudenthal(rs, lam).dimension() == weyl_dim(rs, lam)


def test_freudenthal_a2_adjoint_zero_weight():
    a2 = build_root_system("A2")
    ch = freudenthal(a2, (1, 1))
    assert ch.entries[(0, 0)] == 2  # rank copies of the zero weight
    assert ch.dimension() == 8


def test_freudenthal_rejects_non_dominant():
    with pytest.raises(ValueError):
        freudenthal(A1, (-2,))


def test_dominant_multiplicities_subset():
    lam = omega_weight(4, (2, 1))
    dom = dominant_multiplicities(D4, lam)
    full = freudenthal(D4, lam).entries
    assert set(dom) <= set(full)
    assert all(full[w] == m for w, m in dom.items())
    assert all(D4.is_dominant(w) for w in dom)


# -- tensor products --------------------------------------------------------------

def test_tensor_with_trivial():
    lam = omega_weight(4, (2, 2))
    assert tensor_decompose(D4, lam, (0, 0, 0, 0)) == IsoChar({lam: 1})


def test_tensor_clebsch_gordan():
    assert tensor_decompose(A1, (1,), (1,)) == IsoChar({(2,): 1, (0,): 1})
    assert tensor_decompose(A1, (2,), (2,)) == IsoChar({(4,): 1, (2,): 1, (0,): 1})


def test_tensor_adjoint_with_2omega3_d5():
    theta = D5.highest_root.weight
    iso = tensor_decompose(D5, theta, omega_weight(5, (3, 2)))
    assert iso[omega_weight(5, (3, 1), (1, 1))] == 1


@pytest.mark.parametrize("label,lam,nu", [
    ("A2", (1, 1), (2, 0)),
    ("B2", (1, 1), (0, 2)),
    ("D4", (1, 0, 0, 0), (0, 0, 1, 1)),
])
def test_tensor_dimension_conservation(label, lam, nu):
    rs = build_root_system(label)
    iso = tensor_decompose(rs, lam, nu)
    assert iso.is_genuine()
    assert iso.total_dimension(rs) == weyl_dim(rs, lam) * weyl_dim(rs, nu)


def test_tensor_matches_character_product_spot():
    # Brute-force oracle: decompose the pointwise product of the two
    # characters instead of running the reflection algorithm.
    for lam, nu in [((1, 1), (1, 1)), ((2, 0), (1, 2))]:
        for rs in (build_root_system("A2"), build_root_system("B2")):
            direct = tensor_decompose(rs, lam, nu)
            oracle = iso_decompose(rs, freudenthal(rs, lam) * freudenthal(rs, nu))
            assert direct == oracle


def test_tensor_cache_counts_computations():
    previous = set_active_tensor_cache(TensorCache())
    try:
        cache = active_tensor_cache()
        assert cache.computed == 0
        tensor_decompose(A1, (1,), (3,))
        tensor_decompose(A1, (3,), (1,))  # symmetric key: served from cache
        assert cache.computed == 1
    finally:
        set_active_tensor_cache(previous)


# -- exterior and symmetric powers -------------------------------------------------

def test_power_degenerate_cases():
    ch = freudenthal(A1, (2,))
    assert ext_power(ch, 0) == WeightChar({(0,): 1})
    assert sym_power(ch, 0) == WeightChar({(0,): 1})
    assert ext_power(ch, 1) == ch
    assert sym_power(ch, 1) == ch
    assert ext_power(ch, 4) == WeightChar()  # wedge beyond the dimension


def test_ext_power_dimension_binomial():
    ch = adjoint_char(D4)
    sq = ext_power(ch, 2)
    assert sq.dimension() == math.comb(28, 2) == 378
    assert sq.is_genuine()


def test_sym_power_dimension():
    ch = freudenthal(A1, (2,))
    assert sym_power(ch, 2).dimension() == math.comb(3 + 2 - 1, 2) == 6
    chd = adjoint_char(D4)
    assert sym_power(chd, 2).dimension() == math.comb(28 + 1, 2)


def test_power_rejects_virtual_input():
    with pytest.raises(ValueError):
        ext_power(WeightChar({(1,): -1}), 1)


@pytest.mark.parametrize("label,lam", [("A1", (2,)), ("A2", (1, 1)), ("B2", (1, 0))])
def test_newton_identities(label, lam):
    # sum_{j=0..k} (-1)^j Sym^{k-j} * Ext^j vanishes for k >= 1.
    rs = build_root_system(label)
    ch = freudenthal(rs, lam)
    for k in range(1, 5):
        acc = WeightChar()
        for j in range(k + 1):
            term = sym_power(ch, k - j) * ext_power(ch, j)
            acc = acc + (term * (-1 if j % 2 else 1))
        assert acc == WeightChar()


def _adams(ch, j):
    # Power-sum operation: every weight scaled by j.
    return WeightChar({tuple(j * c for c in w): m for w, m in ch.entries.items()})


@pytest.mark.parametrize("label,lam", [("B2", (1, 1)), ("D4", (0, 1, 0, 0))])
def test_powers_against_adams_newton_oracle(label, lam):
    # Independent oracle for both power functors: build e_k and h_k from the
    # power sums via k e_k = sum (-1)^(j-1) e_(k-j) p_j and
    # k h_k = sum h_(k-j) p_j, then compare with the DP route.
    rs = build_root_system(label)
    ch = freudenthal(rs, lam)
    e = [WeightChar({(0,) * rs.rank: 1})]
    h = [WeightChar({(0,) * rs.rank: 1})]
    for k in range(1, 5):
        acc_e = WeightChar()
        acc_h = WeightChar()
        for j in range(1, k + 1):
            pj = _adams(ch, j)
            acc_e = acc_e + (e[k - j] * pj) * (-1 if j % 2 == 0 else 1)
            acc_h = acc_h + h[k - j] * pj
        e.append(WeightChar({w: m // k for w, m in acc_e.entries.items()}))
        h.append(WeightChar({w: m // k for w, m in acc_h.entries.items()}))
        assert all(m % k == 0 for m in acc_e.entries.values())
        assert all(m % k == 0 for m in acc_h.entries.values())
        assert ext_power(ch, k) == e[k]
        assert sym_power(ch, k) == h[k]


# -- isotypical decomposition -------------------------------------------------------

def test_iso_decompose_round_trip():
    lam = omega_weight(4, (2, 1))
    assert iso_decompose(D4, freudenthal(D4, lam)) == IsoChar({lam: 1})


def test_iso_decompose_a1_square():
    ch = freudenthal(A1, (1,)) * freudenthal(A1, (1,))
    assert iso_decompose(A1, ch) == IsoChar({(2,): 1, (0,): 1})


def test_iso_decompose_wedge_adjoint_contains_adjoint():
    theta = omega_weight(4, (2, 1))
    wedge = ext_power(adjoint_char(D4), 2)
    iso = iso_decompose(D4, wedge)
    assert iso[theta] >= 1
    assert iso.is_genuine()
    assert iso.expand(D4) == wedge  # expand is a two-sided inverse here


def test_iso_decompose_rejects_invariant_violation():
    with pytest.raises(ValueError):
        iso_decompose(A1, WeightChar({(1,): 1}))


# -- Hom-space coefficients -----------------------------------------------------------

def test_coefficients_trivial_degree():
    ms = ModuleSpec.adjoint(D5, 2)
    lam = omega_weight(5, (3, 2))
    assert c_coefficient(D5, ms, lam, lam, (0, 0)) == 1
    assert sym_coefficient(D5, ms, lam, lam, (0, 0)) == 1
    assert c_coefficient(D5, ms, lam, omega_weight(5, (2, 1)), (0, 0)) == 0


def test_c_coefficient_d5_values():
    ms = ModuleSpec.adjoint(D5, 2)
    lam = omega_weight(5, (3, 2))
    assert c_coefficient(D5, ms, lam, omega_weight(5, (1, 2)), (2, 0)) == 0
    assert c_coefficient(D5, ms, lam, omega_weight(5, (2, 1)), (1, 1)) == 1


def test_sym_coefficient_kr_step_matches_tensor_oracle():
    ms = ModuleSpec.adjoint(D4, 1)
    theta = D4.highest_root.weight
    for m in (1, 2, 3):
        lam = omega_weight(4, (2, m))
        mu = omega_weight(4, (2, m - 1))
        oracle = tensor_decompose(D4, theta, lam)[mu]
        assert oracle == 1
        assert sym_coefficient(D4, ms, lam, mu, (1,)) == oracle


def test_sym_coefficient_a1():
    ms = ModuleSpec.adjoint(A1, 1)
    assert sym_coefficient(A1, ms, (0,), (2,), (1,)) == 1


def test_coefficients_symmetric_in_degree_vector():
    ms = ModuleSpec.adjoint(D5, 3)
    lam = omega_weight(5, (3, 2))
    mu = omega_weight(5, (2, 1))
    for k in [(1, 1, 0), (2, 0, 1), (0, 1, 2)]:
        for perm in set(product(range(3), repeat=3)):
            if sorted(perm) != [0, 1, 2]:
                continue
            kp = tuple(k[p] for p in perm)
            assert c_coefficient(D5, ms, lam, mu, kp) == c_coefficient(D5, ms, lam, mu, k)
            assert sym_coefficient(D5, ms, lam, mu, kp) == sym_coefficient(D5, ms, lam, mu, k)


def test_coefficient_validation():
    ms = ModuleSpec.adjoint(A1, 1)
    with pytest.raises(ValueError):
        c_coefficient(A1, ms, (1,), (1,), (1, 0))  # ell mismatch
    with pytest.raises(ValueError):
        c_coefficient(A1, ms, (1,), (1,), (-1,))


def test_coefficients_with_unequal_components():
    # Distinct degree-one layers: V_1 the vector module, V_2 the adjoint.
    vec = omega_weight(4, (1, 1))
    theta = omega_weight(4, (2, 1))
    ms = ModuleSpec(((vec,), (theta,)))
    lam = theta
    for mu in [vec, theta, (0, 0, 0, 0), omega_weight(4, (1, 1), (2, 1))]:
        assert c_coefficient(D4, ms, lam, mu, (1, 0)) == tensor_decompose(D4, vec, lam)[mu]
        assert c_coefficient(D4, ms, lam, mu, (0, 1)) == tensor_decompose(D4, theta, lam)[mu]
    # The two unit degrees select different layers, so they must differ.
    assert c_coefficient(D4, ms, lam, vec, (1, 0)) != c_coefficient(D4, ms, lam, vec, (0, 1))
    # Wedge and Sym squares of the vector module split as adjoint resp.
    # traceless-symmetric plus trivial.
    zero = (0, 0, 0, 0)
    assert c_coefficient(D4, ms, zero, theta, (2, 0)) == 1
    assert c_coefficient(D4, ms, zero, zero, (2, 0)) == 0
    assert sym_coefficient(D4, ms, zero, omega_weight(4, (1, 2)), (2, 0)) == 1
    assert sym_coefficient(D4, ms, zero, zero, (2, 0)) == 1
    # Mixed unit degrees reduce to the plain tensor product V_1 (x) V_2.
    prod = iso_decompose(D4, freudenthal(D4, vec) * freudenthal(D4, theta))
    for mu, m in prod.entries.items():
        assert c_coefficient(D4, ms, zero, mu, (1, 1)) == m
        assert sym_coefficient(D4, ms, zero, mu, (1, 1)) == m


def test_module_spec_adjoint():
    ms = ModuleSpec.adjoint(D4, 2)
    assert ms.ell == 2
    assert ms.components[0] == (omega_weight(4, (2, 1)),)
    with pytest.raises(ValueError):
        ModuleSpec.adjoint(D4, 0)


def test_bounded_cache_eviction():
    from krchar.repchar import BoundedCache

    cache = BoundedCache(max_entries=3)
    for i in range(5):
        cache.put(i, i * i)
    assert len(cache) == 3
    assert cache.get(0) is None and cache.get(1) is None  # oldest evicted
    assert cache.get(4) == 16
    # A capped tensor cache still answers correctly, just recomputes.
    previous = set_active_tensor_cache(TensorCache(max_entries=1))
    try:
        first = tensor_decompose(A1, (1,), (2,))
        second = tensor_decompose(A1, (2,), (3,))
        again = tensor_decompose(A1, (1,), (2,))  # evicted, recomputed
        assert first == again
        assert active_tensor_cache().computed == 3
        assert second == IsoChar({(5,): 1, (3,): 1, (1,): 1})
    finally:
        set_active_tensor_cache(previous)


def test_shared_cache_is_interleaving_safe():
    # Concurrent callers racing on the shared memo must see the same results
    # as a serial run.
    import threading

    previous = set_active_tensor_cache(TensorCache())
    try:
        pairs = [((1, 1), (2, 0)), ((2, 0), (0, 2)), ((1, 2), (1, 1)), ((3, 0), (2, 1))]
        rs = build_root_system("B2")
        serial = [tensor_decompose(rs, a, b).entries for a, b in pairs]
        set_active_tensor_cache(TensorCache())
        results = [[None] * len(pairs) for _ in range(4)]

        def worker(slot):
            for i, (a, b) in enumerate(pairs):
                results[slot][i] = tensor_decompose(rs, a, b).entries

        threads = [threading.Thread(target=worker, args=(s,)) for s in range(4)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        for slot in range(4):
            assert results[slot] == serial
    finally:
        set_active_tensor_cache(previous)
