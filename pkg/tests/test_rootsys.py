"""Unit tests for the root-system layer, checked against an independent
epsilon-coordinate realization of the classical root systems."""

from fractions import Fraction
from itertools import combinations, product

import pytest

from krchar.rootsys import (
    LieType,
    build_root_system,
    dominant_conjugate,
    integral_root_coords,
    omega_weight,
    parse_lie_type,
    root_coords,
    sub_weights,
    weyl_dim,
)


# -- independent oracle: classical roots in the standard epsilon basis -------

def _epsilon_simple_roots(t: LieType):
    fam, n = t
    dim = n + 1 if fam == "A" else n
    def e(i, c=1):
        v = [0] * dim
        v[i] = c
        return v
    def e2(i, j, ci, cj):
        v = [0] * dim
        v[i] = ci
        v[j] = cj
        return v
    simple = [e2(i, i + 1, 1, -1) for i in range(n - 1)]
    if fam == "A":
        simple.append(e2(n - 1, n, 1, -1))
    elif fam == "B":
        simple.append(e(n - 1))
    elif fam == "C":
        simple.append(e(n - 1, 2))
    else:
        simple.append(e2(n - 2, n - 1, 1, 1))
    return simple


def _epsilon_positive_roots(t: LieType):
    fam, n = t
    dim = n + 1 if fam == "A" else n
    roots = []
    def vec(pairs):
        v = [0] * dim
        for i, c in pairs:
            v[i] += c
        return tuple(v)
    if fam == "A":
        for i in range(n + 1):
            for j in range(i + 1, n + 1):
                roots.append(vec([(i, 1), (j, -1)]))
        return roots
    for i in range(n):
        for j in range(i + 1, n):
            roots.append(vec([(i, 1), (j, -1)]))
            roots.append(vec([(i, 1), (j, 1)]))
    if fam == "B":
        roots.extend(vec([(i, 1)]) for i in range(n))
    elif fam == "C":
        roots.extend(vec([(i, 2)]) for i in range(n))
    return roots


def _solve_exact(columns, target):
    """Solve sum x_k columns[k] = target over the rationals (unique solution)."""
    rows = len(target)
    ncols = len(columns)
    aug = [[Fraction(columns[k][r]) for k in range(ncols)] + [Fraction(target[r])]
           for r in range(rows)]
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, rows) if aug[i][c] != 0), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        inv = Fraction(1) / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    if any(all(aug[i][c] == 0 for c in range(ncols)) and aug[i][ncols] != 0
           for i in range(rows)):
        raise AssertionError("inconsistent system in oracle solve")
    x = [Fraction(0)] * ncols
    for row, c in enumerate(pivots):
        x[c] = aug[row][ncols]
    return x


def _oracle_root_data(t: LieType):
    """Map root coords -> weight coords for every positive root, from scratch."""
    simple = _epsilon_simple_roots(t)
    out = {}
    for beta in _epsilon_positive_roots(t):
        coords = _solve_exact(simple, beta)
        assert all(c.denominator == 1 for c in coords)
        weight = []
        for alpha in simple:
            num = 2 * sum(b * a for b, a in zip(beta, alpha))
            den = sum(a * a for a in alpha)
            assert num % den == 0
            weight.append(num // den)
        out[tuple(int(c) for c in coords)] = tuple(weight)
    return out


ALL_SMALL_TYPES = [
    LieType("A", 1), LieType("A", 2), LieType("A", 4),
    LieType("B", 2), LieType("B", 3), LieType("B", 5),
    LieType("C", 2), LieType("C", 3), LieType("C", 5),
    LieType("D", 4), LieType("D", 5), LieType("D", 6),
]


@pytest.mark.parametrize("t", ALL_SMALL_TYPES, ids=str)
def test_positive_roots_match_epsilon_oracle(t):
    rs = build_root_system(t)
    oracle = _oracle_root_data(t)
    got = {r.coords: r.weight for r in rs.positive_roots}
    assert got == oracle


@pytest.mark.parametrize("t,count", [
    (LieType("A", 1), 1),
    (LieType("D", 4), 12),
    (LieType("D", 5), 20),
], ids=str)
def test_positive_root_counts(t, count):
    assert len(build_root_system(t).positive_roots) == count


def test_a1_cartan():
    rs = build_root_system("A1")
    assert rs.cartan == ((2,),)


def test_d4_highest_root():
    rs = build_root_system("D4")
    theta = rs.highest_root
    assert theta.coords == (1, 2, 1, 1)
    assert theta.weight == omega_weight(4, (2, 1))


def test_invalid_ranks_rejected():
    for label in ("A0", "B1", "C1", "D3", "E6"):
        with pytest.raises(ValueError):
            build_root_system(label)
    with pytest.raises(ValueError):
        parse_lie_type("Dx")


def test_spin_nodes():
    assert build_root_system("B3").spin_nodes == {3}
    assert build_root_system("D5").spin_nodes == {4, 5}
    assert build_root_system("A4").spin_nodes == set()
    assert build_root_system("C4").spin_nodes == set()


# -- dominant conjugates ------------------------------------------------------

def test_dominant_conjugate_examples():
    a1 = build_root_system("A1")
    assert dominant_conjugate(a1, (3,)) == ((3,), 1, False)
    assert dominant_conjugate(a1, (-2,)) == ((2,), -1, False)
    dom, _, singular = dominant_conjugate(a1, (0,))
    assert dom == (0,) and singular

    d4 = build_root_system("D4")
    lam = (1, 2, 1, 3)
    assert dominant_conjugate(d4, lam) == (lam, 1, False)
    # Dominant weights with a zero coordinate are wall elements.
    assert dominant_conjugate(d4, omega_weight(4, (2, 2)))[2] is True


@pytest.mark.parametrize("label", ["A2", "B2", "C3"])
def test_dominant_conjugate_against_orbit_enumeration(label):
    # Brute-force oracle: grow the Weyl orbit by simple reflections, tracking
    # a sign per element; for a regular weight the sign is well defined and
    # must match the reported parity, and the orbit holds one dominant element.
    rs = build_root_system(label)
    n = rs.rank

    def reflect(w, i):
        return tuple(x - w[i] * c for x, c in zip(w, rs.cartan[i]))

    for lam in [(1,) * n, tuple(range(1, n + 1)), (2,) + (1,) * (n - 1)]:
        signs = {lam: 1}
        frontier = [lam]
        while frontier:
            nxt = []
            for w in frontier:
                for i in range(n):
                    r = reflect(w, i)
                    if r == w:
                        continue
                    if r in signs:
                        assert signs[r] == -signs[w]  # consistent sign labelling
                    else:
                        signs[r] = -signs[w]
                        nxt.append(r)
            frontier = nxt
        dominants = [w for w in signs if rs.is_dominant(w)]
        assert dominants == [lam]
        for w, sign in signs.items():
            dom, parity, singular = dominant_conjugate(rs, w)
            assert dom == lam and not singular
            assert parity == sign


@pytest.mark.parametrize("label", ["A2", "B2", "D4"])
def test_dominant_conjugate_properties(label):
    rs = build_root_system(label)
    n = rs.rank
    box = range(-2, 3)
    for xi in product(box, repeat=n):
        dom, parity, singular = dominant_conjugate(rs, xi)
        assert rs.is_dominant(dom)
        # Idempotent on the dominant output.
        assert dominant_conjugate(rs, dom)[0] == dom
        if not singular:
            # A single extra simple reflection flips the parity.
            for i in range(n):
                refl = tuple(x - xi[i] * c for x, c in zip(xi, rs.cartan[i]))
                if refl != xi:
                    dom2, parity2, singular2 = dominant_conjugate(rs, refl)
                    assert dom2 == dom and not singular2
                    assert parity2 == -parity


# -- Weyl dimension -----------------------------------------------------------

def test_weyl_dim_examples():
    d4 = build_root_system("D4")
    assert weyl_dim(d4, (0, 0, 0, 0)) == 1
    assert weyl_dim(d4, omega_weight(4, (2, 1))) == 28
    assert weyl_dim(d4, omega_weight(4, (1, 1))) == 8
    a1 = build_root_system("A1")
    assert weyl_dim(a1, (2,)) == 3
    with pytest.raises(ValueError):
        weyl_dim(a1, (-1,))


def test_weyl_dim_classical_vector_reps():
    # dim V(omega_1): n+1 for A_n, 2n+1 for B_n, 2n for C_n and D_n.
    assert weyl_dim(build_root_system("A4"), omega_weight(4, (1, 1))) == 5
    assert weyl_dim(build_root_system("B3"), omega_weight(3, (1, 1))) == 7
    assert weyl_dim(build_root_system("C3"), omega_weight(3, (1, 1))) == 6
    assert weyl_dim(build_root_system("D5"), omega_weight(5, (1, 1))) == 10


def test_weyl_dim_textbook_values():
    # Spin modules have dimension 2^n (B_n) and 2^(n-1) (half-spin, D_n).
    assert weyl_dim(build_root_system("B3"), omega_weight(3, (3, 1))) == 8
    assert weyl_dim(build_root_system("B4"), omega_weight(4, (4, 1))) == 16
    d5 = build_root_system("D5")
    assert weyl_dim(d5, omega_weight(5, (4, 1))) == 16
    assert weyl_dim(d5, omega_weight(5, (5, 1))) == 16
    # Other classics: Lambda^3 of the 10-dim module, the traceless
    # symmetric square, and the third fundamental module of C3.
    assert weyl_dim(d5, omega_weight(5, (3, 1))) == 120
    assert weyl_dim(d5, omega_weight(5, (1, 2))) == 54
    assert weyl_dim(build_root_system("C3"), omega_weight(3, (3, 1))) == 14
    assert weyl_dim(build_root_system("A2"), (1, 1)) == 8


# -- root coordinates ---------------------------------------------------------

def test_root_coords_examples():
    d4 = build_root_system("D4")
    for i in range(4):
        alpha = d4.simple_root_weight(i)
        assert integral_root_coords(d4, alpha) == tuple(int(j == i) for j in range(4))
    assert integral_root_coords(d4, d4.highest_root.weight) == (1, 2, 1, 1)

    a1 = build_root_system("A1")
    assert root_coords(a1, (1,)) == (Fraction(1, 2),)
    assert integral_root_coords(a1, (1,)) is None


def test_bilinear_form_normalisation():
    # Short roots have squared length 2, long roots 4.
    for label in ("B3", "C3"):
        rs = build_root_system(label)
        norms = {rs.inner(r.weight, r.weight) for r in rs.positive_roots}
        assert norms == {Fraction(2), Fraction(4)}
    d5 = build_root_system("D5")
    assert {d5.inner(r.weight, r.weight) for r in d5.positive_roots} == {Fraction(2)}
    # pair_root agrees with the Gram-matrix pairing.
    for root in d5.positive_roots[:5]:
        xi = omega_weight(5, (2, 3), (4, 1))
        assert d5.inner(xi, root.weight) == d5.pair_root(xi, root)


def test_root_sum_decompositions_spot():
    # Every coefficient-2 root splits into two coefficient-1 roots, and every
    # non-simple coefficient-1 root splits as 0 + 1 (spot check; the full
    # rank <= 8 sweep runs in the acceptance suite).
    for label in ("B3", "C3", "D4", "A3"):
        rs = build_root_system(label)
        coords = {r.coords for r in rs.positive_roots}
        for beta in coords:
            for j in range(rs.rank):
                if beta[j] == 2:
                    assert any(
                        tuple(b - g for b, g in zip(beta, gamma)) in coords
                        and gamma[j] == 1 and beta[j] - gamma[j] == 1
                        for gamma in coords
                    )
                if beta[j] == 1 and sum(beta) > 1:
                    assert any(
                        tuple(b - g for b, g in zip(beta, gamma)) in coords
                        and gamma[j] == 1
                        and (tuple(b - g for b, g in zip(beta, gamma)))[j] == 0
                        for gamma in coords
                    )


def test_weight_helpers():
    assert omega_weight(5, (3, 2)) == (0, 0, 2, 0, 0)
    assert sub_weights((1, 2), (0, 3)) == (1, -1)
    with pytest.raises(ValueError):
        omega_weight(3, (4, 1))
