"""Root systems of the classical Lie algebras A, B, C, D.

Weights are plain integer tuples in the fundamental-weight basis throughout:
``xi[i]`` is the coefficient of the (i+1)-th fundamental weight in Bourbaki
node numbering.  Root coordinates (coefficients on the simple roots) are
recovered on demand by an exact rational solve.  No floating point is used
anywhere; the bilinear form is normalised so that short roots have squared
length 2.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

Weight = tuple[int, ...]

_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 4}

_EXPECTED_ROOT_COUNT = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
}


class LieType(NamedTuple):
    """A classical family label A/B/C/D together with its rank."""

    family: str
    rank: int

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


def validate_lie_type(t: LieType) -> None:
    if t.family not in _MIN_RANK:
        raise ValueError(f"unsupported family {t.family!r}: expected one of A, B, C, D")
    if t.rank < _MIN_RANK[t.family]:
        raise ValueError(
            f"rank {t.rank} is too small for family {t.family} "
            f"(minimum is {_MIN_RANK[t.family]})"
        )


def parse_lie_type(text: str) -> LieType:
    """Parse a label like ``"D5"`` into a validated :class:`LieType`."""
    label = text.strip()
    if not label or label[0].upper() not in _MIN_RANK:
        raise ValueError(f"unsupported algebra {text!r}: expected A/B/C/D followed by the rank")
    try:
        rank = int(label[1:])
    except ValueError:
        raise ValueError(f"invalid rank {label[1:]!r} in algebra label {text!r}") from None
    t = LieType(label[0].upper(), rank)
    validate_lie_type(t)
    return t


class PositiveRoot(NamedTuple):
    coords: tuple[int, ...]  # coefficients on the simple roots
    weight: Weight           # the same root in fundamental-weight coordinates
    half_norm: int           # (beta, beta)/2, equal to 1 for short and 2 for long roots
    md: tuple[int, ...]      # coords[i] * d[i]; (xi, beta) = sum(md[i] * xi[i])
    md_sum: int              # (rho, beta)


def _cartan_matrix(t: LieType) -> tuple[tuple[int, ...], ...]:
    # Convention: cartan[i][j] = 2(alpha_i, alpha_j)/(alpha_j, alpha_j), so the
    # weight coordinates of alpha_i are row i and weight = cartan^T . root coords.
    n = t.rank
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = 2
    for i in range(n - 1):
        m[i][i + 1] = m[i + 1][i] = -1
    if t.family == "B":
        m[n - 2][n - 1] = -2
        m[n - 1][n - 2] = -1
    elif t.family == "C":
        m[n - 2][n - 1] = -1
        m[n - 1][n - 2] = -2
    elif t.family == "D":
        m[n - 2][n - 1] = m[n - 1][n - 2] = 0
        m[n - 3][n - 1] = m[n - 1][n - 3] = -1
    return tuple(tuple(row) for row in m)


def _half_lengths(t: LieType) -> tuple[int, ...]:
    # d[i] = (alpha_i, alpha_i)/2 with short roots of squared length 2.
    n = t.rank
    if t.family == "B":
        return (2,) * (n - 1) + (1,)
    if t.family == "C":
        return (1,) * (n - 1) + (2,)
    return (1,) * n


def _invert(matrix) -> tuple[tuple[Fraction, ...], ...]:
    """Exact inverse of a small integer/rational matrix (Gauss-Jordan)."""
    n = len(matrix)
    aug = [[Fraction(matrix[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
           for i in range(n)]
    for col in range(n):
        pivot = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = Fraction(1) / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


class RootSystem:
    """Immutable root-system data for one classical simple Lie algebra.

    All attributes are computed in the constructor and must be treated as
    read-only; instances are safe to share between threads.
    """

    def __init__(self, lie_type: LieType):
        validate_lie_type(lie_type)
        self.lie_type = lie_type
        n = lie_type.rank
        self.rank = n
        self.cartan = _cartan_matrix(lie_type)
        self.half_lengths = _half_lengths(lie_type)
        self.rho: Weight = (1,) * n
        self.positive_roots = self._close_positive_roots()
        expected = _EXPECTED_ROOT_COUNT[lie_type.family](n)
        if len(self.positive_roots) != expected:
            raise AssertionError(
                f"{lie_type}: found {len(self.positive_roots)} positive roots, expected {expected}"
            )
        self.highest_root_index = self._locate_highest_root()
        self.positive_root_weights = frozenset(r.weight for r in self.positive_roots)
        # (omega_i, omega_j) = (cartan^{-1})[i][j] * d[j]; exact rationals.
        inv = _invert(self.cartan)
        self.gram = tuple(
            tuple(inv[i][j] * self.half_lengths[j] for j in range(n)) for i in range(n)
        )
        self._inv_cartan_t = _invert(tuple(zip(*self.cartan)))
        if lie_type.family == "B":
            self.spin_nodes = frozenset({n})
        elif lie_type.family == "D":
            self.spin_nodes = frozenset({n - 1, n})
        else:
            self.spin_nodes = frozenset()

    # -- construction -----------------------------------------------------

    def _close_positive_roots(self):
        n = self.rank
        cartan = self.cartan
        d = self.half_lengths
        roots: dict[tuple[int, ...], Weight] = {}
        frontier = []
        for i in range(n):
            coords = tuple(int(j == i) for j in range(n))
            roots[coords] = tuple(cartan[i])
            frontier.append(coords)
        while frontier:
            fresh = []
            for coords in frontier:
                weight = roots[coords]
                for i in range(n):
                    # Length p of the alpha_i-string below beta; beta + alpha_i
                    # is a root exactly when p - <beta, alpha_i^vee> >= 1.
                    p = 0
                    probe = list(coords)
                    while True:
                        probe[i] -= 1
                        if tuple(probe) in roots:
                            p += 1
                        else:
                            break
                    if p - weight[i] < 1:
                        continue
                    up = list(coords)
                    up[i] += 1
                    up_t = tuple(up)
                    if up_t not in roots:
                        roots[up_t] = tuple(w + c for w, c in zip(weight, cartan[i]))
                        fresh.append(up_t)
            frontier = fresh
        result = []
        for coords in sorted(roots, key=lambda c: (sum(c), c)):
            weight = roots[coords]
            md = tuple(c * di for c, di in zip(coords, d))
            norm = sum(m * w for m, w in zip(md, weight))
            if norm % 2:
                raise AssertionError(f"odd squared length for root {coords}")
            result.append(PositiveRoot(coords, weight, norm // 2, md, sum(md)))
        return tuple(result)

    def _locate_highest_root(self) -> int:
        top = max(range(len(self.positive_roots)),
                  key=lambda k: sum(self.positive_roots[k].coords))
        theta = self.positive_roots[top].coords
        for root in self.positive_roots:
            if any(t < c for t, c in zip(theta, root.coords)):
                raise AssertionError("highest root does not dominate all positive roots")
        return top

    # -- basic queries -----------------------------------------------------

    @property
    def highest_root(self) -> PositiveRoot:
        return self.positive_roots[self.highest_root_index]

    def simple_root_weight(self, i: int) -> Weight:
        """Weight coordinates of the i-th simple root (0-based index)."""
        return tuple(self.cartan[i])

    def is_dominant(self, xi: Weight) -> bool:
        return all(c >= 0 for c in xi)

    def inner(self, x, y) -> Fraction:
        """Symmetric bilinear form on weights (short roots squared length 2)."""
        total = Fraction(0)
        for i, xi in enumerate(x):
            if xi:
                row = self.gram[i]
                total += xi * sum(row[j] * y[j] for j in range(self.rank) if y[j])
        return total

    def pair_root(self, xi, root: PositiveRoot) -> int:
        """(xi, beta) for a positive root beta; always an integer."""
        return sum(m * c for m, c in zip(root.md, xi))

    def __repr__(self) -> str:
        return f"RootSystem({self.lie_type})"


@lru_cache(maxsize=None)
def _cached_root_system(t: LieType) -> RootSystem:
    return RootSystem(t)


def build_root_system(t: LieType | str) -> RootSystem:
    """Return the (shared, immutable) root system for a classical type."""
    if isinstance(t, str):
        t = parse_lie_type(t)
    validate_lie_type(t)
    return _cached_root_system(t)


def _descend(rs: RootSystem, xi) -> tuple[Weight, int, tuple[int, ...]]:
    """Move xi into the dominant chamber by simple reflections.

    Returns (dom, parity, lift) where parity is (-1)^(number of reflections)
    and lift gives the simple-root coordinates of dom - xi (a nonnegative
    integer vector).
    """
    n = rs.rank
    coords = list(xi)
    cartan = rs.cartan
    parity = 1
    lift = [0] * n
    moved = True
    while moved:
        moved = False
        for i in range(n):
            ci = coords[i]
            if ci < 0:
                row = cartan[i]
                for j in range(n):
                    coords[j] -= ci * row[j]
                lift[i] -= ci
                parity = -parity
                moved = True
    return tuple(coords), parity, tuple(lift)


def dominant_conjugate(rs: RootSystem, xi) -> tuple[Weight, int, bool]:
    """Unique dominant Weyl conjugate of xi with reflection parity.

    The third component is True when xi lies on a chamber wall (its orbit
    meets a coordinate hyperplane); the parity is meaningless in that case.
    """
    dom, parity, _ = _descend(rs, xi)
    return dom, parity, 0 in dom


def root_coords(rs: RootSystem, xi) -> tuple[Fraction, ...]:
    """Coordinates of xi on the simple roots (exact rational solve)."""
    inv = rs._inv_cartan_t
    n = rs.rank
    return tuple(sum(inv[i][j] * xi[j] for j in range(n)) for i in range(n))


def integral_root_coords(rs: RootSystem, xi) -> tuple[int, ...] | None:
    """Like :func:`root_coords` but None when xi is not in the root lattice."""
    coords = root_coords(rs, xi)
    if any(c.denominator != 1 for c in coords):
        return None
    return tuple(int(c) for c in coords)


_weyl_dim_cache: dict[tuple[LieType, Weight], int] = {}


def weyl_dim(rs: RootSystem, lam) -> int:
    """Dimension of the simple module V(lam) by the Weyl product formula."""
    lam = tuple(lam)
    key = (rs.lie_type, lam)
    hit = _weyl_dim_cache.get(key)
    if hit is not None:
        return hit
    if not rs.is_dominant(lam):
        raise ValueError(f"weyl_dim requires a dominant weight, got {lam}")
    dim = Fraction(1)
    for root in rs.positive_roots:
        # (lam + rho, beta) / (rho, beta), both integers in this normalisation.
        dim *= Fraction(rs.pair_root(lam, root) + root.md_sum, root.md_sum)
    if dim.denominator != 1:
        raise AssertionError(f"non-integral Weyl dimension for {lam}")
    value = int(dim)
    _weyl_dim_cache[key] = value
    return value


def omega_weight(rank: int, *terms: tuple[int, int]) -> Weight:
    """Build a weight from (node, coefficient) pairs, nodes 1-based."""
    coords = [0] * rank
    for node, coeff in terms:
        if not 1 <= node <= rank:
            raise ValueError(f"node {node} out of range 1..{rank}")
        coords[node - 1] += coeff
    return tuple(coords)


def add_weights(x, y) -> Weight:
    return tuple(a + b for a, b in zip(x, y))


def sub_weights(x, y) -> Weight:
    return tuple(a - b for a, b in zip(x, y))
