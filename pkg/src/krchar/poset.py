"""Poset machinery on P+ x Z^ell: Psi-sets, the refined order, distances and
enumeration of the finite convex up-sets used by the graded character
recursion."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterator, NamedTuple

from . import ratlp
from .repchar import (
    BoundedCache,
    register_cache,
    ModuleSpec,
    WeightChar,
    adjoint_char,
    component_char,
    dominant_multiplicities,
)
from .rootsys import (
    RootSystem,
    Weight,
    integral_root_coords,
    omega_weight,
    sub_weights,
)

MultiDegree = tuple[int, ...]


def deg(r: MultiDegree) -> int:
    """Total degree of a multidegree vector."""
    return sum(r)


def compositions(total: int, parts: int) -> Iterator[MultiDegree]:
    """All vectors in Z_+^parts with coordinate sum equal to total."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


class LambdaPoint(NamedTuple):
    weight: Weight
    degree: MultiDegree


@dataclass(frozen=True)
class PsiSet:
    """A finite set of weights, normally negatives of positive roots.

    The two flags record that the face condition and the extra support
    conditions have been verified (see :func:`checked_psi`)."""

    elements: frozenset[Weight]
    polytope_checked: bool = False
    extra_checked: bool = False

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)


def psi_i(rs: RootSystem, i: int) -> PsiSet:
    """Negatives of the positive roots whose i-th simple-root coefficient is 2
    (node i in 1-based Bourbaki numbering)."""
    if not 1 <= i <= rs.rank:
        raise ValueError(f"node {i} out of range 1..{rs.rank}")
    elements = frozenset(
        tuple(-c for c in root.weight)
        for root in rs.positive_roots
        if root.coords[i - 1] == 2
    )
    if elements:
        # Nonempty sets agree with the minimising face of the i-th fundamental
        # weight against the adjoint weight polytope.
        assert elements == psi_of_mu(rs, adjoint_char(rs), omega_weight(rs.rank, (i, 1))).elements
    return PsiSet(elements)


def psi_of_mu(rs: RootSystem, V_weights: WeightChar, mu) -> PsiSet:
    """Roots minimising the pairing with mu; only the adjoint layer is
    supported since the minimising set is a face of its weight polytope."""
    mu = tuple(mu)
    if not rs.is_dominant(mu) or not any(mu):
        raise ValueError(f"psi_of_mu requires a nonzero dominant weight, got {mu}")
    if V_weights != adjoint_char(rs):
        raise ValueError("psi_of_mu is only defined for the adjoint layer")
    pairings = {root.weight: rs.pair_root(mu, root) for root in rs.positive_roots}
    top = max(pairings.values())
    assert top > 0
    return PsiSet(frozenset(
        tuple(-c for c in w) for w, value in pairings.items() if value == top
    ))


def i_lambda(rs: RootSystem, lam) -> int:
    """Largest non-spin node in the support of lam, with fallback 1."""
    if not rs.is_dominant(lam):
        raise ValueError(f"i_lambda requires a dominant weight, got {tuple(lam)}")
    best = 1
    for node in range(1, rs.rank + 1):
        if lam[node - 1] and node not in rs.spin_nodes:
            best = node
    return best


def psi_lambda(rs: RootSystem, lam) -> PsiSet:
    return psi_i(rs, i_lambda(rs, lam))


def check_polytope_condition(psi: PsiSet, V_weights: WeightChar) -> bool:
    """Face test: some linear functional is constant on psi and strictly
    larger on every other weight of V (exact rational feasibility)."""
    support = set(V_weights.entries)
    if not set(psi.elements) <= support:
        raise ValueError("psi is not contained in the weight set of V")
    if not psi.elements:
        return True
    nvars = len(next(iter(psi.elements))) + 1  # functional phi plus level c
    equalities = [(list(nu) + [-1], 0) for nu in psi.elements]
    inequalities = [
        (list(mu) + [-1], 1) for mu in support if mu not in psi.elements
    ]
    return ratlp.feasible(equalities, inequalities, nvars)


def check_psi_extra(rs: RootSystem, psi: PsiSet, V_weights: WeightChar) -> bool:
    """Support conditions: psi avoids the dominant cone, sits inside the
    negative roots (which bounds the reachable dominant weights), and is
    never hit from a dominant weight of V by adding a simple root."""
    if any(all(c >= 0 for c in nu) for nu in psi.elements):
        return False
    negatives = {tuple(-c for c in w) for w in rs.positive_root_weights}
    if not set(psi.elements) <= negatives:
        return False
    for xi in V_weights.entries:
        if rs.is_dominant(xi):
            for i in range(rs.rank):
                shifted = tuple(x + c for x, c in zip(xi, rs.cartan[i]))
                if shifted in psi.elements:
                    return False
    return True


def checked_psi(rs: RootSystem, psi: PsiSet, V_weights: WeightChar | None = None) -> PsiSet:
    """Run both condition checks and return a flagged copy; raises when a
    condition fails."""
    if V_weights is None:
        V_weights = adjoint_char(rs)
    if not check_polytope_condition(psi, V_weights):
        raise ValueError("psi fails the weight-polytope face condition")
    if not check_psi_extra(rs, psi, V_weights):
        raise ValueError("psi fails the support conditions")
    return replace(psi, polytope_checked=True, extra_checked=True)


# -- the Psi-distance ------------------------------------------------------------

_d_psi_cache = register_cache(BoundedCache())


def _psi_root_coords(rs: RootSystem, psi: PsiSet) -> tuple[tuple[int, ...], ...]:
    out = []
    for nu in psi.elements:
        coords = integral_root_coords(rs, nu)
        if coords is None or any(c > 0 for c in coords):
            raise ValueError(f"psi element {nu} is not a negative root")
        out.append(coords)
    return tuple(sorted(out))


def d_psi(rs: RootSystem, psi: PsiSet, lam, mu) -> int | None:
    """Minimal number of psi elements (with repetition) summing to mu - lam;
    None when no such expression exists."""
    lam, mu = tuple(lam), tuple(mu)
    diff = sub_weights(mu, lam)
    target = integral_root_coords(rs, diff)
    if target is None or any(c > 0 for c in target):
        return None
    if not any(target):
        return 0
    moves = _psi_root_coords(rs, psi)
    if not moves:
        return None
    key = (rs.lie_type, moves, target)
    hit = _d_psi_cache.get(key)
    if hit is not None:
        return hit if hit >= 0 else None
    n = rs.rank
    frontier = {(0,) * n}
    seen = {(0,) * n}
    steps = 0
    while frontier:
        steps += 1
        nxt = set()
        for state in frontier:
            for move in moves:
                new = tuple(s + m for s, m in zip(state, move))
                if new == target:
                    _d_psi_cache.put(key, steps)
                    return steps
                # Coordinates only decrease; prune once past the target.
                if new in seen or any(c < t for c, t in zip(new, target)):
                    continue
                seen.add(new)
                nxt.add(new)
        frontier = nxt
    _d_psi_cache.put(key, -1)
    return None


# -- order relations --------------------------------------------------------------

def covers(rs: RootSystem, ms: ModuleSpec, a: LambdaPoint, b: LambdaPoint) -> bool:
    """True when b sits one graded layer above a: the degrees differ by some
    e_j and the weight difference is a weight of the j-th layer."""
    diff = sub_weights(b.degree, a.degree)
    if any(c < 0 for c in diff) or not any(diff):
        return False
    if deg(diff) > 1:
        return False  # layers above total degree one vanish
    j = diff.index(1)
    layer = component_char(rs, ms, j)
    return sub_weights(b.weight, a.weight) in layer.entries


def leq_psi(rs: RootSystem, psi: PsiSet, a: LambdaPoint, b: LambdaPoint) -> bool:
    ddeg = sub_weights(b.degree, a.degree)
    if any(c < 0 for c in ddeg):
        return False
    d = d_psi(rs, psi, a.weight, b.weight)
    return d is not None and d == deg(ddeg)


# -- Gamma enumeration --------------------------------------------------------------

class GammaSet:
    """Finite convex up-set above ``base`` in the refined order, enumerated
    compatibly with it (sort key: distance, then weight, then degree)."""

    def __init__(self, base: LambdaPoint, psi: PsiSet,
                 points: tuple[LambdaPoint, ...], d_of: dict[Weight, int]):
        self.base = base
        self.psi = psi
        self.points = points
        self.d_of = d_of
        self.index_of = {p: i for i, p in enumerate(points)}

    @property
    def ell(self) -> int:
        return len(self.base.degree)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, point):
        return point in self.index_of

    def __eq__(self, other):
        return (isinstance(other, GammaSet)
                and self.base == other.base
                and self.points == other.points)

    def __repr__(self):
        return f"GammaSet(base={self.base}, size={len(self.points)})"


def gamma_psi(rs: RootSystem, psi: PsiSet, base: LambdaPoint, ell: int,
              override: bool = False) -> GammaSet:
    """Enumerate every point reachable from ``base`` in the refined order.

    Candidate weights are the dominant weights under base.weight in the root
    order, kept when the psi-distance is defined; the multidegrees of a kept
    weight are all shifts of the base degree by a vector of the matching
    total degree.
    """
    if not (override or (psi.polytope_checked and psi.extra_checked)):
        raise ValueError("psi conditions unverified; run checked_psi or pass override=True")
    lam = tuple(base.weight)
    if not rs.is_dominant(lam):
        raise ValueError(f"base weight {lam} is not dominant")
    if len(base.degree) != ell:
        raise ValueError(f"base degree {base.degree} does not have length ell={ell}")
    base = LambdaPoint(lam, tuple(base.degree))
    keyed = []
    d_of: dict[Weight, int] = {}
    for mu in dominant_multiplicities(rs, lam):
        d = d_psi(rs, psi, lam, mu)
        if d is None:
            continue
        d_of[mu] = d
        for r in compositions(d, ell):
            s = tuple(b + x for b, x in zip(base.degree, r))
            keyed.append((d, mu, s))
    keyed.sort()
    points = tuple(LambdaPoint(mu, s) for _, mu, s in keyed)
    assert points and points[0] == base
    return GammaSet(base, psi, points, d_of)
