"""Exact character arithmetic for the classical simple Lie algebras.

Weight multiplicities come from the Freudenthal recursion, tensor products
from the Racah-Speiser reflection algorithm, and exterior/symmetric powers
from a generating-function DP over the weight multiset.  All intermediate
characters may be virtual (signed); genuineness is asserted only where a
result promises an actual module.
"""

from __future__ import annotations

import heapq
import math
import threading
from collections import OrderedDict
from dataclasses import dataclass
from typing import Mapping

from .rootsys import (
    RootSystem,
    Weight,
    _descend,
    add_weights,
    weyl_dim,
)

DEFAULT_CACHE_ENTRIES = 100_000

_cache_registry: list["BoundedCache"] = []


def register_cache(cache: "BoundedCache") -> "BoundedCache":
    """Track a module-level memo table so clear_memo_caches can reach it."""
    _cache_registry.append(cache)
    return cache


class BoundedCache:
    """FIFO-bounded, lock-protected mapping used for all memo tables."""

    def __init__(self, max_entries: int = DEFAULT_CACHE_ENTRIES):
        self.max_entries = max_entries
        self._data: OrderedDict = OrderedDict()
        self._lock = threading.Lock()

    def get(self, key):
        with self._lock:
            return self._data.get(key)

    def put(self, key, value):
        with self._lock:
            if key not in self._data:
                self._data[key] = value
                while len(self._data) > self.max_entries:
                    self._data.popitem(last=False)

    def items(self):
        with self._lock:
            return list(self._data.items())

    def __len__(self):
        return len(self._data)

    def clear(self):
        with self._lock:
            self._data.clear()


class WeightChar:
    """Finite integer combination of weights (a virtual g-character).

    Entries with value zero are never stored.  ``*`` is the convolution
    product (character of a tensor product) for another WeightChar and plain
    scaling for an integer.
    """

    __slots__ = ("entries",)
    __hash__ = None

    def __init__(self, entries: Mapping[Weight, int] | None = None):
        self.entries = {w: m for w, m in (entries or {}).items() if m}

    @classmethod
    def trivial(cls, rank: int) -> "WeightChar":
        return cls({(0,) * rank: 1})

    def __eq__(self, other):
        return isinstance(other, WeightChar) and self.entries == other.entries

    def __bool__(self):
        return bool(self.entries)

    def __add__(self, other):
        out = dict(self.entries)
        for w, m in other.entries.items():
            v = out.get(w, 0) + m
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return WeightChar(out)

    def __sub__(self, other):
        out = dict(self.entries)
        for w, m in other.entries.items():
            v = out.get(w, 0) - m
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return WeightChar(out)

    def __neg__(self):
        return WeightChar({w: -m for w, m in self.entries.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return WeightChar({w: m * other for w, m in self.entries.items()})
        out: dict[Weight, int] = {}
        for u, a in self.entries.items():
            for v, b in other.entries.items():
                w = add_weights(u, v)
                c = out.get(w, 0) + a * b
                if c:
                    out[w] = c
                else:
                    del out[w]
        return WeightChar(out)

    __rmul__ = __mul__

    def dimension(self) -> int:
        return sum(self.entries.values())

    def is_genuine(self) -> bool:
        return all(m > 0 for m in self.entries.values())

    def __repr__(self):
        return f"WeightChar({self.entries!r})"


class IsoChar:
    """Decomposition of a character into simple-module multiplicities."""

    __slots__ = ("entries",)
    __hash__ = None

    def __init__(self, entries: Mapping[Weight, int] | None = None):
        self.entries = {w: m for w, m in (entries or {}).items() if m}

    def __eq__(self, other):
        return isinstance(other, IsoChar) and self.entries == other.entries

    def __getitem__(self, mu: Weight) -> int:
        return self.entries.get(tuple(mu), 0)

    def is_genuine(self) -> bool:
        return all(m > 0 for m in self.entries.values())

    def expand(self, rs: RootSystem) -> WeightChar:
        out = WeightChar()
        for mu, m in self.entries.items():
            out = out + freudenthal(rs, mu) * m
        return out

    def total_dimension(self, rs: RootSystem) -> int:
        return sum(m * weyl_dim(rs, mu) for mu, m in self.entries.items())

    def __repr__(self):
        return f"IsoChar({self.entries!r})"


@dataclass(frozen=True)
class ModuleSpec:
    """Degree-one layers V_1, ..., V_ell of the graded algebra, each given as
    a multiset of dominant highest weights."""

    components: tuple[tuple[Weight, ...], ...]

    def __post_init__(self):
        if not self.components:
            raise ValueError("ModuleSpec needs at least one component")

    @property
    def ell(self) -> int:
        return len(self.components)

    @classmethod
    def adjoint(cls, rs: RootSystem, ell: int) -> "ModuleSpec":
        if ell < 1:
            raise ValueError("ell must be positive")
        theta = rs.highest_root.weight
        return cls(((theta,),) * ell)


def adjoint_char(rs: RootSystem) -> WeightChar:
    """Character of the adjoint module, straight from the root enumeration."""
    entries: dict[Weight, int] = {(0,) * rs.rank: rs.rank}
    for root in rs.positive_roots:
        entries[root.weight] = 1
        entries[tuple(-c for c in root.weight)] = 1
    return WeightChar(entries)


# -- Freudenthal --------------------------------------------------------------

_char_cache = register_cache(BoundedCache())


def _freudenthal_tables(rs: RootSystem, lam: Weight):
    """Full and dominant multiplicity tables of V(lam).

    Weights are generated level by level (depth = height of lam - mu), each
    candidate admitted iff its dominant conjugate stays under lam in the root
    order; Freudenthal's recursion is evaluated at dominant weights only and
    propagated along Weyl orbits.  Everything is plain integer arithmetic.
    """
    key = (rs.lie_type, lam)
    hit = _char_cache.get(key)
    if hit is not None:
        return hit
    if not rs.is_dominant(lam):
        raise ValueError(f"freudenthal requires a dominant weight, got {lam}")
    n = rs.rank
    d = rs.half_lengths
    cartan = rs.cartan
    roots = rs.positive_roots
    full: dict[Weight, int] = {lam: 1}
    dominant: dict[Weight, int] = {lam: 1}
    offsets: dict[Weight, tuple[int, ...]] = {lam: (0,) * n}
    level = [lam]
    while level:
        candidates: dict[Weight, tuple[int, ...]] = {}
        for mu in level:
            off = offsets[mu]
            for i in range(n):
                row = cartan[i]
                nu = tuple(m - c for m, c in zip(mu, row))
                if nu in candidates or nu in full:
                    continue
                noff = list(off)
                noff[i] += 1
                candidates[nu] = tuple(noff)
        level = []
        for nu, off in candidates.items():
            dom, _, lift = _descend(rs, nu)
            if any(o < l for o, l in zip(off, lift)):
                continue  # dominant conjugate escapes lam - Q+: not a weight
            if dom == nu:
                acc = 0
                for root in roots:
                    rw = root.weight
                    pair = sum(m * c for m, c in zip(root.md, nu))
                    step = 2 * root.half_norm
                    k = 1
                    x = add_weights(nu, rw)
                    while True:
                        mx = full.get(x)
                        if mx is None:
                            break
                        acc += mx * (pair + k * step)
                        k += 1
                        x = add_weights(x, rw)
                den = sum(
                    off[i] * d[i] * (lam[i] + nu[i] + 2) for i in range(n)
                )
                num = 2 * acc
                if den <= 0 or num % den:
                    raise AssertionError(f"Freudenthal division failed at {nu}")
                m = num // den
                if m <= 0:
                    raise AssertionError(f"non-positive multiplicity at {nu}")
                dominant[nu] = m
            else:
                m = full[dom]
            full[nu] = m
            offsets[nu] = off
            level.append(nu)
    result = (WeightChar(full), dominant)
    _char_cache.put(key, result)
    return result


def freudenthal(rs: RootSystem, lam) -> WeightChar:
    """Character of the simple module V(lam); treat the result as immutable."""
    return _freudenthal_tables(rs, tuple(lam))[0]


def dominant_multiplicities(rs: RootSystem, lam) -> Mapping[Weight, int]:
    """Multiplicities of V(lam) at its dominant weights."""
    return _freudenthal_tables(rs, tuple(lam))[1]


# -- tensor products -----------------------------------------------------------


class TensorCache(BoundedCache):
    """Memo of full tensor decompositions, optionally persisted to disk.

    ``computed`` counts actual Racah-Speiser runs (cache misses)."""

    def __init__(self, max_entries: int = DEFAULT_CACHE_ENTRIES):
        super().__init__(max_entries)
        self.computed = 0

    def count_compute(self):
        with self._lock:
            self.computed += 1


_tensor_cache = TensorCache()


def active_tensor_cache() -> TensorCache:
    return _tensor_cache


def set_active_tensor_cache(cache: TensorCache) -> TensorCache:
    global _tensor_cache
    previous = _tensor_cache
    _tensor_cache = cache
    return previous


def tensor_decompose(rs: RootSystem, lam, nu) -> IsoChar:
    """Decompose V(lam) (x) V(nu) into simple multiplicities (Racah-Speiser).

    The weight system of the factor with the smaller Weyl dimension is
    iterated (ties go to nu); each shifted weight is reflected into the
    dominant chamber with its sign, wall terms are dropped.
    """
    lam, nu = tuple(lam), tuple(nu)
    if not rs.is_dominant(lam) or not rs.is_dominant(nu):
        raise ValueError("tensor_decompose requires dominant weights")
    key = (rs.lie_type,) + tuple(sorted((lam, nu)))
    cache = _tensor_cache
    hit = cache.get(key)
    if hit is not None:
        return IsoChar(hit)
    if weyl_dim(rs, lam) < weyl_dim(rs, nu):
        small, big = lam, nu
    else:
        small, big = nu, lam
    out: dict[Weight, int] = {}
    for w, m in freudenthal(rs, small).entries.items():
        target = tuple(b + x + 1 for b, x in zip(big, w))
        dom, parity, _ = _descend(rs, target)
        if 0 in dom:
            continue
        mu = tuple(c - 1 for c in dom)
        v = out.get(mu, 0) + parity * m
        if v:
            out[mu] = v
        else:
            del out[mu]
    if any(m < 0 for m in out.values()):
        raise AssertionError("negative multiplicity from Racah-Speiser")
    cache.count_compute()
    cache.put(key, out)
    return IsoChar(out)


# -- exterior and symmetric powers ---------------------------------------------

def _power_char(ch: WeightChar, k: int, kind: str) -> WeightChar:
    if k < 0:
        raise ValueError("power degree must be nonnegative")
    if any(m < 0 for m in ch.entries.values()):
        raise ValueError(f"{kind}_power requires a genuine character")
    if not ch.entries:
        if k == 0:
            raise ValueError("cannot infer the rank from an empty character")
        return WeightChar()
    rank = len(next(iter(ch.entries)))
    zero = (0,) * rank
    dp: list[dict[Weight, int]] = [{} for _ in range(k + 1)]
    dp[0][zero] = 1
    for w, mult in ch.entries.items():
        # Multiply the truncated series by (1 + x e^w)^mult or (1 - x e^w)^-mult.
        if kind == "ext":
            top = min(mult, k)
            coeffs = [math.comb(mult, j) for j in range(top + 1)]
        else:
            top = k
            coeffs = [math.comb(mult + j - 1, j) for j in range(top + 1)]
        ndp: list[dict[Weight, int]] = [{} for _ in range(k + 1)]
        for deg in range(k + 1):
            layer = ndp[deg]
            for j in range(min(deg, top) + 1):
                cj = coeffs[j]
                if not cj:
                    continue
                shift = tuple(j * c for c in w)
                for u, a in dp[deg - j].items():
                    key = add_weights(u, shift) if j else u
                    layer[key] = layer.get(key, 0) + cj * a
        dp = ndp
    return WeightChar(dp[k])


def ext_power(ch: WeightChar, k: int) -> WeightChar:
    """Character of the k-th exterior power of a module with character ch."""
    return _power_char(ch, k, "ext")


def sym_power(ch: WeightChar, k: int) -> WeightChar:
    """Character of the k-th symmetric power of a module with character ch."""
    return _power_char(ch, k, "sym")


# -- isotypical decomposition ---------------------------------------------------

def iso_decompose(rs: RootSystem, ch: WeightChar) -> IsoChar:
    """Write a Weyl-invariant character as a combination of simple characters.

    Extracts repeatedly at a maximal remaining weight; a maximal weight that
    is not dominant proves the input was not Weyl-invariant.
    """
    rho_row = tuple(sum(row) for row in rs.gram)  # (omega_i, rho)

    def score(w):
        return sum(c * g for c, g in zip(w, rho_row))

    work = dict(ch.entries)
    heap = [(-score(w), w) for w in work]
    heapq.heapify(heap)
    out: dict[Weight, int] = {}
    while work:
        while True:
            _, w = heapq.heappop(heap)
            if w in work:
                break
        if not rs.is_dominant(w):
            raise ValueError(
                f"character is not Weyl-invariant: maximal weight {w} is not dominant"
            )
        c = work.pop(w)
        out[w] = c
        for u, m in freudenthal(rs, w).entries.items():
            if u == w:
                continue
            v = work.get(u, 0) - c * m
            if v:
                if u not in work:
                    heapq.heappush(heap, (-score(u), u))
                work[u] = v
            else:
                work.pop(u, None)
    return IsoChar(out)


# -- graded Hom-space coefficients ----------------------------------------------

_component_char_cache = register_cache(BoundedCache())
_power_iso_cache = register_cache(BoundedCache())
_coeff_cache = register_cache(BoundedCache())


def component_char(rs: RootSystem, ms: ModuleSpec, j: int) -> WeightChar:
    """Character of the j-th degree-one layer (0-based)."""
    comp = ms.components[j]
    key = (rs.lie_type, comp)
    hit = _component_char_cache.get(key)
    if hit is None:
        hit = WeightChar()
        for w in comp:
            hit = hit + freudenthal(rs, w)
        _component_char_cache.put(key, hit)
    return hit


def _power_product_iso(rs: RootSystem, ms: ModuleSpec, k, kind: str) -> IsoChar:
    """Isotypical pieces of P^{k_1} V_1 (x) ... (x) P^{k_ell} V_ell where P is
    the exterior or symmetric power functor."""
    factors = tuple(sorted(
        (ms.components[i], ki) for i, ki in enumerate(k) if ki
    ))
    key = (rs.lie_type, kind, factors)
    hit = _power_iso_cache.get(key)
    if hit is not None:
        return hit
    ch = WeightChar.trivial(rs.rank)
    for comp, ki in factors:
        base = component_char(rs, ModuleSpec((comp,)), 0)
        ch = ch * _power_char(base, ki, kind)
    iso = iso_decompose(rs, ch)
    _power_iso_cache.put(key, iso)
    return iso


def _hom_coefficient(rs: RootSystem, ms: ModuleSpec, lam, mu, k, kind: str) -> int:
    lam, mu, k = tuple(lam), tuple(mu), tuple(int(x) for x in k)
    if len(k) != ms.ell:
        raise ValueError(f"degree vector {k} does not match ell={ms.ell}")
    if any(x < 0 for x in k):
        raise ValueError(f"negative entry in degree vector {k}")
    if not rs.is_dominant(lam) or not rs.is_dominant(mu):
        raise ValueError("coefficients require dominant weights")
    factors = tuple(sorted((ms.components[i], ki) for i, ki in enumerate(k) if ki))
    key = (rs.lie_type, kind, factors, lam, mu)
    hit = _coeff_cache.get(key)
    if hit is not None:
        return hit
    iso = _power_product_iso(rs, ms, k, kind)
    total = 0
    for nu, m in iso.entries.items():
        total += m * tensor_decompose(rs, nu, lam)[mu]
    _coeff_cache.put(key, total)
    return total


def c_coefficient(rs: RootSystem, ms: ModuleSpec, lam, mu, k) -> int:
    """Multiplicity of V(mu) in (wedge^{k_1} V_1 (x) ... (x) wedge^{k_ell} V_ell) (x) V(lam)."""
    return _hom_coefficient(rs, ms, lam, mu, k, "ext")


def sym_coefficient(rs: RootSystem, ms: ModuleSpec, lam, mu, k) -> int:
    """Multiplicity of V(mu) in (Sym^{k_1} V_1 (x) ... (x) Sym^{k_ell} V_ell) (x) V(lam)."""
    return _hom_coefficient(rs, ms, lam, mu, k, "sym")


def clear_memo_caches() -> None:
    """Drop every in-memory memo table (the persistent store is untouched)."""
    for cache in _cache_registry:
        cache.clear()
    _tensor_cache.clear()
