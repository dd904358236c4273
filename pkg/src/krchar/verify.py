"""Verification suites: closed formulas, matrix identities and property sweeps.

Each check returns a :class:`CheckResult`; the CLI ``verify`` command and the
acceptance tests run the same functions, so a passing suite here is exactly
the library's advertised correctness contract.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterator

from .graded import (
    GradedChar,
    gch_N,
    gch_P_direct,
    gch_P_recursive,
    multiplicity_ell_profile,
    verify_AE_identity,
    verify_alternating_sum,
)
from .poset import (
    LambdaPoint,
    checked_psi,
    compositions,
    d_psi,
    gamma_psi,
    i_lambda,
    psi_i,
    psi_of_mu,
)
from .repchar import (
    ModuleSpec,
    adjoint_char,
    freudenthal,
    iso_decompose,
    tensor_decompose,
)
from .rootsys import LieType, build_root_system, omega_weight, weyl_dim

RANDOM_SEED = 20250811


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


def _fail(name: str, detail: str) -> CheckResult:
    return CheckResult(name, False, detail)


def _ok(name: str, detail: str = "") -> CheckResult:
    return CheckResult(name, True, detail)


# -- the shared test matrix ----------------------------------------------------

def acceptance_matrix() -> Iterator[tuple]:
    """(root system, highest weight, ell) triples shared by the identity
    checks: D4/D5, multiples of the non-spin fundamentals up to 3 plus
    2*omega_3, each with one to three grading variables."""
    for label in ("D4", "D5"):
        rs = build_root_system(label)
        lams = []
        for i in range(1, rs.rank + 1):
            if i in rs.spin_nodes:
                continue
            lams.extend(omega_weight(rs.rank, (i, m)) for m in (1, 2, 3))
        two_omega3 = omega_weight(rs.rank, (3, 2))
        if two_omega3 not in lams:
            lams.append(two_omega3)
        for lam in lams:
            for ell in (1, 2, 3):
                yield rs, lam, ell


def _kr_gamma(rs, lam, ell):
    psi = checked_psi(rs, psi_i(rs, i_lambda(rs, lam)))
    base = LambdaPoint(lam, (0,) * ell)
    return base, gamma_psi(rs, psi, base, ell)


# -- closed formulas and worked values --------------------------------------------

def _expected_2omega3(ell: int) -> GradedChar:
    w = lambda *terms: omega_weight(5, *terms)
    entries = {(w((3, 2)), (0,) * ell): 1}
    for j in range(ell):
        e = tuple(int(i == j) for i in range(ell))
        entries[(w((3, 1), (1, 1)), e)] = 1
    for j in range(ell):
        for k in range(j + 1, ell):
            r = tuple(int(i in (j, k)) for i in range(ell))
            entries[(w((2, 1)), r)] = 1
    for r in compositions(2, ell):
        entries[(w((1, 2)), r)] = 1
    for j in range(ell):
        for k in range(j + 1, ell):
            for l in range(k + 1, ell):
                r = tuple(int(i in (j, k, l)) for i in range(ell))
                entries[((0,) * 5, r)] = 1
    return GradedChar(entries)


def check_gch_2omega3() -> CheckResult:
    name = "gchN-D5-2omega3"
    rs = build_root_system("D5")
    lam = omega_weight(5, (3, 2))
    for ell in (1, 2, 3):
        got = gch_N(rs, lam, ell)
        expected = _expected_2omega3(ell)
        if got != expected:
            return _fail(name, f"ell={ell}: characters differ")
        omega2_present = any(w == omega_weight(5, (2, 1)) for (w, _) in got.entries)
        trivial_present = any(w == (0,) * 5 for (w, _) in got.entries)
        if omega2_present != (ell >= 2):
            return _fail(name, f"ell={ell}: omega_2 term presence wrong")
        if trivial_present != (ell >= 3):
            return _fail(name, f"ell={ell}: trivial term presence wrong")
    return _ok(name, "ell=1,2,3 exact")


def check_closed_formula_momega2() -> CheckResult:
    name = "closed-form-m-omega2"
    for label in ("D4", "D5"):
        rs = build_root_system(label)
        for m in range(1, 5):
            for ell in (1, 2, 3):
                lam = omega_weight(rs.rank, (2, m))
                expected = GradedChar({
                    (omega_weight(rs.rank, (2, m - k)), r): 1
                    for k in range(m + 1)
                    for r in compositions(k, ell)
                })
                if gch_N(rs, lam, ell) != expected:
                    return _fail(name, f"{label}, m={m}, ell={ell}")
    return _ok(name, "D4/D5, m<=4, ell<=3 exact")


def check_ell1_momega3() -> CheckResult:
    name = "ell1-m-omega3-D5"
    rs = build_root_system("D5")
    for m in (1, 2, 3):
        lam = omega_weight(5, (3, m))
        expected = GradedChar({
            (omega_weight(5, (3, m - r), (1, r)), (r,)): 1 for r in range(m + 1)
        })
        if gch_N(rs, lam, 1) != expected:
            return _fail(name, f"m={m}")
    return _ok(name, "m<=3 exact")


def check_trivial_cases() -> CheckResult:
    name = "trivial-KR"
    for label, nodes in (("D4", (1, 3, 4)), ("D5", (1, 4, 5))):
        rs = build_root_system(label)
        for i in nodes:
            for m in range(1, 5):
                lam = omega_weight(rs.rank, (i, m))
                for ell in (1, 2, 3):
                    base, gamma = _kr_gamma(rs, lam, ell)
                    if len(gamma) != 1:
                        return _fail(name, f"{label}, i={i}, m={m}: gamma not a singleton")
                    if gch_N(rs, lam, ell) != GradedChar({(lam, (0,) * ell): 1}):
                        return _fail(name, f"{label}, i={i}, m={m}, ell={ell}")
    return _ok(name, "node 1 and spin nodes, m<=4")


def check_psi_structure() -> CheckResult:
    name = "psi-sets"
    for label in ("D4", "D5"):
        rs = build_root_system(label)
        for i in (1, *rs.spin_nodes):
            if psi_i(rs, i).elements:
                return _fail(name, f"{label}: psi_{i} should be empty")
        theta = rs.highest_root.weight
        if psi_i(rs, 2).elements != {tuple(-c for c in theta)}:
            return _fail(name, f"{label}: psi_2 is not the negated highest root")
        adj = adjoint_char(rs)
        for i in range(1, rs.rank + 1):
            psi = psi_i(rs, i)
            if psi.elements and psi.elements != psi_of_mu(
                rs, adj, omega_weight(rs.rank, (i, 1))
            ).elements:
                return _fail(name, f"{label}: psi_{i} != face of omega_{i}")
            if psi.elements:
                checked_psi(rs, psi)  # raises when a condition fails
    d5 = build_root_system("D5")
    if len(psi_i(d5, 3)) != 3:
        return _fail(name, "D5: psi_3 should have three elements")
    return _ok(name)


def check_c_table() -> CheckResult:
    name = "c-table-D5-2omega3"
    rs = build_root_system("D5")
    ms = ModuleSpec.adjoint(rs, 2)
    base = LambdaPoint(omega_weight(5, (3, 2)), (0, 0))
    w = lambda *terms: omega_weight(5, *terms)
    from .graded import ext_dim

    cases = [
        (base.weight, (0, 0), 0, 1),
        (w((3, 1), (1, 1)), (1, 0), 1, 1),
        (w((2, 1)), (1, 1), 2, 1),
        (w((2, 1)), (2, 0), 2, 1),
        (w((1, 2)), (1, 1), 2, 1),
        (w((1, 2)), (2, 0), 2, 0),
        ((0,) * 5, (2, 1), 3, 1),
    ]
    for mu, s, j, expected in cases:
        got = ext_dim(rs, ms, base, LambdaPoint(mu, s), j)
        if got != expected:
            return _fail(name, f"Ext^{j} to ({mu}, {s}): got {got}, expected {expected}")
    return _ok(name, "all seven coefficients")


def check_gamma_2omega3() -> CheckResult:
    name = "gamma-D5-2omega3"
    rs = build_root_system("D5")
    base, gamma = _kr_gamma(rs, omega_weight(5, (3, 2)), 2)
    expected = {
        omega_weight(5, (3, 2)): 0,
        omega_weight(5, (3, 1), (1, 1)): 1,
        omega_weight(5, (2, 1)): 2,
        omega_weight(5, (1, 2)): 2,
        (0,) * 5: 3,
    }
    if gamma.d_of != expected:
        return _fail(name, f"distances {gamma.d_of}")
    return _ok(name)


def check_ell_dependence() -> CheckResult:
    name = "ell-dependence"
    rs = build_root_system("D5")
    lam = omega_weight(5, (3, 2))
    omega2 = multiplicity_ell_profile(rs, lam, omega_weight(5, (2, 1)), 3)
    if omega2 != [0, 1, 3]:
        return _fail(name, f"omega_2 profile {omega2}")
    trivial = multiplicity_ell_profile(rs, lam, (0,) * 5, 3)
    if trivial != [0, 0, 1]:
        return _fail(name, f"trivial profile {trivial}")
    stable = multiplicity_ell_profile(rs, omega_weight(5, (2, 3)), omega_weight(5, (2, 1)), 3)
    if stable != [1, 3, 6]:
        return _fail(name, f"m*omega_2 profile {stable}")
    return _ok(name, "presence thresholds at ell=2 and ell=3")


# -- identity checks ----------------------------------------------------------------

def check_ae_identity() -> CheckResult:
    name = "ae-identity"
    count = 0
    for rs, lam, ell in acceptance_matrix():
        ms = ModuleSpec.adjoint(rs, ell)
        base, gamma = _kr_gamma(rs, lam, ell)
        ok, detail = verify_AE_identity(rs, ms, gamma)
        if not ok:
            return _fail(name, f"{rs.lie_type}, lam={lam}, ell={ell}: {detail}")
        count += 1
    return _ok(name, f"{count} gamma sets")


def check_cross_path() -> CheckResult:
    name = "cross-path-direct-vs-recursive"
    count = 0
    for rs, lam, ell in acceptance_matrix():
        ms = ModuleSpec.adjoint(rs, ell)
        base, gamma = _kr_gamma(rs, lam, ell)
        direct = gch_P_direct(rs, ms, base, gamma)
        recursive = gch_P_recursive(rs, ms, base, gamma)
        if direct != recursive:
            return _fail(name, f"{rs.lie_type}, lam={lam}, ell={ell}")
        count += 1
    return _ok(name, f"{count} gamma sets")


def check_alternating_sum() -> CheckResult:
    name = "alternating-sum"
    count = 0
    for rs, lam, ell in acceptance_matrix():
        ms = ModuleSpec.adjoint(rs, ell)
        base, gamma = _kr_gamma(rs, lam, ell)
        ok, detail = verify_alternating_sum(rs, ms, base, gamma)
        if not ok:
            return _fail(name, f"{rs.lie_type}, lam={lam}, ell={ell}: {detail}")
        count += 1
    return _ok(name, f"{count} gamma sets")


def check_mode_agreement() -> CheckResult:
    name = "mode-agreement"
    count = 0
    for rs, lam, ell in acceptance_matrix():
        fixed = gch_N(rs, lam, ell, mode="fixed-psi")
        per_weight = gch_N(rs, lam, ell, mode="per-weight-psi")
        if fixed != per_weight:
            node = i_lambda(rs, lam)
            return _fail(
                name,
                f"{rs.lie_type}, lam={lam}, ell={ell}: fixed psi_{node} gamma "
                f"disagrees with the per-weight gamma family",
            )
        count += 1
    return _ok(name, f"{count} characters")


def check_tensor_vs_product_rank2() -> CheckResult:
    name = "tensor-vs-character-product-rank2"
    count = 0
    for label in ("A1", "A2", "B2", "C2"):
        rs = build_root_system(label)
        if rs.rank == 1:
            weights = [(a,) for a in range(4)]
        else:
            weights = [(a, b) for a in range(4) for b in range(4)]
        for lam in weights:
            for nu in weights:
                if nu < lam:
                    continue  # the product is symmetric
                direct = tensor_decompose(rs, lam, nu)
                oracle = iso_decompose(rs, freudenthal(rs, lam) * freudenthal(rs, nu))
                if direct != oracle:
                    return _fail(name, f"{label}: {lam} (x) {nu}")
                count += 1
    return _ok(name, f"{count} pairs")


def check_dimension_conservation() -> CheckResult:
    name = "tensor-dimension-conservation"
    rng = random.Random(RANDOM_SEED)
    types = [LieType("A", n) for n in range(1, 6)]
    types += [LieType("B", n) for n in range(2, 6)]
    types += [LieType("C", n) for n in range(2, 6)]
    types += [LieType("D", n) for n in (4, 5)]

    def draw_weight(rank):
        coords = [0] * rank
        for _ in range(rng.randint(1, 2)):
            coords[rng.randrange(rank)] += rng.randint(1, 2)
        return tuple(coords)

    for trial in range(200):
        t = rng.choice(types)
        rs = build_root_system(t)
        lam, nu = draw_weight(t.rank), draw_weight(t.rank)
        iso = tensor_decompose(rs, lam, nu)
        if not iso.is_genuine():
            return _fail(name, f"trial {trial}: negative multiplicity for {t} {lam} {nu}")
        if iso.total_dimension(rs) != weyl_dim(rs, lam) * weyl_dim(rs, nu):
            return _fail(name, f"trial {trial}: dimension mismatch for {t} {lam} {nu}")
    return _ok(name, "200 seeded pairs, rank <= 5")


def check_root_sum_decompositions() -> CheckResult:
    name = "root-sum-decompositions"
    labels = [f"A{n}" for n in range(1, 9)]
    labels += [f"B{n}" for n in range(2, 9)]
    labels += [f"C{n}" for n in range(2, 9)]
    labels += [f"D{n}" for n in range(4, 9)]
    for label in labels:
        rs = build_root_system(label)
        coords = {r.coords for r in rs.positive_roots}
        for beta in coords:
            for j in range(rs.rank):
                if beta[j] == 2:
                    if not any(
                        gamma[j] == 1
                        and tuple(b - g for b, g in zip(beta, gamma)) in coords
                        and beta[j] - gamma[j] == 1
                        for gamma in coords
                    ):
                        return _fail(name, f"{label}: no 1+1 split of {beta} at node {j + 1}")
                elif beta[j] == 1 and sum(beta) > 1:
                    if not any(
                        gamma[j] == 1
                        and (rest := tuple(b - g for b, g in zip(beta, gamma))) in coords
                        and rest[j] == 0
                        for gamma in coords
                    ):
                        return _fail(name, f"{label}: no 0+1 split of {beta} at node {j + 1}")
    return _ok(name, "exhaustive, classical rank <= 8")


def check_dpsi_additivity() -> CheckResult:
    name = "dpsi-additivity"
    triples = 0
    for rs, lam, ell in acceptance_matrix():
        if ell != 1:
            continue  # the distance lives on weights; one gamma per weight set
        psi = checked_psi(rs, psi_i(rs, i_lambda(rs, lam)))
        base, gamma = _kr_gamma(rs, lam, 1)
        weights = sorted(gamma.d_of)
        for x in weights:
            for y in weights:
                dxy = d_psi(rs, psi, x, y)
                if dxy is None:
                    continue
                if x != y and d_psi(rs, psi, y, x) is not None:
                    return _fail(name, f"antisymmetry fails between {x} and {y}")
                for z in weights:
                    dyz = d_psi(rs, psi, y, z)
                    if dyz is None:
                        continue
                    if d_psi(rs, psi, x, z) != dxy + dyz:
                        return _fail(name, f"{rs.lie_type}: chain {x} <= {y} <= {z}")
                    triples += 1
    return _ok(name, f"{triples} chains")


FORMULA_CHECKS: list[Callable[[], CheckResult]] = [
    check_gch_2omega3,
    check_closed_formula_momega2,
    check_ell1_momega3,
    check_trivial_cases,
    check_psi_structure,
    check_c_table,
    check_gamma_2omega3,
    check_ell_dependence,
]

IDENTITY_CHECKS: list[Callable[[], CheckResult]] = [
    check_ae_identity,
    check_cross_path,
    check_alternating_sum,
    check_mode_agreement,
    check_tensor_vs_product_rank2,
    check_dimension_conservation,
    check_root_sum_decompositions,
    check_dpsi_additivity,
]

SUITES = {
    "paper": FORMULA_CHECKS,
    "identities": IDENTITY_CHECKS,
    "all": FORMULA_CHECKS + IDENTITY_CHECKS,
}


def run_suite(suite: str) -> list[CheckResult]:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; expected one of {sorted(SUITES)}")
    return [check() for check in SUITES[suite]]
