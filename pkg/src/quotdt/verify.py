"""Self-checks reproducing the headline series identities at a chosen order.

Each check returns ``(passed, detail)``.  They are cheaper cousins of the
test-suite acceptance checks and are what ``quotdt verify`` runs.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Callable

from . import bps, dtpt, macmahon, motivic, quiver
from .ringcore import TruncSeries

CheckResult = tuple[bool, str]


def random_rational(rng: random.Random, num: int = 5, den: int = 4) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def random_rational_matrix(rng: random.Random, n: int) -> tuple:
    return tuple(tuple(random_rational(rng) for _ in range(n)) for _ in range(n))


def _poly_in(X: tuple, coeffs: list[Fraction]) -> tuple:
    F = quiver.QQ
    n = len(X)
    result = tuple(tuple(Fraction(0) for _ in range(n)) for _ in range(n))
    power = tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))
    for c in coeffs:
        result = tuple(tuple(a + c * b for a, b in zip(r1, r2)) for r1, r2 in zip(result, power))
        power = quiver.mat_mul(F, power, X)
    return result


def random_critical_candidate(rng: random.Random, n: int, r: int = 1) -> quiver.FramedRep:
    """Mix of generic triples, fully commuting triples and partially commuting ones."""
    kind = rng.randrange(3)
    framing = tuple(tuple(random_rational(rng) for _ in range(n)) for _ in range(r))
    if kind == 0:
        mats = [random_rational_matrix(rng, n) for _ in range(3)]
    else:
        X = tuple(tuple(random_rational(rng, 2, 2) for _ in range(n)) for _ in range(n))
        mats = [_poly_in(X, [random_rational(rng, 2, 2) for _ in range(min(n, 3))]) for _ in range(3)]
        if kind == 2:
            mats[rng.randrange(3)] = random_rational_matrix(rng, n)
    return quiver.FramedRep(*mats, framing, quiver.QQ)


def index_gradient(rep: quiver.FramedRep) -> tuple:
    """Partial derivatives of sum_{ijk} A_ij B_jk C_ki - A_ij C_jk B_ki, term by term."""
    A, B, C = rep.operators
    n = rep.n
    rng = range(n)
    # d/dA_ab: sum_k B_bk C_ka - C_bk B_ka
    dA = tuple(tuple(sum(B[b][k] * C[k][a] - C[b][k] * B[k][a] for k in rng) for b in rng) for a in rng)
    # d/dB_ab: sum_i A_ia C_bi - sum_j A_bj C_ja
    dB = tuple(tuple(sum(A[i][a] * C[b][i] - A[b][i] * C[i][a] for i in rng) for b in rng) for a in rng)
    # d/dC_ab: sum_j A_bj B_ja - sum_i A_ia B_bi
    dC = tuple(tuple(sum(A[b][j] * B[j][a] - A[j][a] * B[b][j] for j in rng) for b in rng) for a in rng)
    return dA, dB, dC


def finite_difference_gradient(rep: quiver.FramedRep, h: float = 1e-6) -> list[list[list[float]]]:
    """Central differences of the potential evaluated in floating point.

    The potential is summed with ``math.fsum`` over its explicit monomials so
    that terms untouched by the perturbation cancel exactly between the two
    evaluations.
    """
    n = rep.n
    mats = [[[float(x) for x in row] for row in M] for M in rep.operators]
    idx = [(i, j, k) for i in range(n) for j in range(n) for k in range(n)]

    def f(ms):
        A, B, C = ms
        return math.fsum(
            t for i, j, k in idx for t in (A[i][j] * B[j][k] * C[k][i], -A[i][j] * C[j][k] * B[k][i])
        )

    grads = []
    for s in range(3):
        g = [[0.0] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                orig = mats[s][a][b]
                mats[s][a][b] = orig + h
                up = f(mats)
                mats[s][a][b] = orig - h
                down = f(mats)
                mats[s][a][b] = orig
                g[a][b] = (up - down) / (2 * h)
        grads.append(g)
    return grads


def gradient_fd_agrees(rep: quiver.FramedRep, rel: float = 1e-5) -> bool:
    """Max-norm error of central differences within ``rel * max(1, max|grad|)``."""
    exact = quiver.potential_gradient(rep)
    fd = finite_difference_gradient(rep)
    scale = max([1.0] + [abs(float(x)) for G in exact for row in G for x in row])
    err = max(abs(float(x) - y) for G, H in zip(exact, fd) for r1, r2 in zip(G, H) for x, y in zip(r1, r2))
    return err <= rel * scale


def check_macmahon(order: int, rng: random.Random) -> CheckResult:
    n = min(order, macmahon.DEFAULT_ENUMERATION_BOUND)
    series = macmahon.macmahon_series(n)
    bad = [k for k in range(n + 1) if series[k] != macmahon.plane_partition_oracle(k)]
    return not bad, f"product vs enumeration for n<={n}; mismatches at {bad}"


def check_motivic(order: int, rng: random.Random) -> CheckResult:
    bad = [r for r in (1, 2, 3, 4)
           if motivic.virtual_chi_series(r, order) != macmahon.wall_crossing_factor(r, 1, order)]
    return not bad, f"chi(Z_r) = M((-1)^r t)^r at order {order}; failing ranks {bad}"


def check_signed_chi(order: int, rng: random.Random) -> CheckResult:
    n_max = min(order, 8)
    bad = []
    for r in (1, 2, 3):
        chi = motivic.virtual_chi_series(r, n_max)
        for n in range(n_max + 1):
            if chi[n] != (-1) ** (r * n) * macmahon.colored_count(r, n):
                bad.append((r, n))
    return not bad, f"signed fixed-point law r<=3, n<={n_max}; failures {bad}"


def check_n_invariants(order: int, rng: random.Random) -> CheckResult:
    bad = []
    for r in (1, 2, 3):
        for chi in (-6, -1, 0, 1, 4):
            _, rebuilt = macmahon.n_invariants_roundtrip(r, chi, order)
            if rebuilt != macmahon.wall_crossing_factor(r, chi, order):
                bad.append((r, chi))
    return not bad, f"N-invariant roundtrip at order {order}; failures {bad}"


def check_dtpt(order: int, rng: random.Random) -> CheckResult:
    bad = 0
    for _ in range(25):
        label = dtpt.LocalSeriesLabel(rng.randint(1, 3), rng.randint(-4, 6),
                                      rng.choice(list(dtpt.Flavor)))
        pt = TruncSeries([rng.randint(-50, 50) for _ in range(order + 1)])
        if dtpt.dt_pt_convert(dtpt.dt_pt_convert(pt, label, "pt2dt"), label, "dt2pt") != pt:
            bad += 1
    return bad == 0, f"pt->dt->pt identity on 25 random series; {bad} failures"


def check_locally_free(order: int, rng: random.Random) -> CheckResult:
    bad = []
    for r in (1, 2, 3):
        for chi in range(-6, 7):
            label = dtpt.LocalSeriesLabel(r, chi, dtpt.Flavor.BEHREND)
            dt = dtpt.dt_pt_convert(TruncSeries.one(order), label, "pt2dt")
            if dt != macmahon.wall_crossing_factor(r, chi, order):
                bad.append((r, chi))
    return not bad, f"PT = 1 gives M((-1)^r q)^(r chi); failures {bad}"


def check_stability(order: int, rng: random.Random) -> CheckResult:
    F = quiver.Field(5)
    theta = quiver.Theta(1, 0)
    bad = 0
    total = 0
    for n in (1, 2, 3):
        for r in (1, 2):
            for bias in (0.0, 0.6):
                for _ in range(40):
                    rep = quiver.random_rep(rng, n, r, F, zero_bias=bias)
                    oracle = quiver.brute_force_stability(rep, theta) is quiver.Verdict.STABLE
                    bad += oracle != quiver.is_stable_via_generation(rep, theta)
                    total += 1
    return bad == 0, f"generation vs brute-force over F_5 on {total} reps; {bad} discrepancies"


def check_critical_locus(order: int, rng: random.Random) -> CheckResult:
    bad = 0
    for _ in range(100):
        rep = random_critical_candidate(rng, rng.randint(1, 4))
        grad = quiver.potential_gradient(rep)
        ok = quiver.is_critical_point(rep) == all(quiver.is_zero_matrix(X) for X in quiver.commutators(rep))
        ok &= grad == index_gradient(rep)
        ok &= gradient_fd_agrees(rep)
        bad += not ok
    return bad == 0, f"gradient/commutator/finite-difference agreement on 100 reps; {bad} failures"


def check_bps(order: int, rng: random.Random) -> CheckResult:
    bad = 0
    for _ in range(30):
        g = rng.randint(0, 6)
        v = bps.BpsVector(g, tuple(random_rational(rng, 9, 3) for _ in range(g + 1)))
        window = (1 - g, 1 - g + 2 * g + 4 + rng.randint(0, 6))
        got, residual = bps.extract_bps(bps.bps_to_pt(v, window), g)
        bad += got != v or not residual.is_zero()
    g = 0
    Z = bps.bps_to_pt(bps.BpsVector(g, (Fraction(1),)), (1, 12))
    broken = bps.LaurentSeries(1, Z.coeffs[:-1] + (Z.coeffs[-1] + 1,))
    bad += bps.extract_bps(broken, g)[1].is_zero()
    return bad == 0, f"BPS roundtrip on 30 vectors plus non-rational detection; {bad} failures"


def check_reciprocal(order: int, rng: random.Random) -> CheckResult:
    bad = 0
    for _ in range(200):
        d = rng.randint(0, 10)
        P = [rng.randint(-5, 5) for _ in range(d + 1)]
        bad += dtpt.reciprocal_polynomial(dtpt.reciprocal_polynomial(P, d), d) != P
        half = [rng.randint(-5, 5) for _ in range(d // 2 + 1)]
        pal = half + half[: (d + 1) // 2][::-1] if d else half
        pal[0] = pal[-1] = rng.choice([1, 2, -3])
        bad += not dtpt.palindrome_check(pal)
    return bad == 0, f"reciprocal involution and palindrome detection; {bad} failures"


SUITES: dict[str, Callable[[int, random.Random], CheckResult]] = {
    "macmahon": check_macmahon,
    "motivic": check_motivic,
    "signed-chi": check_signed_chi,
    "n-invariants": check_n_invariants,
    "dtpt": check_dtpt,
    "locally-free": check_locally_free,
    "stability": check_stability,
    "critical-locus": check_critical_locus,
    "bps": check_bps,
    "reciprocal": check_reciprocal,
}


def run_suite(suite: str, order: int, seed: int) -> list[dict]:
    names = list(SUITES) if suite == "all" else [suite]
    report = []
    for name in names:
        passed, detail = SUITES[name](order, random.Random(f"{seed}:{name}"))
        report.append({"check": name, "passed": passed, "detail": detail})
    return report
