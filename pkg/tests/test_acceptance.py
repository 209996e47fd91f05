"""Acceptance suite: eight numbered criteria, each printing one pass/fail line.

Everything is exact rational arithmetic; unless a tolerance is stated inline,
the comparisons are equalities of Fractions (zero tolerance).  Runtime bounds
are asserted where the criterion carries one.
"""

import json
import math
import random
import time
from fractions import Fraction

from okdh.catalog import all_builtins, builtin, divisor_builtins
from okdh.errors import ValidationError
from okdh.filtrations import load_filtration
from okdh.measures import expectation, kolmogorov_distance, limit_measure_nu, nu_m
from okdh.models import projective_space
from okdh.okounkov import filtered_body_volume, semigroup_oracle, slice_body
from okdh.polytopes import volume
from okdh.restricted import verify_restricted_volume_identity

F = Fraction

DOUBLING = (1, 2, 4, 8, 16, 32, 64)


def _report(num, name, failures):
    status = "pass" if not failures else "FAIL"
    print(f"criterion {num} ({name}): {status}")
    assert not failures, f"criterion {num}: " + "; ".join(failures[:8])


def _grid(filt, n=20):
    lim = filt.a_max_limit()
    return [lim * F(j, n) for j in range(n + 1)]


def test_criterion_1_expectation_limits():
    start = time.monotonic()
    failures = []
    for name, want in (("p1-line", F(1, 2)), ("p2-line", F(1, 3))):
        f = builtin(name).filtration
        if expectation(limit_measure_nu(f)) != want:
            failures.append(f"{name}: E(nu) != {want}")
        for m in range(1, 65):
            if expectation(nu_m(f, m)) != want:
                failures.append(f"{name}: E(nu_{m}) != {want}")
                break
    elapsed = time.monotonic() - start
    if elapsed >= 10:
        failures.append(f"runtime {elapsed:.1f}s exceeds 10s bound")
    _report(1, "expectation E(nu_m) -> E(nu), exact", failures)


def test_criterion_2_weak_convergence():
    start = time.monotonic()
    failures = []
    f = builtin("p1-line").filtration
    nu = limit_measure_nu(f)
    for m in (1, 2, 4, 8, 16):
        got = kolmogorov_distance(nu_m(f, m), nu)
        if got != F(1, m + 1):
            failures.append(f"p1-line: K(nu_{m}, nu) = {got} != 1/{m + 1}")
    for ex in all_builtins():
        nu = limit_measure_nu(ex.filtration)
        dists = [kolmogorov_distance(nu_m(ex.filtration, m), nu) for m in DOUBLING]
        for i in range(1, len(DOUBLING)):
            if not dists[i] < dists[i - 1]:
                failures.append(
                    f"{ex.name}: K at m={DOUBLING[i]} is {dists[i]}, not below {dists[i - 1]} at m={DOUBLING[i - 1]}"
                )
    elapsed = time.monotonic() - start
    if elapsed >= 60:
        failures.append(f"runtime {elapsed:.1f}s exceeds 60s bound")
    _report(2, "Kolmogorov distance decays along doubling levels", failures)


def test_criterion_3_expectation_via_filtered_body():
    failures = []
    for ex in all_builtins():
        f = ex.filtration
        scale = F(math.factorial(ex.model.d)) / ex.model.volume_of_L()
        lhs = filtered_body_volume(f) * scale
        rhs = expectation(limit_measure_nu(f))
        if lhs != rhs:
            failures.append(f"{ex.name}: d!/Vol * body volume = {lhs} but E(nu) = {rhs}")
    _report(3, "E(nu) equals d!/Vol(L) times the filtered body volume", failures)


def test_criterion_4_threshold_superadditivity():
    failures = []
    for ex in all_builtins():
        f = ex.filtration
        lim = f.a_max_limit()
        prev = None
        witnessed = False
        for m in range(1, 51):
            ratio = f.a_max(m) / m
            if ratio > lim:
                failures.append(f"{ex.name}: a_max({m})/{m} = {ratio} exceeds limit {lim}")
            if prev is not None and ratio < prev:
                failures.append(f"{ex.name}: a_max(m)/m decreased at m={m}")
            if ratio == lim:
                witnessed = True
            prev = ratio
        if len(f.pieces) == 1 and not witnessed:
            failures.append(f"{ex.name}: no m <= 50 with a_max(m)/m == a_max_limit")
    _report(4, "a_max(m)/m non-decreasing, bounded, sup attained", failures)


def test_criterion_5_pointwise_convergence_of_g_m():
    start = time.monotonic()
    failures = []
    for ex in all_builtins():
        f = ex.filtration
        d = ex.model.d
        for t in _grid(f):
            hv = volume(slice_body(f, t))
            e8 = abs(F(f.filtered_dim(8, 8 * t), 8**d) - hv)
            e64 = abs(F(f.filtered_dim(64, 64 * t), 64**d) - hv)
            if not e64 <= e8 / 2:
                failures.append(f"{ex.name}: at t={t}, |g_64 - h| = {e64} > half of |g_8 - h| = {e8}")
    elapsed = time.monotonic() - start
    if elapsed >= 120:
        failures.append(f"runtime {elapsed:.1f}s exceeds 120s bound")
    _report(5, "g_m(t) -> h(t), error at m=64 at most half of m=8", failures)


def test_criterion_6_semigroup_oracle_inside_slices():
    failures = []
    for ex in all_builtins():
        f = ex.filtration
        for t in _grid(f):
            sb = slice_body(f, t)
            oracle = semigroup_oracle(f, t, 32)
            if not sb.contains_polytope(oracle):
                failures.append(f"{ex.name}: oracle at t={t} escapes the slice body")
                continue
            hv = volume(sb)
            ov = volume(oracle)
            if hv == 0:
                if ov != 0:
                    failures.append(f"{ex.name}: t={t} slice has volume 0 but oracle {ov}")
                continue
            deficit = (hv - ov) / hv
            if deficit > F(1, 10):
                failures.append(f"{ex.name}: t={t} volume deficit {deficit} exceeds 10%")
    _report(6, "semigroup oracle contained in slices, deficit <= 10%", failures)


def test_criterion_7_limit_density_identity():
    failures = []
    expected_names = {"p1-line", "p2-line", "p2k2-line", "hirzebruch-ray"}
    seen = set()
    for ex in divisor_builtins():
        seen.add(ex.name)
        report = verify_restricted_volume_identity(ex.divisor)
        if not report.passed:
            failures.append(f"{ex.name}: identity report failed")
        if not report.a_max_equal or ex.divisor.a_max_limit() != report.a_max_volume_support:
            failures.append(f"{ex.name}: a_max != sup{{t : Vol(L - tE) > 0}}")
    if seen != expected_names:
        failures.append(f"divisor builtins are {sorted(seen)}, expected {sorted(expected_names)}")
    _report(7, "limit density equals d*RV/Vol(L), thresholds agree", failures)


def test_criterion_8_filtration_axioms(tmp_path):
    failures = []
    rng = random.Random(51249)
    for ex in all_builtins():
        f = ex.filtration
        lim = f.a_max_limit()
        for _ in range(1000):
            m = rng.randint(1, 5)
            n = rng.randint(1, 5)
            basis_m = ex.model.graded_piece(m).basis
            basis_n = ex.model.graded_piece(n).basis
            u = rng.choice(basis_m)
            up = rng.choice(basis_n)
            s = F(rng.randint(0, 24), 24) * (lim + 1) * m
            t = F(rng.randint(0, 24), 24) * (lim + 1) * m
            if s > t:
                s, t = t, s
            # decreasing: F^t R_m included in F^s R_m for s <= t
            if f.filtered_dim(m, t) > f.filtered_dim(m, s):
                failures.append(f"{ex.name}: dim F^t > dim F^s with s <= t")
                break
            # multiplicative on weights: sections multiply into the sum level
            wu, wup = f.weight(u, m), f.weight(up, n)
            combined = tuple(a + b for a, b in zip(u, up))
            if f.weight(combined, m + n) < wu + wup:
                failures.append(f"{ex.name}: weight({u}+{up}) < {wu} + {wup}")
                break
            # left-continuity at t: approaching from below changes nothing
            values = f.vanishing_numbers(m).values
            below = [v for v in values if v < t]
            delta = (t - max(below)) / 2 if below else F(1)
            if f.filtered_dim(m, t) != f.filtered_dim(m, t - delta):
                failures.append(f"{ex.name}: dim jumps approaching t={t} from below")
                break
    # rejection path: negative weight must fail at load with a pointed diagnostic
    bad = tmp_path / "neg.json"
    bad.write_text(json.dumps({"pieces": [{"a": [1, -2], "b": 0}]}))
    try:
        load_filtration(str(bad), projective_space(2, 1))
        failures.append("negative filtration loaded without error")
    except ValidationError as exc:
        if "non-negative" not in str(exc):
            failures.append(f"rejection lacks diagnostic: {exc}")
    _report(8, "1000 randomized filtration axiom checks per example", failures)
