"""Acceptance suite: every criterion at its stated scope and tolerance.

All claims are exact algebraic identities at desk scale, so almost every
assertion is an exact integer/rational comparison; the only floating checks
are the declared mirrors (1e-9) and the separation-based matcher inside
exponent recovery. Run with `pytest tests/test_acceptance.py -v -s` to see
one PASS line per criterion.
"""

import json
from fractions import Fraction

import numpy as np

from conftest import PRIMES_TO_61, PRIMES_TO_199
from koopman_dh.cli import main as cli_main
from koopman_dh.complexity import SequenceSample, berlekamp_massey
from koopman_dh.dynamics import (
    DhParams,
    all_primitive_roots,
    dh_exchange,
    discrete_log_bruteforce,
    full_period_trajectory,
    mod_pow,
    shared_secret_intersection,
    simulate,
)
from koopman_dh.edmd import build_dataset, compare_operators, edmd_fit
from koopman_dh.lifting import (
    CompanionSystem,
    additive_complex_lift,
    affine_augment_system,
    canonical_alpha,
    full_period_system,
    lift_ciphertext,
    lift_shift,
    minimal_lifting_dimension,
)
from koopman_dh.spectral import (
    eigen_canonical,
    eigenpair_residual_float,
    eigenpair_residuals_exact_zero,
    parity,
    recover_exponent,
)

F = Fraction


def test_criterion_1_minimal_dimension_theorem():
    """Brute-force minimal lifting dimension equals (p-1)/2 + 1 for every
    prime 5 <= p <= 61 and every primitive root."""
    checked = 0
    for p in PRIMES_TO_61:
        expected = (p - 1) // 2 + 1
        for m in all_primitive_roots(p):
            assert minimal_lifting_dimension(DhParams(p, m)) == expected, (p, m)
            checked += 1
    print(f"PASS criterion 1: minimal dimension law on {checked} (p, m) pairs up to p=61")


def test_criterion_2_closing_condition_two_periods():
    """Canonical coefficients satisfy the integer recurrence for all k over
    two periods, primes up to 199, smallest root. Exact, no tolerance."""
    for p in PRIMES_TO_199:
        params = DhParams.with_smallest_root(p)
        q = params.q_tilde
        alpha = canonical_alpha(p, q)
        traj = simulate(params.m, params, 1, 2 * (p - 1) + q + 1)
        for k in range(2 * (p - 1)):
            lhs = traj.values[k + q + 1]
            rhs = sum(int(a) * traj.values[k + j] for j, a in enumerate(alpha))
            assert lhs == rhs, (p, k)
    print(f"PASS criterion 2: integer closing identity over two periods, {len(PRIMES_TO_199)} primes up to 199")


def test_criterion_3_exponent_recovery_totality():
    """Spectral recovery returns every e in [1, p-1] for p in {5, 7, 11, 23,
    101}, matching the brute-force oracle exactly."""
    total = 0
    for p in (5, 7, 11, 23, 101):
        params = DhParams.with_smallest_root(p)
        q = params.q_tilde
        dec = eigen_canonical(p, q)
        z0 = lift_shift(full_period_trajectory(params), q, 0)
        for e in range(1, p):
            c = mod_pow(params.m, e, p)
            estimate = recover_exponent(lift_ciphertext(c, params, q), z0, dec, p)
            assert estimate.e == e == discrete_log_bruteforce(c, params), (p, e)
            total += 1
    print(f"PASS criterion 3: exact recovery of all {total} exponents across p in {{5,7,11,23,101}}")


def test_criterion_4_parity():
    """The eigenvalue -1 decides e mod 2 for every p = 3 (mod 4) up to 199;
    for p = 1 (mod 4) parity is reported unavailable."""
    available = unavailable = 0
    for p in PRIMES_TO_199:
        params = DhParams.with_smallest_root(p)
        q = params.q_tilde
        dec = eigen_canonical(p, q)
        traj = full_period_trajectory(params)
        z0 = lift_shift(traj, q, 0)
        if p % 4 == 3:
            for e in range(1, p):
                got = parity(lift_shift(traj, q, e), z0, dec)
                assert got == ("even" if e % 2 == 0 else "odd"), (p, e, got)
                available += 1
        else:
            assert parity(lift_shift(traj, q, 3), z0, dec) == "unavailable", p
            unavailable += 1
    print(f"PASS criterion 4: parity exact on {available} cases, unavailable on {unavailable} primes = 1 (mod 4)")


def test_criterion_5_edmd_exactness():
    """At q = (p-1)/2 the fitted operator equals the canonical companion
    entrywise with residual exactly 0; at q = p-2 prediction equivalence
    over two periods is exact (entrywise equality recorded, not asserted)."""
    entrywise_at_full = []
    for p in PRIMES_TO_61:
        params = DhParams.with_smallest_root(p)
        traj = full_period_trajectory(params)
        qt = params.q_tilde
        fitted = edmd_fit(build_dataset(traj, qt, qt + 1))
        assert fitted.residual_sq == 0, p
        analytic = CompanionSystem(q=qt, alpha=canonical_alpha(p, qt))
        comparison = compare_operators(fitted, analytic, traj, horizon=2 * (p - 1))
        assert comparison.entrywise_equal and comparison.prediction_equivalent, p

        full = edmd_fit(build_dataset(traj, p - 2, qt + 1))
        assert full.residual_sq == 0, p
        comparison_full = compare_operators(
            full, full_period_system(params), traj, horizon=2 * (p - 1)
        )
        assert comparison_full.prediction_equivalent, p
        entrywise_at_full.append(comparison_full.entrywise_equal)
    observed = sum(entrywise_at_full)
    print(
        f"PASS criterion 5: exact operator at q=(p-1)/2 for {len(PRIMES_TO_61)} primes; "
        f"q=p-2 prediction exact, entrywise equality observed in {observed}/{len(entrywise_at_full)} cases (recorded)"
    )


def test_criterion_6_rank_law():
    """rank(Z) = (p-1)/2 + 1 under the data-richness condition and
    rank(Z) <= (p-1)/2 + 1 always, exactly, for p <= 61 and q in
    [(p-1)/2, p-2]."""
    cases = 0
    for p in PRIMES_TO_61:
        params = DhParams.with_smallest_root(p)
        traj = full_period_trajectory(params)
        qt = params.q_tilde
        for q in range(qt, p - 1):
            ds = build_dataset(traj, q, qt + 1)
            assert ds.rank_z == qt + 1, (p, q, ds.rank_z)
            cases += 1
        for q in (0, qt // 2, qt - 1):
            ds = build_dataset(traj, q, p - 1)
            assert ds.rank_z <= qt + 1, (p, q)
    print(f"PASS criterion 6: exact rank law on {cases} (p, q) cases up to p=61")


def test_criterion_7_linear_complexity_attainment():
    """Berlekamp-Massey over the rationals on two periods returns exactly
    (p-1)/2 + 1 for p <= 61, matching the lifted dimension."""
    for p in PRIMES_TO_61:
        params = DhParams.with_smallest_root(p)
        terms = simulate(params.m, params, 1, 2 * (p - 1) - 1).values
        length = berlekamp_massey(SequenceSample(terms=terms)).length
        assert length == (p - 1) // 2 + 1, (p, length)
        assert length == minimal_lifting_dimension(params), p
    print(f"PASS criterion 7: register length equals lifted dimension for {len(PRIMES_TO_61)} primes up to 61")


def test_criterion_8_worked_examples(tmp_path, capsys):
    """Rotation sequence: complexity 3 over the rationals, regenerated by a
    one-dimensional complex lifting. Affine sequence: regenerated exactly by
    the two-dimensional lifting; its computed rational complexity is
    reported with an explicit discrepancy note against a supplied expected
    register length of 51."""
    rotation = (0, 1, 2, 0, 1, 2, 0, 1, 2)
    assert berlekamp_massey(SequenceSample(terms=rotation)).length == 3
    scalar = additive_complex_lift(3, 0)
    assert scalar.dimension == 1
    assert tuple(scalar.generate(9)) == rotation

    affine = affine_augment_system(2, 2, 1)
    assert affine.dimension == 2
    assert affine.generate(5) == [1, 4, 10, 22, 46]

    seq_path = tmp_path / "affine.csv"
    seq_path.write_text("".join(f"{v}\n" for v in affine.generate(12)))
    code = cli_main(
        ["complexity", "--sequence", str(seq_path), "--expected", "51"]
    )
    out = capsys.readouterr().out
    assert code == 0
    report = json.loads(out)
    assert report["complexity_rational"] == 2
    assert report["matches_expected"] is False
    assert "not reproducible" in report["note"]
    print("PASS criterion 8: both worked examples regenerate exactly; expected length 51 flagged as not reproducible (computed 2)")


def test_criterion_9_shared_secret_intersection():
    """The brute-force intersection returns m^(e*d) mod p for all exponent
    pairs with p <= 31, cross-checked against the exchange transcript."""
    pairs = 0
    for p in [q for q in PRIMES_TO_61 if q <= 31]:
        params = DhParams.with_smallest_root(p)
        for e in range(1, p):
            for d in range(1, p):
                transcript = dh_exchange(params, e, d)
                result = shared_secret_intersection(transcript.c_e, transcript.c_d, params)
                assert result.secret == transcript.c_ed == mod_pow(params.m, e * d, p)
                pairs += 1
    print(f"PASS criterion 9: intersection secret equals m^(e*d) on {pairs} exponent pairs, p <= 31")


def test_criterion_10_eigenstructure():
    """Eigenvalues are exactly the odd-index 2q-th roots of unity plus 1,
    all unit modulus; the companion-Vandermonde eigenpair residual is
    exactly zero in rational-angle form."""
    for p in PRIMES_TO_199:
        q = (p - 1) // 2
        dec = eigen_canonical(p, q)
        expected = {F(0)} | {F(2 * k + 1, 2 * q) % 1 for k in range(q)}
        assert set(dec.turns) == expected, p
        assert F(0) in dec.turns
        assert np.max(np.abs(np.abs(dec.eigenvalues) - 1.0)) < 1e-12, p
        assert eigenpair_residuals_exact_zero(dec), p
        assert eigenpair_residual_float(dec) <= 1e-9, p
    print(f"PASS criterion 10: exact eigenstructure for all {len(PRIMES_TO_199)} primes up to 199")
