import json

import numpy as np
import pytest

from alphalandau.alphamap import AlphaHarmonicMap, polar_grid, wirtinger
from alphalandau.errors import DomainError
from alphalandau.landau import LandauInput, derivative_drift_bound, solve_rho0
from alphalandau.verify import (
    VerificationReport,
    check_hypotheses,
    check_injectivity,
    check_schlicht,
    lambda_at_origin,
    random_admissible_map,
    report_json,
    run_verification,
    sample_disc,
)

IDENTITY = AlphaHarmonicMap(0.0, {1: 1.0})
FOLD = AlphaHarmonicMap(0.0, {1: 1.0, -1: 1.0})


def test_zero_weight_gives_pure_linear_term():
    fmap = random_admissible_map(1.0, 0.5, 1.0, max_index=1, seed=3, weight=0.0)
    assert fmap.spectrum.as_dict() == {1: 0.5}


def test_generator_is_deterministic():
    a = random_admissible_map(1.5, 0.8, 1.0, 4, seed=42)
    b = random_admissible_map(1.5, 0.8, 1.0, 4, seed=42)
    assert a == b
    assert a != random_admissible_map(1.5, 0.8, 1.0, 4, seed=43)


@pytest.mark.parametrize("seed", range(6))
def test_generated_maps_satisfy_hypotheses_on_denser_grid(seed):
    alpha = (0.5, 1.0, 1.5)[seed % 3]
    fmap = random_admissible_map(alpha, 0.8, 1.0, 4, seed)
    _, small = lambda_at_origin(fmap)
    assert small >= 0.8
    assert check_hypotheses(fmap, 0.8, 1.0)


def test_generator_rejects_bad_parameters():
    with pytest.raises(DomainError):
        random_admissible_map(2.0, 0.5, 1.0, 3, 0)
    with pytest.raises(DomainError):
        random_admissible_map(1.0, 2.0, 1.0, 3, 0)


def test_hypothesis_check_flags_violations():
    assert not check_hypotheses(AlphaHarmonicMap(1.0, {0: 0.1, 1: 1.0}), 0.5, 2.0)
    assert not check_hypotheses(AlphaHarmonicMap(1.0, {1: 0.4}), 0.5, 2.0)
    assert not check_hypotheses(AlphaHarmonicMap(1.0, {1: 3.0}), 0.5, 2.0)


@pytest.mark.parametrize("seed", range(4))
def test_drift_stays_below_phi_bound(seed):
    # the radial bound behind phi, checked against the measured derivative drift
    alpha = (0.5, 1.0, 1.5, 1.2)[seed]
    fmap = random_admissible_map(alpha, 0.8, 1.0, 4, seed, weight=0.3)
    z = polar_grid(40, 128, 0.95)
    pair, origin = wirtinger(fmap, z), wirtinger(fmap, 0j)
    drift = np.abs(pair.dz - origin.dz) + np.abs(pair.dzbar - origin.dzbar)
    bound = derivative_drift_bound(LandauInput(alpha, 0.8, 1.0), np.abs(z))
    assert np.all(drift <= bound + 1e-12)


def test_sample_disc_layout():
    z = sample_disc(0.3, 2000, seed=1)
    assert z.size == 2000
    assert np.all(np.abs(z) < 0.3)
    # every ring is closed under conjugation
    gaps = np.abs(np.conj(z)[:, None] - z[None, :]).min(axis=1)
    assert gaps.max() <= 1e-15
    np.testing.assert_array_equal(z, sample_disc(0.3, 2000, seed=1))
    for n in (1, 2, 3, 7, 50):
        assert sample_disc(0.5, n, seed=0).size == n


def test_identity_is_an_isometry():
    sep, collisions = check_injectivity(IDENTITY, 0.7, 800, seed=0)
    assert collisions == 0
    assert sep == pytest.approx(1.0, abs=1e-12)


def test_fold_map_collides():
    sep, collisions = check_injectivity(FOLD, 0.5, 2000, seed=0)
    assert collisions > 0
    assert sep == 0.0


def test_subsampled_pairs_still_find_fold_collisions():
    _, collisions = check_injectivity(FOLD, 0.5, 3000, seed=2, max_pairs=200_000)
    assert collisions > 0


def test_schlicht_examples():
    assert check_schlicht(IDENTITY, 0.5, 0.4, 1024) == 0
    assert check_schlicht(IDENTITY, 0.5, 0.6, 1024) == 1024
    assert check_schlicht(IDENTITY, 0.5, -1.0, 1024) == 0


@pytest.mark.parametrize("seed", range(6))
def test_generated_maps_show_no_counterexample(seed):
    alpha = (0.5, 1.0, 1.5)[seed % 3]
    fmap = random_admissible_map(alpha, 0.8, 1.0, 4, seed)
    report, collisions = run_verification(fmap, 0.8, 1.0, seed=seed)
    assert report.hypothesis_ok
    assert collisions == 0
    assert report.min_pair_separation > 0
    if report.r0 > 0:
        assert report.coverage_misses == 0


def test_report_fields_and_determinism():
    fmap = random_admissible_map(1.0, 0.8, 1.0, 3, seed=9)
    first, c1 = run_verification(fmap, 0.8, 1.0, seed=9, n_samples=500)
    second, c2 = run_verification(fmap, 0.8, 1.0, seed=9, n_samples=500)
    assert first == second and c1 == c2
    assert report_json(first) == report_json(second)
    payload = json.loads(report_json(first))
    assert set(payload) == {"v", "map_digest", "rho0", "r0", "n_samples", "min_pair_separation",
                            "coverage_misses", "hypothesis_ok", "seed"}
    assert payload["rho0"] == solve_rho0(LandauInput(1.0, 0.8, 1.0)).rho0
    assert isinstance(first, VerificationReport)
