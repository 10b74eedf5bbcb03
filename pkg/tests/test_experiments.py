"""Empirical harness: exact small-box censuses, budget refusal, and the
determinism/sharding contract of the Monte Carlo estimator.

The estimator's hot loop is validated against the slow reference route
(sample_matrix + is_unimodular), and the enumeration stream is validated
against exhaustive_density hit-for-hit.
"""

import math
from fractions import Fraction

import pytest

from unimat import rng
from unimat.experiments import (
    BoxSpec,
    BudgetError,
    convergence_sweep,
    estimate_density,
    exhaustive_density,
    sample_matrix,
    verify_local_density,
)
from unimat.matrix import is_unimodular


def test_box_spec_validation():
    with pytest.raises(ValueError):
        BoxSpec(0, 2, 5)
    with pytest.raises(ValueError):
        BoxSpec(3, 2, 5)
    with pytest.raises(ValueError):
        BoxSpec(1, 2, 0)
    assert BoxSpec(2, 3, 4).total == 8**6


def test_exhaustive_small_boxes():
    rep = exhaustive_density(BoxSpec(1, 2, 1))
    assert (rep.total, rep.hits, rep.density) == (4, 3, Fraction(3, 4))
    rep = exhaustive_density(BoxSpec(1, 2, 2))
    assert (rep.total, rep.hits, rep.density) == (16, 12, Fraction(3, 4))
    rep = exhaustive_density(BoxSpec(1, 1, 1))
    assert (rep.total, rep.hits, rep.density) == (2, 1, Fraction(1, 2))


def test_exhaustive_square_case_matches_gl2_f2():
    # entries in {-1,0}: |det| = 1 iff det is odd iff full rank mod 2
    rep = exhaustive_density(BoxSpec(2, 2, 1))
    assert (rep.hits, rep.density) == (6, Fraction(3, 8))


def test_exhaustive_budget_refusal():
    with pytest.raises(BudgetError) as exc:
        exhaustive_density(BoxSpec(2, 4, 100), budget=10**6)
    assert exc.value.required == 200**8
    assert exc.value.budget == 10**6
    assert str(exc.value.required) in str(exc.value)


def test_exhaustive_density_is_exact_fraction():
    rep = exhaustive_density(BoxSpec(1, 3, 2))
    assert isinstance(rep.density, Fraction)
    assert rep.density == Fraction(rep.hits, rep.total)


def test_estimate_determinism_and_purity():
    spec = BoxSpec(2, 3, 1000)
    a = estimate_density(spec, 2000, seed=9, shards=3)
    b = estimate_density(spec, 2000, seed=9, shards=3)
    assert a == b


@pytest.mark.parametrize("shards", [2, 5, 8])
def test_estimate_shard_invariance(shards):
    spec = BoxSpec(1, 2, 10**6)
    base = estimate_density(spec, 3000, seed=4, shards=1)
    split = estimate_density(spec, 3000, seed=4, shards=shards)
    assert split.hits == base.hits
    assert split.estimate == base.estimate
    assert split.shards == shards


def test_estimate_seed_sensitivity():
    spec = BoxSpec(1, 2, 10**6)
    assert estimate_density(spec, 3000, seed=0).hits != estimate_density(spec, 3000, seed=1).hits


def test_estimate_matches_reference_route():
    # slow route: materialize each sample and run the library predicate
    for spec in (BoxSpec(1, 3, 9), BoxSpec(2, 3, 9), BoxSpec(3, 4, 5)):
        ref = sum(is_unimodular(sample_matrix(spec, 7, i)) for i in range(400))
        assert estimate_density(spec, 400, seed=7).hits == ref


def test_estimate_report_fields():
    spec = BoxSpec(1, 2, 10**6)
    rep = estimate_density(spec, 5000, seed=1)
    assert rep.spec == spec and rep.samples == 5000 and rep.seed == 1
    assert 0 <= rep.hits <= 5000
    assert rep.estimate == rep.hits / 5000
    assert rep.std_error == math.sqrt(rep.estimate * (1 - rep.estimate) / 5000)
    assert abs(rep.theory_value - 0.6079271018540266) < 1e-12
    assert rep.z_score == (rep.estimate - rep.theory_value) / rep.std_error


def test_estimate_z_score_none_when_degenerate():
    # 1x1 box: sample 0 of the enumeration is the entry -1, a sure hit,
    # while the theory value d_{1,1} is exactly 0 and the std error is 0
    rep = estimate_density(BoxSpec(1, 1, 1), 1, seed=0, stream="enumerate")
    assert rep.estimate == 1.0
    assert rep.std_error == 0.0
    assert rep.theory_value == 0.0
    assert rep.z_score is None


def test_estimate_validation():
    spec = BoxSpec(1, 2, 10)
    with pytest.raises(ValueError):
        estimate_density(spec, 99, seed=0)
    with pytest.raises(ValueError):
        estimate_density(spec, 1000, seed=0, shards=0)
    with pytest.raises(ValueError):
        estimate_density(spec, 1000, seed=-1)
    with pytest.raises(ValueError):
        estimate_density(spec, 1000, seed=0, stream="bogus")
    with pytest.raises(ValueError):
        estimate_density(spec, spec.total + 1, seed=0, stream="enumerate")


@pytest.mark.parametrize("spec", [BoxSpec(1, 2, 1), BoxSpec(1, 2, 3), BoxSpec(2, 2, 2), BoxSpec(1, 3, 2)])
def test_enumeration_stream_reproduces_exhaustive(spec):
    ex = exhaustive_density(spec)
    en = estimate_density(spec, spec.total, seed=123, stream="enumerate")
    assert en.hits == ex.hits
    assert Fraction(en.hits, en.samples) == ex.density
    # the enumeration stream ignores the seed by construction
    assert estimate_density(spec, spec.total, seed=0, stream="enumerate").hits == en.hits


def test_sample_matrix_layout():
    # sample i consumes exactly the words at counters i*k*n .. i*k*n + k*n - 1
    spec = BoxSpec(2, 3, 50)
    m = sample_matrix(spec, seed=11, index=4)
    words = list(rng.words(11, 4 * 6, 6))
    expect = [rng.bounded(w, 100) - 50 for w in words]
    assert list(m.entries) == expect
    assert m.rows == 2 and m.cols == 3
    assert all(-50 <= e < 50 for e in m.entries)


def test_sweep_structure_and_fallback():
    reps = convergence_sweep(1, 2, (1, 2, 3, 1000), samples=2000, seed=5)
    assert [r.spec.bound for r in reps] == [1, 2, 3, 1000]
    # boxes no larger than the budget are enumerated exactly
    assert (reps[0].samples, reps[0].hits) == (4, 3)
    assert (reps[1].samples, reps[1].hits) == (16, 12)
    assert reps[2].samples == 36
    assert reps[3].samples == 2000
    # per-bound sub-seeds come from the documented derivation
    assert reps[3].seed == rng.derive_seed(5, 3, 0x53574545502D5631)


def test_sweep_single_bound():
    reps = convergence_sweep(2, 3, (500,), samples=300, seed=1)
    assert len(reps) == 1
    assert reps[0].spec == BoxSpec(2, 3, 500)


def test_sweep_validation():
    with pytest.raises(ValueError):
        convergence_sweep(1, 2, (), samples=500, seed=0)
    with pytest.raises(ValueError):
        convergence_sweep(1, 2, (5, 5), samples=500, seed=0)
    with pytest.raises(ValueError):
        convergence_sweep(1, 2, (10, 2), samples=500, seed=0)
    with pytest.raises(ValueError):
        convergence_sweep(1, 2, (2, 10), samples=50, seed=0)


def test_sweep_deterministic():
    a = convergence_sweep(1, 3, (10, 100), samples=400, seed=2)
    b = convergence_sweep(1, 3, (10, 100), samples=400, seed=2)
    assert a == b


@pytest.mark.parametrize("p,k,n,expect", [(2, 1, 2, Fraction(3, 4)), (3, 1, 2, Fraction(8, 9)), (2, 2, 2, Fraction(3, 8))])
def test_verify_local_density_examples(p, k, n, expect):
    chk = verify_local_density(p, k, n)
    assert chk.matches
    assert chk.empirical == expect
    assert chk.formula == expect
    assert chk.counted == chk.expected_count
    assert chk.total == p ** (k * n)


def test_verify_local_density_wider_shapes():
    for p in (2, 3):
        for k, n in ((1, 3), (2, 3), (3, 4)):
            assert verify_local_density(p, k, n).matches


def test_verify_local_density_errors():
    with pytest.raises(ValueError):
        verify_local_density(6, 1, 2)
    with pytest.raises(ValueError):
        verify_local_density(2, 3, 2)
    with pytest.raises(BudgetError):
        verify_local_density(5, 3, 3, budget=10**5)
