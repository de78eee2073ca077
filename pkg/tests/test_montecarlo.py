import math

import numpy as np
import pytest

from gkpstab.analytic import gkp_repetition_pdfs, tms_mixture
from gkpstab.codes import gaussian_repetition, gkp_repetition, gkp_tms
from gkpstab.decoders import (
    gaussian_repetition_decoder,
    gkp_repetition_decoder,
    gkp_tms_decoder,
)
from gkpstab.montecarlo import BLOCK_SIZE, compare, run


def test_deterministic_given_seed():
    code = gkp_repetition()
    dec = gkp_repetition_decoder()
    a = run(code, dec, 0.2, 30_000, seed=5)
    b = run(code, dec, 0.2, 30_000, seed=5)
    c = run(code, dec, 0.2, 30_000, seed=6)
    assert a.std_q == b.std_q and a.mean_p == b.mean_p
    assert np.array_equal(a.counts_q, b.counts_q)
    assert a.std_q != c.std_q


def test_shard_count_never_changes_results():
    code = gkp_repetition()
    dec = gkp_repetition_decoder()
    # straddle a block boundary so multiple blocks actually run
    n = BLOCK_SIZE + 12_345
    one = run(code, dec, 0.3, n, seed=9, shards=1)
    four = run(code, dec, 0.3, n, seed=9, shards=4)
    assert one.mean_q == four.mean_q
    assert one.std_p == four.std_p
    assert np.array_equal(one.counts_q, four.counts_q)
    assert np.array_equal(one.counts_p, four.counts_p)


def test_histogram_counts_complete():
    rep = run(gkp_repetition(), gkp_repetition_decoder(), 0.4, 70_000, seed=2)
    assert rep.counts_q.sum() == 70_000
    assert rep.counts_p.sum() == 70_000
    assert rep.bin_edges[0] == -rep.bin_edges[-1]


def test_known_spreads_and_errors():
    sigma, n = 0.05, 200_000
    rep = run(gkp_repetition(), gkp_repetition_decoder(), sigma, n, seed=3)
    # far below threshold the wrap probability is negligible
    assert rep.std_q == pytest.approx(sigma / math.sqrt(2), rel=0.02)
    assert rep.std_p == pytest.approx(sigma, rel=0.02)
    assert rep.se_mean_q == pytest.approx(rep.std_q / math.sqrt(n), rel=1e-9)
    assert rep.se_std_q == pytest.approx(rep.std_q / math.sqrt(2 * n), rel=0.05)
    assert abs(rep.mean_q) < 5 * rep.se_mean_q
    assert abs(rep.mean_p) < 5 * rep.se_mean_p


def test_zero_noise_degenerates_cleanly():
    rep = run(gkp_repetition(), gkp_repetition_decoder(), 0.0, 5_000, seed=4)
    assert rep.std_q == 0.0 and rep.std_p == 0.0
    assert rep.se_std_q == 0.0


def test_compare_accepts_matching_mixture():
    sigma, gain = 0.15, 3.0
    code = gkp_tms(gain)
    rep = run(code, gkp_tms_decoder(gain, sigma), sigma, 400_000, seed=8)
    result = compare(rep, tms_mixture(sigma, gain), quadrature="q")
    assert result.passed
    assert result.ks_stat < result.ks_threshold
    assert abs(result.z_mean) < 5 and abs(result.z_var) < 5


def test_compare_rejects_wrong_model():
    sigma, gain = 0.15, 3.0
    code = gkp_tms(gain)
    rep = run(code, gkp_tms_decoder(gain, sigma), sigma, 400_000, seed=8)
    wrong = compare(rep, tms_mixture(sigma * 1.25, gain), quadrature="q")
    assert not wrong.passed


def test_compare_with_plain_density_callable():
    sigma = 0.2
    rep = run(gkp_repetition(), gkp_repetition_decoder(), sigma, 200_000, seed=10)
    q_model = lambda u: gkp_repetition_pdfs(u, sigma)[0]
    p_model = lambda u: gkp_repetition_pdfs(u, sigma)[1]
    assert compare(rep, q_model, quadrature="q").passed
    assert compare(rep, p_model, quadrature="p").passed


def test_gaussian_repetition_spreads():
    n_modes, sigma = 3, 0.2
    rep = run(
        gaussian_repetition(n_modes),
        gaussian_repetition_decoder(n_modes),
        sigma,
        200_000,
        seed=12,
    )
    assert rep.std_q == pytest.approx(sigma / math.sqrt(n_modes), rel=0.02)
    assert rep.std_p == pytest.approx(sigma * math.sqrt(n_modes), rel=0.02)


def test_invalid_arguments():
    code = gkp_repetition()
    dec = gkp_repetition_decoder()
    with pytest.raises(ValueError):
        run(code, dec, 0.1, 0, seed=1)
    with pytest.raises(ValueError):
        run(code, dec, 0.1, 100, seed=1, shards=0)
    with pytest.raises(ValueError):
        run(code, dec, -0.1, 100, seed=1)
    rep = run(code, dec, 0.1, 1000, seed=1)
    with pytest.raises(ValueError):
        compare(rep, tms_mixture(0.1, 2.0), quadrature="x")
