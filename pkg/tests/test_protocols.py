import math
import random

import pytest

from qss.components import phase_shift
from qss.metrics import fidelity_modes
from qss.modes import (
    MINUS,
    PLUS,
    commutator_weight,
    covariance,
    new_coherent,
    new_vacuum,
    variance,
)
from qss.protocols import (
    DealerConfig,
    UNITY_SINGLE_FF_GAIN,
    adversary_amplified,
    adversary_view,
    classical_avg_fidelity,
    classical_bounds,
    dealer_encode,
    make_report,
    orient_share3,
    parametric_correction,
    reconstruct_double_ff,
    reconstruct_mz,
    reconstruct_pia,
    reconstruct_single_ff,
    reconstruct_two_opa,
    secret_gains,
    single_ff_gain_map,
    solve_single_ff_unity_gain,
)

V_SQ = 0.354813  # -4.5 dB
V_N = 2.23872  # +3.5 dB


def encode(v_sq=V_SQ, v_anti=None, v_n=V_N, **kw):
    return dealer_encode(DealerConfig(v_sq=v_sq, v_anti=v_anti, v_n=v_n, **kw))


def test_share_means_and_variances():
    shares = encode()
    s = 1.0 / math.sqrt(2.0)
    assert shares.share1.mean_plus == pytest.approx(5.0 * s)
    assert shares.share2.mean_plus == pytest.approx(5.0 * s)
    assert shares.share3.mean_plus == 0.0
    # share_i = (secret +/- entangled arm +/- noise)/sqrt(2)
    v_epr = (V_SQ + 1.0 / V_SQ) / 2.0
    expect = (1.0 + v_epr + V_N) / 2.0
    for share in (shares.share1, shares.share2):
        for q in (PLUS, MINUS):
            assert variance(share, q) == pytest.approx(expect, rel=1e-9)
    for q in (PLUS, MINUS):
        assert variance(shares.share3, q) == pytest.approx(v_epr + V_N, rel=1e-9)


def test_shares_are_physical():
    shares = encode()
    for k in (1, 2, 3):
        assert abs(commutator_weight(shares.share(k)) - 1.0) < 1e-12


def test_axis_tags_cover_everything():
    shares = encode()
    tagged = set()
    for ids in shares.axis_tags.values():
        tagged.update(ids)
    all_axes = set(shares.share1.axes) | set(shares.share2.axes) | set(shares.share3.axes)
    assert all_axes == tagged


def test_orientation_flips_for_share2_only():
    shares = encode()
    assert orient_share3(shares.share1, shares.share3) is shares.share3
    flipped = orient_share3(shares.share2, shares.share3)
    assert flipped is not shares.share3
    assert covariance(flipped, PLUS, shares.share3, PLUS) < 0.0
    # idempotent on an already-flipped input
    again = orient_share3(shares.share2, flipped)
    assert again is flipped


def test_mz_is_exact():
    shares = encode()
    out = reconstruct_mz(shares.share1, shares.share2)
    rep = make_report(shares.secret, out)
    assert rep.g_plus == pytest.approx(1.0, abs=1e-12)
    assert rep.g_minus == pytest.approx(1.0, abs=1e-12)
    foreign = {k: v for k, v in rep.coefficients.items() if not k.startswith("secret")}
    assert all(abs(c) < 1e-12 for pair in foreign.values() for c in pair)


def test_mz_with_mode_mismatch():
    shares = encode()
    out = reconstruct_mz(shares.share1, shares.share2, eta_bs=0.99)
    g_p, g_m = secret_gains(shares.secret, out)
    assert g_p == pytest.approx(math.sqrt(0.99), abs=1e-12)
    assert g_m == pytest.approx(math.sqrt(0.99), abs=1e-12)


@pytest.mark.parametrize("player", [1, 2])
def test_unity_protocols_cancel_dealer_noise(player):
    shares = encode()
    share_a = shares.share(player)
    expect_v = 1.0 + 2.0 * V_SQ
    outputs = {
        "pia": reconstruct_pia(share_a, shares.share3),
        "two_opa": reconstruct_two_opa(share_a, shares.share3),
        "single_ff": parametric_correction(reconstruct_single_ff(share_a, shares.share3)),
        "double_ff": reconstruct_double_ff(share_a, shares.share3, shares.secret),
    }
    for name, out in outputs.items():
        rep = make_report(shares.secret, out)
        assert rep.g_plus == pytest.approx(1.0, abs=1e-10), name
        assert rep.g_minus == pytest.approx(1.0, abs=1e-10), name
        assert rep.v_out_plus == pytest.approx(expect_v, abs=1e-10), name
        assert rep.v_out_minus == pytest.approx(expect_v, abs=1e-10), name
        for label, (cp, cm) in rep.coefficients.items():
            if label.startswith("N."):
                assert abs(cp) < 1e-10 and abs(cm) < 1e-10, (name, label)


def test_pia_gain_validation():
    shares = encode()
    with pytest.raises(ValueError):
        reconstruct_pia(shares.share1, shares.share3, 0.5)
    with pytest.raises(ValueError):
        reconstruct_two_opa(shares.share1, shares.share3, 0.0)


def test_single_ff_gain_map_matches_composition():
    shares = encode(v_n=0.0)
    rng = random.Random(5)
    for _ in range(5):
        r = rng.uniform(0.05, 0.95)
        g_e = rng.uniform(0.0, 4.0)
        out = reconstruct_single_ff(shares.share1, shares.share3, r, g_e)
        g_p, g_m = secret_gains(shares.secret, out)
        exp_p, exp_m = single_ff_gain_map(r, g_e)
        assert g_p == pytest.approx(exp_p, abs=1e-12)
        assert g_m == pytest.approx(exp_m, abs=1e-12)


def test_single_ff_unity_electronic_gain():
    exp_p, exp_m = single_ff_gain_map(2.0 / 3.0, UNITY_SINGLE_FF_GAIN)
    assert exp_p * exp_m == pytest.approx(1.0, abs=1e-12)
    assert exp_p == pytest.approx(math.sqrt(3.0), abs=1e-12)


def test_solve_single_ff_unity_gain_with_losses():
    shares = encode()

    def build(g_e):
        out = reconstruct_single_ff(shares.share1, shares.share3, 2.0 / 3.0, g_e,
                                    mirror_reflectivity=50.0 / 51.0, eta_bs=0.97)
        return make_report(shares.secret, out)

    g_e = solve_single_ff_unity_gain(build)
    rep = build(g_e)
    assert rep.gain_product == pytest.approx(1.0, abs=1e-10)


def test_double_ff_hits_requested_gain():
    shares = encode()
    for target in (0.5, 1.0, 1.5):
        out = reconstruct_double_ff(shares.share1, shares.share3, shares.secret, g_target=target)
        g_p, g_m = secret_gains(shares.secret, out)
        assert g_p == pytest.approx(target, abs=1e-10)
        assert g_m == pytest.approx(target, abs=1e-10)


def test_double_ff_vacuum_port_cancels_at_unity():
    shares = encode()
    out = reconstruct_double_ff(shares.share1, shares.share3, shares.secret, g_target=1.0)
    rep = make_report(shares.secret, out)
    for label, (cp, cm) in rep.coefficients.items():
        if label.startswith("dff_vac"):
            assert abs(cp) < 1e-10 and abs(cm) < 1e-10


def test_adversary_single_share():
    shares = encode()
    rep = adversary_view(shares, 1)
    assert rep.g_plus == pytest.approx(1.0 / math.sqrt(2.0))
    assert rep.g_minus == pytest.approx(1.0 / math.sqrt(2.0))
    rep3 = adversary_view(shares, 3)
    assert rep3.g_plus == 0.0 and rep3.g_minus == 0.0
    with pytest.raises(ValueError):
        adversary_view(shares, 4)


def test_adversary_amplified_saturates_classical_bound():
    # Classical dealer: an amplified single share reaches, but cannot
    # exceed, the classical fidelity bound at unity gain.
    shares = encode(v_sq=1.0, v_n=0.0)
    out = adversary_amplified(shares, 1)
    g_p, g_m = secret_gains(shares.secret, out)
    assert g_p == pytest.approx(1.0, abs=1e-12)
    assert variance(out, PLUS) == pytest.approx(3.0, abs=1e-12)
    f = fidelity_modes(shares.secret, out)
    assert f == pytest.approx(0.5, abs=1e-12)
    f_max, _, _ = classical_bounds(g_p, g_m)
    assert f <= f_max + 1e-12


def test_classical_bounds_values():
    f, t, v = classical_bounds(1.0, 1.0)
    assert (f, t, v) == (1.0, 2.0, 0.0)
    f, t, v = classical_bounds(1.0 / math.sqrt(2.0), 1.0 / math.sqrt(2.0))
    assert f == pytest.approx(0.5)
    assert t == pytest.approx(1.0)
    assert v == pytest.approx(0.25)
    f0, t0, v0 = classical_bounds(0.0, 0.0)
    assert f0 == 0.0 and t0 == 0.0 and v0 == 1.0


def test_classical_avg_fidelity():
    assert classical_avg_fidelity(2, 3) == pytest.approx(2.0 / 3.0)
    assert classical_avg_fidelity(1, 1) == 1.0
    with pytest.raises(ValueError):
        classical_avg_fidelity(3, 2)


def test_phase_flipped_secret_roundtrip():
    # The whole pipeline is phase-covariant: flipping the secret flips
    # the reconstruction but leaves variances unchanged.
    cfg = DealerConfig(v_sq=V_SQ, v_n=V_N, secret=phase_shift(new_coherent(5.0, 5.0), math.pi))
    shares = dealer_encode(cfg)
    out = reconstruct_pia(shares.share1, shares.share3)
    rep = make_report(shares.secret, out)
    assert rep.v_out_plus == pytest.approx(1.0 + 2.0 * V_SQ, abs=1e-10)
