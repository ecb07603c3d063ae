import json

import numpy as np
import pytest

from qcap.channels import (
    DensityMatrix,
    ProbabilityVector,
    QuantumChannel,
    apply,
    apply_matrix,
    channel_from_json,
    channel_to_json,
    choi,
    complement,
    compose,
    erasure,
    isometry,
    mad,
    partial_transpose_b,
    platypus,
    tensor_channels,
)
from qcap.numerics import partial_trace, psd_check


def random_state(rng, n):
    m = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    rho = m @ m.conj().T
    return DensityMatrix(rho / np.trace(rho).real)


def matrix_units(n):
    for i in range(n):
        for j in range(n):
            e = np.zeros((n, n), dtype=complex)
            e[i, j] = 1.0
            yield e


def channels_agree_on_basis(a, b, tol=1e-10):
    assert a.dA == b.dA and a.dB == b.dB
    return all(
        np.abs(apply_matrix(a, e) - apply_matrix(b, e)).max() < tol
        for e in matrix_units(a.dA)
    )


# ---------------------------------------------------------------------------
# probability vectors and states


def test_probability_vector_sorts_ascending():
    pv = ProbabilityVector([0.7, 0.1, 0.2])
    assert np.allclose(pv.as_array(), [0.1, 0.2, 0.7])
    assert pv.d == 3
    assert abs(pv.mu_max - 0.7) < 1e-15
    assert len(pv) == 3
    assert list(pv) == [0.1, 0.2, 0.7]


def test_probability_vector_rejects_bad_sum_and_sign():
    with pytest.raises(ValueError):
        ProbabilityVector([0.5, 0.6])
    with pytest.raises(ValueError):
        ProbabilityVector([-0.1, 1.1])
    with pytest.raises(ValueError):
        ProbabilityVector([])


def test_probability_vector_renormalize():
    pv = ProbabilityVector([2.0, 6.0], renormalize=True)
    assert np.allclose(pv.as_array(), [0.25, 0.75])


def test_uniform_and_uniform_remainder():
    assert np.allclose(ProbabilityVector.uniform(4).as_array(), [0.25] * 4)
    pv = ProbabilityVector.uniform_remainder(5, 0.4)
    assert np.allclose(pv.as_array(), [0.15, 0.15, 0.15, 0.15, 0.4])
    assert abs(pv.mu_max - 0.4) < 1e-15
    one = ProbabilityVector.uniform_remainder(1, 1.0)
    assert np.allclose(one.as_array(), [1.0])


def test_uniform_remainder_rejects_infeasible_top_entry():
    with pytest.raises(ValueError):
        ProbabilityVector.uniform_remainder(5, 0.1)  # below 1/d
    with pytest.raises(ValueError):
        ProbabilityVector.uniform_remainder(5, 1.2)


def test_density_matrix_validation():
    with pytest.raises(ValueError):
        DensityMatrix(np.diag([1.0, -0.2]) + 0.2 * np.eye(2) / 2)
    with pytest.raises(ValueError):
        DensityMatrix(np.diag([0.7, 0.7]))
    dm = DensityMatrix.diagonal([0.3, 0.7])
    assert abs(np.trace(dm.matrix) - 1.0) < 1e-12
    pure = DensityMatrix.pure([1.0, 1.0])
    assert np.allclose(pure.matrix, 0.5 * np.ones((2, 2)))
    mm = DensityMatrix.maximally_mixed(3)
    assert np.allclose(mm.matrix, np.eye(3) / 3)


# ---------------------------------------------------------------------------
# channel families


def test_platypus_dimensions_and_trace_preservation():
    ch = platypus([0.25, 0.75])
    assert (ch.dA, ch.dB, ch.dE) == (3, 3, 2)
    acc = sum(k.conj().T @ k for k in ch.kraus)
    assert np.abs(acc - np.eye(3)).max() < 1e-12


def test_platypus_ground_state_maps_to_mu_diagonal():
    ch = platypus([0.5, 0.5])
    rho = np.zeros((3, 3))
    rho[0, 0] = 1.0
    out = apply_matrix(ch, rho)
    assert np.abs(out - np.diag([0.5, 0.5, 0.0])).max() < 1e-12


def test_platypus_excited_states_map_to_top_state():
    ch = platypus([0.2, 0.8])
    top = np.diag([0.0, 0.0, 1.0])
    for level in (1, 2):
        rho = np.zeros((3, 3))
        rho[level, level] = 1.0
        assert np.abs(apply_matrix(ch, rho) - top).max() < 1e-12


def test_trace_preservation_gate_rejects_scaled_kraus():
    with pytest.raises(ValueError):
        QuantumChannel((0.5 * np.eye(2),))


def test_erasure_action():
    ch = erasure(0.5, 3)
    assert (ch.dA, ch.dB, ch.dE) == (3, 4, 4)
    out = apply_matrix(ch, np.eye(3) / 3)
    assert np.abs(out - np.diag([1 / 6, 1 / 6, 1 / 6, 1 / 2])).max() < 1e-12
    keep = apply_matrix(erasure(0.0, 2), np.diag([0.3, 0.7]))
    assert np.abs(keep - np.diag([0.3, 0.7, 0.0])).max() < 1e-12
    gone = apply_matrix(erasure(1.0, 2), np.diag([0.3, 0.7]))
    assert np.abs(gone - np.diag([0.0, 0.0, 1.0])).max() < 1e-12


def test_erasure_rejects_bad_probability():
    with pytest.raises(ValueError):
        erasure(-0.1, 2)
    with pytest.raises(ValueError):
        erasure(1.1, 2)


def test_erasure_complement_is_erasure_with_flipped_probability():
    rng = np.random.default_rng(6)
    rho = random_state(rng, 3)
    comp = complement(erasure(0.3, 3))
    flip = erasure(0.7, 3)
    a = np.linalg.eigvalsh(apply_matrix(comp, rho.matrix))
    b = np.linalg.eigvalsh(apply_matrix(flip, rho.matrix))
    assert np.abs(a - b).max() < 1e-12


def test_mad_action_and_extremes():
    ch = mad(0.5, 2)
    out = apply_matrix(ch, np.diag([0.0, 1.0]))
    assert np.abs(out - np.diag([0.5, 0.5])).max() < 1e-12
    ident = mad(0.0, 3)
    rho = np.diag([0.2, 0.3, 0.5])
    assert np.abs(apply_matrix(ident, rho) - rho).max() < 1e-12
    drain = mad(1.0, 3)
    out = apply_matrix(drain, rho)
    expected = np.zeros((3, 3))
    expected[0, 0] = 1.0
    assert np.abs(out - expected).max() < 1e-12


def test_mad_is_self_complementary_at_half():
    rng = np.random.default_rng(7)
    ch = mad(0.5, 3)
    comp = complement(ch)
    rho = random_state(rng, 3)
    a = np.linalg.eigvalsh(apply_matrix(ch, rho.matrix))
    b = np.linalg.eigvalsh(apply_matrix(comp, rho.matrix))
    assert np.abs(a - b).max() < 1e-12


def test_mad_complement_is_mad_with_flipped_rate_on_diagonals():
    gamma = 0.3
    ch = mad(gamma, 4)
    comp = complement(ch)
    flip = mad(1.0 - gamma, 4)
    rho = np.diag([0.1, 0.2, 0.3, 0.4])
    a = apply_matrix(comp, rho)
    b = apply_matrix(flip, rho)
    assert np.abs(a - b).max() < 1e-12


def test_mad_degradation_maps_output_onto_complement():
    d = 3
    for gamma in (0.1, 0.3, 0.5):
        eta = (1.0 - 2.0 * gamma) / (1.0 - gamma)
        degraded = compose(mad(eta, d), mad(gamma, d))
        comp = complement(mad(gamma, d))
        assert channels_agree_on_basis(degraded, comp)


# ---------------------------------------------------------------------------
# complement, isometry, Choi


def test_double_complement_restores_channel():
    for ch in (platypus([0.2, 0.8]), erasure(0.3, 2), mad(0.4, 3)):
        assert channels_agree_on_basis(complement(complement(ch)), ch, tol=1e-12)


def test_platypus_complement_of_ground_state_is_mu():
    ch = platypus([0.3, 0.7])
    rho = np.zeros((3, 3))
    rho[0, 0] = 1.0
    out = apply_matrix(complement(ch), rho)
    assert np.abs(out - np.diag([0.3, 0.7])).max() < 1e-12


def test_isometry_is_isometric_and_consistent():
    rng = np.random.default_rng(8)
    for ch in (platypus([0.25, 0.75]), erasure(0.4, 2), mad(0.2, 3)):
        v = isometry(ch)
        assert np.abs(v.conj().T @ v - np.eye(ch.dA)).max() < 1e-12
        rho = random_state(rng, ch.dA)
        lifted = v @ rho.matrix @ v.conj().T
        out = partial_trace(lifted, (ch.dB, ch.dE), keep=0)
        env = partial_trace(lifted, (ch.dB, ch.dE), keep=1)
        assert np.abs(out - apply_matrix(ch, rho.matrix)).max() < 1e-12
        assert np.abs(env - apply_matrix(complement(ch), rho.matrix)).max() < 1e-12


def test_choi_matches_blockwise_assembly():
    ch = platypus([0.3, 0.7])
    j = choi(ch)
    blocks = np.zeros((ch.dA * ch.dB, ch.dA * ch.dB), dtype=complex)
    for i in range(ch.dA):
        for k in range(ch.dA):
            e = np.zeros((ch.dA, ch.dA), dtype=complex)
            e[i, k] = 1.0
            blocks[i * ch.dB : (i + 1) * ch.dB, k * ch.dB : (k + 1) * ch.dB] = apply_matrix(ch, e)
    assert np.abs(j - blocks).max() < 1e-12


def test_choi_is_psd_with_identity_input_marginal():
    for ch in (platypus([0.2, 0.8]), erasure(0.3, 3), mad(0.6, 2)):
        j = choi(ch)
        ok, _ = psd_check(j, tol=1e-10)
        assert ok
        marginal = partial_trace(j, (ch.dA, ch.dB), keep=0)
        assert np.abs(marginal - np.eye(ch.dA)).max() < 1e-10


def test_partial_transpose_b_is_an_involution_and_transposes_blocks():
    rng = np.random.default_rng(9)
    m = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
    t = partial_transpose_b(m, (2, 3))
    assert np.abs(partial_transpose_b(t, (2, 3)) - m).max() == 0.0
    assert np.abs(t[0:3, 3:6] - m[0:3, 3:6].T).max() == 0.0


# ---------------------------------------------------------------------------
# composition and tensoring


def test_compose_applies_second_after_first():
    first = mad(0.3, 2)
    second = erasure(0.25, 2)
    chained = compose(second, first)
    rho = np.diag([0.4, 0.6])
    direct = apply_matrix(second, apply_matrix(first, rho))
    assert np.abs(apply_matrix(chained, rho) - direct).max() < 1e-12


def test_compose_rejects_dimension_mismatch():
    with pytest.raises(ValueError):
        compose(mad(0.3, 2), mad(0.3, 3))


def test_tensor_channels_acts_as_product_on_product_states():
    rng = np.random.default_rng(10)
    left = platypus([0.4, 0.6])
    right = erasure(0.3, 2)
    prod = tensor_channels(left, right)
    a = random_state(rng, left.dA)
    b = random_state(rng, right.dA)
    out = apply_matrix(prod, np.kron(a.matrix, b.matrix))
    expected = np.kron(apply_matrix(left, a.matrix), apply_matrix(right, b.matrix))
    assert np.abs(out - expected).max() < 1e-12


def test_tensor_complement_is_complement_of_tensor():
    rng = np.random.default_rng(11)
    left = platypus([0.5, 0.5])
    right = mad(0.3, 2)
    a = complement(tensor_channels(left, right))
    b = tensor_channels(complement(left), complement(right))
    rho = random_state(rng, left.dA * right.dA)
    x = np.linalg.eigvalsh(apply_matrix(a, rho.matrix))
    y = np.linalg.eigvalsh(apply_matrix(b, rho.matrix))
    assert np.abs(x - y).max() < 1e-11


def test_apply_wraps_density_matrices():
    ch = erasure(0.25, 2)
    rho = DensityMatrix.maximally_mixed(2)
    out = apply(ch, rho)
    assert isinstance(out, DensityMatrix)
    assert np.abs(out.matrix - np.diag([0.375, 0.375, 0.25])).max() < 1e-12


# ---------------------------------------------------------------------------
# serialization


def test_channel_json_roundtrip_is_exact():
    ch = platypus([0.3, 0.7])
    doc = channel_to_json(ch)
    payload = json.loads(doc)
    assert payload["env_order"] == "computational"
    assert payload["dA"] == 3 and payload["dB"] == 3 and payload["dE"] == 2
    back = channel_from_json(doc)
    for k0, k1 in zip(ch.kraus, back.kraus):
        assert np.abs(k0 - k1).max() == 0.0


def test_channel_json_rejects_malformed_documents():
    ch = mad(0.2, 2)
    doc = json.loads(channel_to_json(ch))
    doc["kraus"] = []
    with pytest.raises(ValueError):
        channel_from_json(json.dumps(doc))
