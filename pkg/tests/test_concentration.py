from itertools import product

import numpy as np
import pytest

from gss.concentration import (
    CloningParams,
    averaged_output_formula,
    cloning_amplitudes,
    cloning_components,
    cloning_state,
    correction_unitary,
    fidelity,
    run_concentration,
    symmetric_basis_state,
    uniform_cloning_correlations,
)
from gss.pauli import PauliOperator
from gss.states import gss_closed, noisy_gss, t_diagonal
from oracles import SIGMAS, bell_kets, kron_all, ket, proj

INPUTS = [(1.0, 0.0), (1 / np.sqrt(2), 1 / np.sqrt(2)), (0.6, 0.8j)]


def uniform(k, n):
    return kron_all([SIGMAS[k]] * n)


def test_symmetric_basis_state():
    np.testing.assert_allclose(symmetric_basis_state(2, 1), (ket("01") + ket("10")) / np.sqrt(2))
    np.testing.assert_allclose(symmetric_basis_state(3, 0), ket("000"))
    np.testing.assert_allclose(
        symmetric_basis_state(3, 2), (ket("011") + ket("101") + ket("110")) / np.sqrt(3)
    )
    for M in range(1, 6):
        for j in range(M + 1):
            assert np.linalg.norm(symmetric_basis_state(M, j)) == pytest.approx(1.0, abs=1e-14)
    with pytest.raises(ValueError):
        symmetric_basis_state(3, 4)


def test_cloning_amplitudes():
    np.testing.assert_allclose(cloning_amplitudes(2), [np.sqrt(2 / 3), np.sqrt(1 / 3)])
    for M in range(2, 7):
        assert np.sum(cloning_amplitudes(M) ** 2) == pytest.approx(1.0, abs=1e-12)


def test_cloning_params_validation():
    with pytest.raises(ValueError):
        CloningParams(1, 1.0, 0.0)
    with pytest.raises(ValueError):
        CloningParams(2, 1.0, 1.0)
    CloningParams(2, 0.6, 0.8j)


@pytest.mark.parametrize("M", [2, 3])
def test_cloning_state(M):
    phi0, phi1 = cloning_components(M)
    np.testing.assert_allclose(cloning_state(CloningParams(M, 1.0, 0.0)), phi0)
    assert np.vdot(phi0, phi1) == pytest.approx(0.0, abs=1e-15)
    psi = cloning_state(CloningParams(M, 0.6, 0.8j))
    assert psi.size == 2 ** (2 * M - 1)
    assert np.linalg.norm(psi) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("M", [2, 3])
def test_symmetry_relations(M):
    n = 2 * M - 1
    phis = cloning_components(M)
    for l in (0, 1):
        np.testing.assert_allclose(uniform(3, n) @ phis[l], (-1) ** l * phis[l], atol=1e-12)
        np.testing.assert_allclose(uniform(2, n) @ phis[l], (-1) ** (M + l + 1) * 1j * phis[1 - l], atol=1e-12)
        np.testing.assert_allclose(uniform(1, n) @ phis[l], phis[1 - l], atol=1e-12)


def test_bell_projector_trace_identities():
    kets = bell_kets()
    for k in range(4):
        pk = proj(kets[k])
        t = np.diag(t_diagonal(k))
        for m in range(4):
            assert np.trace(pk @ np.kron(SIGMAS[m], SIGMAS[0])).real == pytest.approx(float(m == 0), abs=1e-15)
            for r in range(1, 4):
                expected = t[m - 1, r - 1] if m else 0.0
                assert np.trace(pk @ np.kron(SIGMAS[m], SIGMAS[r])) == pytest.approx(expected, abs=1e-15)


def test_twirl_identity_random_vectors():
    rng = np.random.default_rng(11)
    for _ in range(20):
        lam = rng.normal(size=3)
        lhs = sum(
            SIGMAS[k] @ np.einsum("i,ijk->jk", t_diagonal(k) * lam, np.array(SIGMAS[1:])) @ SIGMAS[k]
            for k in range(4)
        )
        rhs = -4 * np.einsum("i,ijk->jk", lam, np.array(SIGMAS[1:]))
        np.testing.assert_allclose(lhs, rhs, atol=1e-12)


def test_fidelity():
    plus = np.array([1, 1]) / np.sqrt(2)
    assert fidelity(proj(plus), plus) == pytest.approx(1.0)
    assert fidelity(np.eye(2) / 2, plus) == pytest.approx(0.5)
    assert fidelity(proj(np.array([1, 0])), plus) == pytest.approx(0.5)
    with pytest.raises(ValueError):
        fidelity(np.eye(2), plus)
    with pytest.raises(ValueError):
        fidelity(np.eye(2) / 2, np.array([1.0, 1.0]))


def test_correction_unitary():
    np.testing.assert_allclose(correction_unitary(3, (1, 2)), SIGMAS[1] @ SIGMAS[2])
    np.testing.assert_allclose(correction_unitary(2, (3,)), SIGMAS[2] @ SIGMAS[3])


def test_uniform_correlations_are_bloch_components():
    a, b = 0.6, 0.8j
    x, y, z = 2 * (np.conj(a) * b).real, 2 * (np.conj(a) * b).imag, abs(a) ** 2 - abs(b) ** 2
    for M in (2, 3):
        lam = uniform_cloning_correlations(CloningParams(M, a, b))
        np.testing.assert_allclose(lam, [x, (-1) ** (M + 1) * y, z], atol=1e-12)


@pytest.mark.parametrize("M", [2, 3])
@pytest.mark.parametrize("a,b", INPUTS)
def test_concentration_recovers_input(M, a, b):
    params = CloningParams(M, a, b)
    result = run_concentration(params)
    n = 2 * M - 1
    assert len(result.outcomes) == 4**n
    assert [o.outcome for o in result.outcomes] == list(product(range(4), repeat=n))
    assert result.total_probability == pytest.approx(1.0, abs=1e-10)
    np.testing.assert_allclose(result.average_state, averaged_output_formula(params), atol=1e-10)
    assert result.reference_deviation <= 1e-10
    for o in result.outcomes:
        assert o.probability >= 0
        assert np.trace(o.corrected_state).real == pytest.approx(1.0, abs=1e-12)
        assert np.linalg.eigvalsh(o.corrected_state)[0] >= -1e-12
    assert result.min_fidelity >= 1 - 1e-9
    np.testing.assert_allclose(result.average_state, proj(params.input_ket()), atol=1e-10)


def test_average_is_probability_weighted_sum():
    result = run_concentration(CloningParams(2, 0.6, 0.8j))
    total = sum(o.probability * o.corrected_state for o in result.outcomes)
    np.testing.assert_allclose(total, result.average_state, atol=1e-14)


def test_maximally_mixed_channel():
    params = CloningParams(2, 0.6, 0.8j)
    result = run_concentration(params, PauliOperator.maximally_mixed(4))
    assert result.total_probability == pytest.approx(1.0, abs=1e-10)
    for o in result.outcomes:
        np.testing.assert_allclose(o.corrected_state, np.eye(2) / 2, atol=1e-12)
        assert o.fidelity == pytest.approx(0.5, abs=1e-12)


def test_noisy_channel_shrinks_bloch_vector():
    params = CloningParams(2, 1.0, 0.0)
    result = run_concentration(params, noisy_gss(2, 0.5))
    assert result.total_probability == pytest.approx(1.0, abs=1e-10)
    assert result.min_fidelity == pytest.approx(0.75, abs=1e-12)


@pytest.mark.parametrize("charlie", [0, 1, 2])
def test_pairing_is_irrelevant_for_gss(charlie):
    params = CloningParams(2, 1 / np.sqrt(2), 1j / np.sqrt(2))
    base = run_concentration(params)
    moved = run_concentration(params, gss_closed(2), charlie_site=charlie)
    np.testing.assert_allclose(moved.average_state, base.average_state, atol=1e-12)
    for x, y in zip(base.outcomes, moved.outcomes):
        assert x.probability == pytest.approx(y.probability, abs=1e-14)
        np.testing.assert_allclose(x.corrected_state, y.corrected_state, atol=1e-12)


def test_low_probability_outcomes_are_flagged():
    # channel: product of a pure |0..0> with Charlie maximally mixed kills many outcomes
    zero = PauliOperator.from_terms(
        4,
        [("".join(s), 1 / 16) for s in product("IZ", "IZ", "IZ", "I")],
    )
    result = run_concentration(CloningParams(2, 1.0, 0.0), zero)
    flagged = [o for o in result.outcomes if o.fidelity is None]
    assert flagged
    assert all(o.corrected_state is None and o.probability < 1e-12 for o in flagged)
    assert result.total_probability == pytest.approx(1.0, abs=1e-10)


def test_channel_validation():
    params = CloningParams(2, 1.0, 0.0)
    with pytest.raises(ValueError):
        run_concentration(params, gss_closed(3))
    with pytest.raises(ValueError):
        run_concentration(params, PauliOperator.identity(4))
    with pytest.raises(ValueError):
        run_concentration(params, PauliOperator(4, {"IIII": 1 / 16, "XXII": 0.5}))
    with pytest.raises(ValueError):
        run_concentration(CloningParams(4, 1.0, 0.0))


def test_result_to_dict():
    result = run_concentration(CloningParams(2, 0.6, 0.8j))
    summary = result.to_dict()
    assert summary["n_outcomes"] == 64
    assert "outcomes" not in summary
    assert summary["min_fidelity"] == pytest.approx(1.0, abs=1e-9)
    full = result.to_dict("full")
    assert len(full["outcomes"]) == 64
    assert full["outcomes"][0]["outcome"] == "000"
    with pytest.raises(ValueError):
        result.to_dict("bogus")
