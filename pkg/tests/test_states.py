import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nlcstates import nlcs, states
from nlcstates.errors import ParameterError, TruncationError
from nlcstates.fock import FockVector
from nlcstates.states import Family, StateSpec


def moments(p):
    n = np.arange(len(p))
    mean = float(np.dot(n, p))
    return mean, float(np.dot(n**2, p)) - mean**2


class TestConstructors:
    def test_coherent_vacuum(self):
        v = states.coherent(0)
        assert v.amp[0] == 1 and np.count_nonzero(v.amp) == 1

    def test_coherent_amp2(self):
        v = states.coherent(1.0, 40)
        assert v.amp[2].real == pytest.approx(0.42888194248035340, abs=1e-15)

    def test_coherent_stats(self):
        s = states.photon_stats(states.coherent(1.0))
        assert s.mean == pytest.approx(1, abs=1e-12)
        assert s.mandel_q == pytest.approx(0, abs=1e-12)

    def test_coherent_too_large(self):
        with pytest.raises(TruncationError):
            states.coherent(100)

    def test_excited_m0(self):
        np.testing.assert_allclose(states.excited_coherent(0.8, 0, 40).amp, states.coherent(0.8, 40).amp, atol=1e-15)

    def test_excited_ratio(self):
        v = states.excited_coherent(0.8, 1, 40)
        assert v.amp[0] == 0
        assert (v.amp[2] / v.amp[1]).real == pytest.approx(1.1313708498984762, rel=1e-14)

    def test_excited_infer(self):
        v = states.excited_coherent(0.8, 1)
        f = nlcs.infer_f(v, 0.8)
        n = np.arange(1, v.dim - 1)
        np.testing.assert_allclose(f.values[1 : v.dim - 1], 1 - 1 / (1 + n), atol=1e-10)

    def test_excited_norm_uses_laguerre(self):
        # without numerical renormalization the analytic norm must already be ~1
        v = states.excited_coherent(1.2, 3)
        assert v.norm() == pytest.approx(1, abs=1e-14)

    def test_nbs_m1(self):
        v = states.negative_binomial(0.5, 1)
        assert v.amp[0].real == pytest.approx(0.70710678118654752, abs=1e-15)
        assert v.amp[1].real == pytest.approx(0.5, abs=1e-15)
        np.testing.assert_allclose(v.amp.real, 0.5 ** (0.5 + np.arange(v.dim) / 2), rtol=1e-13)

    def test_nbs_eigen(self):
        v = states.negative_binomial(0.3, 4)
        spec = nlcs.NlcsSpec(math.sqrt(0.3), nlcs.NonlinearFunction.negative_binomial(4, v.dim))
        assert nlcs.eigen_residual(spec, v) <= 1e-10

    @pytest.mark.parametrize("eta,M", [(0.1, 1), (0.3, 4), (0.5, 10), (0.8, 3)])
    def test_nbs_moments(self, eta, M):
        v = states.negative_binomial(eta, M)
        s = states.photon_stats(v)
        # direct summation of the negative binomial distribution with exact binomials
        p = [(1 - eta) ** M * math.comb(M + n - 1, n) * eta**n for n in range(2000)]
        mean, var = moments(np.array(p))
        assert s.mean == pytest.approx(mean, rel=1e-10)
        assert s.variance == pytest.approx(var, rel=1e-10)
        assert s.mean == pytest.approx(M * eta / (1 - eta), rel=1e-10)
        assert s.mandel_q == pytest.approx(eta / (1 - eta), abs=1e-6)

    def test_nbs_large_M_no_overflow(self):
        v = states.negative_binomial(0.5, 900)
        assert v.norm() == pytest.approx(1, abs=1e-12)

    def test_binomial_m1(self):
        v = states.binomial(0.3, 1, 4)
        np.testing.assert_allclose(v.amp, [math.sqrt(0.7), math.sqrt(0.3), 0, 0], atol=1e-15)

    @pytest.mark.parametrize("eta,M", [(0.1, 1), (0.3, 4), (0.5, 10)])
    def test_binomial_stats(self, eta, M):
        s = states.photon_stats(states.binomial(eta, M))
        assert s.mean == pytest.approx(M * eta, rel=1e-12)
        assert s.variance == pytest.approx(M * eta * (1 - eta), rel=1e-12)
        assert s.mandel_q == pytest.approx(-eta, abs=1e-12)

    def test_binomial_support(self):
        v = states.binomial(0.4, 6, 20)
        assert np.all(v.amp[7:] == 0) and np.all(v.amp[:7] != 0)

    def test_su2_ladder(self):
        v = states.binomial(0.3, 4)
        assert states.su2_ladder_residual(0.3, 4, v) <= 1e-12

    @pytest.mark.parametrize("eta", [0.0, 1.0, -0.1, 1.5])
    def test_eta_open_interval(self, eta):
        with pytest.raises(ParameterError):
            states.negative_binomial(eta, 2)
        with pytest.raises(ParameterError):
            states.binomial(eta, 2)

    def test_nbs_needs_m1(self):
        with pytest.raises(ParameterError):
            states.negative_binomial(0.3, 0)

    def test_coherent_limit(self):
        M = 400
        eta = 1 / (M + 1)  # M eta / (1 - eta) = 1
        s = states.photon_stats(states.negative_binomial(eta, M))
        assert s.mean == pytest.approx(1, rel=1e-10)
        assert s.mandel_q <= 0.01


class TestPhotonStats:
    def test_number_state(self):
        s = states.photon_stats(FockVector.basis(5, 8))
        assert (s.mean, s.variance, s.mandel_q) == (5, 0, -1)

    def test_vacuum_undefined_q(self):
        assert states.photon_stats(FockVector.vacuum(4)).mandel_q is None

    def test_zero_vector(self):
        with pytest.raises(ParameterError):
            states.photon_stats(FockVector([0, 0]))

    @given(st.lists(st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False), min_size=1, max_size=30))
    def test_nonnegative_variance(self, amp):
        v = FockVector(amp)
        if v.norm() == 0:
            return
        s = states.photon_stats(v)
        assert s.variance >= 0
        assert v.probabilities().sum() == pytest.approx(1, abs=1e-12)


@pytest.mark.parametrize(
    "build",
    [
        lambda: states.coherent(1.3),
        lambda: states.excited_coherent(0.6 + 0.2j, 3),
        lambda: states.negative_binomial(0.45, 7),
        lambda: states.binomial(0.2, 9),
        lambda: states.perelomov_k(0.5, 2),
        lambda: states.custom_nlcs(nlcs.NlcsSpec(0.7, nlcs.NonlinearFunction.excited(2, 256))),
    ],
)
def test_constructors_unit_norm_small_spill(build):
    v = build()
    assert v.norm() == pytest.approx(1, abs=1e-12)
    assert v.spill < 1e-12


class TestWitness:
    def test_m1(self):
        w = states.binomial_not_nlcs_witness(0.5, 1, alpha=2.0)
        assert w.top_amplitude == pytest.approx(0.70710678118654752, abs=1e-15)
        assert w.min_residual_bound == pytest.approx(2 * 0.70710678118654752, abs=1e-14)

    def test_grid(self):
        for eta in (0.1, 0.3, 0.5):
            for M in (1, 4, 10):
                w = states.binomial_not_nlcs_witness(eta, M)
                assert w.lowering_residual <= 1e-12
                assert w.top_amplitude == pytest.approx(eta ** (M / 2), abs=1e-12)
                assert w.top_component_of_fa == 0
                assert w.is_not_nlcs

    def test_any_f_residual_bounded(self):
        # the obstruction holds for every f: check a few explicit choices
        eta, M, alpha = 0.3, 4, 0.8
        v = states.binomial(eta, M)
        w = states.binomial_not_nlcs_witness(eta, M, alpha)
        rng = np.random.default_rng(0)
        for _ in range(10):
            f = nlcs.NonlinearFunction(rng.uniform(-3, 3, v.dim))
            assert nlcs.eigen_residual(nlcs.NlcsSpec(alpha, f), v) >= w.min_residual_bound - 1e-15

    def test_infer_f_verdict(self):
        for alpha in (0.1, 1.0, 3 - 1j):
            assert isinstance(nlcs.infer_f(states.binomial(0.3, 4), alpha), nlcs.NotNlcs)


class TestStateSpec:
    def test_round_trip(self):
        spec = StateSpec(Family.NEGATIVE_BINOMIAL, {"eta": 0.3, "M": 4})
        back = StateSpec.from_json(__import__("json").dumps(spec.to_dict()))
        assert back == spec

    def test_complex_param(self):
        spec = StateSpec.from_dict({"family": "Coherent", "params": {"alpha": [0.3, 0.4]}})
        v = states.build_state(spec)
        assert states.photon_stats(v).mean == pytest.approx(0.25, rel=1e-12)

    def test_custom(self):
        f = nlcs.NonlinearFunction.negative_binomial(4, 300)
        spec = StateSpec.from_dict({"family": "CustomNlcs", "params": {"alpha": math.sqrt(0.3), "f": f.to_dict()}})
        v = states.build_state(spec)
        ref = states.negative_binomial(0.3, 4, v.dim)
        np.testing.assert_allclose(v.amp, ref.amp, atol=1e-13)

    def test_custom_tag(self):
        spec = StateSpec("CustomNlcs", {"alpha": 0.8, "f": "excited:2"})
        v = states.build_state(spec, 40)
        np.testing.assert_allclose(v.amp, states.excited_coherent(0.8, 2, 40).amp, atol=1e-14)

    def test_unknown_family(self):
        with pytest.raises(ParameterError):
            StateSpec("Squeezed", {})

    def test_missing_param(self):
        with pytest.raises(ParameterError):
            states.build_state(StateSpec("Binomial", {"eta": 0.3}))
