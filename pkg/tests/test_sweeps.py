import numpy as np
import pytest

from ringpurity.core import (
    PulseParams,
    PumpSpec,
    ResonatorParams,
    ghz_to_angular,
)
from ringpurity.sweeps import (
    SweepJob,
    calibrate_linewidth,
    dual_reference_purity,
    run_sweep_job,
    sweep_eta,
    sweep_phase,
    sweep_train,
)

FWHM = ghz_to_angular(41.0)
GAMMA = ghz_to_angular(1.8804)
BASE = PulseParams.from_fwhm(FWHM)
RES = ResonatorParams.symmetric(GAMMA)

# coarse settings keep the suite fast; physics-grade values are exercised in
# the acceptance tests
JSA_N = 64


def _purity(spec):
    from ringpurity.sweeps import _purity_of_spec

    return _purity_of_spec(spec, RES, JSA_N)


class TestCalibration:
    def test_finds_interior_maximum(self):
        result = calibrate_linewidth(
            FWHM,
            (ghz_to_angular(0.8), ghz_to_angular(5.0)),
            n_scan=8,
            jsa_n=JSA_N,
        )
        assert result.bracketed
        assert ghz_to_angular(0.8) < result.gamma < ghz_to_angular(5.0)
        assert result.purity >= np.max(result.scan_purities)
        # local maximizer: nudging gamma either way cannot improve purity
        for factor in (0.9, 1.1):
            nearby = dual_reference_purity(
                result.gamma * factor, FWHM, jsa_n=JSA_N
            )
            assert nearby <= result.purity + 1e-9

    def test_unbracketed_edge_maximum(self):
        # a range entirely above the optimum peaks at its lower edge
        result = calibrate_linewidth(
            FWHM,
            (ghz_to_angular(10.0), ghz_to_angular(30.0)),
            n_scan=5,
            jsa_n=JSA_N,
        )
        assert not result.bracketed
        assert result.gamma == pytest.approx(ghz_to_angular(10.0), rel=1e-12)

    def test_rejects_bad_range(self):
        with pytest.raises(ValueError):
            calibrate_linewidth(FWHM, (2.0, 1.0), jsa_n=JSA_N)

    def test_scan_outputs_aligned(self):
        result = calibrate_linewidth(
            FWHM,
            (ghz_to_angular(1.0), ghz_to_angular(4.0)),
            n_scan=6,
            jsa_n=JSA_N,
        )
        assert result.scan_gammas.shape == result.scan_purities.shape == (6,)
        assert np.all(np.diff(result.scan_gammas) > 0)


class TestEtaSweep:
    def test_full_second_split_degenerates_to_dual(self):
        # eta2 = 1 empties the third pulse, leaving a dual pulse with the
        # first sweep delay
        result = sweep_eta(
            RES, BASE, [0.55], [1.0], jsa_n=JSA_N
        )
        dual = PumpSpec(
            kind="dual",
            base=BASE,
            stages=((0.55, np.pi),),
            delay_unit=20e-12,
        )
        assert result.values[0, 0] == pytest.approx(_purity(dual), rel=1e-12)

    def test_full_first_split_is_single_regardless_of_eta2(self):
        result = sweep_eta(RES, BASE, [1.0], [0.2, 0.5, 0.9], jsa_n=JSA_N)
        single = PumpSpec(kind="single", base=BASE)
        expected = _purity(single)
        assert np.allclose(result.values[0], expected, rtol=1e-12)

    def test_rejects_eta_outside_unit_interval(self):
        with pytest.raises(ValueError):
            sweep_eta(RES, BASE, [0.5, 1.2], [0.5], jsa_n=JSA_N)

    def test_metadata_records_shape_and_failures(self):
        result = sweep_eta(RES, BASE, [0.3, 0.7], [0.4], jsa_n=JSA_N)
        assert result.values.shape == (2, 1)
        assert result.metadata["n_failures"] == 0
        assert result.metadata["kind"] == "eta"


class TestPhaseSweep:
    def test_two_pi_periodic(self):
        a = sweep_phase(RES, BASE, [0.7], [1.3], jsa_n=JSA_N)
        b = sweep_phase(
            RES, BASE, [0.7 + 2 * np.pi], [1.3 - 2 * np.pi], jsa_n=JSA_N
        )
        assert a.values[0, 0] == pytest.approx(b.values[0, 0], rel=1e-9)

    def test_pi_pi_matches_eta_sweep_cell(self):
        phase_cell = sweep_phase(
            RES, BASE, [np.pi], [np.pi], etas=(0.8, 0.8), jsa_n=JSA_N
        )
        eta_cell = sweep_eta(
            RES, BASE, [0.8], [0.8], phases=(np.pi, np.pi), jsa_n=JSA_N
        )
        assert phase_cell.values[0, 0] == pytest.approx(
            eta_cell.values[0, 0], rel=1e-12
        )


class TestTrainSweep:
    def test_single_pulse_column_matches_single(self):
        result = sweep_train(
            RES,
            BASE,
            "train-cascade",
            [10e-12, 20e-12],
            n_max=3,
            eta=0.55,
            jsa_n=JSA_N,
        )
        assert result.axis1 == (1.0, 2.0, 3.0)
        single = _purity(PumpSpec(kind="single", base=BASE))
        # n = 1 is delay-independent and equal to the plain single pulse
        assert np.allclose(result.values[0], single, rtol=1e-12)

    def test_two_pulse_train_matches_dual(self):
        result = sweep_train(
            RES, BASE, "train-cascade", [10e-12], n_max=2, eta=0.55, jsa_n=JSA_N
        )
        dual = PumpSpec(
            kind="dual",
            base=BASE,
            stages=((0.55, np.pi),),
            delay_unit=10e-12,
        )
        assert result.values[1, 0] == pytest.approx(_purity(dual), rel=1e-9)

    def test_requires_train_parameters(self):
        with pytest.raises(ValueError):
            sweep_train(RES, BASE, "train-cascade", [10e-12], n_max=3)
        with pytest.raises(ValueError):
            sweep_train(RES, BASE, "train-constant", [10e-12], n_max=3)
        with pytest.raises(ValueError):
            sweep_train(RES, BASE, "train-cascade", [10e-12], n_max=1, eta=0.5)


class TestSweepExecution:
    def job(self, workers=None, jsa_n=JSA_N):
        return SweepJob(
            kind="eta",
            base=BASE,
            resonator=RES,
            axis1=(0.2, 0.5, 0.8),
            axis2=(0.3, 0.6),
            jsa_n=jsa_n,
            workers=workers,
        )

    def test_parallel_matches_serial_exactly(self):
        serial = run_sweep_job(self.job(workers=1))
        parallel = run_sweep_job(self.job(workers=2))
        assert np.array_equal(serial.values, parallel.values)

    def test_cell_failures_become_nan_with_diagnostics(self):
        # a NaN phase poisons the pump envelope in one row of cells; the
        # sweep must survive, blank those cells and report each failure
        job = SweepJob(
            kind="phase",
            base=BASE,
            resonator=RES,
            axis1=(np.nan, np.pi),
            axis2=(0.0, np.pi),
            jsa_n=JSA_N,
        )
        result = run_sweep_job(job)
        assert np.all(np.isnan(result.values[0]))
        assert np.all(np.isfinite(result.values[1]))
        assert len(result.diagnostics) == 2
        (i, j), msg = result.diagnostics[0]
        assert (i, j) == (0, 0)
        assert msg

    def test_rejects_empty_axis(self):
        with pytest.raises(ValueError):
            SweepJob(
                kind="eta", base=BASE, resonator=RES, axis1=(), axis2=(0.5,)
            )

    def test_rejects_unknown_kind(self):
        with pytest.raises(ValueError):
            SweepJob(
                kind="gamma", base=BASE, resonator=RES, axis1=(1,), axis2=(1,)
            )

    def test_rejects_fractional_pulse_count(self):
        with pytest.raises(ValueError):
            SweepJob(
                kind="train",
                base=BASE,
                resonator=RES,
                axis1=(1.5,),
                axis2=(10e-12,),
                train_eta=0.5,
            )
