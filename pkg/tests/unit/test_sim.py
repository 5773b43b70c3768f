import io

import numpy as np
import pytest

from cvstab.channel import ErrorModel, MeasurementNoise, fixed_model
from cvstab.code import builtin
from cvstab.errors import InvalidModel
from cvstab.sim import CSV_COLUMNS, SIGMA, SIGMA_M, records_frame, run_trials, summary_frame, sweep, write_csv


def position_code():
    return builtin("three-mode-q")


class TestRunTrials:
    """Test suite for the Monte Carlo harness"""

    def test_q_shifts_are_corrected_exactly(self):
        """Test 10^4 single-mode q-shifts on three-mode-q with no failures"""
        code, basis = position_code()
        model = ErrorModel("single-mode-gaussian", 0.5, "q")
        summary = run_trials(code, basis, model, "single-mode", MeasurementNoise(0.0), 10_000, seed=0)
        assert summary.failures == 0
        assert summary.failure_rate == 0
        assert summary.max_logical_disp <= 1e-9

    def test_p_shifts_are_silent_and_always_fail(self):
        """Test that every p-shift has a zero syndrome and a nonzero logical displacement"""
        code, basis = position_code()
        model = ErrorModel("single-mode-gaussian", 0.5, "p")
        summary = run_trials(code, basis, model, "single-mode", trials=2_000, seed=0, keep_records=True)
        assert all(r.syndrome.is_zero for r in summary.records)
        assert summary.failure_rate == 1.0
        # p-shift on any mode moves the logical momentum by the shift itself
        for r in summary.records:
            np.testing.assert_allclose(r.result.logical_displacement, [0.0, r.error.t.sum()])

    @pytest.mark.parametrize("name", ["five-mode-braunstein", "eight-mode-gottesman"])
    def test_one_error_codes(self, name):
        """Test 10^4 arbitrary single-mode shifts with no failures"""
        code, basis = builtin(name)
        model = ErrorModel("single-mode-gaussian", 1.0, "both")
        summary = run_trials(code, basis, model, "single-mode", trials=10_000, seed=0)
        assert summary.failures == 0
        assert summary.max_logical_disp <= 1e-9

    def test_generator_error(self):
        """Test that a fixed error equal to a generator row is harmless"""
        code, basis = position_code()
        model = fixed_model([(0, 0.0, 1.0), (1, 0.0, -1.0)])
        summary = run_trials(code, basis, model, "single-mode", trials=1, keep_records=True)
        record, = summary.records
        assert record.success
        assert record.syndrome.is_zero
        assert summary.max_logical_disp == 0

    def test_min_norm_decoder(self):
        """Test that the min-norm decoder runs every trial and reports a bounded count"""
        code, basis = position_code()
        model = ErrorModel("single-mode-gaussian", 0.5, "q")
        summary = run_trials(code, basis, model, "min-norm", trials=500)
        assert summary.trials == 500
        assert 0 <= summary.failures <= 500

    def test_reproducible(self):
        """Test that identical inputs give identical summaries"""
        code, basis = builtin("five-mode-braunstein")
        model = ErrorModel("iid-gaussian", 0.2)
        a = run_trials(code, basis, model, "min-norm", MeasurementNoise(0.05), 300, seed=4)
        b = run_trials(code, basis, model, "min-norm", MeasurementNoise(0.05), 300, seed=4)
        assert a.row() == b.row()

    def test_setup_errors(self):
        """Test that bad trial counts, decoders and fixed modes are rejected up front"""
        code, basis = position_code()
        model = ErrorModel("single-mode-gaussian", 0.5, "q")
        with pytest.raises(InvalidModel):
            run_trials(code, basis, model, "single-mode", trials=0)
        with pytest.raises(InvalidModel):
            run_trials(code, basis, model, "majority", trials=10)
        with pytest.raises(InvalidModel):
            run_trials(code, basis, fixed_model([(3, 1.0, 0.0)]), "single-mode", trials=10)


class TestSweep:
    """Test suite for parameter sweeps and CSV output"""

    def test_measurement_noise_monotonicity(self):
        """Test that the failure rate never drops as sigma_m grows"""
        code, basis = builtin("five-mode-braunstein")
        model = ErrorModel("single-mode-gaussian", 1.0, "both")
        for seed in (0, 1, 2):
            frame = sweep(code, basis, model, SIGMA_M, [0.0, 0.01, 0.1], trials=10_000, seed=seed)
            rates = list(frame["failure_rate"])
            assert rates == sorted(rates)
            assert rates[0] == 0

    def test_scale_free_correction(self):
        """Test zero failures at every sigma on a certified code"""
        code, basis = builtin("eight-mode-gottesman")
        model = ErrorModel("single-mode-gaussian", 1.0, "both")
        frame = sweep(code, basis, model, SIGMA, [0.1, 1.0], trials=1_000)
        assert list(frame["failures"]) == [0, 0]
        assert list(frame["param"]) == [0.1, 1.0]

    def test_single_point_matches_run_trials(self):
        """Test that a one-point sweep equals run_trials"""
        code, basis = position_code()
        model = ErrorModel("single-mode-gaussian", 0.5, "q")
        frame = sweep(code, basis, model, SIGMA, [0.5], trials=200, seed=3)
        summary = run_trials(code, basis, model, trials=200, seed=3, param=0.5)
        assert frame.to_dict("records") == [summary.row()]

    def test_csv_schema_and_bytes(self):
        """Test the fixed header and byte-identical output across runs"""
        code, basis = builtin("five-mode-braunstein")
        model = ErrorModel("single-mode-gaussian", 1.0, "both")
        outputs = []
        for _ in range(2):
            buffer = io.StringIO()
            write_csv(sweep(code, basis, model, SIGMA_M, [0.0, 0.1], trials=200, seed=7), buffer)
            outputs.append(buffer.getvalue())
        assert outputs[0] == outputs[1]
        lines = outputs[0].splitlines()
        assert lines[0] == ",".join(CSV_COLUMNS)
        assert len(lines) == 3
        assert lines[1].startswith("0,200,0,0,")

    def test_empty_grid_and_fixed_sigma(self):
        """Test that an empty grid and a sigma sweep of a fixed model are rejected"""
        code, basis = position_code()
        with pytest.raises(InvalidModel):
            sweep(code, basis, ErrorModel("iid-gaussian", 1.0), SIGMA, [])
        with pytest.raises(InvalidModel):
            sweep(code, basis, fixed_model([(0, 1.0, 0.0)]), SIGMA, [0.1])

    def test_record_and_summary_frames(self):
        """Test the per-trial table and the summary table"""
        code, basis = position_code()
        model = ErrorModel("single-mode-gaussian", 0.5, "q")
        summary = run_trials(code, basis, model, trials=5, keep_records=True)
        records = records_frame(summary.records)
        assert list(records["trial"]) == [0, 1, 2, 3, 4]
        assert list(summary_frame([summary]).columns) == CSV_COLUMNS
