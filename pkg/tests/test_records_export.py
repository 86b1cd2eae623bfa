"""입출력 레코드와 결과 내보내기 테스트"""

import csv
import io
import json
import math

import numpy as np
import pytest
from pydantic import ValidationError

from src.core.export import OutputFormat, build_envelope, normalize_value, render, to_csv
from src.core.records import LogitProblemSpec, ResultEnvelope, TrialTableRecord


class TestRecords:
    def test_trial_record_bounds(self):
        with pytest.raises(ValidationError):
            TrialTableRecord(id="x", y1=5, n1=4, y2=0, n2=1)
        with pytest.raises(ValidationError):
            TrialTableRecord(id="", y1=0, n1=4, y2=0, n2=1)

    def test_trial_record_to_data(self):
        data = TrialTableRecord(id="x", y1=1, n1=4, y2=2, n2=5).to_data()
        assert (data.y1, data.n1, data.y2, data.n2) == (1, 4, 2, 5)

    def test_logit_spec_alias(self):
        spec = LogitProblemSpec.model_validate(
            {"n": [3, 4], "y": [1, 2], "Z": [[1], [-1]], "models": [[], [1]],
             "model_labels": ["null", "group"]}
        )
        problem = spec.to_problem()
        assert problem.design.tolist() == [[1.0], [-1.0]]
        assert [m.name for m in spec.to_models()] == ["null", "group"]

    def test_envelope_needs_seed_with_mc_se(self):
        with pytest.raises(ValidationError):
            ResultEnvelope(command="x", results=[{"a": 1}], mc_se=[{"a": 0.1}])

    def test_envelope_json_round_trip(self):
        envelope = build_envelope(
            "logit-select",
            {"h": [0, 1], "smoke": True},
            [{"model": "A", "probability": 0.25, "log_marginal": -12.5}],
            seed={"seed": 3, "stream_id": 0},
            mc_se=[{"probability": 0.01}],
        )
        assert ResultEnvelope.from_json(envelope.to_json()) == envelope

    def test_summary_keys_become_strings(self):
        envelope = build_envelope(
            "crossval",
            {"h": [1, 2]},
            [],
            summary={"median_delta_percent": {1: np.float64(0.54), 2: float("nan")}},
        )
        assert envelope.summary == {"median_delta_percent": {"1": 0.54, "2": None}}
        assert '"summary"' in envelope.to_json()


class TestNormalize:
    def test_probabilities_rounded(self):
        assert normalize_value("prob_m1", 0.123456789) == 0.123457
        assert normalize_value("probability", 0.5000004) == 0.5
        assert normalize_value("log_bf10", 0.123456789) == 0.123456789

    def test_non_finite_becomes_null(self):
        assert normalize_value("bf10", math.inf) is None
        assert normalize_value("slope", float("nan")) is None

    def test_numpy_scalars(self):
        value = normalize_value("n", np.int64(5))
        assert value == 5 and type(value) is int
        assert type(normalize_value("x", np.float64(1.5))) is float

    def test_bools_untouched(self):
        assert normalize_value("prob_flag", True) is True


class TestRender:
    def envelope(self):
        return build_envelope(
            "bern-bf",
            {"y": 3, "n": 12},
            [
                {"y": 3, "log_bf10": -0.3713, "prob_m1": 0.4082, "bf10": math.inf},
                {"y": 4, "log_bf10": 0.25, "prob_m1": 0.5621765},
            ],
            seed={"seed": 1, "stream_id": 0},
            mc_se=[{"log_bf10": 0.01}, {"log_bf10": 0.02}],
        )

    def test_csv_header_and_rows(self):
        text = to_csv(self.envelope())
        lines = text.splitlines()
        assert lines[0] == "y,log_bf10,prob_m1,bf10,mc_se_log_bf10"
        assert len(lines) == 3

    def test_csv_and_json_carry_same_numbers(self):
        envelope = self.envelope()
        rows = list(csv.DictReader(io.StringIO(render(envelope, OutputFormat.CSV))))
        payload = json.loads(render(envelope, "json"))
        for row, record in zip(rows, payload["results"]):
            for key, value in record.items():
                if value is None:
                    assert row[key] == ""
                else:
                    assert float(row[key]) == pytest.approx(float(value), rel=0, abs=0)

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            render(self.envelope(), "xml")
