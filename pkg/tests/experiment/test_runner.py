from pathlib import Path

import pytest

from reprank.base import ExperimentError, InputError
from reprank.experiment import build_config, quality_eval, run

DATA_DIR = Path(__file__).parent.parent / "data" / "toy"
ITEMS = ("i1", "i2", "i3", "i4", "i5")


def _inline(**values):
    return build_config(
        {
            "dataset": "inline",
            "ratings": DATA_DIR / "ratings.csv",
            "users": DATA_DIR / "attributes.csv",
            "iterations": 8,
            **values,
        }
    )


def _partition(report, stage: str, attributes: list[str]):
    for partition in report.partitions:
        if partition.stage == stage and partition.attributes == attributes:
            return partition
    raise AssertionError(f"no {stage} partition on {attributes}")


class TestRun:
    def test_plain_engine(self) -> None:
        report = run(_inline())
        assert [report.rankings[i] for i in ITEMS] == pytest.approx(
            (0.8071, 0.9026, 0.8721, 0.6272, 0.5052), abs=5e-5
        )
        assert report.tau_vs_aa == pytest.approx(1.0)
        assert report.metadata.iterations == 8
        assert report.metadata.method == "reputation"
        assert list(report.marginal_disparity) == ["engine"]

    def test_partitions_reported(self) -> None:
        report = run(_inline())
        assert [(p.stage, p.attributes) for p in report.partitions] == [
            ("engine", ["gender"]),
            ("engine", ["age"]),
            ("engine", ["gender", "age"]),
        ]
        gender = _partition(report, "engine", ["gender"])
        assert [g.label for g in gender.groups] == ["A", "B"]
        assert gender.cells[0].delta == pytest.approx(0.0565, abs=5e-4)
        assert gender.cells[0].p_value is not None

    def test_multi_attribute_mitigation(self) -> None:
        report = run(_inline(mitigation="multi:gender,age"))
        assert report.metadata.method == "reputation+multi:gender,age"
        assert report.metadata.recentring_variant == "min-targets/ddof=1"
        mitigated = [p for p in report.partitions if p.stage == "mitigated"]
        assert len(mitigated) == 3
        means = [g.mean for p in mitigated for g in p.groups]
        assert means == pytest.approx([0.8840] * len(means), abs=1e-4)
        assert max(means) - min(means) <= 1e-12
        for partition in mitigated:
            for cell in partition.cells:
                assert abs(cell.delta) <= 1e-10
                assert not cell.reject
        assert max(report.marginal_disparity["mitigated"].values()) <= 1e-10
        assert report.marginal_disparity["engine"]["gender"] == pytest.approx(0.0565, abs=5e-4)

    def test_reported_attributes(self) -> None:
        report = run(_inline(attributes="age"))
        assert [p.attributes for p in report.partitions] == [["age"]]

    def test_no_timestamps_by_default(self) -> None:
        report = run(_inline())
        assert report.metadata.started_at is None
        assert report.metadata.finished_at is None

    def test_timestamps(self) -> None:
        report = run(_inline(timestamps=True))
        assert report.metadata.started_at is not None
        assert report.metadata.finished_at >= report.metadata.started_at

    def test_deterministic(self) -> None:
        config = _inline(mitigation="sequential:gender,age")
        assert run(config) == run(config)

    def test_attack_sweep(self) -> None:
        report = run(
            build_config(
                {
                    "attack": "love_hate",
                    "attack_proportion": "0.5",
                    "side_set_size": 2,
                    "mitigation": "single:gender",
                }
            )
        )
        assert [row.method for row in report.robustness] == [
            "aa",
            "reputation",
            "reputation+single:gender",
        ]
        assert all(row.n_attackers == 3 for row in report.robustness)
        assert report.robustness_errors == []

    def test_attack_failures_listed(self) -> None:
        report = run(
            build_config(
                {"attack": "hate_love", "attack_proportion": "0.5", "attack_target": "nope"}
            )
        )
        assert report.robustness == []
        assert len(report.robustness_errors) == 1

    def test_missing_ratings_file(self) -> None:
        with pytest.raises(ExperimentError, match="ingest") as excinfo:
            run(build_config({"dataset": "inline"}))
        assert excinfo.value.stage == "ingest"

    def test_unknown_mitigation_attribute(self) -> None:
        with pytest.raises(ExperimentError, match="Unknown attribute: height") as excinfo:
            run(build_config({"mitigation": "multi:gender,height"}))
        assert excinfo.value.stage == "ingest"


class TestQuality:
    def test_split_report(self) -> None:
        quality = quality_eval(build_config({"split": 0.2, "seed": 1}))
        assert quality.test_ratings == 6
        assert quality.test_fraction == 0.2
        assert 0 <= quality.excluded_test_ratings <= 6
        assert quality.rmse > 0
        assert quality.rmse_raw == pytest.approx(5 * quality.rmse)
        assert -1.0 <= quality.tau_vs_aa <= 1.0

    def test_run_includes_quality(self) -> None:
        assert run(build_config()).quality is None
        assert run(build_config({"split": 0.1})).quality is not None

    def test_requires_split(self) -> None:
        with pytest.raises(InputError, match="split fraction"):
            quality_eval(build_config())
