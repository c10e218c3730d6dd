from pathlib import Path

import pytest

from reprank.attacks import AttackKind
from reprank.base import InputError, ParseError
from reprank.dataset_factory import DatasetType
from reprank.experiment import ExperimentConfig, OutputFormat, build_config, read_config_file
from reprank.independence import TargetMode

DATA_DIR = Path(__file__).parent.parent / "data" / "toy"


def test_read_config_file() -> None:
    assert read_config_file(DATA_DIR / "experiment.conf") == {
        "dataset": "inline",
        "lambda": "0.5",
        "iterations": "8",
        "mitigation": "multi:gender,age",
    }


def test_read_config_file_dashes_and_comments(tmp_path) -> None:
    path = tmp_path / "run.conf"
    path.write_text("min-group-size = 3  # drop tiny groups\n\n# comment only\n")
    assert read_config_file(path) == {"min_group_size": "3"}


def test_read_config_file_bad_line(tmp_path) -> None:
    path = tmp_path / "run.conf"
    path.write_text("dataset = demo\nlambda 0.5\n")
    with pytest.raises(ParseError, match="expected 'key = value'") as excinfo:
        read_config_file(path)
    assert excinfo.value.line == 2


def test_read_config_file_missing(tmp_path) -> None:
    with pytest.raises(ParseError, match="cannot read config file"):
        read_config_file(tmp_path / "missing.conf")


class TestBuildConfig:
    def test_defaults(self) -> None:
        config = build_config()
        assert config.dataset == DatasetType.DEMO
        assert config.lambda_ == 0.5
        assert config.mitigation == "none"
        assert config.output_format == OutputFormat.JSON

    def test_file_values(self) -> None:
        config = build_config(read_config_file(DATA_DIR / "experiment.conf"))
        assert config.dataset == DatasetType.INLINE
        assert config.iterations == 8
        assert config.mitigation_spec().attributes == ("gender", "age")

    def test_command_line_wins(self) -> None:
        file_values = read_config_file(DATA_DIR / "experiment.conf")
        config = build_config(file_values, {"lambda_": 0.3, "iterations": None, "seed": 4})
        assert config.lambda_ == 0.3
        assert config.iterations == 8
        assert config.seed == 4

    def test_lists_from_strings(self) -> None:
        config = build_config(
            {"attack": "love_hate, hate_love", "attack_proportion": "0.1,0.2", "attributes": "age"}
        )
        assert config.attack == (AttackKind.LOVE_HATE, AttackKind.HATE_LOVE)
        assert config.attack_proportion == (0.1, 0.2)
        assert config.attributes == ("age",)

    def test_format_alias(self) -> None:
        assert build_config({"format": "csv"}).output_format == OutputFormat.CSV

    @pytest.mark.parametrize(("value", "expected"), [("true", False), ("no", True)])
    def test_no_attacker_attributes_from_file(self, tmp_path, value: str, expected: bool) -> None:
        path = tmp_path / "run.conf"
        path.write_text(f"no-attacker-attributes = {value}\n")
        assert build_config(read_config_file(path)).attackers_in_partitions is expected

    def test_no_attacker_attributes_bad_value(self) -> None:
        with pytest.raises(InputError, match="no_attacker_attributes"):
            build_config({"no_attacker_attributes": "sometimes"})

    def test_unknown_key(self) -> None:
        with pytest.raises(InputError, match="Unknown config keys: colour"):
            build_config({"colour": "blue"})

    @pytest.mark.parametrize(
        "values",
        [{"lambda": "2"}, {"mitigation": "single:gender,age"}, {"attack": "bribe"}],
    )
    def test_invalid_values(self, values: dict[str, str]) -> None:
        with pytest.raises(InputError, match="Invalid configuration"):
            build_config(values)


class TestExperimentConfig:
    def test_fixed_iterations(self) -> None:
        cfg = ExperimentConfig(iterations=8, lambda_=0.4).engine_config()
        assert cfg.exact_iterations
        assert cfg.max_iterations == 8
        assert cfg.lambda_ == 0.4

    def test_convergence_settings(self) -> None:
        cfg = ExperimentConfig(tol=1e-6, max_iterations=50).engine_config()
        assert not cfg.exact_iterations
        assert cfg.convergence_tol == 1e-6
        assert cfg.max_iterations == 50

    def test_recentring_options(self) -> None:
        config = ExperimentConfig(recentring=TargetMode.GLOBAL, ddof=0, mitigation="single:age")
        assert config.mitigation_spec().options.variant == "global-targets/ddof=0"

    def test_sweep_methods(self) -> None:
        plain = ExperimentConfig()
        assert [m.label for m in plain.sweep_methods()] == ["aa", "reputation"]
        mitigated = ExperimentConfig(mitigation="multi:gender,age")
        assert [m.label for m in mitigated.sweep_methods()] == [
            "aa",
            "reputation",
            "reputation+multi:gender,age",
        ]

    def test_proportions_and_seeds(self) -> None:
        config = ExperimentConfig(seed=3, attack_runs=2)
        assert config.proportions()[0] == 0.05
        assert config.seeds() == [3, 4]
        assert ExperimentConfig(attack_proportion=(0.2,)).proportions() == (0.2,)

    def test_echo_uses_file_keys(self) -> None:
        echo = ExperimentConfig(lambda_=0.25).echo()
        assert echo["lambda"] == 0.25
        assert echo["format"] == "json"
        assert echo["dataset"] == "demo"
