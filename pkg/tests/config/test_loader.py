from __future__ import annotations

from pathlib import Path

import pytest
from ruamel.yaml import YAML

from Border_Peeling.config.loader import (
    ParameterLoadError,
    compute_param_hash,
    load_and_document,
    load_generator_spec,
    load_params,
)
from Border_Peeling.config.params import BorderPeelingParams
from Border_Peeling.errors import ConfigurationError, exit_code_for

DEFAULTS = Path(__file__).resolve().parents[2] / "configs" / "params_default.yml"


def test_load_params_success(minimal_config_file: Path) -> None:
    params, param_hash = load_params(minimal_config_file)
    assert isinstance(params, BorderPeelingParams)
    assert params.peeling.k == 10
    assert params.peeling.c == 2.5
    assert params.neighbors.backend == "brute"
    assert params.peeling.termination_sensitivity == 3.0
    assert param_hash == compute_param_hash(params)


def test_no_path_gives_defaults() -> None:
    params, _ = load_params()
    assert params == BorderPeelingParams()


def test_shipped_defaults_match_model_defaults() -> None:
    params, param_hash = load_params(DEFAULTS)
    assert params.peeling == BorderPeelingParams().peeling
    assert param_hash == compute_param_hash(BorderPeelingParams())


def test_load_params_missing_file(tmp_path: Path) -> None:
    with pytest.raises(ParameterLoadError) as excinfo:
        load_params(tmp_path / "missing.yml")
    assert "does not exist" in str(excinfo.value)


def test_load_params_malformed_yaml(tmp_path: Path) -> None:
    malformed = tmp_path / "malformed.yml"
    malformed.write_text("peeling: [unbalanced", encoding="utf-8")
    with pytest.raises(ParameterLoadError) as excinfo:
        load_params(malformed)
    assert "Failed to parse" in str(excinfo.value)


def test_top_level_must_be_mapping(tmp_path: Path) -> None:
    listing = tmp_path / "list.yml"
    listing.write_text("- 1\n- 2\n", encoding="utf-8")
    with pytest.raises(ParameterLoadError, match="mapping"):
        load_params(listing)


@pytest.mark.parametrize(
    ("fixture", "fragment"),
    [
        ("invalid_type_config_file", "k"),
        ("invalid_range_config_file", "peel_fraction"),
        ("unknown_field_config_file", "bandwidth"),
    ],
)
def test_invalid_files_are_configuration_errors(
    fixture: str, fragment: str, request: pytest.FixtureRequest
) -> None:
    path: Path = request.getfixturevalue(fixture)
    with pytest.raises(ParameterLoadError) as excinfo:
        load_params(path)
    assert fragment in str(excinfo.value)
    assert isinstance(excinfo.value, ConfigurationError)
    assert exit_code_for(excinfo.value) == 2


def test_load_params_override_missing_file(minimal_config_file: Path, tmp_path: Path) -> None:
    with pytest.raises(ParameterLoadError) as excinfo:
        load_params(minimal_config_file, override=tmp_path / "override.yml")
    assert "Override file" in str(excinfo.value)


def test_load_params_with_override(
    minimal_config_file: Path, tmp_path: Path, yaml_loader: YAML
) -> None:
    override = tmp_path / "override.yml"
    with override.open("w", encoding="utf-8") as handle:
        yaml_loader.dump({"peeling": {"peel_fraction": 0.2}}, handle)
    params, _ = load_params(minimal_config_file, override=override)
    assert params.peeling.peel_fraction == 0.2
    assert params.peeling.k == 10


def test_json_parameter_file(tmp_path: Path) -> None:
    path = tmp_path / "params.json"
    path.write_text('{"peeling": {"k": 7, "lambda": 1.25}}', encoding="utf-8")
    params, _ = load_params(path)
    assert params.peeling.k == 7
    assert params.peeling.lambda_ == 1.25


def test_env_overrides_take_precedence(minimal_config_file: Path) -> None:
    env = {
        "BP_PEELING__K": "12",
        "BP_CLUSTERING__MIN_CLUSTER_SIZE": "4",
        "BP_THREADS": "8",
        "OTHER__K": "99",
    }
    params, _ = load_params(minimal_config_file, env=env)
    assert params.peeling.k == 12
    assert params.clustering.min_cluster_size == 4


def test_invalid_env_override(minimal_config_file: Path) -> None:
    with pytest.raises(ParameterLoadError):
        load_params(minimal_config_file, env={"BP_PEELING__K": "0"})


def test_hash_is_stable_and_sensitive() -> None:
    base = BorderPeelingParams()
    assert compute_param_hash(base) == compute_param_hash(BorderPeelingParams())
    changed = BorderPeelingParams.model_validate({"peeling": {"k": 21}})
    assert compute_param_hash(base) != compute_param_hash(changed)
    assert compute_param_hash({"b": 1, "a": 2}) == compute_param_hash({"a": 2, "b": 1})


def test_load_generator_spec(generator_config_file: Path) -> None:
    spec = load_generator_spec(generator_config_file)
    assert spec.kind == "gaussian-mixture"
    assert spec.seed == 11
    assert [component.count for component in spec.components] == [40, 40]


def test_load_generator_spec_missing(tmp_path: Path) -> None:
    with pytest.raises(ParameterLoadError, match="does not exist"):
        load_generator_spec(tmp_path / "nope.yml")


def test_load_and_document(minimal_config_file: Path) -> None:
    summary = load_and_document(minimal_config_file)
    assert summary.startswith("Border-Peeling Parameters")
    assert "  - k: 10" in summary
    assert "estimated" in summary
    assert "backend: brute" in summary
