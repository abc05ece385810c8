"""Utilities for loading border-peeling configuration from YAML or JSON."""

from __future__ import annotations

import hashlib
import json
from collections.abc import Mapping, MutableMapping
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ValidationError
from ruamel.yaml import YAML

from ..errors import ConfigurationError
from .params import BorderPeelingParams, GeneratorSpec

_yaml = YAML(typ="safe")
_yaml.default_flow_style = False


class ParameterLoadError(ConfigurationError):
    """Raised when configuration files cannot be parsed or validated."""


def _normalise(obj: Any) -> Any:
    """Convert nested Pydantic/complex objects to plain python for hashing."""

    if isinstance(obj, BaseModel):
        return _normalise(json.loads(obj.model_dump_json(by_alias=True)))
    if isinstance(obj, dict):
        return {key: _normalise(value) for key, value in sorted(obj.items())}
    if isinstance(obj, list):
        return [_normalise(value) for value in obj]
    return obj


def compute_param_hash(params: BaseModel | dict[str, Any]) -> str:
    """Return a deterministic SHA256 hash for the given configuration."""

    normalized = _normalise(params)
    payload = json.dumps(normalized, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def _convert_to_builtin(obj: Any) -> Any:
    if isinstance(obj, MutableMapping):
        return {str(key): _convert_to_builtin(value) for key, value in obj.items()}
    if isinstance(obj, list):
        return [_convert_to_builtin(value) for value in obj]
    return obj


def _read_mapping(path: Path) -> dict[str, Any]:
    try:
        text = path.read_text(encoding="utf-8")
        data = json.loads(text) if path.suffix.lower() == ".json" else _yaml.load(text)
    except Exception as exc:  # pragma: no cover - ruamel/json provide rich errors
        raise ParameterLoadError(f"Failed to parse {path.name}: {exc}", path=str(path)) from exc
    if not isinstance(data, MutableMapping):
        raise ParameterLoadError("Parameter file must define a mapping at the top level")
    return _convert_to_builtin(data)


def _merge_dicts(base: dict[str, Any], override: Mapping[str, Any]) -> dict[str, Any]:
    result: dict[str, Any] = {key: _convert_to_builtin(value) for key, value in base.items()}
    for key, value in override.items():
        if key in result and isinstance(result[key], MutableMapping) and isinstance(value, Mapping):
            result[key] = _merge_dicts(result[key], value)
        else:
            result[key] = _convert_to_builtin(value)
    return result


def _apply_env_overrides(
    data: dict[str, Any],
    env: Mapping[str, str],
    prefix: str,
) -> dict[str, Any]:
    """Apply ``BP_SECTION__FIELD=value`` overrides; values are parsed as YAML scalars."""

    result = {key: _convert_to_builtin(value) for key, value in data.items()}
    for key, raw_value in env.items():
        if not key.startswith(prefix):
            continue
        parts = [segment.lower() for segment in key[len(prefix) :].split("__") if segment]
        # single-segment BP_* variables (BP_THREADS, BP_LOG_LEVEL) are runtime settings
        if len(parts) < 2:
            continue
        target = result
        for segment in parts[:-1]:
            existing = target.get(segment)
            if not isinstance(existing, dict):
                existing = {}
            target[segment] = existing
            target = existing
        try:
            parsed_value = _yaml.load(raw_value)
        except Exception:  # pragma: no cover - fall back to the raw string
            parsed_value = raw_value
        target[parts[-1]] = _convert_to_builtin(parsed_value)
    return result


def load_params(
    path: str | Path | None = None,
    *,
    override: str | Path | None = None,
    env: Mapping[str, str] | None = None,
    env_prefix: str = "BP_",
) -> tuple[BorderPeelingParams, str]:
    """Load a parameter file (or defaults) and return the parsed params and hash."""

    data: dict[str, Any] = {}
    if path is not None:
        path = Path(path)
        if not path.exists():
            raise ParameterLoadError(f"Parameter file {path} does not exist", path=str(path))
        data = _read_mapping(path)
    if override is not None:
        override_path = Path(override)
        if not override_path.exists():
            raise ParameterLoadError(f"Override file {override_path} does not exist")
        data = _merge_dicts(data, _read_mapping(override_path))
    if env:
        data = _apply_env_overrides(data, env, env_prefix)

    try:
        params = BorderPeelingParams.model_validate(data)
    except ValidationError as exc:
        raise ParameterLoadError(str(exc)) from exc

    return params, compute_param_hash(params)


def load_generator_spec(path: str | Path) -> GeneratorSpec:
    """Load a generator spec from JSON or YAML.

    Schema::

        kind: gaussian-mixture | uniform-interval
        seed: int
        components: [{mean: [x, y], covariance: 1.0 | [vx, vy] | [[..], [..]], count: int}]
        low: float, high: float, n: int      # uniform-interval only
    """

    path = Path(path)
    if not path.exists():
        raise ParameterLoadError(f"Generator spec {path} does not exist", path=str(path))
    data = _read_mapping(path)
    try:
        return GeneratorSpec.model_validate(data)
    except ValidationError as exc:
        raise ParameterLoadError(str(exc)) from exc


def load_and_document(path: str | Path) -> str:
    """Return a human readable summary of the configuration."""

    params, param_hash = load_params(path)
    peel = params.peeling
    lines = ["Border-Peeling Parameters", f"hash: {param_hash}", ""]
    lines.append("Peeling:")
    lines.append(f"  - k: {peel.k}")
    lines.append(f"  - C: {peel.c}")
    lines.append(f"  - peel_fraction: {peel.peel_fraction}")
    lam = "estimated (mean + std of kNN distances)" if peel.lambda_ is None else peel.lambda_
    lines.append(f"  - lambda: {lam}")
    lines.append(f"  - max_iterations: {peel.max_iterations}")
    lines.append(f"  - termination_sensitivity: {peel.termination_sensitivity}")

    lines.append("")
    lines.append("Neighbors:")
    lines.append(f"  - backend: {params.neighbors.backend} (metric {params.neighbors.metric})")

    lines.append("")
    size = params.clustering.min_cluster_size
    lines.append("Clustering:")
    lines.append(f"  - min_cluster_size: {size if size is not None else '10 (n<1000) / 30'}")

    if params.generator is not None:
        lines.append("")
        lines.append("Generator:")
        lines.append(f"  - kind: {params.generator.kind} (seed {params.generator.seed})")
        for idx, component in enumerate(params.generator.components):
            lines.append(f"  - component {idx}: mean={component.mean}, count={component.count}")

    return "\n".join(lines)


__all__ = [
    "ParameterLoadError",
    "compute_param_hash",
    "load_and_document",
    "load_generator_spec",
    "load_params",
]
