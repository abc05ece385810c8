from .loader import (
    ParameterLoadError,
    compute_param_hash,
    load_and_document,
    load_generator_spec,
    load_params,
)
from .params import (
    BorderPeelingParams,
    ClusteringConfig,
    GaussianComponent,
    GeneratorSpec,
    NeighborConfig,
    PeelParams,
    RunConfig,
    SweepConfig,
)
from .runtime import RuntimeSettings

__all__ = [
    "BorderPeelingParams",
    "ClusteringConfig",
    "GaussianComponent",
    "GeneratorSpec",
    "NeighborConfig",
    "ParameterLoadError",
    "PeelParams",
    "RunConfig",
    "RuntimeSettings",
    "SweepConfig",
    "compute_param_hash",
    "load_and_document",
    "load_generator_spec",
    "load_params",
]
