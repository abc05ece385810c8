from .kernels import local_scaled_kernel
from .lemma import expected_influence_bin_average, expected_influence_curve, expected_influence

__all__ = ["expected_influence_bin_average", "expected_influence_curve", "expected_influence", "local_scaled_kernel"]
