"""Threshold fidelities and yields for GHZ-state distillation with repetition inner codes."""
from .channel import ChannelParams, parse_fidelity
from .classes import (ClassLimitError, KProfile, SyndromeMultiset,
                      enumerate_multiset_classes, enumerate_profiles)
from .labels import (DimensionError, ErrorLabel, decode_repetition,
                     depolarization_weight, mxor)
from .probability import (ConditionalTable, UndefinedConditionalError,
                          conditional_table, joint_prob, syndrome_prob,
                          weight_enumerator)
from .threshold import (NoThresholdError, ThresholdResult, average_error_rate,
                        find_threshold, lower_bound)
from .yields import (YieldResult, baseline_d1, baseline_d2, compute_yield,
                     entropy, s_x, yield_cl, yield_ms, yield_ss)

__version__ = "0.1.0"

__all__ = [
    "ChannelParams", "ClassLimitError", "ConditionalTable", "DimensionError",
    "ErrorLabel", "KProfile", "NoThresholdError", "SyndromeMultiset",
    "ThresholdResult", "UndefinedConditionalError", "YieldResult",
    "average_error_rate", "baseline_d1", "baseline_d2", "compute_yield",
    "conditional_table", "decode_repetition", "depolarization_weight",
    "entropy", "enumerate_multiset_classes", "enumerate_profiles",
    "find_threshold", "joint_prob", "lower_bound", "mxor", "parse_fidelity",
    "s_x", "syndrome_prob", "weight_enumerator", "yield_cl", "yield_ms",
    "yield_ss",
]
