"""Junction-count sweeps and the rule-of-thumb survey."""

from .reporter import SweepReporter
from .runner import SweepError, rule_of_thumb_band, survey, sweep_t2

__all__ = ["sweep_t2", "rule_of_thumb_band", "survey", "SweepError", "SweepReporter"]
