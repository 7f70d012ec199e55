from .experiment import (ALGORITHMS, DEFAULTS, ExperimentConfig, FeasibilityWarning,
                         RunRecord, SummaryRow, SummaryTable, execute_run,
                         run_experiment, summarize)
from .io import emit_summary, emit_trace, read_summary, read_trace
from .oracle import ConditioningError, closed_form_3user

__all__ = ["ALGORITHMS", "DEFAULTS", "ExperimentConfig", "FeasibilityWarning",
           "RunRecord", "SummaryRow", "SummaryTable", "execute_run", "run_experiment",
           "summarize", "emit_summary", "emit_trace", "read_summary", "read_trace",
           "ConditioningError", "closed_form_3user"]
