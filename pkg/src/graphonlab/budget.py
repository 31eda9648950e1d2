"""Work budgets for enumeration and contraction engines.

Every budgeted operation takes an optional explicit budget argument.  When the
argument is None, the GRAPHONLAB_BUDGET environment variable (a single number
applied to every knob) wins over the per-operation default.
"""

from __future__ import annotations

import os

ENV_VAR = "GRAPHONLAB_BUDGET"


def resolve_budget(explicit: float | None, default: float) -> float:
    if explicit is not None:
        return float(explicit)
    raw = os.environ.get(ENV_VAR)
    if raw is not None:
        try:
            return float(raw)
        except ValueError:
            raise ValueError(f"{ENV_VAR} must be numeric, got {raw!r}") from None
    return float(default)
