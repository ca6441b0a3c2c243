"""Central defaults; each can be overridden with a ``BRAIDROVER_<NAME>`` variable."""

from __future__ import annotations

import os
from dataclasses import dataclass, fields

ENV_PREFIX = "BRAIDROVER_"


@dataclass
class Defaults:
    depth: int = 32
    samples: int = 200
    seed: int = 0
    # words explored by the bounded searches (generic identity test, unsection)
    search_budget: int = 20000


def load_defaults() -> Defaults:
    out = Defaults()
    for f in fields(out):
        raw = os.environ.get(ENV_PREFIX + f.name.upper())
        if raw is not None:
            setattr(out, f.name, int(raw))
    return out


DEFAULTS = load_defaults()
