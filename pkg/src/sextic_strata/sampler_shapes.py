"""Normal-form cell data for the samplers.

Cells forced to zero beyond the degree grid (normal position), and cells
holding forced constants.  The X4 entries depend on the sampled case and
are added by the sampler itself.
"""

from __future__ import annotations

from typing import Dict, Set, Tuple

from .strata import StratumLabel

Cell = Tuple[int, int]

FORCED_ZEROS: Dict[StratumLabel, Set[Cell]] = {
    StratumLabel.X0: set(),
    StratumLabel.X1: set(),
    StratumLabel.X2: {(0, 3), (1, 3)},
    StratumLabel.X3: set(),          # (0,2), (0,3) are grid-forced already
    StratumLabel.X4: set(),          # per-case, see sampler
    StratumLabel.X5: set(),
}

FORCED_CONSTANTS: Dict[StratumLabel, Dict[Cell, int]] = {
    StratumLabel.X0: {},
    StratumLabel.X1: {},
    StratumLabel.X2: {},
    StratumLabel.X3: {},
    StratumLabel.X4: {},             # case i adds (0,2) -> 1
    StratumLabel.X5: {},
}
