"""Phase-space analysis of the ground-state shape transition in the
two-dimensional U(3) vibron model."""

__version__ = "0.1.0"

from .coherent import PhasePoint, condensate_point  # noqa: E402
from .cp2quad import build_grid, ipr, moment, renyi_wehrl, wehrl  # noqa: E402
from .husimi import CatHusimi, CoherentHusimi, ExactHusimi, make_field  # noqa: E402
from .spectra import ground_state  # noqa: E402
from .variational import cat_equilibrium, cs_equilibrium  # noqa: E402
