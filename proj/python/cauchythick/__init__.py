"""Simulation and numerical verification toolkit for thick points of the
killed Cauchy process: exact-increment path simulation, the slit-domain Green
function, the planar-Brownian representation with axis local time, occupation
and excursion statistics, and the discrete heavy-tailed walks."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc  # noqa: F401

__version__ = "1.0.0"
