"""Budget-constrained random graph process: python surface over the C++ core."""

from _bcgp import *  # noqa: F401,F403
from _bcgp import __doc__  # noqa: F401
