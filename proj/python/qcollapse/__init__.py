"""Energy accounting for projective collapse in two-qubit measurement schemes.

The heavy lifting lives in the compiled extension; this package re-exports it.
Energies are in natural units (hbar = 1); divide by `planck_h` to read them in
multiples of h.
"""

from qcollapse._core import *  # noqa: F401,F403
from qcollapse._core import __version__  # noqa: F401
