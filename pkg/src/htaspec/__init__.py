"""htaspec: phase-space quarkonium spectroscopy via the half-transform ansatz.

Subpackages by role:

* ``special``    -- real Airy functions and zeros, complex gamma and upper
                    incomplete gamma (compiled kernels when built;
                    ``backend.BACKEND`` names the active lane)
* ``nu``         -- generic Nikiforov-Uvarov eigenvalue machinery
* ``core``       -- Cornell-system types, closed-form level energies, mass
                    spectra, parameter scans
* ``confine1d``  -- 1D linear-confinement Airy solution and normalization
* ``waves``      -- phase-space wave functions, normalization, density grids
* ``fitting``    -- Nelder-Mead parameter fits against measured levels
* ``dataio``     -- JSON dataset schema and the bundled meson tables
* ``cli``        -- the ``htaspec`` command-line tool
"""

from .backend import BACKEND
from .core import (
    CornellParams,
    MesonSystem,
    QuantumState,
    Variant,
    energy_complex,
    energy_real,
    mass_spectrum,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CornellParams",
    "MesonSystem",
    "QuantumState",
    "Variant",
    "energy_real",
    "energy_complex",
    "mass_spectrum",
    "__version__",
]
