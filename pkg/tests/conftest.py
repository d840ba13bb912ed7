import numpy as np
import pytest

from multiraman.dynamics import CouplingVectors, DetuningSet
from multiraman.oracle import integrate, interaction_drive, lab_drive, LabFrameSpec


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Trigger numba compilation once so timed tests measure physics, not jit."""
    c = CouplingVectors([0.1 + 0j, 0.05j], [0.1 + 0j, 0.05])
    d = DetuningSet(Delta=50.0, delta=0.01)
    psi = np.zeros(4, dtype=complex)
    psi[0] = 1.0
    integrate(interaction_drive(c, d), psi, 0.05)
    spec = LabFrameSpec.from_detunings(omega10=10.0, omega20=100.0, Delta=5.0,
                                       delta=0.0, Omega_p=0.5, Omega_s=0.5)
    integrate(lab_drive(spec), np.array([1, 0, 0], dtype=complex), 0.05)
