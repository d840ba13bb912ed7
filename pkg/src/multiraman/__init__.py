"""Effective two-level dynamics of multilevel stimulated Raman transitions.

Ground-state pairs of alkali-metal atoms driven by far-detuned pump and
Stokes fields through a manifold of intermediate levels behave as a
two-level system with coupling strength |omega_p . omega_s*| / (2 Delta)
and lightshift (||omega_s||^2 - ||omega_p||^2) / (4 Delta).  This
package computes those quantities from exact angular-momentum geometry,
evolves the amplitudes in closed form, and verifies everything against
brute-force integration of the full Schrodinger equation.
"""

from .angular import HalfInt, triangle_ok, wigner_3j, wigner_6j
from .atoms import (
    AtomSpec,
    FieldSpec,
    LineSpec,
    RamanPair,
    builtin_atoms,
    enumerate_pairs,
    get_atom,
    load_atoms,
    physical_couplings,
    spectrum,
    table_one,
    table_rows,
)
from .dynamics import (
    AmplitudePair,
    CouplingVectors,
    DetuningSet,
    EffectiveTwoLevel,
    RegimeReport,
    effective_rabi,
    envelope,
    evolve_amplitudes,
    evolve_via_chain,
    lightshift,
    mixing_angles,
    regime_check,
)
from .eigensystem import (
    ScaledSystem,
    build_interaction_hamiltonian,
    characteristic_poly,
    dressed_rotation,
    finite_eigenvalues,
    numeric_eigensystem,
    rabi_and_shift_from_eigenvalues,
    scale_system,
    scaled_hamiltonian,
)
from .geometry import (
    AngularMomentumState,
    Branch,
    GeometricVector,
    coupling_vector,
    g_dot_closed,
    g_norm_sq_closed,
    geometric_factor,
    reduced_dipole_from_linewidth,
    triangular,
)
from .oracle import (
    HarmonicHamiltonian,
    IntegrationError,
    LabFrameSpec,
    Trajectory,
    build_lab_hamiltonian,
    compare_with_analytic,
    integrate,
    interaction_drive,
    lab_drive,
)

__version__ = "0.1.0"
