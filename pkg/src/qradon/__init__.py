"""qradon: tomographic sampling, positive transforms, and state reconstruction.

Quantum states are sampled through indexed operator families (group
representations in particular), turned into probability data (tomograms) by a
positive transform, and reconstructed through dual families or frames.  The
classical Radon transform / filtered backprojection pair is included both as
a standalone tool and as the bridge between Wigner functions and quadrature
tomograms.
"""

from . import errors
from ._kernels import HAVE_COMPILED, backend_name
from .fock import (
    FockSpace,
    GridTomogram,
    WHDirection,
    WHReconstruction,
    analytic_oscillator_tomogram,
    displacement,
    fock_operators,
    fock_state,
    grid_tomogram,
    hermite_functions,
    quadrature_operator,
    reconstruct_wh,
    smeared_character_wh,
    tail_mass,
    wigner,
    wigner_radon_consistency,
)
from .groups import (
    DiscreteTomogram,
    FiniteGroup,
    UnitaryRep,
    adapted_check_and_reconstruct,
    builtin_group,
    character_from_tomogram,
    cyclic_group,
    dihedral_group,
    discrete_tomogram,
    group_from_json,
    group_to_json,
    heisenberg_group,
    pauli_group,
    pauli_phase_z_subgroup,
    reconstruct_finite,
    regular_rep,
    rep_tomographic_pair,
    smeared_character,
)
from .linalg import (
    Eigensystem,
    diagonalize_unitary,
    hermitian_eigendecompose,
    psd_min_eigenvalue,
    unitary_exp,
)
from .pairs import (
    DualTomographicSet,
    Frame,
    FrameBounds,
    SamplingFunction,
    TomographicSet,
    average_conjugation,
    dual_frame,
    formal_degree,
    frame_bounds,
    frame_trace,
    gram_min_eigenvalue,
    group_frame,
    kernel,
    normalization_check,
    reconstruct,
    reproducing_kernel,
    reproducing_kernel_residual,
    sample,
    schur_residual,
)
from . import radon
from .radon import ImageGrid, Sinogram, inverse_radon
from .spin import (
    EulerAngles,
    SpinAxis,
    axis_operator,
    equivariance_residual,
    haar_grid,
    spin_tomogram,
    state_character,
    su2_reconstruct,
)
from .states import (
    BlochPoint,
    DensityMatrix,
    bloch_density,
    bloch_from_density,
    density_from_json,
    density_to_json,
    random_density,
    trace_distance,
    validate_density,
)

__version__ = "0.1.0"
