"""Szegő cocycles, periodic and random CMV spectra, and Lee-Yang zeros of Ising chains."""

from .arcs import ArcSet, ZeroSet, directed_hausdorff, hausdorff_distance
from .cmv import (
    BandStructure,
    DiscriminantPoly,
    Gap,
    assemble_cmv_rows,
    band_structure,
    cmv_matrix,
    constant_spectrum,
    discriminant_poly,
    discriminant_zeros,
    finite_cmv_eigenvalues,
    normalized_discriminant,
    ring_cmv_eigenvalues,
    spectrum_membership,
)
from .cocycle import (
    GrowthTrace,
    LyapunovEstimate,
    Splitting,
    cone_orbit,
    cone_orbit_check,
    growth_trace,
    hyperbolicity_certificate,
    lyapunov_estimate,
    product,
    splitting_periodic,
)
from .core import (
    Angle,
    CirclePoint,
    ConeConstants,
    Mat2C,
    Verblunsky,
    VerblunskyWord,
    cone_constants,
    conjugated_matrix,
    gap_arc,
    principal_root,
    transfer_matrix,
)
from .dos import (
    DensityOfStates,
    GapLabelReport,
    dos_from_zeros,
    fit_R,
    gap_labels,
    thouless_lyapunov,
)
from .ensemble import (
    SampledSequence,
    SingleSiteMeasure,
    almost_sure_spectrum_nonneg,
    convergence_experiment,
    periodic_union_spectrum,
    sample_window,
    window_zero_set,
)
from .errors import DomainError, NumericalFailureError
from .ising import (
    IsingChain,
    PartitionPoly,
    SpinConfig,
    couplings_to_verblunsky,
    energy,
    leeyang_zeros,
    partition_bruteforce,
    partition_polynomial,
    thermodynamic_scan,
    zero_free_arc,
)

__version__ = "0.1.0"
