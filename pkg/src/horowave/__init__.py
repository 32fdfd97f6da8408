"""Harmonic analysis on the Poincare disk.

Geometry of the SU(1,1) action, Helgason waves and spherical functions,
the Helgason-Fourier transform on sampled fields, and the reconstruction
of a wave as a regularized superposition of spherical functions centered
along a horocycle, with a Euclidean Bessel-function baseline.
"""
from .errors import (
    ConfigError,
    HorowaveError,
    NotRadial,
    QuadratureUnderResolved,
    SpectralSingularity,
    SpectralTruncation,
    SupportOverflow,
)
from .geometry import (
    BoundaryPoint,
    DiskPoint,
    GroupElement,
    Horocycle,
    IwasawaFactors,
    act,
    busemann,
    cartan_norm,
    geodesic_distance,
    horocycle_coordinates,
    horocycle_point,
    horocycle_through,
    iwasawa,
    nilpotent_flow,
)
from .tapers import TaperSpec
from .waves import (
    CONVENTION,
    SpectralConvention,
    harish_chandra_c,
    helgason_wave,
    plancherel_density,
    spherical,
    spherical_radial,
    xi_function,
)
from .euclid import PlanePoint, bessel_wave, line_moire, plane_wave
from .transform import (
    GridSpec,
    SampledField,
    SpectralField,
    coarea_profile,
    forward,
    forward_at,
    horocycle_integral,
    inverse,
    lemma_check,
    spherical_transform,
)
from .moire import (
    LambdaWindow,
    MoireReport,
    convergence_study,
    kappa_h,
    moire_integral,
    moire_sum_discrete,
    moire_weak,
    phase_correlation,
    reduction_paths,
)

__version__ = "0.1.0"
