"""clifft: two-sided Clifford Fourier transforms in Cl(p,q).

The package builds up from a dense Cl(p,q) kernel (algebra), through square
roots of -1 (roots) and the plus/minus signal split (split), to sampled
multivector fields (field), the two-sided transform engine with a brute
force oracle and an FFT path (transform), and the eight-term convolution
identity (convolution).  A property-check runner (suite) and a CLI (cli)
sit on top.
"""

from .algebra import (
    Algebra,
    Multivector,
    blade_product,
    exp_root,
    geometric_product,
    grade_project,
    inverse,
    modulus_squared,
    outer_product,
    principal_reverse,
    random_multivector,
    reverse,
    scalar_part,
    scalar_product,
)
from .errors import (
    ClifftError,
    FieldFormatError,
    GeometryMismatchError,
    NoCanonicalRootError,
    NonCyclicGridError,
    NotARootError,
    OffManifoldError,
    SignatureMismatchError,
    SingularElementError,
)
from .field import (
    GridGeometry,
    MultivectorField,
    constant_field,
    delta_field,
    field_inner_product,
    field_norm,
    field_scalar_inner,
    gaussian_field,
    generate,
    load_field,
    random_field,
    save_field,
)
from .roots import (
    RingClass,
    RootOfMinusOne,
    classify_algebra,
    conjugate_root,
    root_family_n2,
    sample_root,
    verify_root,
)
from .split import SplitPair, split_commuting, split_field, split_pm
from .transform import (
    CftPlan,
    PhasePartition,
    apply_kernel,
    cft_forward,
    cft_forward_direct,
    cft_forward_fft,
    cft_inverse,
    make_plan,
    spectral_derivative,
    spectral_moment,
)
from .convolution import (
    ConvolutionReport,
    cft_exp_sine,
    cft_sine_exp,
    commutator,
    convolution_rhs,
    convolve,
    verify_convolution_theorem,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
