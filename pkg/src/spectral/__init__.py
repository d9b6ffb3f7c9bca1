"""傅里叶核心：网格、变换、磨光、投影与范数"""

from .dealias import ProductGrid
from .field import SpectralField
from .grid import TorusGrid, fft_friendly_size, product_grid_size
from .operators import (
    derivative_norm_sq,
    divergence,
    gradient,
    hermitian_defect,
    inner,
    jacobian,
    laplacian,
    leray_project,
    linf_norm,
    mollify,
    pad_coeffs,
    physical_on,
    random_field,
    sobolev_norm_sq,
    to_physical,
    to_spectral,
    truncate,
    unpad_coeffs,
)
