"""negcone - Hurewicz images in the negative cone of C2-equivariant coefficients."""

from importlib.metadata import PackageNotFoundError, version  # pragma: no cover

try:
    # Change here if project is renamed and does not equal the package name
    dist_name = __name__
    __version__ = version(dist_name)
except PackageNotFoundError:  # pragma: no cover
    __version__ = "unknown"
finally:
    del version, PackageNotFoundError

# Import main operations for easier access
from negcone.arith import psi, v2
from negcone.classification import (
    classify_fil0,
    hurewicz_ha,
    hurewicz_hf2,
    hurewicz_hz,
    imj_data,
    longest_diff_data,
    translate_to_stunted,
    zero_line,
)
from negcone.hurwitz_radon import hurwitz_radon_family, verify_family
from negcone.lambda_algebra import adem_reduce, differential, ext_sphere_chart
from negcone.stunted import StuntedSpectrum, ext_stunted_chart

__all__ = [
    "psi",
    "v2",
    "classify_fil0",
    "hurewicz_ha",
    "hurewicz_hf2",
    "hurewicz_hz",
    "imj_data",
    "longest_diff_data",
    "translate_to_stunted",
    "zero_line",
    "hurwitz_radon_family",
    "verify_family",
    "adem_reduce",
    "differential",
    "ext_sphere_chart",
    "StuntedSpectrum",
    "ext_stunted_chart",
]
