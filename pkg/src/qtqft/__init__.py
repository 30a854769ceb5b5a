"""Exact weighted TQFT from Quot schemes on Grassmannians."""

from .fusion import (
    QClass,
    QuantumRing,
    counit,
    giambelli_expand,
    poincare_pair,
    quantum_pieri,
    quantum_product,
    ring,
    sigma,
    structure_table,
)
from .laurent import LaurentInt
from .partitions import BoxContext, InvalidPartition, complement, enumerate_partitions, size
from .spectrum import (
    SpectralPoint,
    closed_invariant_spectral,
    coupling_a,
    holla_spectral,
    schur_eval,
    spectral_points,
    vand,
    verlinde_sine,
)
from .tqft import (
    IntegrityError,
    SurfaceSignature,
    TqftTensor,
    compose,
    degree_element,
    eta_class,
    handle_element,
    holla_exact,
    integrate,
    slot_multiply,
    slot_pushforward,
    verlinde_exact,
    weighted_map,
    witten_map,
)

__version__ = "0.1.0"
