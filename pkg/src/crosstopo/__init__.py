"""Exact verification of cross-topology results on the rational unit square."""

from .exactset import (
    Box,
    Interval,
    Point,
    SeqSpec,
    SeqTrace,
    Segment,
    SetDesc,
    SinglePoint,
    TailFormula,
    UndecidedError,
    ValidationError,
    closed,
    constant,
    hseg,
    is_tau_closed,
    is_tau_open,
    open_,
    pt,
    unit_square,
    vseg,
)
from .gammatop import (
    COMPLEMENT,
    DIRECT,
    gamma_limit,
    is_gamma_compact,
    is_gamma_open,
    local_coincidence_neighborhood,
    verify_gamma_discrete,
)

__version__ = "0.1.0"
