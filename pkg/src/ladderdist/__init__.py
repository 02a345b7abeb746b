"""Symbolic distinction verdicts for standard modules and ladder representations.

The top-level namespace re-exports the objects most scripts need; the
submodules hold the rest.
"""

from .dsl import format_multisegment, format_universe, parse_multisegment, parse_universe
from .engine import (
    DistinctionReport,
    classify,
    classify_ladder,
    classify_standard,
    deriv_consistency_check,
    key_lemma_check,
    matching_involutions,
    mult_one_bound,
    stratum_hom_bound,
    strata,
)
from .errors import (
    LadderDistError,
    NotALadderError,
    ParseError,
    SegmentError,
    SoundnessError,
    UndefinedGammaError,
    UniverseError,
)
from .kernel import BACKEND
from .multisegment import (
    Multisegment,
    Realization,
    canonicalize,
    derivative_set,
    is_conjugate_selfdual,
    is_ladder,
    is_proper_ladder,
    kernel_modules,
    ladder_shape,
    proper_ladder_decomposition,
)
from .segments import EMPTY, ZERO, Segment, classify_segment, jacquet_segment
from .universe import Line, Tower, Universe, UniverseBuilder, make_universe
from .verdict import NO, UNKNOWN, YES, Verdict
from .weyl import CosetInvolution, enumerate_W2

__version__ = "0.1.0"
