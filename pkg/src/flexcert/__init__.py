"""flexcert: exact-arithmetic rigidity/flexibility analysis.

Decides, via power-series certificates over exact rationals, whether a
given solution of a polynomial system is isolated or extends to an
analytic family, and applies this to bar-joint frameworks through their
edge-length equations.
"""

from .certify import (
    FLEXIBLE,
    INCONCLUSIVE,
    RIGID,
    AnalysisReport,
    AnalyzeConfig,
    analyze_system,
    replay_certificate,
)
from .quadsys import (
    BaseOperators,
    GeneralPolySystem,
    QuadraticSystem,
    ReductionMap,
    linearize,
    reduce_degree,
    validate_and_symmetrize,
)
from .rigidity import Framework, analyze_framework, auto_pin, framework
from .series import SeriesCoefficients

__all__ = [
    "FLEXIBLE",
    "INCONCLUSIVE",
    "RIGID",
    "AnalysisReport",
    "AnalyzeConfig",
    "BaseOperators",
    "Framework",
    "GeneralPolySystem",
    "QuadraticSystem",
    "ReductionMap",
    "SeriesCoefficients",
    "analyze_framework",
    "analyze_system",
    "auto_pin",
    "framework",
    "linearize",
    "reduce_degree",
    "replay_certificate",
    "validate_and_symmetrize",
]

__version__ = "0.1.0"
