"""Numerical lab for mean curvature flow translators on compact symmetric spaces."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    ConvergenceError,
    DomainError,
    NumericalFailure,
    TranslatorLabError,
    Unclassified,
)
from .ode import EndpointEvent, EventTag, IntegratorConfig, SolutionTrace, integrate  # noqa: E402
from .spaces import BoundaryData, RankOneSpace, SpaceKind, boundary_data  # noqa: E402
from .rank1 import (  # noqa: E402
    EndBehavior,
    TranslatorType,
    classify,
    shoot_regular,
    solve_maximal,
    sweep,
)
from .flow import evolve_graph, translator_drift  # noqa: E402
from .hermann import Rank2Model, integral_curve, solve_f_and_v  # noqa: E402
from .estimators import TranslatorClassifier  # noqa: E402

__all__ = [
    "__version__",
    "ConvergenceError",
    "DomainError",
    "NumericalFailure",
    "TranslatorLabError",
    "Unclassified",
    "EndpointEvent",
    "EventTag",
    "IntegratorConfig",
    "SolutionTrace",
    "integrate",
    "BoundaryData",
    "RankOneSpace",
    "SpaceKind",
    "boundary_data",
    "EndBehavior",
    "TranslatorType",
    "classify",
    "shoot_regular",
    "solve_maximal",
    "sweep",
    "evolve_graph",
    "translator_drift",
    "Rank2Model",
    "integral_curve",
    "solve_f_and_v",
    "TranslatorClassifier",
]
