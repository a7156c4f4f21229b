"""Relief-family and filter feature weighting, evaluation criteria and redundancy levels."""

__version__ = "0.1.0"

from .datamodel import (  # noqa: E402
    Dataset,
    FeatureSchema,
    FeatureWeights,
    ParseError,
    UsageError,
    build_dataset,
    load_dataset,
    parse_dataset,
    to_csv,
)
from .evalharness import criteria, cv_curve  # noqa: E402
from .filters import weigh  # noqa: E402
from .redundancy import redundancy_level  # noqa: E402
from .relief_core import ReliefConfig, run_relief, relieff  # noqa: E402
from .relief_double import drelieff, pdrelieff, run_double_relief  # noqa: E402

__all__ = [
    "Dataset", "FeatureSchema", "FeatureWeights", "ParseError", "UsageError", "build_dataset",
    "load_dataset", "parse_dataset", "to_csv", "criteria", "cv_curve", "weigh", "redundancy_level",
    "ReliefConfig", "run_relief", "relieff", "drelieff", "pdrelieff", "run_double_relief",
]
