from .catalog import CATALOG, GROUPS, MODES, FeatureCatalog, FeatureDef, normalize_group
from .engine import FeatureVector, compute_all
from .util import incidence

__all__ = [
    "CATALOG", "GROUPS", "MODES", "FeatureCatalog", "FeatureDef", "FeatureVector",
    "compute_all", "incidence", "normalize_group",
]
