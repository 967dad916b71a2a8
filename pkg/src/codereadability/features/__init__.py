from .bwf import BwfFeatures, compute_bwf
from .df import DfFeatures, compute_df
from .pf import PfFeatures, compute_pf, line_entropy
from .tf import TfFeatures, compute_tf

__all__ = [
    "BwfFeatures", "DfFeatures", "PfFeatures", "TfFeatures",
    "compute_bwf", "compute_df", "compute_pf", "compute_tf", "line_entropy",
]
