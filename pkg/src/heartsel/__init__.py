"""Filter-based feature selection and classifier benchmarking for tabular
heart-disease data."""

__version__ = "0.1.0"

from .featstats import anova_f, pearson_correlation, project, select_k_best  # noqa: E402
from .preprocess import downsample_balance, drop_missing, stratified_split  # noqa: E402
from .tabular import Dataset, FeatureMatrix, FeatureSpec, encode, feature_matrix, load_csv  # noqa: E402

__all__ = [
    "Dataset",
    "FeatureMatrix",
    "FeatureSpec",
    "anova_f",
    "downsample_balance",
    "drop_missing",
    "encode",
    "feature_matrix",
    "load_csv",
    "pearson_correlation",
    "project",
    "select_k_best",
    "stratified_split",
]
