"""Benford's-law divergence features from JPEG coefficients, and classifiers
that tell image sources apart from them."""

__version__ = "0.1.0"

from .benford import (
    DEFAULT_GBL_PARAMS,
    DigitDistribution,
    DigitHistogram,
    FitConfig,
    FitResult,
    GBLParams,
    chi_square_divergence,
    digit_distribution,
    first_digit,
    fit_gbl_params,
    generalized_benford,
    load_param_table,
    standard_benford,
)
from .features import Dataset, FeatureVector, build_dataset, image_feature_vector, read_csv, write_csv
from .ingest import GrayImage, LabeledImageSet, load_image, scan_dataset
from .jpeg import CoefficientStream, extract_coefficients, forward_dct_block, quant_table_for_qf
