from .dataset import DatasetError, LabeledDataset, build_dataset, load_dataset, read_features_csv, read_labels
from .discretize import assign_bins, discretize_mdl, entropy
from .evaluation import EvalReport, cross_validate, evaluate_holdout, holdout_split, stratified_folds
from .selection import feature_intersection, info_gain, info_gain_rank, select_top
from .smo import (ModelFormatError, SmoParams, SvmModel, TrainingError, load_model, predict,
                  save_model, smo_binary, train_smo)

__all__ = [
    "DatasetError", "EvalReport", "LabeledDataset", "ModelFormatError", "SmoParams", "SvmModel",
    "TrainingError", "assign_bins", "build_dataset", "cross_validate", "discretize_mdl", "entropy",
    "evaluate_holdout", "feature_intersection", "holdout_split", "info_gain", "info_gain_rank",
    "load_dataset", "load_model", "predict", "read_features_csv", "read_labels", "save_model",
    "select_top", "smo_binary", "stratified_folds", "train_smo",
]
