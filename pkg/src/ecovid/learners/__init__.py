"""From-scratch learners: scaler, ridge classifier, SVR, forest, MLP."""

from .scaling import ScalerParams, scaler_fit, scaler_transform
from .ridge import RidgeModel, ridge_decision, ridge_fit, ridge_predict
from .svr import SvrModel, dual_objective, kernel_matrix, svr_fit, svr_predict
from .forest import ForestModel, forest_fit, forest_predict
from .mlp import MlpModel, mlp_fit, mlp_loss_and_grads, mlp_predict
from .importance import permutation_importance
from .serialize import load_model, model_to_dict, save_model

__all__ = [
    "ScalerParams", "scaler_fit", "scaler_transform",
    "RidgeModel", "ridge_fit", "ridge_predict", "ridge_decision",
    "SvrModel", "svr_fit", "svr_predict", "dual_objective", "kernel_matrix",
    "ForestModel", "forest_fit", "forest_predict",
    "MlpModel", "mlp_fit", "mlp_predict", "mlp_loss_and_grads",
    "permutation_importance",
    "save_model", "load_model", "model_to_dict",
]
