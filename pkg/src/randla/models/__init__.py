from randla.models.eigenfaces import EigenfaceBasis, eigenfaces
from randla.models.leastsq import ls_random_search, ls_solve_qr, residual_norm
from randla.models.pca import KpcaEmbedding, PcaModel, kernel_pca, pca_fit, pca_transform
from randla.models.svm import (
    GRID_MODES,
    GridSearchReport,
    OvoModel,
    SvmModel,
    grid_search_cv,
    one_vs_one_predict,
    one_vs_one_train,
    stratified_folds,
    svm_decision,
    svm_predict,
    svm_train,
)

__all__ = [
    "EigenfaceBasis",
    "eigenfaces",
    "ls_random_search",
    "ls_solve_qr",
    "residual_norm",
    "KpcaEmbedding",
    "PcaModel",
    "kernel_pca",
    "pca_fit",
    "pca_transform",
    "GRID_MODES",
    "GridSearchReport",
    "OvoModel",
    "grid_search_cv",
    "one_vs_one_predict",
    "one_vs_one_train",
    "stratified_folds",
    "svm_decision",
    "svm_predict",
    "svm_train",
    "SvmModel",
]
