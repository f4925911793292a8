from randla.bench.datasets import KINDS, DatasetSpec, generate_dataset
from randla.bench.experiments import (
    EXPERIMENTS,
    bundled_faces_dir,
    radial_threshold_accuracy,
    run_experiment,
    timed_median,
)
from randla.bench.reportio import (
    ExperimentReport,
    load_matrix_csv,
    load_pgm_dir,
    load_report,
    save_report,
    write_pgm,
)

__all__ = [
    "KINDS",
    "DatasetSpec",
    "generate_dataset",
    "EXPERIMENTS",
    "bundled_faces_dir",
    "radial_threshold_accuracy",
    "run_experiment",
    "timed_median",
    "ExperimentReport",
    "load_matrix_csv",
    "load_pgm_dir",
    "load_report",
    "save_report",
    "write_pgm",
]
