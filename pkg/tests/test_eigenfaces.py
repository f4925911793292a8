"""Eigenbasis extraction from image collections."""

import numpy as np
import pytest

from randla.bench import bundled_faces_dir, load_pgm_dir
from randla.errors import DataError
from randla.factor import RsvdConfig, projection_error
from randla.linalg import gaussian_matrix
from randla.models import eigenfaces


@pytest.fixture(scope="module")
def faces():
    return load_pgm_dir(bundled_faces_dir())


def test_bundled_set_loads(faces):
    pixels, count = faces.shape
    assert count >= 20
    assert pixels == 32 * 32
    assert faces.min() >= 0.0 and faces.max() <= 1.0


def test_centered_mean_column_vanishes(faces):
    basis = eigenfaces(faces, 3)
    centered = faces - basis.mean_face[:, None]
    assert np.abs(centered.mean(axis=1)).max() < 1e-10


def test_two_images_basis_is_difference_direction():
    a = gaussian_matrix(50, 1, 1)[:, 0]
    b = gaussian_matrix(50, 1, 2)[:, 0]
    images = np.column_stack([a, b])
    basis = eigenfaces(images, 1)
    diff = (a - b) / np.linalg.norm(a - b)
    cosine = abs(basis.basis[:, 0] @ diff)
    assert cosine > 1 - 1e-8


def test_reconstruction_error_non_increasing(faces):
    centered = faces - faces.mean(axis=1, keepdims=True)
    errors = []
    for k in (1, 2, 4, 8, 16):
        basis = eigenfaces(faces, k)
        errors.append(projection_error(centered, basis.basis))
    assert all(e2 <= e1 + 1e-10 for e1, e2 in zip(errors, errors[1:]))


def test_randomized_subspace_close(faces):
    det = eigenfaces(faces, 5)
    rand = eigenfaces(faces, 5, method="randomized",
                      rsvd_cfg=RsvdConfig(rank=5, power=1, oversampling=10, seed=3))
    cosines = np.linalg.svd(det.basis.T @ rand.basis, compute_uv=False)
    angles = np.degrees(np.arccos(np.clip(cosines, -1.0, 1.0)))
    assert angles.max() < 5.0


def test_identical_images_rejected():
    images = np.ones((30, 4))
    with pytest.raises(DataError):
        eigenfaces(images, 1)


def test_rejects_bad_k(faces):
    with pytest.raises(ValueError):
        eigenfaces(faces, faces.shape[1] + 1)
