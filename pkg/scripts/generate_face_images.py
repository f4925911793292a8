#!/usr/bin/env python3
"""Regenerate the bundled PGM face images.

The images are procedurally drawn (so they are ours to redistribute):
every face shares one base template -- head ellipse, two eyes, brows, nose,
mouth -- with a handful of per-face variation modes (geometry, lighting,
expression) plus faint pixel noise. The shared structure gives the image
matrix a realistically decaying spectrum, which the factorization
experiments rely on.

Usage: python scripts/generate_face_images.py [count] [size]
Writes into src/randla/assets/faces/ deterministically (fixed master seed).
"""

import os
import sys

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from randla.bench.reportio import write_pgm  # noqa: E402
from randla.rng import RandomStream, derive_seed  # noqa: E402

MASTER_SEED = 20200717


def _blob(xx, yy, cx, cy, sx, sy):
    return np.exp(-(((xx - cx) / sx) ** 2 + ((yy - cy) / sy) ** 2))


def face_image(params, size):
    span = np.linspace(-1.0, 1.0, size)
    xx, yy = np.meshgrid(span, span)
    img = np.full((size, size), 0.12)

    head_w = 0.72 + 0.08 * params[0]
    head_h = 0.88 + 0.06 * params[1]
    head = (xx / head_w) ** 2 + (yy / head_h) ** 2
    img += 0.68 / (1.0 + np.exp((head - 1.0) * 24.0))

    eye_dx = 0.30 + 0.05 * params[2]
    eye_y = -0.22 + 0.05 * params[3]
    eye_r = 0.085 + 0.015 * params[4]
    for side in (-1.0, 1.0):
        img -= 0.50 * _blob(xx, yy, side * eye_dx, eye_y, eye_r, eye_r * 0.8)
        img -= 0.25 * _blob(xx, yy, side * eye_dx, eye_y - 0.14 - 0.03 * params[5],
                            eye_r * 1.6, 0.035)

    nose_len = 0.22 + 0.04 * params[6]
    img -= 0.18 * _blob(xx, yy, 0.0, 0.08, 0.045, nose_len)

    mouth_y = 0.42 + 0.04 * params[7]
    mouth_w = 0.26 + 0.05 * params[8]
    curve = 0.10 * params[9]
    mouth_curve = mouth_y + curve * (xx / max(mouth_w, 1e-6)) ** 2
    img -= 0.40 * np.exp(
        -((yy - mouth_curve) / 0.05) ** 2 - (xx / mouth_w) ** 2
    )

    img += 0.06 * params[10] * xx + 0.05 * params[11] * yy
    return np.clip(img, 0.0, 1.0)


def main():
    count = int(sys.argv[1]) if len(sys.argv) > 1 else 24
    size = int(sys.argv[2]) if len(sys.argv) > 2 else 32
    out_dir = os.path.join(
        os.path.dirname(__file__), "..", "src", "randla", "assets", "faces"
    )
    os.makedirs(out_dir, exist_ok=True)
    for i in range(count):
        stream = RandomStream(derive_seed(MASTER_SEED, "face", i))
        params = stream.normals(12)
        img = face_image(params, size)
        img += 0.015 * stream.normal_matrix(size, size)
        write_pgm(os.path.join(out_dir, f"face_{i:03d}.pgm"), np.clip(img, 0.0, 1.0))
    print(f"wrote {count} {size}x{size} images to {out_dir}")


if __name__ == "__main__":
    main()
