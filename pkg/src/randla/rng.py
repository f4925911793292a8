"""Deterministic random streams keyed by a 64-bit master seed.

Every random draw in the library goes through this module. The generator is
Philox-4x64 (a counter-based generator keyed directly by the seed), raw
64-bit words are mapped to uniform doubles by taking the top 53 bits, and
normal variates come from an explicit Box-Muller transform. None of this
relies on a platform or numpy-version default stream, so the same seed
reproduces the same values bit for bit anywhere.

Independent sub-streams are derived with :func:`derive_seed`, which mixes a
path of labels into a fresh 64-bit seed via SplitMix64. Derivation is pure,
so parallel consumers indexed by task never share or race a stream.
"""

from __future__ import annotations

import hashlib

import numpy as np

_MASK64 = (1 << 64) - 1
# SplitMix64 mixing constants (Steele, Lea & Flood; the standard finalizer).
_SM_GAMMA = 0x9E3779B97F4A7C15
_SM_MUL1 = 0xBF58476D1CE4E5B9
_SM_MUL2 = 0x94D049BB133111EB

_INV_2_53 = 1.0 / (1 << 53)


def check_seed(seed):
    """Validate a master seed: an integer representable in 64 unsigned bits."""
    if not isinstance(seed, (int, np.integer)):
        raise ValueError(f"seed must be an integer, got {type(seed).__name__}")
    seed = int(seed)
    if not 0 <= seed <= _MASK64:
        raise ValueError(f"seed must be in [0, 2**64), got {seed}")
    return seed


def _splitmix64(x):
    x = (x + _SM_GAMMA) & _MASK64
    x = ((x ^ (x >> 30)) * _SM_MUL1) & _MASK64
    x = ((x ^ (x >> 27)) * _SM_MUL2) & _MASK64
    return x ^ (x >> 31)


def _label_to_int(part):
    if isinstance(part, (int, np.integer)):
        return int(part) & _MASK64
    if isinstance(part, str):
        digest = hashlib.blake2b(part.encode("utf-8"), digest_size=8).digest()
        return int.from_bytes(digest, "little")
    raise ValueError(f"stream labels must be int or str, got {type(part).__name__}")


def derive_seed(seed, *path):
    """Derive an independent sub-seed from ``seed`` and a path of labels.

    Labels may be ints (e.g. a trial index) or strings (e.g. "phases");
    strings are hashed to 64 bits with BLAKE2b. The same (seed, path) always
    yields the same sub-seed.
    """
    h = check_seed(seed)
    if not path:
        raise ValueError("derive_seed requires at least one path label")
    for part in path:
        h = _splitmix64(h ^ _label_to_int(part))
    return h


class RandomStream:
    """A consumable stream of uniforms and normals for one derived seed."""

    def __init__(self, seed):
        self._bitgen = np.random.Philox(key=check_seed(seed))

    def _raw(self, count):
        return self._bitgen.random_raw(count)

    def uniforms(self, count):
        """``count`` doubles uniform on [0, 1): top 53 bits of each raw word."""
        return (self._raw(count) >> np.uint64(11)) * _INV_2_53

    def normals(self, count):
        """``count`` standard normals via Box-Muller on raw-word pairs.

        Pair i consumes raw words 2i and 2i+1, so the first k values of a
        longer request equal a shorter request on a fresh stream (prefixes
        are stable).
        """
        pairs = (count + 1) // 2
        raw = self._raw(2 * pairs)
        # u1 in (0, 1] so log never sees zero; u2 in [0, 1).
        u1 = ((raw[0::2] >> np.uint64(11)) + np.uint64(1)) * _INV_2_53
        u2 = (raw[1::2] >> np.uint64(11)) * _INV_2_53
        radius = np.sqrt(-2.0 * np.log(u1))
        angle = 2.0 * np.pi * u2
        out = np.empty(2 * pairs)
        out[0::2] = radius * np.cos(angle)
        out[1::2] = radius * np.sin(angle)
        return out[:count]

    def normal_matrix(self, rows, cols):
        return self.normals(rows * cols).reshape(rows, cols)

    def sample_without_replacement(self, population, size):
        """``size`` distinct indices from range(population), Fisher-Yates order."""
        if not 0 <= size <= population:
            raise ValueError(
                f"cannot sample {size} without replacement from {population}"
            )
        u = self.uniforms(size) if size else np.empty(0)
        idx = np.arange(population)
        for i in range(size):
            j = i + int(u[i] * (population - i))
            idx[i], idx[j] = idx[j], idx[i]
        return idx[:size].copy()
