"""Seeded random matrices for falsification campaigns.

A sample is addressed by ``(campaign_seed, index, kind, dim)``. The
per-sample generator is numpy's PCG64 seeded with

    z = (campaign_seed + (index + 1) * 0x9E3779B97F4A7C15) mod 2^64
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 mod 2^64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB mod 2^64
    seed = z ^ (z >> 31)

(one SplitMix64 step), so every sample can be regenerated on its own,
independently of how a campaign was scheduled.

Draw order within one sample is fixed: complex Gaussian matrices take an
``(n, n)`` block of real parts and then one of imaginary parts, each entry
``N(0, 1/2)`` so that ``E|g|^2 = 1``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError
from .linalg import HermitianMatrix, PsdMatrix, dagger, polar

KINDS = ("general", "hermitian", "psd", "pd_spectrum", "commuting_pair", "scalar", "rank_deficient")

_MASK = (1 << 64) - 1


def derive_seed(campaign_seed: int, index: int) -> int:
    z = (int(campaign_seed) + (int(index) + 1) * 0x9E3779B97F4A7C15) & _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def generator(campaign_seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(derive_seed(campaign_seed, index)))


@dataclass(frozen=True)
class SampleSpec:
    kind: str
    dim: int
    campaign_seed: int = 0
    index: int = 0
    a: Optional[float] = None
    b: Optional[float] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown sample kind {self.kind!r}; expected one of {KINDS}")
        if int(self.dim) < 1:
            raise DomainError(f"dim must be >= 1, got {self.dim}")
        if self.kind == "pd_spectrum":
            if self.a is None or self.b is None or not (self.a >= self.b > 0):
                raise DomainError(f"pd_spectrum needs a >= b > 0, got a={self.a}, b={self.b}")


def complex_gaussian(rng, n) -> np.ndarray:
    re = rng.standard_normal((n, n))
    im = rng.standard_normal((n, n))
    return (re + 1j * im) / math.sqrt(2.0)


def haar_unitary(rng, n) -> np.ndarray:
    # the unitary polar factor of a Ginibre matrix is Haar distributed
    u, _ = polar(complex_gaussian(rng, n))
    return u


def sample(spec: SampleSpec):
    """Materialise one sample.

    Returns a numpy array for "general", a :class:`HermitianMatrix` for
    "hermitian", a pair of :class:`PsdMatrix` for "commuting_pair" and a
    :class:`PsdMatrix` otherwise.
    """
    rng = generator(spec.campaign_seed, spec.index)
    n = 1 if spec.kind == "scalar" else int(spec.dim)
    kind = spec.kind
    if kind == "general":
        return complex_gaussian(rng, n)
    if kind == "hermitian":
        g = complex_gaussian(rng, n)
        return HermitianMatrix((g + dagger(g)) / 2, check=False)
    if kind in ("psd", "scalar"):
        g = complex_gaussian(rng, n)
        return PsdMatrix(g @ dagger(g) / n, check=False)
    if kind == "rank_deficient":
        g = complex_gaussian(rng, n)
        w, v = PsdMatrix(g @ dagger(g) / n, check=False).eig
        w = w.copy()
        w[n - math.ceil(n / 2):] = 0.0
        return PsdMatrix.from_eig(w, v)
    if kind == "pd_spectrum":
        v = haar_unitary(rng, n)
        d = rng.uniform(spec.b, spec.a, n)
        return PsdMatrix((v * d) @ dagger(v), check=False)
    # commuting_pair
    v = haar_unitary(rng, n)
    d1 = rng.standard_exponential(n)
    d2 = rng.standard_exponential(n)
    return (PsdMatrix((v * d1) @ dagger(v), check=False),
            PsdMatrix((v * d2) @ dagger(v), check=False))
