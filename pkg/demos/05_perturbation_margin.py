"""
How far can the bias move before a classification changes?
===========================================================

Given a bias w0 and a bounded sample of inputs, the construction moves w0 to
the middle of its sector and returns a radius delta: any weights within delta
of (w0', 0, ..., 0) put the whole sample into the same sector as w0.
"""

import numpy as np

from bcmvn.activation import (
    SectorConfig,
    perturbation_bound_bc,
    perturbation_bound_complex,
    perturbation_violations,
    perturbation_violations_bc,
)
from bcmvn.algebra import Bicomplex
from bcmvn.linalg import BicomplexVector

rng = np.random.default_rng(3)
cfg = SectorConfig(5)
sample = list(rng.normal(size=(20, 3)) + 1j * rng.normal(size=(20, 3)))

w0 = 0.8 + 0.3j
w0p, delta = perturbation_bound_complex(w0, sample, cfg)
print(f"w0' = {w0p:.4f}, delta = {delta:.4f}")
print("changes in 1000 random draws:", perturbation_violations(w0, sample, cfg, trials=1000, rng=rng))

# Past the radius, classifications do change.
print("changes with a 3x radius:", perturbation_violations(w0, sample, cfg, trials=1000, rng=rng, shrink=-2.0))

# Bicomplex version: one radius per slot, combined through the hyperbolic order.
parts = rng.normal(size=(2, 20, 3)) + 1j * rng.normal(size=(2, 20, 3))
sample_bc = [BicomplexVector.from_slots(a, b) for a, b in zip(parts[0], parts[1])]
W0 = Bicomplex.from_idempotent(0.8 + 0.3j, -1 + 0.2j)
W0p, delta_bc = perturbation_bound_bc(W0, sample_bc, cfg)
print("bicomplex delta:", delta_bc)
print("bicomplex changes in 1000 draws:", perturbation_violations_bc(W0, sample_bc, cfg, trials=1000, rng=rng))
