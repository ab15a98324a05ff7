"""
A bicomplex neuron is two complex neurons
=========================================

In idempotent coordinates every bicomplex quantity splits into two complex
slots, and the bicomplex learning rule splits into two independent complex
rules. Training jointly therefore takes max(n1, n2) steps, where n1 and n2 are
the update counts of the two slot problems run on their own.
"""

from dataclasses import replace

import numpy as np

from bcmvn.datagen import gen_ksep_bc
from bcmvn.datasets import GenSpec
from bcmvn.perceptron import TrainConfig, mvn_train_bc, mvn_train_complex

ds = gen_ksep_bc(GenSpec(n=3, k=3, count=80, margin=0.1, seed=11))
cfg = TrainConfig(k=ds.k, record_weights=True)

W, trace = mvn_train_bc(ds, cfg)
n1, n2 = trace.slot_steps()
print(f"joint steps {trace.steps_to_converge}, slot steps n1={n1}, n2={n2}")

# The same run with the update written directly in cartesian coordinates.
W_direct, trace_direct = mvn_train_bc(ds, replace(cfg, rule_form="direct"))
gap = max(
    max(np.max(np.abs(a.w.z1 - b.w.z1)), np.max(np.abs(a.w.z2 - b.w.z2)))
    for a, b in zip(trace.weights, trace_direct.weights)
)
print(f"direct vs idempotent weights, worst gap over {len(trace.weights)} steps: {gap:.1e}")

# Each slot of the joint weights matches a plain complex run on that slot.
for idx, slot_w in enumerate(W.slots()):
    c, t = mvn_train_complex(ds.slot(idx), cfg)
    print(f"slot {idx + 1}: {len(t.updates)} complex updates, weight gap {np.max(np.abs(slot_w.w - c.w)):.1e}")

# The hyperbolic weight norm carries one real norm per slot.
h = W.norm()
print("hyperbolic norm of W: s =", h.s, " t =", h.t)

# Walking whole samples instead pays for every sample that is wrong in either slot.
_, t_sample = mvn_train_bc(ds, replace(cfg, schedule="sample", record_weights=False))
print("sample schedule steps:", t_sample.steps_to_converge, ">= lockstep steps:", trace.steps_to_converge)
