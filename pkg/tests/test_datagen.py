import math

import numpy as np
import pytest

from bcmvn.activation import SectorConfig, sector_index
from bcmvn.datagen import (
    angular_position,
    audit,
    audit_bc,
    audit_complex,
    audit_real,
    gen_ksep_bc,
    gen_ksep_complex,
    gen_real,
    slot_seed,
)
from bcmvn.datasets import BicomplexDataset, ComplexDataset, GenSpec
from bcmvn.errors import GenerationStalledError
from bcmvn.serialize import dataset_to_json, dumps


def same_dataset(a, b):
    return dumps(dataset_to_json(a)) == dumps(dataset_to_json(b))


class TestGenSpec:
    @pytest.mark.parametrize(
        "kwargs",
        [{"n": 0}, {"n": 2, "count": 0}, {"n": 2, "k": 1}, {"n": 2, "margin": 0}, {"n": 2, "radius_range": (0, 1)}],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(ValueError):
            GenSpec(**kwargs)

    def test_json(self):
        spec = GenSpec(n=3, k=5, count=7, margin=0.2, seed=2**63 + 5, radius_range=(1, 3))
        assert GenSpec.from_json(spec.to_json()) == spec


class TestReal:
    def test_margin(self):
        p = gen_real(GenSpec(n=2, count=200, margin=0.5, seed=1))
        a = p.hidden.a
        assert np.linalg.norm(a) == pytest.approx(1)
        ratios = np.abs(p.X @ a) / np.linalg.norm(p.X, axis=1)
        assert np.all(ratios >= 0.5)
        assert np.all(np.sign(p.X @ a) == p.labels)
        assert audit_real(p) == []

    def test_radius_range(self):
        p = gen_real(GenSpec(n=4, count=100, margin=0.1, radius_range=(0.5, 2.0)))
        r = np.linalg.norm(p.X, axis=1)
        assert r.min() >= 0.5 and r.max() <= 2.0

    def test_single_point(self):
        p = gen_real(GenSpec(n=3, count=1, margin=0.2))
        assert len(p) == 1 and p.X.shape == (1, 3)

    def test_deterministic(self):
        spec = GenSpec(n=5, count=50, margin=0.3, seed=42)
        assert same_dataset(gen_real(spec), gen_real(spec))
        assert not same_dataset(gen_real(spec), gen_real(GenSpec(n=5, count=50, margin=0.3, seed=43)))

    @pytest.mark.parametrize("margin", [1.0, 1.5])
    def test_margin_domain(self, margin):
        with pytest.raises(ValueError):
            gen_real(GenSpec(n=2, margin=margin))

    def test_stalls(self):
        with pytest.raises(GenerationStalledError):
            gen_real(GenSpec(n=10, count=100, margin=0.95))


class TestComplex:
    def test_half_planes_for_k2(self):
        ds = gen_ksep_complex(GenSpec(n=3, k=2, count=150, margin=0.3, seed=5))
        z = ds.X @ ds.hidden
        assert np.all(ds.labels == np.where(z.imag > 0, 0, 1))
        angle = np.abs(np.angle(z))
        assert np.all(np.minimum(angle, np.pi - angle) >= 0.3)

    def test_angular_margin_for_all_k(self):
        for k in (3, 4, 8):
            margin = 0.1
            ds = gen_ksep_complex(GenSpec(n=2, k=k, count=100, margin=margin, seed=k))
            z = ds.X @ ds.hidden
            cfg = SectorConfig(k)
            for zi, q in zip(z, ds.labels):
                arg = math.atan2(zi.imag, zi.real) % (2 * math.pi)
                lo, hi = 2 * math.pi * q / k, 2 * math.pi * (q + 1) / k
                assert lo + margin <= arg + 1e-12 and arg <= hi - margin + 1e-12
                assert sector_index(zi, cfg) == q

    def test_hidden_entries_unit(self):
        ds = gen_ksep_complex(GenSpec(n=6, k=3, count=10))
        np.testing.assert_allclose(np.abs(ds.hidden), 1)

    def test_constructed_rays(self):
        k = 4
        W = gen_ksep_complex(GenSpec(n=3, k=k, count=1, seed=9)).hidden
        cfg = SectorConfig(k)
        X, labels = [], []
        for l in range(k):
            for r in (0.5, 1.0, 2.0):
                X.append(cfg.root(l + 0.3) * r * np.conj(W) / np.vdot(W, W).real)
                labels.append(l)
        ds = ComplexDataset(np.array(X), np.array(labels), k, W)
        assert audit_complex(ds) == []
        assert np.all(angular_position(np.array(X) @ W, k)[0] == labels)

    def test_deterministic(self):
        spec = GenSpec(n=3, k=4, count=40, margin=0.2, seed=7)
        assert same_dataset(gen_ksep_complex(spec), gen_ksep_complex(spec))

    def test_margin_domain(self):
        with pytest.raises(ValueError):
            gen_ksep_complex(GenSpec(n=2, k=4, margin=math.pi / 4))

    def test_audit_detects_wrong_label(self):
        ds = gen_ksep_complex(GenSpec(n=2, k=3, count=20))
        labels = ds.labels.copy()
        labels[4] = (labels[4] + 1) % 3
        bad = ComplexDataset(ds.X, labels, 3, ds.hidden)
        assert audit(bad) == [4]

    def test_margin_monotonicity(self):
        """Same stream, stricter filter: more candidates consumed, accepted sets nested."""
        margins = [0.02, 0.1, 0.2, 0.35, 0.5]
        runs = [gen_ksep_complex(GenSpec(n=3, k=4, count=100, margin=m, seed=13)) for m in margins]
        draws = [r.draws for r in runs]
        assert draws == sorted(draws) and draws[0] < draws[-1]
        for loose, strict in zip(runs, runs[1:]):
            loose_rows = {row.tobytes() for row in loose.X}
            overlap = [row.tobytes() in loose_rows for row in strict.X]
            # strict samples drawn before the loose run stopped must be in the loose set
            assert all(overlap[: sum(overlap)])
            assert sum(overlap) >= 1


class TestBicomplex:
    def test_identical_subseeds(self):
        ds = gen_ksep_bc(GenSpec(n=3, k=4, count=30), slot_seeds=(5, 5))
        X1, X2 = ds.batch.idempotent
        np.testing.assert_allclose(X1, X2, atol=1e-15)
        assert np.all(ds.labels[:, 0] == ds.labels[:, 1])

    def test_slotwise_margin(self):
        spec = GenSpec(n=2, k=3, count=60, margin=0.15, seed=3)
        ds = gen_ksep_bc(spec)
        for idx in (0, 1):
            slot = ds.slot(idx)
            labels, dist = angular_position(slot.X @ slot.hidden, 3)
            assert np.all(labels == slot.labels)
            assert np.all(dist >= 0.15 - 1e-12)
            assert audit_complex(slot) == []
        assert audit_bc(ds) == []

    def test_slots_match_complex_generator(self):
        spec = GenSpec(n=2, k=3, count=25, seed=21)
        ds = gen_ksep_bc(spec)
        ref = gen_ksep_complex(GenSpec(n=2, k=3, count=25, seed=slot_seed(21, 1)))
        np.testing.assert_allclose(ds.slot(0).X, ref.X, atol=1e-15)
        assert np.all(ds.slot(0).labels == ref.labels)

    def test_deterministic(self):
        spec = GenSpec(n=2, k=5, count=20, margin=0.2, seed=77)
        assert same_dataset(gen_ksep_bc(spec), gen_ksep_bc(spec))

    def test_slot_seeds(self):
        assert slot_seed(0, 1) == slot_seed(0, 1)
        assert len({slot_seed(s, i) for s in range(10) for i in (1, 2)}) == 20
        assert 0 <= slot_seed(2**64 - 1, 2) < 2**64

    def test_audit_detects_wrong_pair(self):
        ds = gen_ksep_bc(GenSpec(n=2, k=3, count=10))
        labels = ds.labels.copy()
        labels[2, 1] = (labels[2, 1] + 1) % 3
        bad = BicomplexDataset(ds.Z1, ds.Z2, labels, 3, ds.hidden)
        assert audit(bad) == [2]
