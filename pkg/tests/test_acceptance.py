"""Acceptance suite: one test per release criterion, each printing a pass line.

Run with `pytest tests/test_acceptance.py -v -s` to see per-criterion output.
"""

import csv
import random
import time

import numpy as np
import pytest

from micromotion.evm import MagnifyConfig, magnify
from micromotion.frame_io import pad_to_levels
from micromotion.knn import SplitSpec, evaluate, fit, k_sweep, split
from micromotion.labeling import (
    CLASS_ORDER,
    parse_label_file,
    validate_label_file,
)
from micromotion.pyramid import binomial_kernel, build_laplacian, collapse
from micromotion.temporal_filter import BandpassSpec, ideal_bandpass

from conftest import (
    measure_edge_amplitude,
    oscillating_edge_video,
    random_video,
    synthetic_waveform_dataset,
)
from test_knn import brute_force_predict
from test_labeling import mutated_payload


def report(name):
    print(f"PASS: {name}")


def test_pyramid_reconstruction_50_random_images(rng):
    start = time.monotonic()
    kernel = binomial_kernel()
    for _ in range(50):
        img = rng.random((64, 64, 3)).astype(np.float32)
        out = collapse(build_laplacian(img, 3, kernel), kernel)
        assert np.abs(out - img).max() <= 1e-5
    assert time.monotonic() - start < 10.0
    report("pyramid reconstruction: 50 random 64x64 images, error <= 1e-5, < 10 s")


def test_magnification_identity_alpha_zero(rng):
    for dims in [(8, 8), (10, 9), (17, 23)]:
        seq = random_video(rng, count=6, h=dims[0], w=dims[1])
        cfg = MagnifyConfig(alpha=0.0, num_levels=3, band=BandpassSpec(0.5, 2.0, 30.0))
        out = magnify(seq, cfg)
        padded = pad_to_levels(seq, 3)
        diff = out.frames.astype(int) - padded.frames.astype(int)
        assert np.abs(diff).max() <= 1
    report("magnification identity: alpha=0 reproduces padded input within 1/255")


def test_amplification_law_alpha_9():
    start = time.monotonic()
    seq = oscillating_edge_video(
        width=64, height=64, fps=30.0, seconds=10.0, amplitude=0.2, freq=1.0
    )
    cfg = MagnifyConfig(alpha=9.0, num_levels=3, band=BandpassSpec(0.5, 2.0, 30.0))
    out = magnify(seq, cfg)
    measured = measure_edge_amplitude(out, 1.0)
    assert abs(measured - 2.0) <= 0.4, f"measured {measured:.3f} px, expected 2.0 +- 0.4"
    assert time.monotonic() - start < 60.0
    report(f"amplification law: measured {measured:.3f} px vs 2.0 +- 20%, < 60 s")


def test_ideal_bandpass_exactness():
    fps, n = 30.0, 300
    t = np.arange(n) / fps
    spec = BandpassSpec(0.5, 2.0, fps)
    inside = np.sin(2 * np.pi * 1.0 * t)
    out = ideal_bandpass(inside, spec)
    gain = np.abs(np.fft.rfft(out)).max() / np.abs(np.fft.rfft(inside)).max()
    assert abs(gain - 1.0) <= 1e-6
    outside = np.sin(2 * np.pi * 4.0 * t)
    assert np.abs(ideal_bandpass(outside, spec)).max() <= 1e-6
    constant = np.full(n, 0.7)
    assert np.abs(ideal_bandpass(constant, spec)).max() <= 1e-6
    report("ideal bandpass: in-band gain 1 +- 1e-6, out-of-band <= 1e-6, DC removed")


def test_heatmap_algebra_exhaustive_byte_pairs():
    a = np.repeat(np.arange(256, dtype=np.uint8), 256)
    b = np.tile(np.arange(256, dtype=np.uint8), 256)
    out = a | b
    np.testing.assert_array_equal(out, b | a)  # commutative
    np.testing.assert_array_equal(a | a, a)  # idempotent
    zeros = np.zeros_like(a)
    np.testing.assert_array_equal(zeros | b, b)  # zero identity
    assert np.all((out | a) == out) and np.all((out | b) == out)
    report("heatmap algebra: OR idempotent/commutative/zero-identity over all byte pairs")


def test_knn_oracle_equivalence_100_datasets():
    rng = np.random.default_rng(99)
    for _ in range(100):
        n = int(rng.integers(4, 201))
        vectors = rng.random((n, 300))
        labels = tuple(CLASS_ORDER[i] for i in rng.integers(0, 4, n))
        k = int(rng.integers(1, n + 1))
        from micromotion.knn import KnnModel, predict

        model = KnnModel(training_vectors=vectors, training_labels=labels, k=k)
        x = rng.random(300)
        assert predict(model, x) is brute_force_predict(model, x)
    report("kNN oracle equivalence: 100 random datasets, predictions identical")


def test_end_to_end_synthetic_classification():
    start = time.monotonic()
    dataset = synthetic_waveform_dataset(n_per_class=20, length=300, noise=0.02, seed=0)
    assert len(dataset.items) == 80
    train, test = split(dataset, SplitSpec(train_fraction=0.7, seed=0))
    accuracy, cm = evaluate(fit(train, 3), test)
    assert accuracy >= 0.95, f"accuracy {accuracy:.3f}"
    per_class = {label: 0 for label in CLASS_ORDER}
    for w in test.items:
        per_class[w.label] += 1
    for i, label in enumerate(CLASS_ORDER):
        assert cm.counts[i].sum() == per_class[label]
    assert time.monotonic() - start < 10.0
    report(f"end-to-end synthetic classification: accuracy {accuracy:.3f} >= 0.95, < 10 s")


def test_k_sweep_five_rows_deterministic(tmp_path):
    dataset = synthetic_waveform_dataset(n_per_class=20, length=300, seed=1)
    ks = [1, 3, 5, 7, 9]
    r1 = k_sweep(dataset, SplitSpec(seed=7), ks)
    r2 = k_sweep(dataset, SplitSpec(seed=7), ks)
    assert len(r1) == 5 and r1 == r2
    path = tmp_path / "sweep.csv"
    with open(path, "w") as fh:
        fh.write("k,accuracy\n")
        for k, acc in r1:
            fh.write(f"{k},{acc:.6f}\n")
    assert len(list(csv.reader(open(path)))) == 6
    report("k-sweep: 5 rows for k in {1,3,5,7,9}, deterministic under fixed seed")


def test_label_validation_fuzz_1000_cases():
    rng = random.Random(20260826)
    for _ in range(1000):
        file, violations = parse_label_file(mutated_payload(rng))
        if file is None:
            assert violations, "rejection must carry violations"
            assert all(v.region_id for v in violations)
        else:
            validated, post = validate_label_file(file, (8, 8), 10)
            if validated is None:
                assert all(v.region_id for v in post)
    report("label validation fuzz: 1000 malformed files, no crash, rejections named")
