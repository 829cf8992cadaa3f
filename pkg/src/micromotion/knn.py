"""k-nearest-neighbor classification of waveforms with splitting, evaluation,
and k-sweep.

Tie-breaking: among tied vote counts, the class whose nearest member is
closest to the query wins; remaining ties fall back to the fixed class
order. Distance ties at the k-th neighbor resolve by training index.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .labeling import CLASS_ORDER, MotionLabel
from .waveform import Waveform, WaveformDataset


@dataclass(frozen=True)
class KnnModel:
    training_vectors: np.ndarray = field(repr=False)
    training_labels: tuple[MotionLabel, ...]
    k: int

    def __post_init__(self):
        v = np.asarray(self.training_vectors, dtype=np.float64)
        if v.ndim != 2:
            raise ValueError("training_vectors must be 2D (n, length)")
        if len(self.training_labels) != v.shape[0]:
            raise ValueError("label count must match vector count")
        if not 1 <= self.k <= v.shape[0]:
            raise ValueError(f"k={self.k} invalid for {v.shape[0]} training vectors")
        object.__setattr__(self, "training_vectors", v)


@dataclass(frozen=True)
class ConfusionMatrix:
    """4x4 counts, rows = true label, columns = predicted, class order fixed."""

    counts: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.counts, dtype=np.int64)
        if c.shape != (4, 4) or (c < 0).any():
            raise ValueError("confusion matrix must be 4x4 with counts >= 0")
        object.__setattr__(self, "counts", c)

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    @property
    def accuracy(self) -> float:
        return float(np.trace(self.counts)) / self.total

    def per_class_recall(self) -> dict[MotionLabel, float]:
        out = {}
        for i, label in enumerate(CLASS_ORDER):
            row = self.counts[i].sum()
            out[label] = float(self.counts[i, i]) / row if row else float("nan")
        return out


@dataclass(frozen=True)
class SplitSpec:
    train_fraction: float = 0.7
    seed: int = 0

    def __post_init__(self):
        if not 0 < self.train_fraction < 1:
            raise ValueError(f"train_fraction must be in (0, 1), got {self.train_fraction}")


def euclidean(x: np.ndarray, y: np.ndarray) -> float:
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape:
        raise ValueError(f"length mismatch: {x.shape} vs {y.shape}")
    return float(np.linalg.norm(y - x))


def fit(dataset: WaveformDataset, k: int) -> KnnModel:
    return KnnModel(
        training_vectors=dataset.vectors(),
        training_labels=tuple(dataset.labels()),
        k=k,
    )


def predict(model: KnnModel, x: np.ndarray) -> MotionLabel:
    """Majority vote among the k nearest training vectors."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (model.training_vectors.shape[1],):
        raise ValueError(
            f"query length {x.shape} does not match model "
            f"({model.training_vectors.shape[1]},)"
        )
    distances = np.linalg.norm(model.training_vectors - x, axis=1)
    order = np.argsort(distances, kind="stable")[: model.k]
    votes: dict[MotionLabel, int] = {}
    nearest: dict[MotionLabel, float] = {}
    for idx in order:
        label = model.training_labels[idx]
        votes[label] = votes.get(label, 0) + 1
        nearest.setdefault(label, float(distances[idx]))
    best = max(votes.values())
    tied = [label for label, count in votes.items() if count == best]
    if len(tied) == 1:
        return tied[0]
    tied.sort(key=lambda lb: (nearest[lb], CLASS_ORDER.index(lb)))
    return tied[0]


def split(
    dataset: WaveformDataset, spec: SplitSpec
) -> tuple[WaveformDataset, WaveformDataset]:
    """Deterministic seeded shuffle into train/test partitions."""
    n = len(dataset.items)
    if n < 4:
        raise ValueError(f"dataset too small to split, got {n} items")
    perm = np.random.default_rng(spec.seed).permutation(n)
    n_train = round(spec.train_fraction * n)
    train = tuple(dataset.items[i] for i in perm[:n_train])
    test = tuple(dataset.items[i] for i in perm[n_train:])
    return (
        WaveformDataset(items=train, feature_length=dataset.feature_length),
        WaveformDataset(items=test, feature_length=dataset.feature_length),
    )


def evaluate(model: KnnModel, test: WaveformDataset) -> tuple[float, ConfusionMatrix]:
    if not test.items:
        raise ValueError("test set is empty")
    counts = np.zeros((4, 4), dtype=np.int64)
    index = {label: i for i, label in enumerate(CLASS_ORDER)}
    for item in test.items:
        predicted = predict(model, item.samples)
        counts[index[item.label], index[predicted]] += 1
    cm = ConfusionMatrix(counts=counts)
    return cm.accuracy, cm


def k_sweep(
    dataset: WaveformDataset, spec: SplitSpec, k_values: list[int]
) -> list[tuple[int, float]]:
    """Evaluate one shared split at each requested k."""
    train, test = split(dataset, spec)
    results = []
    for k in k_values:
        model = fit(train, k)
        accuracy, _ = evaluate(model, test)
        results.append((k, accuracy))
    return results


def save_dataset_csv(dataset: WaveformDataset, path: str) -> None:
    """CSV rows: subject_id, region_id, label, then feature_length samples."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        for w in dataset.items:
            writer.writerow(
                [w.subject_id, w.region_id, w.label.value]
                + [repr(float(v)) for v in w.samples]
            )


def load_dataset_csv(path: str, fps: float = 30.0) -> WaveformDataset:
    items = []
    feature_length = None
    with open(path, newline="", encoding="utf-8") as fh:
        for row_num, row in enumerate(csv.reader(fh)):
            if not row:
                continue
            if len(row) < 5:
                raise ValueError(f"row {row_num}: too few columns")
            subject_id, region_id, label_str = row[0], row[1], row[2]
            samples = np.array([float(v) for v in row[3:]])
            if feature_length is None:
                feature_length = len(samples)
            elif len(samples) != feature_length:
                raise ValueError(
                    f"row {row_num}: {len(samples)} samples, expected {feature_length}"
                )
            items.append(
                Waveform(
                    samples=samples,
                    fps=fps,
                    label=MotionLabel.parse(label_str),
                    subject_id=subject_id,
                    region_id=region_id,
                )
            )
    if feature_length is None:
        raise ValueError(f"dataset file {path} is empty")
    return WaveformDataset(items=tuple(items), feature_length=feature_length)


def save_confusion_csv(cm: ConfusionMatrix, path: str) -> None:
    names = [label.value for label in CLASS_ORDER]
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["true\\predicted"] + names)
        for i, name in enumerate(names):
            writer.writerow([name] + [int(v) for v in cm.counts[i]])
