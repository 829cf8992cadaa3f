"""Command-line entry point: magnify, heatmap, overlay, extract, train, eval,
sweep, label-serve.

Every command writes a machine-readable result file plus a human-readable
summary, and echoes its effective configuration next to the outputs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import evm, frame_io, heatmap_overlay, knn, labeling, waveform
from .temporal_filter import BandpassSpec


class CommandError(Exception):
    """User-facing failure; printed to stderr with nonzero exit."""


def _write_run_config(out_dir: str, command: str, config: dict) -> None:
    os.makedirs(out_dir, exist_ok=True)
    with open(os.path.join(out_dir, "run_config.json"), "w", encoding="utf-8") as fh:
        json.dump({"command": command, **config}, fh, indent=2)


def _load_sequence(path: str) -> frame_io.FrameSequence:
    if not os.path.exists(path):
        raise CommandError(f"manifest not found: {path}")
    try:
        return frame_io.load_sequence(path)
    except (frame_io.ManifestError, OSError, ValueError, json.JSONDecodeError) as exc:
        raise CommandError(f"failed to load {path}: {exc}") from exc


def cmd_magnify(args) -> int:
    seq = _load_sequence(args.input)
    cfg = evm.MagnifyConfig(
        alpha=args.alpha,
        num_levels=args.levels,
        band=BandpassSpec(f_lo=args.f_lo, f_hi=args.f_hi, fps=seq.fps),
        per_level_gain=tuple(args.level_gain) if args.level_gain else None,
    )
    result = evm.magnify(seq, cfg)
    manifest_path = frame_io.write_sequence(result, args.out, notes="magnified")
    _write_run_config(
        args.out,
        "magnify",
        {
            "input": args.input,
            "alpha": args.alpha,
            "levels": args.levels,
            "f_lo": args.f_lo,
            "f_hi": args.f_hi,
            "level_gain": args.level_gain,
        },
    )
    print(f"magnified {seq.count} frames -> {manifest_path}")
    return 0


def cmd_heatmap(args) -> int:
    original = _load_sequence(args.original)
    magnified = _load_sequence(args.magnified)
    if (original.width, original.height) != (magnified.width, magnified.height):
        original = frame_io.resize_to(original, magnified.width, magnified.height)
    result = heatmap_overlay.heatmap(original, magnified)
    manifest_path = frame_io.write_sequence(result, args.out, notes="heatmap")
    _write_run_config(
        args.out, "heatmap", {"original": args.original, "magnified": args.magnified}
    )
    print(f"heatmap written -> {manifest_path}")
    return 0


def cmd_overlay(args) -> int:
    heat = _load_sequence(args.heatmap)
    track = heatmap_overlay.load_keypoint_track(args.keypoints) if args.keypoints else []
    if track and args.original_dims:
        w, h = args.original_dims
        track = heatmap_overlay.scale_track(track, (w, h), (heat.width, heat.height))
    by_index = {kf.frame_index: kf for kf in track}
    skeleton_frames = np.empty_like(heat.frames)
    for t in range(heat.count):
        frame = frame_io.to_float(heat.frames[t]).astype(np.float64)
        kf = by_index.get(t, heatmap_overlay.KeypointFrame(frame_index=t, points=()))
        rendered = heatmap_overlay.render_keypoints(frame, kf, args.min_confidence)
        skeleton_frames[t] = frame_io.to_uint8(rendered)
    skeleton = frame_io.FrameSequence(frames=skeleton_frames, fps=heat.fps)
    result = heatmap_overlay.average_overlap(heat, skeleton)
    manifest_path = frame_io.write_sequence(result, args.out, notes="overlap")
    _write_run_config(
        args.out,
        "overlay",
        {
            "heatmap": args.heatmap,
            "keypoints": args.keypoints,
            "min_confidence": args.min_confidence,
        },
    )
    print(f"overlap written -> {manifest_path}")
    return 0


def cmd_extract(args) -> int:
    seq = _load_sequence(args.input)
    file, violations = labeling.load_label_file(args.labels)
    if file is None:
        raise CommandError(
            "invalid label file:\n" + "\n".join(str(v) for v in violations)
        )
    validated, violations = labeling.validate_label_file(
        file, (seq.width, seq.height), seq.count
    )
    if validated is None:
        raise CommandError(
            "label file fails validation:\n" + "\n".join(str(v) for v in violations)
        )
    items = []
    for region in validated.regions:
        pixels = labeling.rasterize_region(region, (seq.width, seq.height))
        if not pixels:
            raise CommandError(f"region {region.id}: rasterizes to no pixels")
        w = waveform.extract_waveform(seq, pixels, region.frame_range)
        w = waveform.Waveform(
            samples=w.samples,
            fps=w.fps,
            label=region.label,
            subject_id=args.subject_id,
            region_id=region.id,
        )
        if args.window_seconds:
            w = waveform.center_window(w, args.window_seconds)
        w = waveform.resample_to_length(w, args.feature_length)
        items.append(w)
    dataset = waveform.WaveformDataset(
        items=tuple(items), feature_length=args.feature_length
    )
    os.makedirs(args.out, exist_ok=True)
    dataset_path = os.path.join(args.out, "dataset.csv")
    knn.save_dataset_csv(dataset, dataset_path)
    waveform.export_mesh(items, os.path.join(args.out, "mesh.csv"))
    waveform.export_plot_data(items, os.path.join(args.out, "plot.csv"))
    _write_run_config(
        args.out,
        "extract",
        {
            "input": args.input,
            "labels": args.labels,
            "feature_length": args.feature_length,
            "window_seconds": args.window_seconds,
        },
    )
    print(f"extracted {len(items)} waveforms -> {dataset_path}")
    return 0


def cmd_train(args) -> int:
    dataset = knn.load_dataset_csv(args.data)
    model = knn.fit(dataset, args.k)
    os.makedirs(args.out, exist_ok=True)
    model_path = os.path.join(args.out, "model.json")
    with open(model_path, "w", encoding="utf-8") as fh:
        json.dump(
            {
                "k": model.k,
                "labels": [lb.value for lb in model.training_labels],
                "vectors": model.training_vectors.tolist(),
            },
            fh,
        )
    _write_run_config(args.out, "train", {"data": args.data, "k": args.k})
    print(f"trained k={args.k} model on {len(dataset.items)} waveforms -> {model_path}")
    return 0


def _load_model(path: str) -> knn.KnnModel:
    if not os.path.exists(path):
        raise CommandError(f"model not found: {path}")
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    return knn.KnnModel(
        training_vectors=np.asarray(raw["vectors"], dtype=np.float64),
        training_labels=tuple(labeling.MotionLabel.parse(v) for v in raw["labels"]),
        k=int(raw["k"]),
    )


def cmd_eval(args) -> int:
    model = _load_model(args.model)
    test = knn.load_dataset_csv(args.data)
    accuracy, cm = knn.evaluate(model, test)
    os.makedirs(args.out, exist_ok=True)
    knn.save_confusion_csv(cm, os.path.join(args.out, "confusion.csv"))
    recalls = {lb.value: r for lb, r in cm.per_class_recall().items()}
    with open(os.path.join(args.out, "results.json"), "w", encoding="utf-8") as fh:
        json.dump(
            {"accuracy": accuracy, "per_class_recall": recalls, "n_test": cm.total},
            fh,
            indent=2,
        )
    _write_run_config(args.out, "eval", {"model": args.model, "data": args.data})
    print(f"accuracy {accuracy:.4f} on {cm.total} test waveforms")
    for name, recall in recalls.items():
        print(f"  recall[{name}] = {recall:.4f}")
    return 0


def cmd_sweep(args) -> int:
    dataset = knn.load_dataset_csv(args.data)
    spec = knn.SplitSpec(train_fraction=args.train_fraction, seed=args.seed)
    results = knn.k_sweep(dataset, spec, args.k_values)
    os.makedirs(args.out, exist_ok=True)
    sweep_path = os.path.join(args.out, "sweep.csv")
    with open(sweep_path, "w", encoding="utf-8") as fh:
        fh.write("k,accuracy\n")
        for k, accuracy in results:
            fh.write(f"{k},{accuracy:.6f}\n")
    _write_run_config(
        args.out,
        "sweep",
        {
            "data": args.data,
            "k_values": args.k_values,
            "seed": args.seed,
            "train_fraction": args.train_fraction,
        },
    )
    for k, accuracy in results:
        print(f"k={k}: accuracy {accuracy:.4f}")
    return 0


def cmd_label_serve(args) -> int:
    from .server import LabelStore, create_app

    manifests = {}
    for kind in ("raw", "magnified", "heatmap", "overlap"):
        path = getattr(args, kind)
        if path:
            if not os.path.exists(path):
                raise CommandError(f"{kind} manifest not found: {path}")
            manifests[kind] = path
    if not manifests:
        raise CommandError("provide at least one of --raw/--magnified/--heatmap/--overlap")
    store = LabelStore(manifests, args.labels, args.keypoints)
    app = create_app(store, ui_dir=args.ui_dir)
    import uvicorn

    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="micromotion", description="Micro-motion video analysis toolkit"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("magnify", help="Eulerian video magnification")
    p.add_argument("--in", dest="input", required=True, help="input manifest path")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--alpha", type=float, default=10.0)
    p.add_argument("--levels", type=int, default=3)
    p.add_argument("--f-lo", type=float, default=0.5)
    p.add_argument("--f-hi", type=float, default=3.0)
    p.add_argument("--level-gain", type=float, nargs="+", default=None)
    p.set_defaults(func=cmd_magnify)

    p = sub.add_parser("heatmap", help="bitwise-OR motion heatmap")
    p.add_argument("--original", required=True)
    p.add_argument("--magnified", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_heatmap)

    p = sub.add_parser("overlay", help="average heatmap with keypoint render")
    p.add_argument("--heatmap", required=True)
    p.add_argument("--keypoints", default=None)
    p.add_argument("--original-dims", type=int, nargs=2, default=None,
                   metavar=("W", "H"), help="original dims for keypoint rescale")
    p.add_argument("--min-confidence", type=float,
                   default=heatmap_overlay.DEFAULT_MIN_CONFIDENCE)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_overlay)

    p = sub.add_parser("extract", help="labeled regions -> waveform dataset")
    p.add_argument("--in", dest="input", required=True, help="magnified manifest")
    p.add_argument("--labels", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--subject-id", default="")
    p.add_argument("--feature-length", type=int, default=waveform.DEFAULT_FEATURE_LENGTH)
    p.add_argument("--window-seconds", type=float, default=None)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("train", help="fit a kNN model")
    p.add_argument("--data", required=True)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("eval", help="evaluate a model on a dataset")
    p.add_argument("--model", required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("sweep", help="accuracy across k values")
    p.add_argument("--data", required=True)
    p.add_argument("--k-values", type=int, nargs="+", default=[1, 3, 5, 7, 9])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--train-fraction", type=float, default=0.7)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("label-serve", help="serve the labeling workflow locally")
    p.add_argument("--raw", default=None)
    p.add_argument("--magnified", default=None)
    p.add_argument("--heatmap", default=None)
    p.add_argument("--overlap", default=None)
    p.add_argument("--keypoints", default=None)
    p.add_argument("--labels", required=True, help="label file path for persistence")
    p.add_argument("--ui-dir", default=None, help="serve a built frontend at /ui")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8770)
    p.set_defaults(func=cmd_label_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CommandError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
