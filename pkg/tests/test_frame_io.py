"""Frame I/O: manifest round-trips, padding, bilinear resize."""

import hashlib
import json
import os

import numpy as np
import pytest

from micromotion import frame_io
from micromotion.frame_io import (
    FrameSequence,
    ManifestError,
    load_sequence,
    pad_to_levels,
    padded_dim,
    resize_to,
    write_sequence,
)

from conftest import constant_video, make_sequence, random_video


def write_fixture(tmp_path, frames, fps=30.0):
    seq = make_sequence(frames, fps)
    return write_sequence(seq, str(tmp_path / "seq")), seq


def test_load_minimal_sequence(tmp_path):
    manifest_path, _ = write_fixture(tmp_path, np.zeros((2, 4, 4, 3), dtype=np.uint8))
    seq = load_sequence(manifest_path)
    assert (seq.width, seq.height, seq.count, seq.fps) == (4, 4, 2, 30.0)


def test_load_missing_frame_names_file(tmp_path):
    manifest_path, _ = write_fixture(tmp_path, np.zeros((3, 4, 4, 3), dtype=np.uint8))
    os.remove(tmp_path / "seq" / "frame_000001.png")
    with pytest.raises(ManifestError, match="frame 1.*frame_000001.png"):
        load_sequence(manifest_path)


def test_load_dimension_mismatch_names_index(tmp_path):
    manifest_path, _ = write_fixture(tmp_path, np.zeros((2, 4, 4, 3), dtype=np.uint8))
    from PIL import Image

    Image.new("RGB", (5, 4)).save(tmp_path / "seq" / "frame_000001.png")
    with pytest.raises(ManifestError, match="frame 1"):
        load_sequence(manifest_path)


def test_load_rejects_bad_fps(tmp_path):
    manifest_path, _ = write_fixture(tmp_path, np.zeros((2, 4, 4, 3), dtype=np.uint8))
    raw = json.loads(open(manifest_path).read())
    raw["fps"] = 0
    with open(manifest_path, "w") as fh:
        json.dump(raw, fh)
    with pytest.raises(ManifestError, match="fps"):
        load_sequence(manifest_path)


def test_300_frame_roundtrip_checksum(tmp_path, rng):
    frames = rng.integers(0, 256, (300, 6, 8, 3), dtype=np.uint8)
    manifest_path, seq = write_fixture(tmp_path, frames)
    loaded = load_sequence(manifest_path)
    assert loaded.count == 300
    assert loaded.fps == 30.0
    assert abs(loaded.count / loaded.fps - 10.0) < 1e-9
    digest = hashlib.sha256(seq.frames.tobytes()).hexdigest()
    assert hashlib.sha256(loaded.frames.tobytes()).hexdigest() == digest


def test_write_to_unwritable_target_fails(tmp_path):
    seq = constant_video(7)
    target = tmp_path / "blocked"
    target.write_text("not a directory")
    with pytest.raises(OSError):
        write_sequence(seq, str(target))


def test_sequence_invariants():
    with pytest.raises(ValueError):
        FrameSequence(frames=np.zeros((1, 4, 4, 3), dtype=np.uint8), fps=30.0)
    with pytest.raises(ValueError):
        FrameSequence(frames=np.zeros((2, 4, 4, 3), dtype=np.uint8), fps=0.0)
    with pytest.raises(ValueError):
        FrameSequence(frames=np.zeros((2, 4, 4), dtype=np.uint8), fps=30.0)


def test_padded_dim_enumeration():
    # smallest multiple of 2^levels that is >= size, by direct enumeration
    for levels in (1, 2, 3):
        step = 2**levels
        for size in range(1, 40):
            expected = next(v for v in range(size, size + step) if v % step == 0)
            assert padded_dim(size, levels) == expected


def test_pad_already_divisible_unchanged():
    seq = constant_video(9, h=8, w=8)
    out = pad_to_levels(seq, 3)
    assert out is seq


def test_pad_7x8_adds_one_zero_column():
    seq = make_sequence(np.full((2, 8, 7, 3), 200, dtype=np.uint8))
    out = pad_to_levels(seq, 3)
    assert (out.width, out.height) == (8, 8)
    np.testing.assert_array_equal(out.frames[:, :, :7], seq.frames)
    np.testing.assert_array_equal(out.frames[:, :, 7], 0)


def test_pad_9x10_to_16x16():
    seq = make_sequence(np.ones((2, 10, 9, 3), dtype=np.uint8))
    out = pad_to_levels(seq, 3)
    assert (out.width, out.height) == (16, 16)


def test_pad_idempotent(rng):
    seq = random_video(rng, h=10, w=9)
    once = pad_to_levels(seq, 3)
    twice = pad_to_levels(once, 3)
    np.testing.assert_array_equal(once.frames, twice.frames)


def test_pad_never_shrinks_excess_bounded(rng):
    for w, h in [(1, 1), (5, 17), (31, 33)]:
        seq = make_sequence(np.zeros((2, h, w, 3), dtype=np.uint8))
        out = pad_to_levels(seq, 3)
        assert out.width >= w and out.height >= h
        assert out.width - w < 8 and out.height - h < 8


def test_resize_identity(rng):
    seq = random_video(rng, h=8, w=8)
    out = resize_to(seq, 8, 8)
    np.testing.assert_array_equal(out.frames, seq.frames)


def test_resize_constant_preserved():
    seq = constant_video(128, h=4, w=4)
    out = resize_to(seq, 8, 8)
    np.testing.assert_array_equal(out.frames, 128)
    assert out.fps == seq.fps and out.count == seq.count


def test_resize_checkerboard_corners():
    board = np.array([[0, 255], [255, 0]], dtype=np.uint8)
    frames = np.stack([np.stack([board] * 3, axis=-1)] * 2)
    out = resize_to(make_sequence(frames), 4, 4)
    # endpoint-aligned grid keeps the four corner samples exact
    assert out.frames[0, 0, 0, 0] == 0
    assert out.frames[0, 0, 3, 0] == 255
    assert out.frames[0, 3, 0, 0] == 255
    assert out.frames[0, 3, 3, 0] == 0


def test_resize_rejects_zero_dims():
    with pytest.raises(ValueError):
        resize_to(constant_video(1), 0, 8)


def test_float_uint8_conversion_roundtrip(rng):
    frames = rng.integers(0, 256, (2, 4, 4, 3), dtype=np.uint8)
    np.testing.assert_array_equal(frame_io.to_uint8(frame_io.to_float(frames)), frames)
