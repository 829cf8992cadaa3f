"""Label service HTTP contract via FastAPI's test client."""

import json

import pytest
from fastapi.testclient import TestClient

from micromotion.frame_io import write_sequence
from micromotion.server import LabelStore, create_app

from conftest import random_video


@pytest.fixture
def client(tmp_path, rng):
    seq = random_video(rng, count=3, h=16, w=16)
    manifest = write_sequence(seq, str(tmp_path / "overlap"))
    raw_manifest = write_sequence(seq, str(tmp_path / "raw"))
    track = [{"frame_index": 1, "points": [{"x": 4, "y": 5, "confidence": 0.7}]}]
    track_path = tmp_path / "track.json"
    track_path.write_text(json.dumps(track))
    store = LabelStore(
        {"overlap": manifest, "raw": raw_manifest},
        labels_path=str(tmp_path / "labels.json"),
        keypoint_track_path=str(track_path),
    )
    return TestClient(create_app(store))


def test_video_meta(client):
    meta = client.get("/video/meta").json()
    assert meta["width"] == 16 and meta["height"] == 16
    assert meta["frame_count"] == 3
    assert meta["kinds"] == ["overlap", "raw"]


def test_get_frame_png(client):
    resp = client.get("/frames/overlap/0")
    assert resp.status_code == 200
    assert resp.headers["content-type"] == "image/png"
    assert resp.content.startswith(b"\x89PNG")


def test_get_frame_out_of_range(client):
    assert client.get("/frames/overlap/99").status_code == 404
    assert client.get("/frames/magnified/0").status_code == 404
    assert client.get("/frames/bogus/0").status_code == 404


def test_labels_roundtrip(client):
    assert client.get("/labels").json()["regions"] == []
    payload = {
        "video_ref": "overlap",
        "author": "tester",
        "created_at": "2026-01-01T00:00:00Z",
        "regions": [
            {
                "id": "sq",
                "label": "vein",
                "polygon": [[2, 2], [6, 2], [6, 6], [2, 6]],
                "frame_range": [0, 3],
            }
        ],
    }
    resp = client.post("/labels", json=payload)
    assert resp.status_code == 200, resp.text
    fetched = client.get("/labels").json()
    assert fetched["regions"][0]["id"] == "sq"
    assert fetched["regions"][0]["polygon"] == [[2, 2], [6, 2], [6, 6], [2, 6]]


def test_post_invalid_labels_rejected_with_region(client):
    payload = {
        "video_ref": "overlap",
        "regions": [
            {
                "id": "oob",
                "label": "vein",
                "polygon": [[0, 0], [99, 0], [99, 5]],
                "frame_range": [0, 3],
            }
        ],
    }
    resp = client.post("/labels", json=payload)
    assert resp.status_code == 422
    violations = resp.json()["violations"]
    assert violations and violations[0]["region_id"] == "oob"


def test_keypoints_endpoint(client):
    hit = client.get("/keypoints/1").json()
    assert hit["points"] == [{"x": 4.0, "y": 5.0, "confidence": 0.7}]
    miss = client.get("/keypoints/0").json()
    assert miss["points"] == []
