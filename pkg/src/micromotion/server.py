"""Local labeling service: serves frames and keypoints, accepts label files.

Endpoints (all JSON UTF-8 except frame bytes):
  GET  /video/meta
  GET  /frames/{kind}/{index}      kind in raw|magnified|heatmap|overlap
  GET  /labels
  POST /labels                     LabelFile JSON, validated before persisting
  GET  /keypoints/{index}
"""

from __future__ import annotations

import os
import threading

from fastapi import FastAPI, Response
from fastapi.responses import JSONResponse

from . import heatmap_overlay, labeling
from .frame_io import load_manifest

FRAME_KINDS = ("raw", "magnified", "heatmap", "overlap")


class LabelStore:
    """Filesystem-backed state for one labeling session; single-writer saves."""

    def __init__(
        self,
        manifests: dict[str, str],
        labels_path: str,
        keypoint_track_path: str | None = None,
    ):
        unknown = set(manifests) - set(FRAME_KINDS)
        if unknown:
            raise ValueError(f"unknown frame kinds: {sorted(unknown)}")
        if not manifests:
            raise ValueError("need at least one frame-sequence manifest")
        self.manifests = {k: load_manifest(p) for k, p in manifests.items()}
        self.directories = {
            k: os.path.dirname(os.path.abspath(p)) for k, p in manifests.items()
        }
        self.labels_path = labels_path
        self.track = (
            heatmap_overlay.load_keypoint_track(keypoint_track_path)
            if keypoint_track_path
            else []
        )
        self._write_lock = threading.Lock()
        # frame geometry from the first kind, for label validation
        first = next(iter(manifests))
        from PIL import Image

        with Image.open(self._frame_path(first, 0)) as im:
            self.width, self.height = im.size
        self.frame_count = self.manifests[first].frame_count
        self.fps = self.manifests[first].fps

    def _frame_path(self, kind: str, index: int) -> str:
        return self.manifests[kind].frame_path(self.directories[kind], index)

    def frame_bytes(self, kind: str, index: int) -> bytes | None:
        if kind not in self.manifests:
            return None
        if not 0 <= index < self.manifests[kind].frame_count:
            return None
        path = self._frame_path(kind, index)
        if not os.path.exists(path):
            return None
        with open(path, "rb") as fh:
            return fh.read()

    def load_labels(self) -> dict | None:
        if not os.path.exists(self.labels_path):
            return None
        file, violations = labeling.load_label_file(self.labels_path)
        if file is None:
            return None
        return labeling.label_file_to_json(file)

    def save_labels(self, raw: object) -> list[labeling.Violation]:
        file, violations = labeling.parse_label_file(raw)
        if file is None:
            return violations
        validated, violations = labeling.validate_label_file(
            file, (self.width, self.height), self.frame_count
        )
        if validated is None:
            return violations
        with self._write_lock:
            labeling.save_label_file(validated, self.labels_path)
        return []


def create_app(store: LabelStore, ui_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="micromotion label service")

    if ui_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=ui_dir, html=True), name="ui")

    @app.get("/video/meta")
    def video_meta():
        return {
            "width": store.width,
            "height": store.height,
            "fps": store.fps,
            "frame_count": store.frame_count,
            "kinds": sorted(store.manifests),
            "has_keypoints": bool(store.track),
        }

    @app.get("/frames/{kind}/{index}")
    def get_frame(kind: str, index: int):
        if kind not in FRAME_KINDS:
            return JSONResponse({"error": f"unknown kind {kind!r}"}, status_code=404)
        data = store.frame_bytes(kind, index)
        if data is None:
            return JSONResponse(
                {"error": f"no frame {index} for kind {kind!r}"}, status_code=404
            )
        return Response(content=data, media_type="image/png")

    @app.get("/labels")
    def get_labels():
        labels = store.load_labels()
        if labels is None:
            return {"video_ref": "", "author": "", "created_at": "", "regions": []}
        return labels

    @app.post("/labels")
    def post_labels(body: dict):
        violations = store.save_labels(body)
        if violations:
            return JSONResponse(
                {
                    "error": "validation failed",
                    "violations": [
                        {"region_id": v.region_id, "field": v.field, "message": v.message}
                        for v in violations
                    ],
                },
                status_code=422,
            )
        return {"status": "saved", "regions": len(body.get("regions", []))}

    @app.get("/keypoints/{index}")
    def get_keypoints(index: int):
        for kf in store.track:
            if kf.frame_index == index:
                return {
                    "frame_index": index,
                    "points": [
                        {"x": p.x, "y": p.y, "confidence": p.confidence}
                        for p in kf.points
                    ],
                }
        return {"frame_index": index, "points": []}

    return app
