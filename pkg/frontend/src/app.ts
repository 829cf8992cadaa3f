import { LabelApi } from "./api.js";
import { fitTransform, pixelToCanvas, ViewTransform } from "./coords.js";
import {
  addVertex,
  canClose,
  closeDraft,
  draftToRegion,
  newDraft,
  RegionDraft,
} from "./polygonDraft.js";
import {
  FrameKind,
  LABEL_COLORS,
  LabelFile,
  MOTION_LABELS,
  MotionLabel,
  Region,
  VideoMeta,
} from "./types.js";

const api = new LabelApi();

interface UiState {
  meta: VideoMeta;
  kind: FrameKind;
  frame: number;
  regions: Region[];
  draft: RegionDraft | null;
  activeLabel: MotionLabel;
  transform: ViewTransform;
  showKeypoints: boolean;
  playTimer: number | null;
  loopRange: [number, number];
}

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

async function init() {
  const meta = await api.meta();
  const canvas = el<HTMLCanvasElement>("view");
  const transform = fitTransform(meta.width, meta.height, canvas.width, canvas.height);
  const state: UiState = {
    meta,
    kind: (meta.kinds.includes("overlap") ? "overlap" : meta.kinds[0]) as FrameKind,
    frame: 0,
    regions: (await api.labels()).regions,
    draft: null,
    activeLabel: "hand_finger",
    transform,
    showKeypoints: false,
    playTimer: null,
    loopRange: [0, meta.frame_count],
  };

  buildKindButtons(state);
  buildLabelPalette(state);
  wireScrubber(state);
  wireCanvas(state, canvas);
  wireButtons(state);
  await render(state);
}

function buildKindButtons(state: UiState) {
  const bar = el<HTMLDivElement>("kinds");
  for (const kind of state.meta.kinds) {
    const btn = document.createElement("button");
    btn.textContent = kind;
    btn.onclick = async () => {
      state.kind = kind as FrameKind;
      await render(state);
    };
    bar.appendChild(btn);
  }
}

function buildLabelPalette(state: UiState) {
  const bar = el<HTMLDivElement>("palette");
  for (const label of MOTION_LABELS) {
    const btn = document.createElement("button");
    btn.textContent = label;
    btn.style.borderColor = LABEL_COLORS[label];
    btn.onclick = () => {
      state.activeLabel = label;
      if (state.draft && !state.draft.closed) {
        state.draft = { ...state.draft, label };
      }
      statusLine(`active label: ${label}`);
    };
    bar.appendChild(btn);
  }
}

function wireScrubber(state: UiState) {
  const slider = el<HTMLInputElement>("scrub");
  slider.max = String(state.meta.frame_count - 1);
  slider.oninput = async () => {
    state.frame = Number(slider.value);
    await render(state);
  };
}

function wireCanvas(state: UiState, canvas: HTMLCanvasElement) {
  canvas.onclick = async (ev) => {
    const rect = canvas.getBoundingClientRect();
    const p = { x: ev.clientX - rect.left, y: ev.clientY - rect.top };
    if (!state.draft) {
      state.draft = newDraft(state.activeLabel, [0, state.meta.frame_count]);
    }
    state.draft = addVertex(state.draft, p);
    await render(state);
  };
  canvas.ondblclick = async () => {
    if (state.draft && canClose(state.draft)) {
      state.draft = closeDraft(state.draft);
      const id = `region_${Date.now()}`;
      state.regions = [...state.regions, draftToRegion(state.draft, id, state.transform)];
      state.draft = null;
      statusLine(`region ${id} added (unsaved)`);
      await render(state);
    }
  };
}

function wireButtons(state: UiState) {
  el<HTMLButtonElement>("save").onclick = async () => {
    const file: LabelFile = {
      video_ref: "",
      author: "label-ui",
      created_at: new Date().toISOString(),
      regions: state.regions,
    };
    try {
      const rejections = await api.saveLabels(file);
      if (rejections.length === 0) {
        statusLine(`saved ${state.regions.length} regions`);
      } else {
        statusLine(
          "rejected: " +
            rejections.map((r) => `${r.region_id}: ${r.field}: ${r.message}`).join("; ")
        );
      }
    } catch (err) {
      statusLine(`save error: ${err}`);
    }
  };
  el<HTMLButtonElement>("discard").onclick = async () => {
    state.draft = null;
    await render(state);
  };
  el<HTMLButtonElement>("keypoints").onclick = async () => {
    state.showKeypoints = !state.showKeypoints;
    await render(state);
  };
  el<HTMLButtonElement>("play").onclick = () => togglePlayback(state);
}

/** Loop playback over the selected range so periodic micro-motions are visible. */
function togglePlayback(state: UiState) {
  if (state.playTimer !== null) {
    window.clearInterval(state.playTimer);
    state.playTimer = null;
    return;
  }
  const [start, end] = state.loopRange;
  state.playTimer = window.setInterval(async () => {
    state.frame = state.frame + 1 >= end ? start : state.frame + 1;
    el<HTMLInputElement>("scrub").value = String(state.frame);
    await render(state);
  }, 1000 / state.meta.fps);
}

function statusLine(text: string) {
  el<HTMLDivElement>("status").textContent = text;
}

async function render(state: UiState) {
  const canvas = el<HTMLCanvasElement>("view");
  const ctx = canvas.getContext("2d")!;
  const img = new Image();
  img.src = api.frameUrl(state.kind, state.frame);
  try {
    await img.decode();
  } catch {
    statusLine(`frame ${state.frame} (${state.kind}) unavailable`);
    return;
  }
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  const t = state.transform;
  ctx.drawImage(
    img,
    t.offsetX,
    t.offsetY,
    state.meta.width * t.scale,
    state.meta.height * t.scale
  );
  el<HTMLSpanElement>("counter").textContent = `${state.frame} / ${
    state.meta.frame_count - 1
  }`;

  for (const region of state.regions) drawRegion(ctx, region, t);
  if (state.draft) drawDraft(ctx, state.draft);
  if (state.showKeypoints) {
    for (const kp of await api.keypoints(state.frame)) {
      const c = pixelToCanvas(kp, t);
      ctx.beginPath();
      ctx.arc(c.x, c.y, 4, 0, Math.PI * 2);
      ctx.fillStyle = "#ffff00";
      ctx.fill();
    }
  }
}

function drawRegion(ctx: CanvasRenderingContext2D, region: Region, t: ViewTransform) {
  ctx.beginPath();
  region.polygon.forEach(([x, y], i) => {
    const c = pixelToCanvas({ x, y }, t);
    if (i === 0) ctx.moveTo(c.x, c.y);
    else ctx.lineTo(c.x, c.y);
  });
  ctx.closePath();
  ctx.strokeStyle = LABEL_COLORS[region.label];
  ctx.lineWidth = 2;
  ctx.stroke();
}

function drawDraft(ctx: CanvasRenderingContext2D, draft: RegionDraft) {
  ctx.beginPath();
  draft.vertices.forEach((v, i) => {
    if (i === 0) ctx.moveTo(v.x, v.y);
    else ctx.lineTo(v.x, v.y);
  });
  ctx.strokeStyle = LABEL_COLORS[draft.label];
  ctx.setLineDash([4, 3]);
  ctx.stroke();
  ctx.setLineDash([]);
  for (const v of draft.vertices) {
    ctx.beginPath();
    ctx.arc(v.x, v.y, 3, 0, Math.PI * 2);
    ctx.fillStyle = LABEL_COLORS[draft.label];
    ctx.fill();
  }
}

init().catch((err) => statusLine(`init failed: ${err}`));
