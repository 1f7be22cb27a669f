/**
 * Browser entry point.  All state lives in the backend session; this file
 * just renders snapshots and forwards clicks.
 */

import { ApiError, Client } from "./api.js";
import { computeLayout } from "./layout.js";
import type { Snapshot } from "./model.js";
import { toViewModel } from "./model.js";
import { svgMarkup } from "./render.js";

const WIDTH = 640;
const HEIGHT = 480;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

const baseInput = el<HTMLInputElement>("base-url");
const catalogSelect = el<HTMLSelectElement>("catalog");
const loadButton = el<HTMLButtonElement>("load");
const pasteArea = el<HTMLTextAreaElement>("paste");
const loadPasteButton = el<HTMLButtonElement>("load-paste");
const undoButton = el<HTMLButtonElement>("undo");
const hintsBox = el<HTMLInputElement>("hints");
const canvas = el<HTMLDivElement>("canvas");
const banner = el<HTMLDivElement>("banner");
const sequenceDiv = el<HTMLDivElement>("sequence");
const toast = el<HTMLDivElement>("toast");

let client = new Client(baseInput.value);
let sessionId: string | null = null;
let current: Snapshot | null = null;
let busy = false;
let toastTimer: ReturnType<typeof setTimeout> | undefined;

function showToast(message: string): void {
  toast.textContent = message;
  toast.classList.add("visible");
  clearTimeout(toastTimer);
  toastTimer = setTimeout(() => toast.classList.remove("visible"), 2600);
}

async function hintMap(snap: Snapshot): Promise<Map<number, boolean> | undefined> {
  if (!hintsBox.checked || !sessionId || snap.status !== "in-progress") return undefined;
  const reply = await client.hints(sessionId);
  const map = new Map<number, boolean>();
  for (const entry of reply.hints) map.set(entry.vertex, entry.completable);
  return map;
}

async function render(snap: Snapshot): Promise<void> {
  current = snap;
  const vm = toViewModel(snap, await hintMap(snap));
  const positions = computeLayout(vm, WIDTH, HEIGHT);
  canvas.innerHTML = svgMarkup(vm, positions, WIDTH, HEIGHT);
  sequenceDiv.textContent = vm.sequence.length
    ? `so far: ${vm.sequence.join(", ")}`
    : "no mutations yet";
  banner.textContent = vm.banner ?? "";
  banner.classList.toggle("visible", vm.banner !== null);
  undoButton.disabled = vm.sequence.length === 0;
}

async function guarded(action: () => Promise<void>): Promise<void> {
  if (busy) return;
  busy = true;
  try {
    await action();
  } catch (err) {
    if (err instanceof ApiError) {
      const payload = err.payload as { error?: string; c_vector?: number[] };
      if (payload.error === "not_green") {
        showToast(`red vertex: c-vector [${(payload.c_vector ?? []).join(", ")}]`);
      } else {
        showToast(payload.error ?? `request failed (${err.status})`);
      }
    } else {
      showToast(err instanceof Error ? err.message : String(err));
    }
  } finally {
    busy = false;
  }
}

async function startSession(source: { catalog?: string; quiver?: string }): Promise<void> {
  client = new Client(baseInput.value.trim() || "http://127.0.0.1:8340");
  const created = await client.createSession(source);
  sessionId = created.id;
  await render(created.snapshot);
}

async function populateCatalog(): Promise<void> {
  const items = await client.catalog();
  catalogSelect.innerHTML = "";
  for (const item of items) {
    const option = document.createElement("option");
    option.value = item.name;
    option.textContent = `${item.name} (${item.description})`;
    catalogSelect.append(option);
  }
}

loadButton.addEventListener("click", () => {
  void guarded(() => startSession({ catalog: catalogSelect.value }));
});

loadPasteButton.addEventListener("click", () => {
  const text = pasteArea.value.trim();
  if (!text) {
    showToast("paste a quiver first");
    return;
  }
  void guarded(() => startSession({ quiver: text }));
});

undoButton.addEventListener("click", () => {
  void guarded(async () => {
    if (!sessionId) return;
    await render(await client.undo(sessionId));
  });
});

hintsBox.addEventListener("change", () => {
  void guarded(async () => {
    if (current) await render(current);
  });
});

canvas.addEventListener("click", (event) => {
  const target = (event.target as Element).closest("[data-vertex]");
  if (!target || !target.classList.contains("clickable")) return;
  const vertex = Number(target.getAttribute("data-vertex"));
  void guarded(async () => {
    if (!sessionId) return;
    await render(await client.mutate(sessionId, vertex));
  });
});

void guarded(async () => {
  await populateCatalog();
  if (catalogSelect.value) await startSession({ catalog: catalogSelect.value });
});
