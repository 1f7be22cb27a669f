/** Fetch client for the session service; the only channel to the engine. */

import type { CatalogItem, Snapshot } from "./model.js";

export interface HintEntry {
  vertex: number;
  completable: boolean;
}

export interface HintResponse {
  depth: number;
  hints: HintEntry[];
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly payload: Record<string, unknown>,
  ) {
    super(`${status} ${String(payload["error"] ?? "request failed")}`);
  }
}

type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class Client {
  constructor(
    private readonly base: string,
    private readonly fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.headers = { "content-type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const resp = await this.fetchFn(this.base + path, init);
    const payload = await resp.json().catch(() => ({}));
    if (!resp.ok) throw new ApiError(resp.status, payload);
    return payload as T;
  }

  catalog(): Promise<CatalogItem[]> {
    return this.request("GET", "/catalog");
  }

  createSession(body: { catalog?: string; quiver?: unknown }): Promise<{ id: string; snapshot: Snapshot }> {
    return this.request("POST", "/sessions", body);
  }

  getState(id: string): Promise<Snapshot> {
    return this.request("GET", `/sessions/${id}`);
  }

  mutate(id: string, vertex: number): Promise<Snapshot> {
    return this.request("POST", `/sessions/${id}/mutate`, { vertex });
  }

  undo(id: string): Promise<Snapshot> {
    return this.request("POST", `/sessions/${id}/undo`);
  }

  hints(id: string, depth?: number): Promise<HintResponse> {
    const query = depth === undefined ? "" : `?depth=${depth}`;
    return this.request("GET", `/sessions/${id}/hints${query}`);
  }
}
