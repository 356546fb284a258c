// Thin HTTP client for the session service. The console talks to the
// service and nothing else; it never reaches a planner directly.

import { parseSse } from "./events.js";
import type { CommandResult, FeedEvent, SessionState } from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
  ) {
    super(message);
  }
}

export class ApiClient {
  constructor(
    readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request(path: string, init?: RequestInit): Promise<Response> {
    const resp = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    if (!resp.ok) {
      throw new ApiError(resp.status, `${init?.method ?? "GET"} ${path}: HTTP ${resp.status}`);
    }
    return resp;
  }

  async createSession(
    world: string | object,
    planner: string,
    strategy: string,
  ): Promise<{ session_id: string; state: SessionState }> {
    const resp = await this.request("/sessions", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ world, planner, strategy }),
    });
    return (await resp.json()) as { session_id: string; state: SessionState };
  }

  async postCommand(sessionId: string, text: string): Promise<CommandResult> {
    const resp = await this.request(`/sessions/${sessionId}/command`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ text }),
    });
    return (await resp.json()) as CommandResult;
  }

  async getState(sessionId: string): Promise<SessionState> {
    const resp = await this.request(`/sessions/${sessionId}/state`);
    return (await resp.json()) as SessionState;
  }

  async getEvents(sessionId: string, since: number): Promise<FeedEvent[]> {
    const resp = await this.request(`/sessions/${sessionId}/events?since=${since}`);
    return parseSse(await resp.text());
  }
}
