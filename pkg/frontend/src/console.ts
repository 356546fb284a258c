// The console session: connection state, command log, verdict feed,
// and playback, all driven by server responses and the event stream.

import { ApiClient, ApiError, type FetchLike } from "./api.js";
import { EventFeed } from "./events.js";
import { Playback } from "./playback.js";
import type {
  CommandResult,
  FeedEvent,
  SessionState,
  StepRecord,
  VerdictPayload,
  WorldSnapshot,
} from "./types.js";

export type ConnectionState = "connecting" | "connected" | "error";

export interface ConsoleOptions {
  baseUrl: string;
  world?: string | object;
  planner?: "mock" | "remote" | "replay";
  strategy?: "improved" | "baseline";
  fetchImpl?: FetchLike;
}

export interface CommandLogEntry {
  text: string;
  status: "completed" | "rejected";
}

export class ConsoleSession {
  connection: ConnectionState = "connecting";
  connectionError = "";
  sessionId = "";
  world: WorldSnapshot | null = null;
  prevWorld: WorldSnapshot | null = null;
  readonly commandLog: CommandLogEntry[] = [];
  readonly verdictFeed: VerdictPayload[] = [];
  readonly feed = new EventFeed();
  readonly playback = new Playback();
  planner: "mock" | "remote" | "replay";
  strategy: "improved" | "baseline";
  views: ("top" | "front" | "side")[] = ["top", "front"];

  private readonly api: ApiClient;

  private constructor(opts: ConsoleOptions) {
    this.api = new ApiClient(opts.baseUrl, opts.fetchImpl);
    this.planner = opts.planner ?? "mock";
    this.strategy = opts.strategy ?? "improved";
  }

  static async connect(opts: ConsoleOptions): Promise<ConsoleSession> {
    const session = new ConsoleSession(opts);
    try {
      const created = await session.api.createSession(
        opts.world ?? "obstacle",
        session.planner,
        session.strategy,
      );
      session.sessionId = created.session_id;
      session.world = created.state.world;
      session.connection = "connected";
    } catch (err) {
      session.connection = "error";
      session.connectionError = err instanceof Error ? err.message : String(err);
    }
    return session;
  }

  /** Pull any events after the last seen sequence number; dedupe by seq. */
  async refreshEvents(): Promise<FeedEvent[]> {
    const batch = await this.api.getEvents(this.sessionId, this.feed.lastSeq);
    return this.ingest(batch);
  }

  /** Reconnect after a drop: resumes from the last sequence number. */
  async reconnect(): Promise<FeedEvent[]> {
    this.connection = "connecting";
    try {
      const fresh = await this.refreshEvents();
      this.connection = "connected";
      return fresh;
    } catch (err) {
      this.connection = "error";
      this.connectionError = err instanceof Error ? err.message : String(err);
      return [];
    }
  }

  private ingest(batch: FeedEvent[]): FeedEvent[] {
    const fresh = this.feed.ingest(batch);
    for (const event of fresh) {
      if (event.kind === "verdict") {
        this.verdictFeed.push(event.data as unknown as VerdictPayload);
      } else if (event.kind === "steps") {
        this.playback.enqueue((event.data as { steps: StepRecord[] }).steps);
      }
    }
    return fresh;
  }

  async sendCommand(text: string): Promise<CommandResult> {
    if (!text.trim()) {
      throw new Error("command text is empty");
    }
    if (this.connection !== "connected") {
      throw new Error("not connected");
    }
    this.prevWorld = this.world;
    const result = await this.api.postCommand(this.sessionId, text);
    this.commandLog.push({ text, status: result.status });
    // rejections surface through the event feed's verdict entries, which
    // are already seq-deduplicated; commands are synchronous server-side,
    // so the verdict is guaranteed to be in the backlog by now
    await this.refreshEvents();
    const state = await this.api.getState(this.sessionId);
    this.world = state.world;
    return result;
  }

  async refreshState(): Promise<SessionState> {
    const state = await this.api.getState(this.sessionId);
    this.world = state.world;
    return state;
  }

  /**
   * Flip a console setting. Views apply to rendering immediately;
   * planner/strategy apply to the next session created from this console
   * (the server binds them at session creation).
   */
  toggle(kind: "strategy" | "planner" | "views", value: string | string[]): void {
    if (kind === "strategy") {
      this.strategy = value as "improved" | "baseline";
    } else if (kind === "planner") {
      this.planner = value as "mock" | "remote" | "replay";
    } else {
      this.views = (Array.isArray(value) ? value : [value]) as (
        | "top"
        | "front"
        | "side"
      )[];
    }
  }

  /** Session log as a downloadable JSON document. */
  exportTranscript(): string {
    return JSON.stringify(
      {
        session_id: this.sessionId,
        planner: this.planner,
        strategy: this.strategy,
        commands: this.commandLog,
        verdicts: this.verdictFeed,
        events: this.feed.events,
      },
      null,
      2,
    );
  }
}

export { ApiError };
