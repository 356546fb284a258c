// Server-sent event parsing and the deduplicating feed.
//
// The service streams the backlog after ?since=N and closes; clients
// resume by reconnecting with the last sequence number they saw.
// Delivery is at-least-once, so the feed drops anything with a sequence
// number it already ingested.

import type { FeedEvent } from "./types.js";

export function parseSse(text: string): FeedEvent[] {
  const events: FeedEvent[] = [];
  for (const chunk of text.split("\n\n")) {
    if (!chunk.trim()) continue;
    let id = 0;
    let kind = "";
    let data: Record<string, unknown> = {};
    for (const line of chunk.split("\n")) {
      const sep = line.indexOf(": ");
      if (sep < 0) continue;
      const field = line.slice(0, sep);
      const value = line.slice(sep + 2);
      if (field === "id") id = Number(value);
      else if (field === "event") kind = value;
      else if (field === "data") data = JSON.parse(value) as Record<string, unknown>;
    }
    if (id > 0 && kind) {
      events.push({ seq: id, kind: kind as FeedEvent["kind"], data });
    }
  }
  return events;
}

export class EventFeed {
  readonly events: FeedEvent[] = [];
  private seen = new Set<number>();

  get lastSeq(): number {
    return this.events.length ? this.events[this.events.length - 1].seq : 0;
  }

  /** Ingest a batch; returns only the events that were actually new. */
  ingest(batch: FeedEvent[]): FeedEvent[] {
    const fresh: FeedEvent[] = [];
    for (const event of batch) {
      if (this.seen.has(event.seq)) continue;
      this.seen.add(event.seq);
      this.events.push(event);
      fresh.push(event);
    }
    this.events.sort((a, b) => a.seq - b.seq);
    return fresh;
  }
}
