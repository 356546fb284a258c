import { describe, expect, it } from "vitest";

import { ConsoleSession } from "../src/console.js";
import type { FetchLike } from "../src/api.js";

const WORLD = {
  ee: { pos: [0, 0, 0], half_extents: [5, 5, 5], gripper: "open" },
  grasped: null,
  tick: 0,
  force_z: 0,
  objects: [],
  zones: [],
};

function fakeService(): { fetchImpl: FetchLike; posted: string[] } {
  const posted: string[] = [];
  const sse =
    'id: 1\nevent: command_accepted\ndata: {"kind":"command_accepted","text":"hi"}\n\n' +
    'id: 2\nevent: verdict\ndata: {"kind":"verdict","severity":"reject","summary":"No.","reason":"hazard; not recommended","source":"planner","tick":null,"text":"Action refused.","short":"No."}\n\n' +
    'id: 3\nevent: done\ndata: {"kind":"done","status":"rejected"}\n\n';
  const fetchImpl: FetchLike = async (input, init) => {
    const url = String(input);
    if (url.endsWith("/sessions") && init?.method === "POST") {
      return new Response(
        JSON.stringify({
          session_id: "s1",
          state: { session_id: "s1", world: WORLD, last_seq: 0, commands: [] },
        }),
        { status: 200 },
      );
    }
    if (url.includes("/command")) {
      posted.push(JSON.parse(String(init?.body)).text);
      return new Response(
        JSON.stringify({ status: "rejected", last_seq: 3 }),
        { status: 200 },
      );
    }
    if (url.includes("/events")) {
      return new Response(sse, { status: 200 });
    }
    if (url.includes("/state")) {
      return new Response(
        JSON.stringify({ session_id: "s1", world: WORLD, last_seq: 3, commands: [] }),
        { status: 200 },
      );
    }
    return new Response("not found", { status: 404 });
  };
  return { fetchImpl, posted };
}

describe("ConsoleSession", () => {
  it("connects and records rejected commands with visible verdicts", async () => {
    const { fetchImpl, posted } = fakeService();
    const session = await ConsoleSession.connect({ baseUrl: "http://svc", fetchImpl });
    expect(session.connection).toBe("connected");

    const result = await session.sendCommand("do something hazardous");
    expect(posted).toEqual(["do something hazardous"]);
    expect(result.status).toBe("rejected");
    expect(session.commandLog).toEqual([
      { text: "do something hazardous", status: "rejected" },
    ]);
    expect(session.verdictFeed).toHaveLength(1);
    expect(session.verdictFeed[0].severity).toBe("reject");

    // a second overlapping pull must not duplicate the verdict card
    await session.refreshEvents();
    expect(session.verdictFeed).toHaveLength(1);
  });

  it("rejects empty command text client-side", async () => {
    const { fetchImpl } = fakeService();
    const session = await ConsoleSession.connect({ baseUrl: "http://svc", fetchImpl });
    await expect(session.sendCommand("   ")).rejects.toThrow("empty");
  });

  it("toggles strategy, planner, and views", async () => {
    const { fetchImpl } = fakeService();
    const session = await ConsoleSession.connect({ baseUrl: "http://svc", fetchImpl });
    session.toggle("strategy", "baseline");
    session.toggle("planner", "replay");
    session.toggle("views", ["top"]);
    expect(session.strategy).toBe("baseline");
    expect(session.planner).toBe("replay");
    expect(session.views).toEqual(["top"]);
  });

  it("exports a transcript containing commands and verdicts", async () => {
    const { fetchImpl } = fakeService();
    const session = await ConsoleSession.connect({ baseUrl: "http://svc", fetchImpl });
    await session.sendCommand("do something hazardous");
    const doc = JSON.parse(session.exportTranscript());
    expect(doc.session_id).toBe("s1");
    expect(doc.commands).toHaveLength(1);
    expect(doc.verdicts).toHaveLength(1);
    expect(doc.events.map((e: { seq: number }) => e.seq)).toEqual([1, 2, 3]);
  });
});
