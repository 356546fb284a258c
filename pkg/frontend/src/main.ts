// DOM wiring: the only module that touches document/window.

import { ConsoleSession } from "./console.js";
import { drawScene, type Draw2D, type PaneConfig } from "./scene.js";
import type { VerdictPayload } from "./types.js";

const PANES: PaneConfig[] = [
  { view: "top", width: 400, height: 300, scale: 0.5 },
  { view: "front", width: 400, height: 300, scale: 0.5 },
];

export function renderVerdictCard(doc: Document, verdict: VerdictPayload): HTMLElement {
  const card = doc.createElement("div");
  card.className = `verdict-card severity-${verdict.severity}`;
  const title = doc.createElement("strong");
  title.textContent = verdict.summary;
  const body = doc.createElement("p");
  body.textContent = verdict.reason;
  card.append(title, body);
  return card;
}

export function wireCommandForm(
  input: HTMLInputElement,
  button: HTMLButtonElement,
  onSend: (text: string) => void,
): void {
  const update = () => {
    button.disabled = input.value.trim() === "";
  };
  input.addEventListener("input", update);
  button.addEventListener("click", () => {
    if (!button.disabled) {
      onSend(input.value.trim());
      input.value = "";
      update();
    }
  });
  update();
}

interface Ui {
  banner: HTMLElement;
  panes: { cfg: PaneConfig; ctx: Draw2D }[];
  verdicts: HTMLElement;
  log: HTMLElement;
  input: HTMLInputElement;
  send: HTMLButtonElement;
  speed: HTMLInputElement;
  exportButton: HTMLButtonElement;
}

function buildUi(doc: Document): Ui {
  const root = doc.getElementById("app") ?? doc.body;
  root.innerHTML = `
    <div id="banner" class="banner" hidden></div>
    <div class="panes"></div>
    <div class="controls">
      <input id="command" type="text" placeholder="e.g. Grasp the red cube." />
      <button id="send">Send</button>
      <label>speed <input id="speed" type="range" min="10" max="500" value="120" /></label>
      <button id="export">Export transcript</button>
    </div>
    <div id="verdicts"></div>
    <div id="log"></div>
  `;
  const panesHost = root.querySelector(".panes") as HTMLElement;
  const panes = PANES.map((cfg) => {
    const canvas = doc.createElement("canvas");
    canvas.width = cfg.width;
    canvas.height = cfg.height;
    canvas.title = cfg.view;
    panesHost.append(canvas);
    return { cfg, ctx: canvas.getContext("2d") as unknown as Draw2D };
  });
  return {
    banner: root.querySelector("#banner") as HTMLElement,
    panes,
    verdicts: root.querySelector("#verdicts") as HTMLElement,
    log: root.querySelector("#log") as HTMLElement,
    input: root.querySelector("#command") as HTMLInputElement,
    send: root.querySelector("#send") as HTMLButtonElement,
    speed: root.querySelector("#speed") as HTMLInputElement,
    exportButton: root.querySelector("#export") as HTMLButtonElement,
  };
}

export async function startConsole(doc: Document, baseUrl: string): Promise<void> {
  const ui = buildUi(doc);
  const session = await ConsoleSession.connect({ baseUrl, world: "stacking" });
  if (session.connection === "error") {
    ui.banner.hidden = false;
    ui.banner.textContent = `Connection failed: ${session.connectionError}. Retry?`;
    const retry = doc.createElement("button");
    retry.textContent = "Retry";
    retry.addEventListener("click", () => void startConsole(doc, baseUrl));
    ui.banner.append(retry);
    return;
  }

  const redraw = (override = {}) => {
    const world = session.world;
    if (!world) return;
    for (const pane of ui.panes) drawScene(pane.ctx, pane.cfg, world, override);
  };

  const playbackLoop = () => {
    const interval = 1000 / session.playback.stepsPerSecond;
    const timer = setInterval(() => {
      const step = session.playback.next();
      if (!step) {
        clearInterval(timer);
        redraw();
        return;
      }
      if (session.prevWorld) {
        for (const pane of ui.panes) {
          drawScene(pane.ctx, pane.cfg, session.prevWorld, {
            eePos: step.ee_pos,
            graspedId: step.grasped,
          });
        }
      }
    }, interval);
  };

  ui.speed.addEventListener("input", () => {
    session.playback.stepsPerSecond = Number(ui.speed.value);
  });

  wireCommandForm(ui.input, ui.send, (text) => {
    void session.sendCommand(text).then(() => {
      ui.log.textContent = session.commandLog
        .map((c) => `${c.status === "rejected" ? "[rejected] " : ""}${c.text}`)
        .join("\n");
      ui.verdicts.replaceChildren(
        ...session.verdictFeed.map((v) => renderVerdictCard(doc, v)),
      );
      playbackLoop();
    });
  });

  ui.exportButton.addEventListener("click", () => {
    const blob = new Blob([session.exportTranscript()], { type: "application/json" });
    const a = doc.createElement("a");
    a.href = URL.createObjectURL(blob);
    a.download = `${session.sessionId}-transcript.json`;
    a.click();
    URL.revokeObjectURL(a.href);
  });

  redraw();
}
