import { ApiClient } from "./api.js";
import { ExplorerApp } from "./app.js";
import { defaultState, parseViewState } from "./state.js";

async function renderSessionPicker(root: HTMLElement, api: ApiClient): Promise<void> {
  const heading = document.createElement("h2");
  heading.textContent = "pick a session";
  root.appendChild(heading);
  const list = document.createElement("ul");
  const sessions = await api.listSessions();
  if (sessions.length === 0) {
    const hint = document.createElement("p");
    hint.textContent = "no sessions uploaded yet (POST /api/sessions)";
    root.appendChild(hint);
    return;
  }
  for (const session of sessions) {
    const item = document.createElement("li");
    const link = document.createElement("a");
    link.href = `?session=${encodeURIComponent(session.session_id)}`;
    link.textContent =
      `${session.session_id} — ${session.event_count} events, ` +
      `tasks [${session.tasks.join(", ")}]`;
    item.appendChild(link);
    list.appendChild(item);
  }
  root.appendChild(list);
}

export async function bootstrap(root: HTMLElement, baseUrl = ""): Promise<void> {
  const api = new ApiClient(baseUrl);
  const state = parseViewState(location.search);
  if (state === null) {
    await renderSessionPicker(root, api);
    return;
  }
  const app = new ExplorerApp(root, api, state ?? defaultState(""));
  await app.start();
}

const rootEl = document.getElementById("app");
if (rootEl) {
  void bootstrap(rootEl);
}
