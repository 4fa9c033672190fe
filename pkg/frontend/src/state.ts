import type { Camera } from "./geometry.js";

export type Mode = "embedded" | "insets";

export interface AnswerDraft {
  taskId: string;
  kind: "identify" | "compare" | "summarize";
  value: string | [string, string] | null;
}

/** All state of record lives server-side; this is view state only. */
export interface ViewState {
  mode: Mode;
  sessionId: string | null;
  assemblyId: string | null;
  chromosome: string | null;
  camera: Camera;
  answerDraft: AnswerDraft | null;
}

export function initialViewState(): ViewState {
  return {
    mode: "embedded",
    sessionId: null,
    assemblyId: null,
    chromosome: null,
    camera: { panX: 24, panY: 0, scale: 14 },
    answerDraft: null,
  };
}

/** Mode switches never discard session state. */
export function switchMode(state: ViewState, mode: Mode): ViewState {
  return { ...state, mode };
}

export function selectChromosome(state: ViewState, chromosome: string): ViewState {
  return { ...state, chromosome };
}

export function attachSession(state: ViewState, sessionId: string, assemblyId: string): ViewState {
  return { ...state, sessionId, assemblyId };
}

export function setCamera(state: ViewState, camera: Camera): ViewState {
  return { ...state, camera };
}

export function startDraft(state: ViewState, draft: AnswerDraft): ViewState {
  return { ...state, answerDraft: draft };
}

export function clearDraft(state: ViewState): ViewState {
  return { ...state, answerDraft: null };
}
