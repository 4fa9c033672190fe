import type {
  AssemblySummaryJson,
  ChromosomeSummaryJson,
  EventJson,
  FoldVerb,
  FrameJson,
  InsetContentJson,
  InsetJson,
  LayoutJson,
  MetricsJson,
  SessionSummaryJson,
  TaskResponseJson,
} from "./types.js";

export class ApiError extends Error {
  constructor(readonly status: number, detail: string) {
    super(detail);
    this.name = "ApiError";
  }
}

export type InsetPatch =
  | { scope: { start: number; end: number } }
  | { frame: FrameJson }
  | { locked: boolean }
  | { scroll: number }
  | { toggle_region: string };

/** Thin typed client; the service is the single source of truth for state. */
export class ApiClient {
  constructor(readonly baseUrl: string) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: {} };
    if (body !== undefined) {
      if (body instanceof FormData) {
        init.body = body;
      } else {
        (init.headers as Record<string, string>)["content-type"] = "application/json";
        init.body = JSON.stringify(body);
      }
    }
    const response = await fetch(this.baseUrl + path, init);
    if (!response.ok) {
      let detail = response.statusText;
      try {
        const doc = (await response.json()) as { detail?: string };
        if (doc.detail) detail = doc.detail;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(response.status, detail);
    }
    return (await response.json()) as T;
  }

  ingestAssembly(files: { cytobands: Blob; genes: Blob; phenotypes?: Blob }, name = "assembly") {
    const form = new FormData();
    form.append("cytobands", files.cytobands, "cytobands.tsv");
    form.append("genes", files.genes, "genes.tsv");
    if (files.phenotypes) form.append("phenotypes", files.phenotypes, "phenotypes.csv");
    return this.request<AssemblySummaryJson>("POST", `/assemblies?name=${encodeURIComponent(name)}`, form);
  }

  listAssemblies() {
    return this.request<AssemblySummaryJson[]>("GET", "/assemblies");
  }

  getAssembly(assemblyId: string) {
    return this.request<AssemblySummaryJson>("GET", `/assemblies/${assemblyId}`);
  }

  listChromosomes(assemblyId: string) {
    return this.request<ChromosomeSummaryJson[]>("GET", `/assemblies/${assemblyId}/chromosomes`);
  }

  createSession(assemblyId: string) {
    return this.request<{ id: string; assembly_id: string }>("POST", "/sessions", {
      assembly_id: assemblyId,
    });
  }

  getSession(sessionId: string) {
    return this.request<SessionSummaryJson>("GET", `/sessions/${sessionId}`);
  }

  fold(sessionId: string, chromosome: string, verb: FoldVerb, target: string) {
    return this.request<LayoutJson>("POST", `/sessions/${sessionId}/fold`, {
      chromosome,
      verb,
      target,
    });
  }

  getLayout(sessionId: string, chromosome: string) {
    return this.request<LayoutJson>("GET", `/sessions/${sessionId}/layout/${chromosome}`);
  }

  createInset(sessionId: string, chromosome: string, start: number, end: number, frame?: FrameJson) {
    return this.request<InsetJson>("POST", `/sessions/${sessionId}/insets`, {
      chromosome,
      start,
      end,
      frame: frame ?? null,
    });
  }

  listInsets(sessionId: string) {
    return this.request<InsetJson[]>("GET", `/sessions/${sessionId}/insets`);
  }

  patchInset(sessionId: string, insetId: string, patch: InsetPatch) {
    return this.request<InsetJson>("PATCH", `/sessions/${sessionId}/insets/${insetId}`, patch);
  }

  insetContent(sessionId: string, insetId: string, rows: number) {
    return this.request<InsetContentJson>(
      "GET",
      `/sessions/${sessionId}/insets/${insetId}/content?rows=${rows}`,
    );
  }

  postEvent(sessionId: string, event: Partial<EventJson> & { kind: string }) {
    return this.request<{ events: number }>("POST", `/sessions/${sessionId}/events`, event);
  }

  getEvents(sessionId: string) {
    return this.request<{ events: EventJson[] }>("GET", `/sessions/${sessionId}/events`);
  }

  createTask(sessionId: string, kind: string, seed: number) {
    return this.request<TaskResponseJson>("POST", `/sessions/${sessionId}/tasks`, { kind, seed });
  }

  submitAnswer(sessionId: string, taskId: string, answer: unknown) {
    return this.request<{ task_id: string; correct: boolean }>(
      "POST",
      `/sessions/${sessionId}/answer`,
      { task_id: taskId, answer },
    );
  }

  getMetrics(sessionId: string, query: { task?: string; chromosome?: string }) {
    const params = new URLSearchParams();
    if (query.task) params.set("task", query.task);
    if (query.chromosome) params.set("chromosome", query.chromosome);
    return this.request<MetricsJson>("GET", `/sessions/${sessionId}/metrics?${params}`);
  }
}
