import type { ApiClient } from "./api.js";
import type { MetricsJson, TaskJson, TaskResponseJson } from "./types.js";

export function promptFor(task: TaskJson): string {
  switch (task.kind) {
    case "identify":
      return `On chromosome ${task.chromosome}, find the region containing exactly ${task.target_gene_count} genes and submit its name.`;
    case "compare":
      return `On chromosome ${task.chromosome}, decide whether regions ${task.region_a} and ${task.region_b} are each dominated by plus or minus gene orientation.`;
    case "summarize":
      return `Summarize the dominant phenotype of chromosome ${task.chromosome} among ${(task.phenotypes ?? []).join(", ")}.`;
  }
}

/** Client-side type guard; mismatched answers are blocked before posting. */
export function validAnswer(task: TaskJson, value: unknown): boolean {
  if (task.kind === "compare") {
    return (
      Array.isArray(value) &&
      value.length === 2 &&
      value.every((v) => v === "plus" || v === "minus" || v === "tie")
    );
  }
  return typeof value === "string" && value.length > 0;
}

export interface TaskOutcome {
  correct: boolean;
  metrics: MetricsJson;
}

export class TaskPanel {
  task: TaskResponseJson | null = null;

  constructor(
    private readonly api: ApiClient,
    private readonly sessionId: string,
  ) {}

  async generate(kind: string, seed: number): Promise<TaskResponseJson> {
    this.task = await this.api.createTask(this.sessionId, kind, seed);
    return this.task;
  }

  get prompt(): string {
    return this.task ? promptFor(this.task.task) : "";
  }

  /** Posts the answer, then fetches correctness plus the session metrics. */
  async submit(value: unknown): Promise<TaskOutcome> {
    if (!this.task) throw new Error("no active task");
    if (!validAnswer(this.task.task, value)) {
      throw new Error("answer does not match the task kind");
    }
    const result = await this.api.submitAnswer(this.sessionId, this.task.task_id, value);
    const metrics = await this.api.getMetrics(this.sessionId, { task: this.task.task_id });
    return { correct: result.correct, metrics };
  }
}
