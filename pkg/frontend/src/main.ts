import { ApiClient, ApiError } from "./api.js";
import { EmbeddedController } from "./embedded.js";
import { panBy, zoomAround, type Camera } from "./geometry.js";
import { renderIdeogram } from "./ideogram.js";
import { InsetWindow } from "./insetsPanel.js";
import { ScopeOverlay } from "./scopeBar.js";
import {
  attachSession,
  initialViewState,
  selectChromosome,
  setCamera,
  switchMode,
  type Mode,
  type ViewState,
} from "./state.js";
import { TaskPanel } from "./tasks.js";
import type { AssemblySummaryJson, InsetJson, LayoutJson } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing #${id}`);
  return el as T;
}

class App {
  state: ViewState = initialViewState();
  layout: LayoutJson | null = null;
  assembly: AssemblySummaryJson | null = null;
  windows = new Map<string, InsetWindow>();
  api: ApiClient;
  embedded: EmbeddedController | null = null;
  taskPanel: TaskPanel | null = null;
  scopeOverlay: ScopeOverlay | null = null;

  private svg = byId<HTMLElement>("ideogram") as unknown as SVGSVGElement;
  private scopeGroup: SVGGElement;
  private sceneGroup: SVGGElement;
  private notice = byId<HTMLElement>("notice");
  private workspace = byId<HTMLElement>("workspace");

  constructor() {
    const params = new URLSearchParams(location.search);
    this.api = new ApiClient(params.get("api") ?? "");
    this.sceneGroup = document.createElementNS(SVG_NS, "g") as SVGGElement;
    this.scopeGroup = document.createElementNS(SVG_NS, "g") as SVGGElement;
    this.svg.append(this.sceneGroup, this.scopeGroup);
    this.wireChrome();
    void this.boot(params.get("session"));
  }

  private showError(err: unknown): void {
    const text = err instanceof ApiError ? `${err.status}: ${err.message}` : String(err);
    this.notice.textContent = text;
    this.notice.classList.add("visible");
    setTimeout(() => this.notice.classList.remove("visible"), 4000);
  }

  private async boot(sessionId: string | null): Promise<void> {
    try {
      const assemblies = await this.api.listAssemblies();
      this.fillAssemblyPicker(assemblies);
      if (sessionId) {
        // rehydrate: all state of record lives server-side
        const session = await this.api.getSession(sessionId);
        this.state = attachSession(this.state, session.id, session.assembly_id);
        this.assembly = await this.api.getAssembly(session.assembly_id);
        const chromosomes = await this.api.listChromosomes(session.assembly_id);
        this.fillChromosomePicker(chromosomes.map((c) => c.id));
        this.state = selectChromosome(this.state, chromosomes[0].id);
        await this.refreshLayout();
        for (const inset of session.insets) this.mountWindow(inset);
      }
    } catch (err) {
      this.showError(err);
    }
  }

  private fillAssemblyPicker(assemblies: AssemblySummaryJson[]): void {
    const picker = byId<HTMLSelectElement>("assembly-picker");
    picker.replaceChildren();
    for (const assembly of assemblies) {
      const option = document.createElement("option");
      option.value = assembly.id;
      option.textContent = `${assembly.name} (${assembly.chromosomes} chromosomes)`;
      picker.appendChild(option);
    }
  }

  private fillChromosomePicker(ids: string[]): void {
    const picker = byId<HTMLSelectElement>("chromosome-picker");
    picker.replaceChildren();
    for (const id of ids) {
      const option = document.createElement("option");
      option.value = id;
      option.textContent = id;
      picker.appendChild(option);
    }
  }

  private wireChrome(): void {
    byId<HTMLButtonElement>("start-session").addEventListener("click", () => {
      void (async () => {
        try {
          const assemblyId = byId<HTMLSelectElement>("assembly-picker").value;
          const session = await this.api.createSession(assemblyId);
          this.state = attachSession(this.state, session.id, assemblyId);
          this.assembly = await this.api.getAssembly(assemblyId);
          this.embedded = new EmbeddedController(this.api, session.id);
          this.taskPanel = new TaskPanel(this.api, session.id);
          this.scopeOverlay = new ScopeOverlay(this.scopeGroup, this.api, session.id, {
            onScopeChanged: (inset) => {
              void this.windows.get(inset.id)?.refreshContent();
              this.renderScopes();
            },
          });
          const chromosomes = await this.api.listChromosomes(assemblyId);
          this.fillChromosomePicker(chromosomes.map((c) => c.id));
          this.state = selectChromosome(this.state, chromosomes[0].id);
          history.replaceState(null, "", `?session=${session.id}`);
          await this.refreshLayout();
        } catch (err) {
          this.showError(err);
        }
      })();
    });

    byId<HTMLSelectElement>("chromosome-picker").addEventListener("change", (event) => {
      this.state = selectChromosome(this.state, (event.target as HTMLSelectElement).value);
      void this.refreshLayout().catch((err) => this.showError(err));
    });

    for (const mode of ["embedded", "insets"] as Mode[]) {
      byId<HTMLButtonElement>(`mode-${mode}`).addEventListener("click", () => {
        this.state = switchMode(this.state, mode);
        document.body.dataset.mode = mode;
      });
    }

    this.svg.addEventListener("click", (event) => void this.onSceneClick(event));
    this.svg.addEventListener("wheel", (event) => {
      event.preventDefault();
      const factor = event.deltaY < 0 ? 1.15 : 1 / 1.15;
      this.state = setCamera(this.state, zoomAround(this.state.camera, event.offsetX, factor));
      this.renderScene();
    });
    let panStart: { x: number; camera: Camera } | null = null;
    this.svg.addEventListener("pointerdown", (event) => {
      if ((event.target as Element).tagName === "svg") {
        panStart = { x: event.clientX, camera: this.state.camera };
      }
    });
    this.svg.addEventListener("pointermove", (event) => {
      if (panStart) {
        this.state = setCamera(this.state, panBy(panStart.camera, event.clientX - panStart.x, 0));
        this.renderScene();
      }
    });
    this.svg.addEventListener("pointerup", () => (panStart = null));

    byId<HTMLButtonElement>("new-inset").addEventListener("click", () => {
      void (async () => {
        try {
          if (!this.state.sessionId || !this.layout) return;
          const length = this.layout.chromosome_length_bp;
          const inset = await this.api.createInset(
            this.state.sessionId,
            this.layout.chromosome,
            Math.floor(length / 4),
            Math.floor(length / 2),
          );
          this.mountWindow(inset);
          this.renderScopes();
        } catch (err) {
          this.showError(err);
        }
      })();
    });

    byId<HTMLButtonElement>("task-generate").addEventListener("click", () => {
      void (async () => {
        try {
          if (!this.taskPanel) return;
          const kind = byId<HTMLSelectElement>("task-kind").value;
          const seed = Number(byId<HTMLInputElement>("task-seed").value || "0");
          const task = await this.taskPanel.generate(kind, seed);
          byId<HTMLElement>("task-prompt").textContent = this.taskPanel.prompt;
          byId<HTMLElement>("task-result").textContent = "";
          if (task.task.chromosome !== this.state.chromosome) {
            this.state = selectChromosome(this.state, task.task.chromosome);
            byId<HTMLSelectElement>("chromosome-picker").value = task.task.chromosome;
            await this.refreshLayout();
          }
        } catch (err) {
          this.showError(err);
        }
      })();
    });

    byId<HTMLButtonElement>("task-submit").addEventListener("click", () => {
      void (async () => {
        try {
          if (!this.taskPanel?.task) return;
          const raw = byId<HTMLInputElement>("task-answer").value.trim();
          const value =
            this.taskPanel.task.task.kind === "compare"
              ? raw.split(/[,\s]+/).filter(Boolean)
              : raw;
          const outcome = await this.taskPanel.submit(value);
          const explored = (outcome.metrics.exploration_percentage * 100).toFixed(1);
          byId<HTMLElement>("task-result").textContent =
            (outcome.correct ? "correct" : "incorrect") + ` — explored ${explored}% of the chromosome`;
        } catch (err) {
          this.showError(err);
        }
      })();
    });
  }

  private async onSceneClick(event: MouseEvent): Promise<void> {
    if (this.state.mode !== "embedded" || !this.embedded || !this.layout) return;
    const target = (event.target as Element).closest("[data-click]");
    if (!target) return;
    const modifier = event.altKey || event.ctrlKey || event.metaKey;
    try {
      let layout: LayoutJson | null = null;
      if (target.getAttribute("data-click") === "leaf") {
        layout = await this.embedded.onLeafClick(
          this.layout,
          target.getAttribute("data-name") ?? "",
          modifier,
        );
      } else if (target.getAttribute("data-click") === "region-header") {
        layout = await this.embedded.onRegionHeaderClick(
          this.layout,
          target.getAttribute("data-region") ?? "",
          modifier,
        );
      }
      if (layout) {
        this.layout = layout;
        this.renderScene();
      }
    } catch (err) {
      this.showError(err); // 409s and friends surface as inline notices
    }
  }

  private mountWindow(inset: InsetJson): void {
    if (!this.state.sessionId) return;
    const window = new InsetWindow(this.api, this.state.sessionId, inset, {
      onChanged: () => this.renderScopes(),
      onLockedGesture: () => this.showError(new Error("window is locked in place")),
      phenotypeColors: this.assembly?.phenotype_colors,
    });
    this.windows.set(inset.id, window);
    this.workspace.appendChild(window.element);
    void window.refreshContent();
  }

  private async refreshLayout(): Promise<void> {
    if (!this.state.sessionId || !this.state.chromosome) return;
    this.layout = await this.api.getLayout(this.state.sessionId, this.state.chromosome);
    this.renderScene();
  }

  private renderScene(): void {
    if (!this.layout || !this.assembly) return;
    renderIdeogram(this.sceneGroup as unknown as SVGSVGElement, this.layout, {
      camera: this.state.camera,
      phenotypeColors: this.assembly.phenotype_colors,
    });
    this.renderScopes();
  }

  private renderScopes(): void {
    if (!this.layout || !this.scopeOverlay || this.state.mode !== "insets") {
      this.scopeGroup.replaceChildren();
      return;
    }
    const insets = [...this.windows.values()].map((w) => w.inset);
    this.scopeOverlay.render(this.layout, insets, this.state.camera);
  }
}

new App();
