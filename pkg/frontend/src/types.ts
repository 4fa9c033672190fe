// Wire types mirroring the service's JSON documents.

export type LeafKind =
  | "closed_region"
  | "compressed_region"
  | "closed_subsection"
  | "open_subsection";

export interface GeneRowJson {
  label: string;
  direction: "bottom_up" | "top_down";
  symbol: string;
  markers: string[];
}

export interface LeafJson {
  kind: LeafKind;
  name: string;
  genomic: [number, number];
  layout: [number, number];
  markers: string[];
  gene_count: number;
  count_bin: number;
  stain: string;
  region: string;
  region_gene_count: number;
  region_count_bin: number;
  gene_rows?: GeneRowJson[];
}

export interface LayoutJson {
  chromosome: string;
  total_length: number;
  chromosome_length_bp: number;
  leaves: LeafJson[];
}

export interface FrameJson {
  x: number;
  y: number;
  width: number;
  height: number;
}

export interface InsetJson {
  id: string;
  chromosome: string;
  scope: [number, number];
  frame: FrameJson;
  scroll_offset: number;
  locked: boolean;
  open_regions: string[];
}

export interface HeaderEntryJson {
  type: "header";
  region: string;
  gene_count: number;
  phenotypes: string[];
}

export interface GeneEntryJson {
  type: "gene";
  symbol: string;
  label: string;
  direction: "bottom_up" | "top_down";
  markers: string[];
}

export type ContentEntryJson = HeaderEntryJson | GeneEntryJson;

export interface InsetContentJson {
  inset: string;
  total_entries: number;
  scroll_offset: number;
  entries: ContentEntryJson[];
}

export interface AssemblySummaryJson {
  id: string;
  name: string;
  chromosomes: number;
  total_length_bp: number;
  gene_count: number;
  phenotypes: string[];
  phenotype_colors: Record<string, string>;
}

export interface ChromosomeSummaryJson {
  id: string;
  length_bp: number;
  region_count: number;
  gene_count: number;
  centromere: [number, number];
}

export interface TaskJson {
  kind: "identify" | "compare" | "summarize";
  chromosome: string;
  target_gene_count?: number;
  region_a?: string;
  region_b?: string;
  phenotypes?: string[];
}

export interface TaskResponseJson {
  task_id: string;
  task: TaskJson;
}

export interface MetricsJson {
  chromosome: string;
  exploration_percentage: number;
  task_id?: string;
  time_to_first_hit_ms?: number | Record<string, number | null> | null;
  analysis_time_ms?: number | null;
}

export interface SessionSummaryJson {
  id: string;
  assembly_id: string;
  fold_states: Record<
    string,
    { chromosome: string; open_regions: string[]; compressed_regions: string[]; open_subsections: string[] }
  >;
  insets: InsetJson[];
  tasks: Record<string, TaskJson>;
  answers: Record<string, { answer: unknown; correct: boolean }>;
  event_count: number;
}

export interface EventJson {
  t_ms: number;
  kind: string;
  chrom: string | null;
  start: number | null;
  end: number | null;
  payload: unknown;
}

export type FoldVerb = "open" | "close" | "compress" | "uncompress" | "open_sub" | "close_sub";
