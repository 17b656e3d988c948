// Wire shapes of the gateway API. The console never recomputes any of
// these numbers; whatever the server sends is what gets displayed.

export type Role = "SOURCE" | "HUB" | "SWITCH" | "USER";
export type Logic = "SINGLE" | "AND" | "OR";

export interface NodeEntry {
  id: string;
  role: Role;
  area: string;
  passive_resistant: boolean;
  service?: number;
  switch?: boolean;
  orphan?: boolean;
}

export interface EdgeEntry {
  from: string;
  to: string;
  weight: number;
  logic: Logic;
}

export interface GraphDocument {
  nodes: NodeEntry[];
  edges: EdgeEntry[];
}

export interface UploadResponse {
  graph_id: string;
  nodes: number;
  edges: number;
  switches: string[];
}

export interface GraphListing {
  graphs: UploadResponse[];
}

export interface ServiceBlock {
  per_user: Record<string, number>;
  total: number;
  per_source_user_count: Record<string, number>;
}

export interface MeasuresBlock {
  global_efficiency: number;
  closeness: Record<string, number>;
  betweenness: Record<string, number>;
  in_degree: Record<string, number>;
  out_degree: Record<string, number>;
  pair_efficiency: Record<string, number>;
}

export interface MeasuresResponse {
  fingerprint: string;
  measures: MeasuresBlock;
  service: ServiceBlock;
}

export interface ServiceResponse {
  fingerprint: string;
  state: Record<string, boolean>;
  service: ServiceBlock;
}

export interface FitnessWeights {
  w1: number;
  w2: number;
  w3: number;
}

export interface GaParams {
  npop: number;
  ngen: number;
  indpb: number;
  tresh: number;
  nsel: number;
  seed: number;
  elitism: boolean;
}

export interface EvaluatedState {
  state: Record<string, boolean>;
  n_actions: number;
  s_tot: number;
  n_alive: number;
  fitness: number;
}

export interface GenerationStat {
  generation: number;
  best: number;
  mean: number;
}

export interface TraceEvent {
  step: number;
  event: string;
  node?: string;
  switch?: string;
  from?: boolean;
  to?: boolean;
  via?: string;
  logic?: string;
}

export interface Report {
  report_version: number;
  graph_fingerprint: string;
  mode: string;
  scenario: {
    perturbed: string[];
    initial_state: Record<string, boolean>;
    weights: FitnessWeights;
  };
  params: GaParams | null;
  baseline: { service: ServiceBlock; measures: MeasuresBlock };
  chosen_state: EvaluatedState;
  all_best_states: EvaluatedState[] | null;
  post: {
    broken: string[];
    alive: string[];
    n_alive: number;
    service: ServiceBlock;
    measures: MeasuresBlock;
  };
  ga_log: GenerationStat[] | null;
  step_trace: TraceEvent[];
}

export type JobState = "queued" | "running" | "done" | "failed" | "cancelled";

export interface JobStatus {
  job_id: string;
  graph_id: string;
  status: JobState;
  progress: number;
  total_generations: number;
  best_fitness: number | null;
  report_id: string | null;
  error: string | null;
}

export interface JobTicket {
  job_id: string;
  graph_id: string;
}

export type BaseStateName = "initial" | "all-true" | "all-false";

export interface ServiceRequest {
  base_state?: BaseStateName;
  switches?: Record<string, boolean>;
}

export interface SimulateRequest {
  perturb: string[];
  base_state?: BaseStateName;
  switches?: Record<string, boolean>;
  weights?: Partial<FitnessWeights>;
}

export interface OptimizeRequest {
  perturb: string[];
  mode?: "genetic" | "exhaustive";
  weights?: Partial<FitnessWeights>;
  params?: Partial<GaParams>;
  cap?: number;
}
