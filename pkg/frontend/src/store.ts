import { GatewayClient, GatewayError } from "./api";
import type {
  GaParams,
  GraphDocument,
  JobStatus,
  Report,
  ServiceBlock,
} from "./types";

// Everything numeric in this store came out of a gateway response.
// The store never derives service, broken sets, or fitness on its own;
// it only decides which endpoint to ask and which response wins.

export interface JobView {
  jobId: string;
  status: string;
  progress: number;
  totalGenerations: number;
  bestFitness: number | null;
  cancelling: boolean;
}

export interface ConsoleState {
  graphId: string | null;
  doc: GraphDocument | null;
  switches: Record<string, boolean>;
  staged: string[];
  service: ServiceBlock | null;
  broken: string[];
  highlights: string[];
  report: Report | null;
  job: JobView | null;
  toast: string | null;
  banner: string | null;
}

interface Snapshot {
  switches: Record<string, boolean>;
  service: ServiceBlock | null;
  broken: string[];
  highlights: string[];
  report: Report | null;
}

type Listener = (state: ConsoleState) => void;

function emptyState(): ConsoleState {
  return {
    graphId: null,
    doc: null,
    switches: {},
    staged: [],
    service: null,
    broken: [],
    highlights: [],
    report: null,
    job: null,
    toast: null,
    banner: null,
  };
}

export class ConsoleStore {
  private listeners: Listener[] = [];
  private refreshSeq = 0;
  private preJob: Snapshot | null = null;
  state: ConsoleState = emptyState();

  constructor(
    private readonly client: GatewayClient,
    private readonly pollIntervalMs?: number,
  ) {}

  subscribe(fn: Listener): () => void {
    this.listeners.push(fn);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== fn);
    };
  }

  private emit(): void {
    for (const fn of this.listeners) fn(this.state);
  }

  private patch(part: Partial<ConsoleState>): void {
    this.state = { ...this.state, ...part };
    this.emit();
  }

  private fail(err: unknown): void {
    const msg = err instanceof Error ? err.message : String(err);
    this.patch({ toast: msg });
  }

  dismissToast(): void {
    this.patch({ toast: null });
  }

  async loadGraph(graphId: string): Promise<void> {
    this.refreshSeq += 1;
    try {
      const doc = await this.client.getGraph(graphId);
      const measures = await this.client.getMeasures(graphId);
      const switches: Record<string, boolean> = {};
      for (const node of doc.nodes) {
        if (node.role === "SWITCH") switches[node.id] = node.switch ?? true;
      }
      this.preJob = null;
      this.state = {
        ...emptyState(),
        graphId,
        doc,
        switches,
        service: measures.service,
      };
      this.emit();
    } catch (err) {
      if (err instanceof GatewayError) this.patch({ banner: err.message });
      else this.fail(err);
    }
  }

  /**
   * Re-ask the server for the current draft. With faults staged this is
   * a simulate run; with none it is a plain service snapshot (the
   * simulator rejects empty scenarios).
   */
  private async refresh(): Promise<void> {
    if (!this.state.graphId) return;
    const seq = ++this.refreshSeq;
    const graphId = this.state.graphId;
    const switches = this.state.switches;
    try {
      if (this.state.staged.length > 0) {
        const { report } = await this.client.simulate(graphId, {
          perturb: this.state.staged,
          switches,
        });
        if (seq !== this.refreshSeq) return;
        this.patch({
          service: report.post.service,
          broken: report.post.broken,
          report,
        });
      } else {
        const resp = await this.client.queryService(graphId, { switches });
        if (seq !== this.refreshSeq) return;
        this.patch({ service: resp.service, broken: [], report: null });
      }
    } catch (err) {
      if (seq === this.refreshSeq) this.fail(err);
    }
  }

  async toggleSwitch(name: string): Promise<void> {
    if (!(name in this.state.switches)) return;
    const switches = { ...this.state.switches, [name]: !this.state.switches[name] };
    this.patch({ switches, highlights: [] });
    await this.refresh();
  }

  async stageFault(nodeId: string): Promise<void> {
    if (this.state.staged.includes(nodeId)) return;
    this.patch({ staged: [...this.state.staged, nodeId].sort() });
    await this.refresh();
  }

  async unstageFault(nodeId: string): Promise<void> {
    if (!this.state.staged.includes(nodeId)) return;
    this.patch({ staged: this.state.staged.filter((n) => n !== nodeId) });
    await this.refresh();
  }

  /**
   * Launch a reconfiguration job and follow it to a terminal state.
   * Success overlays the best state; cancel puts the pre-job view back;
   * failure leaves the view alone and raises a toast.
   */
  async reconfigure(
    mode: "genetic" | "exhaustive" = "genetic",
    params?: Partial<GaParams>,
  ): Promise<void> {
    const graphId = this.state.graphId;
    if (!graphId) return;
    if (this.state.staged.length === 0) {
      this.patch({ toast: "stage at least one fault first" });
      return;
    }
    if (this.state.job) {
      this.patch({ toast: "a job is already running for this graph" });
      return;
    }
    this.preJob = {
      switches: this.state.switches,
      service: this.state.service,
      broken: this.state.broken,
      highlights: this.state.highlights,
      report: this.state.report,
    };
    let ticket;
    try {
      ticket = await this.client.optimize(graphId, {
        perturb: this.state.staged,
        mode,
        ...(params ? { params } : {}),
      });
    } catch (err) {
      this.preJob = null;
      this.fail(err);
      return;
    }
    this.patch({
      job: {
        jobId: ticket.job_id,
        status: "queued",
        progress: 0,
        totalGenerations: 0,
        bestFitness: null,
        cancelling: false,
      },
    });
    let final: JobStatus;
    try {
      final = await this.client.pollJob(
        ticket.job_id,
        (s) => this.onJobTick(s),
        this.pollIntervalMs,
      );
    } catch (err) {
      this.patch({ job: null });
      this.preJob = null;
      this.fail(err);
      return;
    }
    await this.onJobFinal(final);
  }

  private onJobTick(status: JobStatus): void {
    if (!this.state.job || this.state.job.jobId !== status.job_id) return;
    this.patch({
      job: {
        ...this.state.job,
        status: status.status,
        progress: status.progress,
        totalGenerations: status.total_generations,
        bestFitness: status.best_fitness,
      },
    });
  }

  private async onJobFinal(final: JobStatus): Promise<void> {
    const snapshot = this.preJob;
    this.preJob = null;
    if (final.status === "done" && final.report_id) {
      let report: Report;
      try {
        report = await this.client.getReport(final.report_id);
      } catch (err) {
        this.patch({ job: null });
        this.fail(err);
        return;
      }
      const initial = report.scenario.initial_state;
      const chosen = report.chosen_state.state;
      const highlights = Object.keys(chosen)
        .filter((k) => chosen[k] !== initial[k])
        .sort();
      this.patch({
        job: null,
        switches: { ...chosen },
        highlights,
        service: report.post.service,
        broken: report.post.broken,
        report,
      });
    } else if (final.status === "cancelled") {
      if (snapshot) {
        this.patch({ job: null, ...snapshot });
      } else {
        this.patch({ job: null });
      }
    } else {
      this.patch({ job: null, toast: final.error ?? `job ${final.status}` });
    }
  }

  async cancelJob(): Promise<void> {
    const job = this.state.job;
    if (!job) return;
    this.patch({ job: { ...job, cancelling: true } });
    try {
      await this.client.cancelJob(job.jobId);
    } catch (err) {
      // a race with completion is fine, the poller will surface the outcome
      if (!(err instanceof GatewayError && err.status === 409)) this.fail(err);
    }
  }
}
