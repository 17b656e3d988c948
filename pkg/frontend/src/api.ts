import type {
  GraphDocument,
  GraphListing,
  JobStatus,
  JobTicket,
  MeasuresResponse,
  OptimizeRequest,
  Report,
  ServiceRequest,
  ServiceResponse,
  SimulateRequest,
  UploadResponse,
} from "./types";

export class GatewayError extends Error {
  constructor(
    readonly status: number,
    detail: string,
  ) {
    super(detail);
    this.name = "GatewayError";
  }
}

export interface SimulateResult {
  report: Report;
  reportId: string;
}

async function parseError(resp: Response): Promise<never> {
  let detail = `${resp.status} ${resp.statusText}`;
  try {
    const body = (await resp.json()) as { detail?: unknown };
    if (typeof body.detail === "string") detail = body.detail;
  } catch {
    // non-JSON error body, keep the status line
  }
  throw new GatewayError(resp.status, detail);
}

export const POLL_INTERVAL_MS = 500;

/** Typed fetch wrapper over the gateway. Reports are cached by id. */
export class GatewayClient {
  private reportCache = new Map<string, Report>();

  constructor(
    readonly baseUrl: string,
    private readonly fetchFn: typeof fetch = fetch,
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await this.fetchFn(this.baseUrl + path, init);
    if (!resp.ok) await parseError(resp);
    return (await resp.json()) as T;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  uploadGraph(doc: GraphDocument): Promise<UploadResponse> {
    return this.post("/graphs", doc);
  }

  listGraphs(): Promise<GraphListing> {
    return this.request("/graphs");
  }

  getGraph(graphId: string): Promise<GraphDocument> {
    return this.request(`/graphs/${graphId}`);
  }

  getMeasures(graphId: string): Promise<MeasuresResponse> {
    return this.request(`/graphs/${graphId}/measures`);
  }

  queryService(graphId: string, req: ServiceRequest): Promise<ServiceResponse> {
    return this.post(`/graphs/${graphId}/service`, req);
  }

  async simulate(graphId: string, req: SimulateRequest): Promise<SimulateResult> {
    const resp = await this.fetchFn(`${this.baseUrl}/graphs/${graphId}/simulate`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(req),
    });
    if (!resp.ok) await parseError(resp);
    const reportId = resp.headers.get("X-Report-Id") ?? "";
    const report = (await resp.json()) as Report;
    if (reportId) this.reportCache.set(reportId, report);
    return { report, reportId };
  }

  optimize(graphId: string, req: OptimizeRequest): Promise<JobTicket> {
    return this.post(`/graphs/${graphId}/optimize`, req);
  }

  getJob(jobId: string): Promise<JobStatus> {
    return this.request(`/jobs/${jobId}`);
  }

  cancelJob(jobId: string): Promise<unknown> {
    return this.post(`/jobs/${jobId}/cancel`, {});
  }

  async getReport(reportId: string): Promise<Report> {
    const hit = this.reportCache.get(reportId);
    if (hit) return hit;
    const report = await this.request<Report>(`/reports/${reportId}`);
    this.reportCache.set(reportId, report);
    return report;
  }

  /**
   * Poll a job every POLL_INTERVAL_MS until it leaves queued/running.
   * Resolves with the terminal status; the caller decides what failed
   * or cancelled means for the view.
   */
  pollJob(
    jobId: string,
    onTick?: (status: JobStatus) => void,
    intervalMs: number = POLL_INTERVAL_MS,
  ): Promise<JobStatus> {
    return new Promise((resolve, reject) => {
      const step = async () => {
        let status: JobStatus;
        try {
          status = await this.getJob(jobId);
        } catch (err) {
          reject(err);
          return;
        }
        onTick?.(status);
        if (status.status === "queued" || status.status === "running") {
          setTimeout(() => void step(), intervalMs);
        } else {
          resolve(status);
        }
      };
      void step();
    });
  }
}
