// Typed client for the /api/v1 endpoints. Every number the UI shows comes
// from these responses; the client never recomputes objective values.

export interface ProblemInfo {
  name: string;
  D: number;
  M: number;
  objectives: { name: string; unit: string }[];
  box: { lower: number[]; upper: number[]; integral: boolean[] };
}

export interface FrontPointDoc {
  x: number[];
  g: number[];
  lambda?: number;
  direction?: number[];
  boundary_kind: string;
}

export interface FrontDoc {
  problem: string;
  method: string;
  eps: number | null;
  refinement_version: number;
  points: FrontPointDoc[];
  created_at: string;
}

export interface JobDoc {
  status: string;
  progress: { completed: number; total: number };
  front?: FrontDoc;
  front_id?: string;
  error?: string;
}

export interface UtopiaDoc {
  values: number[];
  units: string[];
  witnesses: number[][];
  refinement_version: number;
}

export interface ScalarSolutionDoc {
  x: number[];
  g: number[];
  value: number;
  goal: { kind: string; weights?: number[]; reference?: number[]; p?: number | string };
  diagnostics: Record<string, unknown>;
  refinement_version: number;
}

export type RefinementDoc =
  | { type: "bound"; dim: number; lower?: number; upper?: number }
  | { type: "floor"; objective: number; value: number };

export class ApiError extends Error {
  constructor(
    public code: string,
    message: string,
    public status: number,
  ) {
    super(message);
  }
}

async function parseError(response: Response): Promise<never> {
  let code = "http_error";
  let message = `${response.status} ${response.statusText}`;
  try {
    const body = await response.json();
    if (body?.error) {
      code = body.error.code ?? code;
      message = body.error.message ?? message;
    }
  } catch {
    // non-JSON error body; keep the status line
  }
  throw new ApiError(code, message, response.status);
}

export class ApiClient {
  constructor(public baseUrl: string) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await globalThis.fetch(`${this.baseUrl}/api/v1${path}`, {
      headers: { "Content-Type": "application/json" },
      ...init,
    });
    if (!response.ok) await parseError(response);
    return (await response.json()) as T;
  }

  listProblems(): Promise<ProblemInfo[]> {
    return this.request("/problems");
  }

  async createSession(problem: string): Promise<string> {
    const doc = await this.request<{ session_id: string }>("/sessions", {
      method: "POST",
      body: JSON.stringify({ problem }),
    });
    return doc.session_id;
  }

  refine(sessionId: string, refinements: RefinementDoc[]): Promise<{ refinement_version: number }> {
    return this.request(`/sessions/${sessionId}/refine`, {
      method: "POST",
      body: JSON.stringify({ refinements }),
    });
  }

  sample(
    sessionId: string,
    body: { method: "grid" | "direction"; count?: number; eps?: number },
  ): Promise<{ job_id: string }> {
    return this.request(`/sessions/${sessionId}/sample`, {
      method: "POST",
      body: JSON.stringify(body),
    });
  }

  job(jobId: string): Promise<JobDoc> {
    return this.request(`/jobs/${jobId}`);
  }

  async pollJob(jobId: string, intervalMs = 150, timeoutMs = 300_000): Promise<JobDoc> {
    const deadline = Date.now() + timeoutMs;
    for (;;) {
      const doc = await this.job(jobId);
      if (doc.status === "done") return doc;
      if (doc.status === "error" || doc.status === "cancelled") {
        throw new ApiError("job_" + doc.status, doc.error ?? doc.status, 500);
      }
      if (Date.now() > deadline) throw new ApiError("job_timeout", `job ${jobId} timed out`, 504);
      await new Promise((resolve) => setTimeout(resolve, intervalMs));
    }
  }

  utopia(sessionId: string): Promise<UtopiaDoc> {
    return this.request(`/sessions/${sessionId}/utopia`);
  }

  scalarize(
    sessionId: string,
    body: { kind: string; weights?: number[]; reference?: number[]; p?: number | string },
  ): Promise<ScalarSolutionDoc> {
    return this.request(`/sessions/${sessionId}/scalarize`, {
      method: "POST",
      body: JSON.stringify(body),
    });
  }

  async frontText(frontId: string): Promise<string> {
    const response = await globalThis.fetch(`${this.baseUrl}/api/v1/fronts/${frontId}?format=json`);
    if (!response.ok) await parseError(response);
    return await response.text();
  }
}
