// Exploration state: one active session, its refinement history, the cached
// front bytes per version, slider weights, and the scalarization marker.
//
// Invariants maintained here: the displayed front always belongs to the
// version being viewed; rollback redisplays the cached bytes untouched;
// refining after a rollback forks a fresh session that replays the kept
// prefix (the server's refinement chain is append-only).

import {
  ApiClient,
  ApiError,
  FrontDoc,
  ProblemInfo,
  RefinementDoc,
  ScalarSolutionDoc,
  UtopiaDoc,
} from "./api";

function errorText(err: unknown): string {
  if (err instanceof ApiError) return `${err.code}: ${err.message}`;
  return String(err);
}

export interface VersionRecord {
  version: number;
  refinements: RefinementDoc[]; // full chain up to this version
  frontId?: string;
  frontText?: string; // exact bytes served by the front endpoint
  front?: FrontDoc;
}

export interface ViewState {
  problem?: ProblemInfo;
  sessionId?: string;
  versions: VersionRecord[];
  viewedVersion: number;
  utopia?: UtopiaDoc;
  sliderWeights: number[];
  marker?: ScalarSolutionDoc;
  axes: number[]; // objective indices shown (2 or 3 of them)
  busy: string | null;
  error: string | null;
}

export interface SampleOptions {
  count?: number;
  eps?: number;
}

type Listener = (state: ViewState) => void;

export class ExplorerStore {
  state: ViewState = {
    versions: [],
    viewedVersion: 0,
    sliderWeights: [],
    axes: [0, 1],
    busy: null,
    error: null,
  };

  private listeners: Listener[] = [];
  private sampleOptions: Required<SampleOptions> = { count: 32, eps: 1e-4 };

  constructor(public api: ApiClient) {}

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private notify(): void {
    for (const listener of this.listeners) listener(this.state);
  }

  private update(patch: Partial<ViewState>): void {
    this.state = { ...this.state, ...patch };
    this.notify();
  }

  get viewedRecord(): VersionRecord | undefined {
    return this.state.versions.find((v) => v.version === this.state.viewedVersion);
  }

  get displayedFront(): FrontDoc | undefined {
    return this.viewedRecord?.front;
  }

  async start(problemName: string): Promise<void> {
    this.update({ busy: "creating session", error: null });
    try {
      const problems = await this.api.listProblems();
      const problem = problems.find((p) => p.name === problemName);
      if (!problem) throw new Error(`unknown problem ${problemName}`);
      const sessionId = await this.api.createSession(problemName);
      const utopia = await this.api.utopia(sessionId);
      this.update({
        problem,
        sessionId,
        utopia,
        versions: [{ version: 0, refinements: [] }],
        viewedVersion: 0,
        sliderWeights: utopia.values.slice(),
        axes: problem.M >= 3 ? [0, 1, 2] : [0, 1],
        marker: undefined,
        busy: null,
      });
    } catch (err) {
      this.update({ busy: null, error: errorText(err) });
      throw err;
    }
  }

  async sample(options: SampleOptions = {}): Promise<FrontDoc> {
    const { sessionId } = this.state;
    if (!sessionId) throw new Error("no active session");
    this.sampleOptions = { ...this.sampleOptions, ...options };
    this.update({ busy: "sampling", error: null });
    try {
      const { job_id } = await this.api.sample(sessionId, {
        method: "direction",
        count: this.sampleOptions.count,
        eps: this.sampleOptions.eps,
      });
      const job = await this.api.pollJob(job_id);
      const front = job.front!;
      const frontText = job.front_id ? await this.api.frontText(job.front_id) : undefined;
      const versions = this.state.versions.map((v) =>
        v.version === front.refinement_version
          ? { ...v, front, frontId: job.front_id, frontText }
          : v,
      );
      this.update({ versions, viewedVersion: front.refinement_version, busy: null });
      return front;
    } catch (err) {
      this.update({ busy: null, error: errorText(err) });
      throw err;
    }
  }

  // Debounce-friendly scalarize: the marker only ever moves to a
  // server-returned solution, and stale responses are dropped.
  private scalarizeTicket = 0;

  async scalarize(weights: number[]): Promise<ScalarSolutionDoc | undefined> {
    const { sessionId } = this.state;
    if (!sessionId) throw new Error("no active session");
    const ticket = ++this.scalarizeTicket;
    try {
      const marker = await this.api.scalarize(sessionId, {
        kind: "chebyshev",
        weights,
      });
      if (ticket !== this.scalarizeTicket) return undefined; // superseded
      this.update({ marker, error: null });
      return marker;
    } catch (err) {
      // marker stays where it was; surface the failure
      this.update({ error: errorText(err) });
      return undefined;
    }
  }

  setSliderWeights(weights: number[]): void {
    this.update({ sliderWeights: weights.slice() });
  }

  /** Apply refinements and resample; forks the session when the user refines
      a rolled-back version. Over-constrained leaves everything unchanged. */
  async refineAndResample(refinements: RefinementDoc[]): Promise<FrontDoc> {
    let { sessionId } = this.state;
    if (!sessionId) throw new Error("no active session");
    const viewing = this.state.viewedVersion;
    const current = this.state.versions.length - 1;
    this.update({ busy: "refining", error: null });
    try {
      let versions = this.state.versions;
      if (viewing < current) {
        // fork: fresh session replaying the kept prefix
        sessionId = await this.api.createSession(this.state.problem!.name);
        const prefix = versions.find((v) => v.version === viewing)!.refinements;
        if (prefix.length) await this.api.refine(sessionId, prefix);
        versions = versions.slice(0, viewing + 1);
      }
      const { refinement_version } = await this.api.refine(sessionId, refinements);
      const chain = [...versions[versions.length - 1].refinements, ...refinements];
      const utopia = await this.api.utopia(sessionId);
      this.update({
        sessionId,
        utopia,
        versions: [...versions, { version: refinement_version, refinements: chain }],
        viewedVersion: refinement_version,
        busy: null,
      });
      return await this.sample();
    } catch (err) {
      this.update({ busy: null, error: errorText(err) });
      throw err;
    }
  }

  /** Redisplay a previously sampled version from its cached bytes. */
  rollback(version: number): void {
    const record = this.state.versions.find((v) => v.version === version);
    if (!record) throw new Error(`no version ${version} in this session`);
    this.update({ viewedVersion: version, error: null });
  }

  setAxes(axes: number[]): void {
    const M = this.state.problem?.M ?? 0;
    if (axes.some((a) => a < 0 || a >= M)) {
      this.update({ error: `axis selection out of range for M=${M}` });
      return;
    }
    this.update({ axes: axes.slice(), error: null });
  }
}
