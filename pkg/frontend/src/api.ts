import {
  CoverageSummary,
  GridPayload,
  HighlightResult,
  UiEvent,
  coverageSchema,
  eventsAckSchema,
  gridSchema,
  highlightSchema,
  newSessionSchema,
} from './types';

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(`${status}: ${message}`);
  }
}

/** Everything the grid needs from the backend, behind one interface so
 *  tests can substitute a stub.  The real client below talks plain HTTP. */
export interface SessionService {
  getWorkbook(): Promise<GridPayload>;
  createSession(participant?: string, group?: string): Promise<string>;
  postEvents(sessionId: string, events: UiEvent[]): Promise<number>;
  highlight(sessionId: string, sheet: string): Promise<HighlightResult>;
  coverage(sessionId: string): Promise<CoverageSummary>;
  sessionGrid(sessionId: string): Promise<GridPayload>;
  closeSession(sessionId: string): Promise<void>;
  sessionLog(sessionId: string): Promise<string>;
}

export class ApiClient implements SessionService {
  constructor(private readonly baseUrl: string) {}

  private async request(path: string, init?: RequestInit): Promise<Response> {
    const res = await fetch(this.baseUrl + path, init);
    if (!res.ok) {
      throw new ApiError(res.status, await res.text());
    }
    return res;
  }

  private async getJson(path: string): Promise<unknown> {
    return (await this.request(path)).json();
  }

  private async postJson(path: string, body?: unknown): Promise<unknown> {
    const res = await this.request(path, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(body ?? {}),
    });
    return res.json();
  }

  async getWorkbook(): Promise<GridPayload> {
    return gridSchema.parse(await this.getJson('/workbook'));
  }

  async createSession(participant = '', group?: string): Promise<string> {
    const body = newSessionSchema.parse(
      await this.postJson('/sessions', { participant, group: group ?? null }),
    );
    return body.session_id;
  }

  /** Append a batch of events; returns how many the server newly accepted
   *  (duplicates by seq count as zero). */
  async postEvents(sessionId: string, events: UiEvent[]): Promise<number> {
    const body = eventsAckSchema.parse(
      await this.postJson(`/sessions/${sessionId}/events`, { events }),
    );
    return body.accepted;
  }

  async highlight(sessionId: string, sheet: string): Promise<HighlightResult> {
    const qs = new URLSearchParams({ sheet });
    return highlightSchema.parse(
      await this.getJson(`/sessions/${sessionId}/highlight?${qs}`),
    );
  }

  async coverage(sessionId: string): Promise<CoverageSummary> {
    return coverageSchema.parse(await this.getJson(`/sessions/${sessionId}/coverage`));
  }

  /** Workbook with this session's edits replayed and values recomputed. */
  async sessionGrid(sessionId: string): Promise<GridPayload> {
    return gridSchema.parse(await this.getJson(`/sessions/${sessionId}/grid`));
  }

  async closeSession(sessionId: string): Promise<void> {
    await this.postJson(`/sessions/${sessionId}/close`);
  }

  async sessionLog(sessionId: string): Promise<string> {
    return (await this.request(`/sessions/${sessionId}/log`)).text();
  }
}
