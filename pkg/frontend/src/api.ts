/** Thin typed client for the session service; all numbers shown in the UI
 * originate from these responses. */

import type {
  ConfigAccepted,
  ErrorPayload,
  ParetoResponse,
  RuleDetail,
  SelectionRecord,
  SessionCreated,
  StatusResponse,
  ValueConfigDoc,
} from "./types";

export class ApiError extends Error {
  status: number;
  payload: ErrorPayload | null;

  constructor(status: number, payload: ErrorPayload | null) {
    super(payload?.message ?? `request failed with status ${status}`);
    this.status = status;
    this.payload = payload;
  }

  get code(): string {
    return this.payload?.code ?? "Unknown";
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ServiceClient {
  constructor(
    private baseUrl: string,
    private fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    if (!response.ok) {
      let payload: ErrorPayload | null = null;
      try {
        payload = (await response.json()) as ErrorPayload;
      } catch {
        payload = null;
      }
      throw new ApiError(response.status, payload);
    }
    return (await response.json()) as T;
  }

  createSession(csv: File | Blob, columns?: Record<string, string>): Promise<SessionCreated> {
    const form = new FormData();
    form.append("file", csv, "dataset.csv");
    for (const [key, value] of Object.entries(columns ?? {})) {
      if (value) form.append(key, value);
    }
    return this.request<SessionCreated>("/sessions", { method: "POST", body: form });
  }

  putConfig(sessionId: string, config: ValueConfigDoc): Promise<ConfigAccepted> {
    return this.request<ConfigAccepted>(`/sessions/${sessionId}/config`, {
      method: "PUT",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(config),
    });
  }

  runSweep(sessionId: string): Promise<{ status: string; config_digest: string }> {
    return this.request(`/sessions/${sessionId}/sweep`, { method: "POST" });
  }

  getStatus(sessionId: string): Promise<StatusResponse> {
    return this.request<StatusResponse>(`/sessions/${sessionId}/status`);
  }

  getPareto(sessionId: string, viableOnly = false): Promise<ParetoResponse> {
    const query = viableOnly ? "?viable_only=true" : "";
    return this.request<ParetoResponse>(`/sessions/${sessionId}/pareto${query}`);
  }

  getRuleDetail(sessionId: string, key: number | string): Promise<RuleDetail> {
    return this.request<RuleDetail>(`/sessions/${sessionId}/rules/${key}`);
  }

  postSelection(sessionId: string, index: number): Promise<SelectionRecord> {
    return this.request<SelectionRecord>(`/sessions/${sessionId}/selection`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ index }),
    });
  }

  /** Poll the status endpoint until the sweep settles. */
  async waitForSweep(
    sessionId: string,
    onProgress?: (status: StatusResponse) => void,
    intervalMs = 250,
    maxAttempts = 2400,
  ): Promise<StatusResponse> {
    for (let attempt = 0; attempt < maxAttempts; attempt++) {
      const status = await this.getStatus(sessionId);
      onProgress?.(status);
      if (status.status === "ready" || status.status === "error") {
        return status;
      }
      await new Promise((resolve) => setTimeout(resolve, intervalMs));
    }
    throw new Error(`sweep did not settle after ${maxAttempts} polls`);
  }
}
