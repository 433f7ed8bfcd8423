import type {
  ClassificationResult,
  ExplainReport,
  ModelView,
  Value,
  WhatIfRequestBody,
  WhatIfResponse,
} from './types.js';

export class ApiError extends Error {
  constructor(
    public status: number,
    public body: unknown,
  ) {
    super(`request failed with status ${status}`);
  }
}

async function requestJson<T>(url: string, init?: RequestInit): Promise<T> {
  const response = await fetch(url, init);
  const body = await response.json();
  if (!response.ok) {
    throw new ApiError(response.status, body);
  }
  return body as T;
}

/**
 * Client for the probing service. What-if submissions are latest-wins: a new
 * call aborts the previous in-flight request, so slider drags can never
 * resolve out of order.
 */
export class ApiClient {
  private whatifController: AbortController | null = null;

  constructor(readonly baseUrl: string = '') {}

  getModel(): Promise<ModelView> {
    return requestJson<ModelView>(`${this.baseUrl}/v1/model`);
  }

  classify(values: Record<string, Value>, delta?: number): Promise<ClassificationResult> {
    return requestJson<ClassificationResult>(`${this.baseUrl}/v1/classify`, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify({ instance: { id: 'probe', values }, ...(delta === undefined ? {} : { delta }) }),
    });
  }

  explain(values: Record<string, Value>, delta?: number): Promise<ExplainReport> {
    return requestJson<ExplainReport>(`${this.baseUrl}/v1/explain`, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify({ instance: { id: 'probe', values }, ...(delta === undefined ? {} : { delta }) }),
    });
  }

  async whatif(body: WhatIfRequestBody): Promise<WhatIfResponse> {
    this.whatifController?.abort();
    const controller = new AbortController();
    this.whatifController = controller;
    try {
      return await requestJson<WhatIfResponse>(`${this.baseUrl}/v1/whatif`, {
        method: 'POST',
        headers: { 'content-type': 'application/json' },
        body: JSON.stringify(body),
        signal: controller.signal,
      });
    } finally {
      if (this.whatifController === controller) {
        this.whatifController = null;
      }
    }
  }
}
