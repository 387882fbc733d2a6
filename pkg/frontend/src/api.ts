import type {
  AssertResponse,
  CreatedSession,
  KbInfo,
  Report,
  RetractResponse,
  SessionView,
  TraceResponse,
} from './types'

export class ApiError extends Error {
  constructor(
    readonly status: number, // 0 means the request never reached the server
    message: string,
  ) {
    super(message)
    this.name = 'ApiError'
  }

  get isNetworkFailure(): boolean {
    return this.status === 0
  }
}

export interface Api {
  getKb(): Promise<KbInfo>
  createSession(): Promise<CreatedSession>
  getSession(sessionId: string): Promise<SessionView>
  assertSymptom(sessionId: string, symptomId: string): Promise<AssertResponse>
  retractSymptom(sessionId: string, symptomId: string): Promise<RetractResponse>
  getReport(sessionId: string): Promise<Report>
  getTrace(sessionId: string): Promise<TraceResponse>
}

export class ApiClient implements Api {
  constructor(readonly base: string = '') {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    let response: Response
    try {
      response = await fetch(this.base + path, {
        method,
        headers: body === undefined ? undefined : { 'content-type': 'application/json' },
        body: body === undefined ? undefined : JSON.stringify(body),
      })
    } catch (cause) {
      throw new ApiError(0, `network failure: ${String(cause)}`)
    }
    if (response.status === 204) {
      return undefined as T
    }
    let payload: unknown = null
    try {
      payload = await response.json()
    } catch {
      // non-JSON body; error path below reports the status line instead
    }
    if (!response.ok) {
      const detail =
        payload && typeof payload === 'object' && 'error' in payload
          ? String((payload as { error: unknown }).error)
          : `${response.status} ${response.statusText}`
      throw new ApiError(response.status, detail)
    }
    return payload as T
  }

  getKb(): Promise<KbInfo> {
    return this.request('GET', '/kb')
  }

  createSession(): Promise<CreatedSession> {
    return this.request('POST', '/sessions')
  }

  getSession(sessionId: string): Promise<SessionView> {
    return this.request('GET', `/sessions/${sessionId}`)
  }

  assertSymptom(sessionId: string, symptomId: string): Promise<AssertResponse> {
    return this.request('POST', `/sessions/${sessionId}/symptoms`, { id: symptomId })
  }

  retractSymptom(sessionId: string, symptomId: string): Promise<RetractResponse> {
    return this.request('DELETE', `/sessions/${sessionId}/symptoms/${symptomId}`)
  }

  getReport(sessionId: string): Promise<Report> {
    return this.request('GET', `/sessions/${sessionId}/report`)
  }

  getTrace(sessionId: string): Promise<TraceResponse> {
    return this.request('GET', `/sessions/${sessionId}/trace`)
  }
}
