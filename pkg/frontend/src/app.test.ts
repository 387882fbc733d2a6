// @vitest-environment jsdom
import { beforeEach, describe, expect, it } from 'vitest'

import { ApiError, type Api } from './api'
import { ConsultationApp } from './app'
import type { AssertResponse, KbInfo, Report, TraceStep } from './types'

const KB: KbInfo = {
  name: 'demo',
  hypotheses: ['A', 'B'],
  catch_all: 'OTHER',
  symptoms: [
    { id: 's1', label: 'Sign one', diseases: ['A'], bpa: 0.8 },
    { id: 's2', label: 'Sign two', diseases: ['B'], bpa: 0.6 },
  ],
}

const THETA = ['A', 'B', 'OTHER']

const VACUOUS: Report = {
  ranked: [{ set: THETA, mass: 1, belief: 1, plausibility: 1 }],
  top: { set: THETA, mass: 1, belief: 1, plausibility: 1 },
  conflict_history: [],
  canonical: '{}',
}

const AFTER_S1: Report = {
  ranked: [
    { set: ['A'], mass: 0.8, belief: 0.8, plausibility: 1 },
    { set: THETA, mass: 0.2, belief: 1, plausibility: 1 },
  ],
  top: { set: ['A'], mass: 0.8, belief: 0.8, plausibility: 1 },
  conflict_history: [0],
  canonical: '{}',
}

const S1_STEP: TraceStep = {
  symptom_id: 's1',
  conflict: 0,
  normalizer: 1,
  prior: [{ set: THETA, mass: 1 }],
  evidence: [
    { set: ['A'], mass: 0.8 },
    { set: THETA, mass: 0.2 },
  ],
  posterior: [
    { set: ['A'], mass: 0.8 },
    { set: THETA, mass: 0.2 },
  ],
  products: [
    { left: THETA, right: ['A'], intersection: ['A'], value: 0.8, conflict: false },
    { left: THETA, right: THETA, intersection: THETA, value: 0.2, conflict: false },
  ],
}

/** In-memory stand-in for the HTTP API with scriptable failures. */
class FakeApi implements Api {
  asserted: string[] = []
  failNext: ApiError | null = null
  calls: string[] = []

  private report(): Report {
    return this.asserted.includes('s1') ? AFTER_S1 : VACUOUS
  }

  private steps(): TraceStep[] {
    return this.asserted.includes('s1') ? [S1_STEP] : []
  }

  async getKb(): Promise<KbInfo> {
    this.calls.push('getKb')
    return KB
  }

  async createSession() {
    this.calls.push('createSession')
    return { id: 'sess-1', report: this.report() }
  }

  async getSession() {
    this.calls.push('getSession')
    return { id: 'sess-1', kb: KB.name, asserted: [...this.asserted], report: this.report() }
  }

  async assertSymptom(_sessionId: string, symptomId: string): Promise<AssertResponse> {
    this.calls.push(`assert:${symptomId}`)
    if (this.failNext) {
      const failure = this.failNext
      this.failNext = null
      throw failure
    }
    this.asserted.push(symptomId)
    return { step: S1_STEP, report: this.report() }
  }

  async retractSymptom(_sessionId: string, symptomId: string) {
    this.calls.push(`retract:${symptomId}`)
    if (this.failNext) {
      const failure = this.failNext
      this.failNext = null
      throw failure
    }
    this.asserted = this.asserted.filter((id) => id !== symptomId)
    return { report: this.report() }
  }

  async getReport(): Promise<Report> {
    this.calls.push('getReport')
    return this.report()
  }

  async getTrace() {
    this.calls.push('getTrace')
    return { steps: this.steps() }
  }
}

function checkbox(id: string): HTMLInputElement {
  const input = document.querySelector<HTMLInputElement>(`input[data-id="${id}"]`)
  if (!input) throw new Error(`no checkbox for ${id}`)
  return input
}

async function startApp(): Promise<{ app: ConsultationApp; api: FakeApi; root: HTMLElement }> {
  document.body.innerHTML = '<div id="app"></div>'
  const root = document.getElementById('app') as HTMLElement
  const api = new FakeApi()
  const app = new ConsultationApp(root, api)
  await app.start()
  return { app, api, root }
}

describe('ConsultationApp', () => {
  beforeEach(() => {
    document.body.innerHTML = ''
  })

  it('renders the symptom checklist and total-ignorance report on start', async () => {
    const { root } = await startApp()
    expect(root.querySelectorAll('.symptom-list input[type="checkbox"]')).toHaveLength(2)
    const rows = root.querySelectorAll('.result-table tbody tr')
    expect(rows).toHaveLength(1)
    expect(rows[0].querySelector('.mass .value')?.textContent).toBe('1.00000')
    expect(root.querySelector('.trace-steps .placeholder')).not.toBeNull()
  })

  it('asserts a symptom on toggle and re-renders report and trace', async () => {
    const { app, api, root } = await startApp()
    checkbox('s1').click()
    await app.flush()
    expect(api.asserted).toEqual(['s1'])
    const top = root.querySelector('.result-table tbody tr.top') as HTMLElement
    expect(top.querySelector('.name')?.textContent).toBe('A')
    expect(top.querySelector('.mass .value')?.textContent).toBe('0.80000')
    expect(root.querySelectorAll('.trace-steps .step')).toHaveLength(1)
  })

  it('serializes mutations: rapid toggles hit the API in order', async () => {
    const { app, api } = await startApp()
    checkbox('s1').click()
    checkbox('s2').click()
    await app.flush()
    const mutations = api.calls.filter((c) => c.startsWith('assert:'))
    expect(mutations).toEqual(['assert:s1', 'assert:s2'])
  })

  it('reverts the toggle and shows the diagnostic on a 409', async () => {
    const { app, api, root } = await startApp()
    api.failNext = new ApiError(409, "symptom 's1' is already asserted")
    checkbox('s1').click()
    await app.flush()
    expect(checkbox('s1').checked).toBe(false)
    const banner = root.querySelector('.banner') as HTMLElement
    expect(banner.hidden).toBe(false)
    expect(banner.textContent).toContain('already asserted')
    expect(banner.querySelector('button.retry')).toBeNull()
    expect(api.asserted).toEqual([])
  })

  it('reverts the toggle and shows the diagnostic on a 422 total conflict', async () => {
    const { app, api, root } = await startApp()
    api.failNext = new ApiError(422, 'conflict K=1.0; evidence is fully contradictory')
    checkbox('s2').click()
    await app.flush()
    expect(checkbox('s2').checked).toBe(false)
    expect(root.querySelector('.banner')?.textContent).toContain('contradictory')
  })

  it('offers retry with resync after a network failure', async () => {
    const { app, api, root } = await startApp()
    api.failNext = new ApiError(0, 'network failure: connection refused')
    checkbox('s1').click()
    await app.flush()
    const retry = root.querySelector<HTMLButtonElement>('.banner button.retry')
    expect(retry).not.toBeNull()

    retry?.click()
    await new Promise((resolve) => setTimeout(resolve, 0))
    expect(api.calls).toContain('getSession')
    expect((root.querySelector('.banner') as HTMLElement).hidden).toBe(true)
  })

  it('toggle followed by its inverse restores the previous display', async () => {
    const { app, root } = await startApp()
    const before = (root.querySelector('.panel.results') as HTMLElement).innerHTML
    checkbox('s1').click()
    await app.flush()
    const mid = (root.querySelector('.panel.results') as HTMLElement).innerHTML
    expect(mid).not.toBe(before)
    checkbox('s1').click()
    await app.flush()
    expect((root.querySelector('.panel.results') as HTMLElement).innerHTML).toBe(before)
  })

  it('displays only numbers taken from API responses', async () => {
    const { app, root } = await startApp()
    checkbox('s1').click()
    await app.flush()

    const apiNumbers = new Set<string>()
    const harvest = (value: unknown): void => {
      if (typeof value === 'number') apiNumbers.add(value.toFixed(5))
      else if (Array.isArray(value)) value.forEach(harvest)
      else if (value && typeof value === 'object') Object.values(value).forEach(harvest)
    }
    harvest(AFTER_S1)
    harvest(S1_STEP)
    harvest(KB)

    const displayed = root.querySelectorAll<HTMLElement>('.value, .num, .top-mass')
    expect(displayed.length).toBeGreaterThan(0)
    for (const element of displayed) {
      expect(apiNumbers, `displayed ${element.textContent}`).toContain(element.textContent)
    }
  })
})
