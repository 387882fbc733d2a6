// Application controller: owns the session, serializes mutations, and
// re-renders panels from the latest API responses.

import { ApiError, type Api } from './api'
import type { KbInfo, Report } from './types'
import {
  renderConflictHistory,
  renderResultPanel,
  renderSymptomPanel,
  renderTrace,
} from './view'

const SCAFFOLD = `
  <header class="app-header">
    <h1>Evidentia diagnostic consultation</h1>
    <div class="banner" hidden></div>
  </header>
  <main>
    <section class="panel symptoms">
      <h2>Symptoms observed</h2>
      <ul class="symptom-list"></ul>
      <div class="conflict-history"></div>
    </section>
    <section class="panel results">
      <h2>Diagnosis</h2>
      <div class="top-banner"></div>
      <table class="result-table">
        <thead>
          <tr><th>hypotheses</th><th>mass</th><th>belief</th><th>plausibility</th></tr>
        </thead>
        <tbody></tbody>
      </table>
    </section>
    <section class="panel trace">
      <h2>Combination trace</h2>
      <div class="trace-steps"></div>
    </section>
  </main>
`

export class ConsultationApp {
  private sessionId = ''
  private kb: KbInfo | null = null
  private asserted = new Set<string>()
  private queue: Promise<void> = Promise.resolve()

  constructor(
    private readonly root: HTMLElement,
    private readonly api: Api,
  ) {}

  async start(): Promise<void> {
    this.root.innerHTML = SCAFFOLD
    this.kb = await this.api.getKb()
    const created = await this.api.createSession()
    this.sessionId = created.id
    this.renderSymptoms()
    this.renderReport(created.report)
    renderTrace(this.traceContainer(), [], this.symptomLabels())
  }

  /** Settles when every queued mutation has finished. */
  flush(): Promise<void> {
    return this.queue
  }

  get session(): string {
    return this.sessionId
  }

  private enqueue(task: () => Promise<void>): Promise<void> {
    // one in-flight mutation at a time; a failed task never breaks the chain
    this.queue = this.queue.then(task, task)
    return this.queue
  }

  private handleToggle = (symptomId: string, checked: boolean, input: HTMLInputElement): void => {
    void this.enqueue(async () => {
      try {
        const response = checked
          ? await this.api.assertSymptom(this.sessionId, symptomId)
          : await this.api.retractSymptom(this.sessionId, symptomId)
        if (checked) this.asserted.add(symptomId)
        else this.asserted.delete(symptomId)
        this.clearBanner()
        this.renderReport(response.report)
        await this.refreshTrace()
      } catch (failure) {
        input.checked = !checked // leave the toggle as it was
        if (failure instanceof ApiError && !failure.isNetworkFailure) {
          this.showBanner(failure.message, false)
        } else {
          this.showBanner(
            failure instanceof Error ? failure.message : String(failure),
            true,
          )
        }
      }
    })
  }

  /** Re-fetch authoritative state after a network failure. */
  async resync(): Promise<void> {
    const view = await this.api.getSession(this.sessionId)
    this.asserted = new Set(view.asserted)
    this.clearBanner()
    this.renderSymptoms()
    this.renderReport(view.report)
    await this.refreshTrace()
  }

  private async refreshTrace(): Promise<void> {
    const trace = await this.api.getTrace(this.sessionId)
    renderTrace(this.traceContainer(), trace.steps, this.symptomLabels())
  }

  private renderSymptoms(): void {
    const list = this.root.querySelector<HTMLElement>('.symptom-list')
    if (!list || !this.kb) throw new Error('symptom panel scaffold missing')
    renderSymptomPanel(list, this.kb.symptoms, this.asserted, this.handleToggle)
  }

  private renderReport(report: Report): void {
    const panel = this.root.querySelector<HTMLElement>('.panel.results')
    const history = this.root.querySelector<HTMLElement>('.conflict-history')
    if (!panel || !history) throw new Error('result panel scaffold missing')
    renderResultPanel(panel, report)
    renderConflictHistory(history, report.conflict_history)
  }

  private traceContainer(): HTMLElement {
    const container = this.root.querySelector<HTMLElement>('.trace-steps')
    if (!container) throw new Error('trace panel scaffold missing')
    return container
  }

  private symptomLabels(): Map<string, string> {
    return new Map((this.kb?.symptoms ?? []).map((s) => [s.id, s.label]))
  }

  private showBanner(message: string, withRetry: boolean): void {
    const banner = this.root.querySelector<HTMLElement>('.banner')
    if (!banner) return
    banner.hidden = false
    banner.textContent = message
    if (withRetry) {
      const retry = document.createElement('button')
      retry.className = 'retry'
      retry.textContent = 'retry'
      retry.addEventListener('click', () => {
        void this.resync().catch((failure) => {
          this.showBanner(
            failure instanceof Error ? failure.message : String(failure),
            true,
          )
        })
      })
      banner.append(' ', retry)
    }
  }

  private clearBanner(): void {
    const banner = this.root.querySelector<HTMLElement>('.banner')
    if (!banner) return
    banner.hidden = true
    banner.textContent = ''
  }
}
