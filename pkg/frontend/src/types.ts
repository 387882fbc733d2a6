// Shapes of the consultation API responses. Numbers are full precision;
// the UI only ever formats them, it never recomputes combination math.

export interface SymptomInfo {
  id: string
  label: string
  diseases: string[]
  bpa: number
}

export interface KbInfo {
  name: string
  hypotheses: string[]
  catch_all: string
  symptoms: SymptomInfo[]
}

export interface ReportEntry {
  set: string[]
  mass: number
  belief: number
  plausibility: number
}

export interface Report {
  ranked: ReportEntry[]
  top: ReportEntry
  conflict_history: number[]
  canonical: string
}

export interface MassRow {
  set: string[]
  mass: number
}

export interface ProductCell {
  left: string[]
  right: string[]
  intersection: string[]
  value: number
  conflict: boolean
}

export interface TraceStep {
  symptom_id: string
  conflict: number
  normalizer: number
  prior: MassRow[]
  evidence: MassRow[]
  posterior: MassRow[]
  products: ProductCell[]
}

export interface SessionView {
  id: string
  kb: string
  asserted: string[]
  report: Report
}

export interface CreatedSession {
  id: string
  report: Report
}

export interface AssertResponse {
  step: TraceStep
  report: Report
}

export interface RetractResponse {
  report: Report
}

export interface TraceResponse {
  steps: TraceStep[]
}
