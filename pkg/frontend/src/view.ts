// DOM rendering. Every number shown here is taken verbatim from an API
// response field and only formatted; combination math stays server-side.

import { setBraces, setDisplay, setTooltip } from './names'
import type { ProductCell, Report, SymptomInfo, TraceStep } from './types'

/** 5-decimal display, mirroring the service's canonical precision. */
export function formatValue(value: number): string {
  return value.toFixed(5)
}

function valueSpan(value: number, className = 'value'): HTMLSpanElement {
  const span = document.createElement('span')
  span.className = className
  span.textContent = formatValue(value)
  span.title = String(value) // tooltip reveals full precision
  return span
}

export type ToggleHandler = (
  symptomId: string,
  checked: boolean,
  input: HTMLInputElement,
) => void

export function renderSymptomPanel(
  list: HTMLElement,
  symptoms: SymptomInfo[],
  asserted: ReadonlySet<string>,
  onToggle: ToggleHandler,
): void {
  list.textContent = ''
  for (const symptom of symptoms) {
    const item = document.createElement('li')
    const label = document.createElement('label')
    const input = document.createElement('input')
    input.type = 'checkbox'
    input.dataset.id = symptom.id
    input.checked = asserted.has(symptom.id)
    input.addEventListener('change', () => onToggle(symptom.id, input.checked, input))

    const text = document.createElement('span')
    text.className = 'symptom-label'
    text.textContent = symptom.label

    const meta = document.createElement('span')
    meta.className = 'symptom-meta'
    meta.textContent = `${setBraces(symptom.diseases)} @ ${symptom.bpa.toFixed(2)}`
    meta.title = setTooltip(symptom.diseases)

    label.append(input, text, meta)
    item.append(label)
    list.append(item)
  }
}

function barCell(value: number, kind: 'belief' | 'plausibility'): HTMLTableCellElement {
  const cell = document.createElement('td')
  cell.className = kind
  const bar = document.createElement('span')
  bar.className = 'bar'
  const fill = document.createElement('span')
  fill.className = 'fill'
  fill.style.width = `${(value * 100).toFixed(1)}%`
  bar.append(fill)
  cell.append(valueSpan(value, 'num'), bar)
  return cell
}

export function renderResultPanel(panel: HTMLElement, report: Report): void {
  const banner = panel.querySelector<HTMLElement>('.top-banner')
  const body = panel.querySelector<HTMLElement>('.result-table tbody')
  if (!banner || !body) throw new Error('result panel scaffold missing')

  banner.textContent = ''
  const name = document.createElement('span')
  name.className = 'top-name'
  name.textContent = setDisplay(report.top.set)
  name.title = setTooltip(report.top.set)
  banner.append(name, valueSpan(report.top.mass, 'top-mass'))

  body.textContent = ''
  report.ranked.forEach((entry, index) => {
    const row = document.createElement('tr')
    if (index === 0) row.classList.add('top')
    const nameCell = document.createElement('td')
    nameCell.className = 'name'
    nameCell.textContent = setDisplay(entry.set)
    nameCell.title = setTooltip(entry.set)
    const massCell = document.createElement('td')
    massCell.className = 'mass'
    massCell.append(valueSpan(entry.mass))
    row.append(nameCell, massCell, barCell(entry.belief, 'belief'), barCell(entry.plausibility, 'plausibility'))
    body.append(row)
  })
}

export function renderConflictHistory(container: HTMLElement, history: number[]): void {
  container.textContent = ''
  if (history.length === 0) return
  const heading = document.createElement('span')
  heading.className = 'k-heading'
  heading.textContent = 'conflict per step:'
  container.append(heading)
  history.forEach((k, index) => {
    const chip = document.createElement('span')
    chip.className = 'k-chip'
    chip.dataset.step = String(index + 1)
    chip.textContent = `step ${index + 1}: K=${formatValue(k)}`
    chip.title = String(k)
    container.append(chip)
  })
}

function gridCell(cell: ProductCell): HTMLTableCellElement {
  const td = document.createElement('td')
  td.className = cell.conflict ? 'cell conflict' : 'cell'
  const target = document.createElement('span')
  target.className = 'inter'
  target.textContent = cell.conflict ? '∅' : setBraces(cell.intersection)
  if (!cell.conflict) target.title = setTooltip(cell.intersection)
  td.append(target, valueSpan(cell.value))
  return td
}

export function renderTrace(
  container: HTMLElement,
  steps: TraceStep[],
  symptomLabels: ReadonlyMap<string, string>,
): void {
  container.textContent = ''
  if (steps.length === 0) {
    const placeholder = document.createElement('p')
    placeholder.className = 'placeholder'
    placeholder.textContent = 'No symptoms asserted yet; combination tables will appear here.'
    container.append(placeholder)
    return
  }

  steps.forEach((step, index) => {
    const details = document.createElement('details')
    details.className = 'step'
    details.dataset.step = String(index + 1)
    details.open = index === steps.length - 1

    const summary = document.createElement('summary')
    const title = document.createElement('span')
    title.textContent = `step ${index + 1}: ${symptomLabels.get(step.symptom_id) ?? step.symptom_id}`
    const k = document.createElement('span')
    k.className = 'k'
    k.textContent = `K=${formatValue(step.conflict)}`
    k.title = String(step.conflict)
    const norm = document.createElement('span')
    norm.className = 'norm'
    norm.textContent = `normalizer=${formatValue(step.normalizer)}`
    norm.title = String(step.normalizer)
    summary.append(title, k, norm)
    details.append(summary)

    const byPair = new Map<string, ProductCell>()
    for (const cell of step.products) {
      byPair.set(`${cell.left.join('|')}×${cell.right.join('|')}`, cell)
    }

    const table = document.createElement('table')
    table.className = 'grid'
    const head = table.createTHead().insertRow()
    head.append(document.createElement('th'))
    for (const evidence of step.evidence) {
      const th = document.createElement('th')
      th.textContent = setBraces(evidence.set)
      th.title = setTooltip(evidence.set)
      th.append(document.createElement('br'), valueSpan(evidence.mass))
      head.append(th)
    }
    const tbody = table.createTBody()
    for (const prior of step.prior) {
      const row = tbody.insertRow()
      const th = document.createElement('th')
      th.textContent = setBraces(prior.set)
      th.title = setTooltip(prior.set)
      th.append(document.createElement('br'), valueSpan(prior.mass))
      row.append(th)
      for (const evidence of step.evidence) {
        const cell = byPair.get(`${prior.set.join('|')}×${evidence.set.join('|')}`)
        if (cell === undefined) throw new Error('trace grid is missing a product cell')
        row.append(gridCell(cell))
      }
    }
    details.append(table)
    container.append(details)
  })
}
