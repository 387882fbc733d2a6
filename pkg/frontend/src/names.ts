// Friendly display names for the reference knowledge base's hypothesis
// labels. The API deliberately serves short labels; anything unknown falls
// back to the label itself so other knowledge bases still render.

const DISEASE_NAMES: Record<string, string> = {
  AI: 'Avian Influenza',
  ND: 'Newcastle Disease',
  FC: 'Fowl Cholera',
  IBRespi: 'Infectious Bronchitis (respiratory form)',
  IBRepro: 'Infectious Bronchitis (reproductive form)',
  SHS: 'Swollen Head Syndrome',
  OTHER: 'Other / unlisted cause',
}

export function displayName(label: string): string {
  return DISEASE_NAMES[label] ?? label
}

/** Singletons get their full name; larger sets stay compact. */
export function setDisplay(set: string[]): string {
  if (set.length === 1) return displayName(set[0])
  return set.join(', ')
}

export function setTooltip(set: string[]): string {
  return set.map(displayName).join(', ')
}

/** Compact `{A,B}` rendering for trace grids. */
export function setBraces(set: string[]): string {
  return `{${set.join(',')}}`
}
