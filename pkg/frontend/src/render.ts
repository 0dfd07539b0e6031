import { GridView, cellAddr, colLetters } from './gridState';

function escapeHtml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

/**
 * Render the active sheet as an HTML table.  Cell text is the recomputed
 * value from the service (falling back to raw content for labels); overlay
 * cells get the `hl` class, the focused cell gets `focus`.
 */
export function renderSheetHtml(view: GridView): string {
  const sheet = view.sheet();
  const overlay = new Set(view.overlay);
  const parts: string[] = [];
  parts.push(`<table class="grid" data-sheet="${escapeHtml(sheet.name)}">`);
  parts.push('<tr><th></th>');
  for (let col = 1; col <= sheet.cols; col++) {
    parts.push(`<th>${colLetters(col)}</th>`);
  }
  parts.push('</tr>');
  for (let row = 1; row <= sheet.rows; row++) {
    parts.push(`<tr><th>${row}</th>`);
    for (let col = 1; col <= sheet.cols; col++) {
      const addr = cellAddr(col, row);
      const cell = sheet.cells[addr];
      const classes: string[] = [];
      if (overlay.has(addr)) classes.push('hl');
      if (view.focus.col === col && view.focus.row === row) classes.push('focus');
      const cls = classes.length ? ` class="${classes.join(' ')}"` : '';
      const text = cell ? cell.value ?? cell.content : '';
      parts.push(`<td${cls} data-addr="${addr}">${escapeHtml(text)}</td>`);
    }
    parts.push('</tr>');
  }
  parts.push('</table>');
  return parts.join('');
}

/** Sheet tab strip; the active tab is marked. */
export function renderTabsHtml(view: GridView): string {
  const tabs = view.workbook.sheets
    .map((s) => {
      const cls = s.name === view.activeSheet ? ' class="active"' : '';
      return `<li${cls}>${escapeHtml(s.name)}</li>`;
    })
    .join('');
  return `<ul class="tabs">${tabs}</ul>`;
}
