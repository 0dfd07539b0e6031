import { SessionService } from './api';
import { SessionClock } from './clock';
import { EventQueue } from './queue';
import { GridPayload, HighlightResult, SheetPayload } from './types';

export interface Focus {
  col: number;
  row: number;
}

export function colLetters(col: number): string {
  let out = '';
  let n = col;
  while (n > 0) {
    n -= 1;
    out = String.fromCharCode(65 + (n % 26)) + out;
    n = Math.floor(n / 26);
  }
  return out;
}

export function cellAddr(col: number, row: number): string {
  return `${colLetters(col)}${row}`;
}

/**
 * View state for one grid session: active sheet, focused cell, edit buffer,
 * and the highlight overlay.  All coverage, dwell, and highlight decisions
 * live server-side; this class only records interactions and mirrors what
 * the service returns.
 */
export class GridView {
  focus: Focus = { col: 1, row: 1 };
  editBuffer: string | null = null;
  /** Exactly the cells of the last highlight response, bare A1 addresses
   *  on the active sheet.  Replaced wholesale on every highlight click. */
  overlay: string[] = [];
  closed = false;

  private constructor(
    private readonly api: SessionService,
    readonly sessionId: string,
    public workbook: GridPayload,
    public activeSheet: string,
    private readonly clock: SessionClock,
    private readonly queue: EventQueue,
  ) {}

  /** Fetch the workbook, start a service session, and emit the opening
   *  events (Open, then activation of the first sheet). */
  static async open(
    api: SessionService,
    opts: { participant?: string; group?: string; clock?: SessionClock } = {},
  ): Promise<GridView> {
    const workbook = await api.getWorkbook();
    const first = workbook.sheets[0];
    if (!first) {
      throw new Error('workbook has no sheets');
    }
    const sessionId = await api.createSession(opts.participant, opts.group);
    const clock = opts.clock ?? new SessionClock();
    const view = new GridView(
      api, sessionId, workbook, first.name, clock, new EventQueue(api, sessionId),
    );
    view.queue.push({ t: clock.elapsed(), kind: 'open' });
    view.queue.push({ t: clock.elapsed(), kind: 'sheet', sheet: first.name });
    return view;
  }

  sheet(): SheetPayload {
    const sheet = this.workbook.sheets.find((s) => s.name === this.activeSheet);
    if (!sheet) {
      throw new Error(`active sheet ${this.activeSheet} missing from workbook`);
    }
    return sheet;
  }

  private qualified(col: number, row: number): string {
    return `${this.activeSheet}!${cellAddr(col, row)}`;
  }

  private checkOpen(): void {
    if (this.closed) {
      throw new Error('session is closed');
    }
  }

  private checkBounds(col: number, row: number): void {
    const sheet = this.sheet();
    if (col < 1 || row < 1 || col > sheet.cols || row > sheet.rows) {
      throw new RangeError(`${cellAddr(col, row)} outside ${sheet.name}`);
    }
  }

  uiActivateSheet(name: string): void {
    this.checkOpen();
    if (!this.workbook.sheets.some((s) => s.name === name)) {
      throw new RangeError(`no sheet named ${name}`);
    }
    if (name === this.activeSheet) {
      return;
    }
    this.activeSheet = name;
    this.focus = { col: 1, row: 1 };
    this.editBuffer = null;
    this.overlay = []; // the overlay belongs to the sheet it was computed for
    this.queue.push({ t: this.clock.elapsed(), kind: 'sheet', sheet: name });
  }

  uiSelect(col: number, row: number): void {
    this.checkOpen();
    this.checkBounds(col, row);
    this.editBuffer = null;
    this.focus = { col, row };
    this.queue.push({
      t: this.clock.elapsed(),
      kind: 'select',
      cell: this.qualified(col, row),
    });
  }

  uiSelectRange(c1: number, r1: number, c2: number, r2: number): void {
    this.checkOpen();
    this.checkBounds(c1, r1);
    this.checkBounds(c2, r2);
    this.editBuffer = null;
    const [colA, colB] = c1 <= c2 ? [c1, c2] : [c2, c1];
    const [rowA, rowB] = r1 <= r2 ? [r1, r2] : [r2, r1];
    this.focus = { col: colA, row: rowA };
    this.queue.push({
      t: this.clock.elapsed(),
      kind: 'select_range',
      range: `${this.activeSheet}!${cellAddr(colA, rowA)}:${cellAddr(colB, rowB)}`,
    });
  }

  uiBeginEdit(text: string): void {
    this.checkOpen();
    this.editBuffer = text;
  }

  /**
   * Enter pressed: the edit commits as focus leaves the cell, so one Edit
   * event goes out at commit time, immediately followed by the Select of
   * the next focused cell (one row down, clamped at the sheet edge).
   */
  uiCommitEdit(): void {
    this.checkOpen();
    if (this.editBuffer === null) {
      throw new Error('no edit in progress');
    }
    const t = this.clock.elapsed();
    const { col, row } = this.focus;
    this.queue.push({
      t, kind: 'edit', cell: this.qualified(col, row), content: this.editBuffer,
    });
    this.editBuffer = null;
    const nextRow = Math.min(row + 1, this.sheet().rows);
    this.focus = { col, row: nextRow };
    this.queue.push({ t, kind: 'select', cell: this.qualified(col, nextRow) });
  }

  /**
   * Highlight button: deliver everything recorded so far, ask the service
   * which cells are still uninspected on the active sheet, and make the
   * overlay exactly that answer (prior shading is dropped first).
   */
  async uiHighlightClick(): Promise<HighlightResult> {
    this.checkOpen();
    this.overlay = [];
    await this.queue.flush();
    const result = await this.api.highlight(this.sessionId, this.activeSheet);
    this.overlay = [...result.cells];
    return result;
  }

  /** Refresh displayed values from the service after edits replayed. */
  async refreshGrid(): Promise<void> {
    await this.queue.flush();
    this.workbook = await this.api.sessionGrid(this.sessionId);
  }

  /** Close out: emit Close, drain the queue, then close server-side.
   *  Safe to call twice; the second call is a no-op. */
  async uiEndSession(): Promise<void> {
    if (this.closed) {
      return;
    }
    this.queue.push({ t: this.clock.elapsed(), kind: 'close' });
    await this.queue.flush();
    await this.api.closeSession(this.sessionId);
    this.closed = true;
  }

  /** Force outbound delivery without any other interaction. */
  async flushEvents(): Promise<void> {
    await this.queue.flush();
  }

  get pendingEvents(): number {
    return this.queue.size;
  }
}
