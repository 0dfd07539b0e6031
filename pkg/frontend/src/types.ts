import { z } from 'zod';

// Wire shapes for the session service.  Responses are validated with zod so
// a drifting server fails loudly instead of rendering garbage.

export const cellInfoSchema = z.object({
  content: z.string(),
  kind: z.string(),
  value: z.string().nullable(),
});

export const sheetSchema = z.object({
  name: z.string(),
  cols: z.number().int().positive(),
  rows: z.number().int().positive(),
  cells: z.record(cellInfoSchema),
});

export const gridSchema = z.object({
  title: z.string(),
  sheets: z.array(sheetSchema),
});

export const highlightSchema = z.object({
  sheet: z.string(),
  t: z.string(),
  cells: z.array(z.string()),
});

export const coverageSchema = z.object({
  coverage: z.number(),
  inspected: z.number().int(),
  eligible: z.number().int(),
});

export const newSessionSchema = z.object({ session_id: z.string() });

export const eventsAckSchema = z.object({
  accepted: z.number().int(),
  total: z.number().int(),
});

export type CellInfo = z.infer<typeof cellInfoSchema>;
export type SheetPayload = z.infer<typeof sheetSchema>;
export type GridPayload = z.infer<typeof gridSchema>;
export type HighlightResult = z.infer<typeof highlightSchema>;
export type CoverageSummary = z.infer<typeof coverageSchema>;

/**
 * One interaction event as the service expects it.  `t` is elapsed seconds
 * since session start as a decimal string; `seq` is the client sequence
 * number the server uses to drop duplicate deliveries.
 */
export interface UiEvent {
  t: string;
  kind: 'open' | 'close' | 'sheet' | 'select' | 'select_range' | 'edit';
  sheet?: string;
  cell?: string;
  range?: string;
  content?: string;
  seq?: number;
}
