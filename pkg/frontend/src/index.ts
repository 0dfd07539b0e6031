export { ApiClient, ApiError } from './api';
export type { SessionService } from './api';
export { SessionClock, formatSeconds } from './clock';
export { EventQueue } from './queue';
export { GridView, cellAddr, colLetters } from './gridState';
export type { Focus } from './gridState';
export { renderSheetHtml, renderTabsHtml } from './render';
export * from './types';
