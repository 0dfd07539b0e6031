/**
 * Session-relative clock.  Timestamps go out as elapsed seconds since the
 * session opened, formatted with millisecond precision ("12.345"), and are
 * clamped so they never run backwards even if the host clock does.
 */
export class SessionClock {
  private readonly origin: number;
  private lastMs = 0;

  constructor(private readonly now: () => number = Date.now) {
    this.origin = this.now();
  }

  elapsed(): string {
    const ms = Math.round(this.now() - this.origin);
    this.lastMs = Math.max(this.lastMs, ms, 0);
    return formatSeconds(this.lastMs);
  }
}

export function formatSeconds(ms: number): string {
  const whole = Math.floor(ms / 1000);
  const frac = ms % 1000;
  return `${whole}.${String(frac).padStart(3, '0')}`;
}
