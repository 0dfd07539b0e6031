import { SessionService } from './api';
import { UiEvent } from './types';

/**
 * Ordered outbound event queue with at-least-once delivery.
 *
 * Every event gets a monotonically increasing sequence number before it is
 * queued.  A flush that fails mid-flight leaves the batch queued, so the next
 * flush resends it; the server discards anything with a seq it has already
 * applied, which makes the retry safe.
 */
export class EventQueue {
  private pending: UiEvent[] = [];
  private nextSeq = 0;

  constructor(
    private readonly api: SessionService,
    private readonly sessionId: string,
  ) {}

  push(event: Omit<UiEvent, 'seq'>): void {
    this.pending.push({ ...event, seq: this.nextSeq++ });
  }

  get size(): number {
    return this.pending.length;
  }

  /** Deliver everything queued so far, in order.  Throws on transport
   *  failure with the batch still queued for the next attempt. */
  async flush(): Promise<void> {
    while (this.pending.length > 0) {
      const batch = this.pending.slice();
      await this.api.postEvents(this.sessionId, batch);
      this.pending.splice(0, batch.length);
    }
  }
}
