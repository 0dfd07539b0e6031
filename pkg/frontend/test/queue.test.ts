import { describe, expect, it } from 'vitest';

import { EventQueue } from '../src/queue';
import { stubService } from './stub';

describe('EventQueue', () => {
  it('assigns contiguous sequence numbers in push order', async () => {
    const api = stubService();
    const queue = new EventQueue(api, 's');
    queue.push({ t: '0.000', kind: 'open' });
    queue.push({ t: '1.000', kind: 'select', cell: 'Alpha!A2' });
    queue.push({ t: '2.000', kind: 'select', cell: 'Alpha!A3' });
    await queue.flush();
    expect(api.events.map((e) => e.seq)).toEqual([0, 1, 2]);
    expect(api.events.map((e) => e.kind)).toEqual(['open', 'select', 'select']);
    expect(queue.size).toBe(0);
  });

  it('keeps the batch queued when delivery fails, then resends it', async () => {
    const api = stubService();
    const queue = new EventQueue(api, 's');
    queue.push({ t: '0.000', kind: 'open' });
    api.failNext = 1;
    await expect(queue.flush()).rejects.toThrow('connection reset');
    expect(queue.size).toBe(1);
    await queue.flush();
    expect(queue.size).toBe(0);
    expect(api.events).toHaveLength(1);
  });

  it('duplicate deliveries are harmless because the server drops known seqs', async () => {
    const api = stubService();
    const queue = new EventQueue(api, 's');
    queue.push({ t: '0.000', kind: 'open' });
    await queue.flush();
    // simulate an ack lost in transit: the client resends the same events
    await api.postEvents('s', api.batches[0]!);
    expect(api.events).toHaveLength(1);
  });

  it('events pushed during a flush go out with the next flush', async () => {
    const api = stubService();
    const queue = new EventQueue(api, 's');
    queue.push({ t: '0.000', kind: 'open' });
    queue.push({ t: '0.500', kind: 'sheet', sheet: 'Alpha' });
    await queue.flush();
    queue.push({ t: '1.000', kind: 'close' });
    await queue.flush();
    expect(api.events.map((e) => e.kind)).toEqual(['open', 'sheet', 'close']);
  });
});
