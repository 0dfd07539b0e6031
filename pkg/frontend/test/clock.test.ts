import { describe, expect, it } from 'vitest';

import { SessionClock, formatSeconds } from '../src/clock';

describe('formatSeconds', () => {
  it('pads the millisecond part', () => {
    expect(formatSeconds(0)).toBe('0.000');
    expect(formatSeconds(7)).toBe('0.007');
    expect(formatSeconds(1234)).toBe('1.234');
    expect(formatSeconds(60000)).toBe('60.000');
  });
});

describe('SessionClock', () => {
  it('reports elapsed time relative to construction', () => {
    let now = 5000;
    const clock = new SessionClock(() => now);
    expect(clock.elapsed()).toBe('0.000');
    now = 5250;
    expect(clock.elapsed()).toBe('0.250');
    now = 17301;
    expect(clock.elapsed()).toBe('12.301');
  });

  it('never runs backwards even if the host clock does', () => {
    let now = 1000;
    const clock = new SessionClock(() => now);
    now = 3000;
    expect(clock.elapsed()).toBe('2.000');
    now = 1500; // NTP step or suspend
    expect(clock.elapsed()).toBe('2.000');
    now = 3100;
    expect(clock.elapsed()).toBe('2.100');
  });
});
