/** Axis scales and the shared color map. */

export interface Scale {
  (value: number): number;
  domain: [number, number];
  range: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  const fn = ((value: number) => r0 + ((value - d0) / span) * (r1 - r0)) as Scale;
  fn.domain = domain;
  fn.range = range;
  return fn;
}

export function logScale(domain: [number, number], range: [number, number]): Scale {
  if (domain[0] <= 0 || domain[1] <= 0) {
    throw new Error("log scale needs a positive domain");
  }
  const inner = linearScale([Math.log10(domain[0]), Math.log10(domain[1])], range);
  const fn = ((value: number) => inner(Math.log10(value))) as Scale;
  fn.domain = domain;
  fn.range = range;
  return fn;
}

export function extent(values: number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (!Number.isFinite(v)) continue;
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  if (lo > hi) throw new Error("no finite values to scale");
  return lo === hi ? [lo - 1, hi + 1] : [lo, hi];
}

export function ticks(lo: number, hi: number, count = 5): number[] {
  const span = hi - lo;
  if (span <= 0) return [lo];
  const step = Math.pow(10, Math.floor(Math.log10(span / count)));
  const candidates = [step, 2 * step, 5 * step, 10 * step];
  const chosen = candidates.find((s) => span / s <= count * 1.6) ?? 10 * step;
  const start = Math.ceil(lo / chosen) * chosen;
  const out: number[] = [];
  for (let v = start; v <= hi + chosen * 1e-9; v += chosen) {
    out.push(Math.abs(v) < chosen * 1e-9 ? 0 : v);
  }
  return out;
}

// viridis anchors, dark-blue -> yellow
const VIRIDIS: [number, number, number][] = [
  [68, 1, 84], [71, 44, 122], [59, 81, 139], [44, 113, 142], [33, 144, 141],
  [39, 173, 129], [92, 200, 99], [170, 220, 50], [253, 231, 37],
];

/** Map t in [0, 1] to a viridis rgb() string; clamps outside values. */
export function viridis(t: number): string {
  if (Number.isNaN(t)) return "rgb(128,128,128)";
  const x = Math.min(1, Math.max(0, t)) * (VIRIDIS.length - 1);
  const i = Math.min(VIRIDIS.length - 2, Math.floor(x));
  const frac = x - i;
  const [r0, g0, b0] = VIRIDIS[i];
  const [r1, g1, b1] = VIRIDIS[i + 1];
  const mix = (a: number, b: number) => Math.round(a + (b - a) * frac);
  return `rgb(${mix(r0, r1)},${mix(g0, g1)},${mix(b0, b1)})`;
}

/**
 * Fixed per-metric color limits in log10 units, shared across noisy and
 * noise-free renders of the same metric so side-by-side plots compare.
 * Override per job with colorLimits.
 */
export const METRIC_COLOR_LIMITS: Record<string, [number, number]> = {
  f: [-8, 0],
  m: [-4, 2],
  s: [-4, 2],
};
