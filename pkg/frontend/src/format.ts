// Axis scaling and number formatting. Objective magnitudes span bit/s to
// tens of Gbit/s/km^2; axes pick a metric prefix per objective so labels
// stay readable.

const PREFIXES: [number, string][] = [
  [1e9, "G"],
  [1e6, "M"],
  [1e3, "k"],
];

export interface AxisScale {
  factor: number;
  unit: string;
}

export function axisScale(maxValue: number, unit: string): AxisScale {
  for (const [factor, prefix] of PREFIXES) {
    if (maxValue >= factor) {
      return { factor, unit: unit ? `${prefix}${unit}` : prefix };
    }
  }
  return { factor: 1, unit };
}

export function formatValue(value: number, scale: AxisScale): string {
  const scaled = value / scale.factor;
  const digits = Math.abs(scaled) >= 100 ? 0 : Math.abs(scaled) >= 10 ? 1 : 3;
  return scaled.toFixed(digits);
}

export function debounce<A extends unknown[]>(
  fn: (...args: A) => void,
  waitMs: number,
): (...args: A) => void {
  let timer: ReturnType<typeof setTimeout> | undefined;
  return (...args: A) => {
    if (timer !== undefined) clearTimeout(timer);
    timer = setTimeout(() => fn(...args), waitMs);
  };
}
