// 2D SVG scatter: interior cloud points vs boundary samples, the utopia
// marker, and the current scalarization marker, with prefix-scaled axes.

import { FrontDoc } from "./api";
import { axisScale, formatValue } from "./format";

export interface Scatter2DOptions {
  width?: number;
  height?: number;
  axes: [number, number]; // objective indices
  names: string[];
  units: string[];
  utopia?: number[];
  marker?: number[];
}

const SVG_NS = "http://www.w3.org/2000/svg";
const MARGIN = { left: 64, right: 16, top: 12, bottom: 44 };

function el(tag: string, attrs: Record<string, string | number>): SVGElement {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, String(value));
  }
  return node;
}

export function renderScatter2D(
  svg: SVGSVGElement,
  front: FrontDoc | undefined,
  options: Scatter2DOptions,
): void {
  const width = options.width ?? 640;
  const height = options.height ?? 420;
  svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
  svg.replaceChildren();

  if (!front || front.points.length === 0) {
    const empty = el("text", { x: width / 2, y: height / 2, class: "placeholder" });
    empty.textContent = "no points";
    svg.appendChild(empty);
    return;
  }

  const [ix, iy] = options.axes;
  const xs = front.points.map((p) => p.g[ix]);
  const ys = front.points.map((p) => p.g[iy]);
  const xMax = Math.max(...xs, options.utopia?.[ix] ?? 0, options.marker?.[ix] ?? 0);
  const yMax = Math.max(...ys, options.utopia?.[iy] ?? 0, options.marker?.[iy] ?? 0);
  const sx = axisScale(xMax, options.units[ix]);
  const sy = axisScale(yMax, options.units[iy]);

  const plotW = width - MARGIN.left - MARGIN.right;
  const plotH = height - MARGIN.top - MARGIN.bottom;
  const toX = (v: number) => MARGIN.left + (xMax > 0 ? (v / xMax) * plotW : 0);
  const toY = (v: number) => MARGIN.top + plotH - (yMax > 0 ? (v / yMax) * plotH : 0);

  svg.appendChild(
    el("rect", { x: MARGIN.left, y: MARGIN.top, width: plotW, height: plotH, class: "plot-bg" }),
  );

  for (const tick of [0, 0.25, 0.5, 0.75, 1]) {
    const vx = tick * xMax;
    const vy = tick * yMax;
    const tx = el("text", { x: toX(vx), y: height - MARGIN.bottom + 16, class: "tick" });
    tx.textContent = formatValue(vx, sx);
    svg.appendChild(tx);
    const ty = el("text", { x: MARGIN.left - 6, y: toY(vy) + 4, class: "tick tick-y" });
    ty.textContent = formatValue(vy, sy);
    svg.appendChild(ty);
  }

  const xLabel = el("text", { x: MARGIN.left + plotW / 2, y: height - 8, class: "axis-label" });
  xLabel.textContent = `${options.names[ix]} [${sx.unit}]`;
  svg.appendChild(xLabel);
  const yLabel = el("text", {
    x: 14,
    y: MARGIN.top + plotH / 2,
    class: "axis-label",
    transform: `rotate(-90 14 ${MARGIN.top + plotH / 2})`,
  });
  yLabel.textContent = `${options.names[iy]} [${sy.unit}]`;
  svg.appendChild(yLabel);

  for (const point of front.points) {
    const kind = point.boundary_kind;
    svg.appendChild(
      el("circle", {
        cx: toX(point.g[ix]),
        cy: toY(point.g[iy]),
        r: kind === "interior" ? 2 : 4,
        class: `pt pt-${kind}`,
        "data-kind": kind,
      }),
    );
  }

  if (options.utopia) {
    svg.appendChild(
      el("path", {
        d: star(toX(options.utopia[ix]), toY(options.utopia[iy]), 7),
        class: "utopia",
        "data-role": "utopia",
      }),
    );
  }

  if (options.marker) {
    svg.appendChild(
      el("circle", {
        cx: toX(options.marker[ix]),
        cy: toY(options.marker[iy]),
        r: 6,
        class: "marker",
        "data-role": "marker",
      }),
    );
  }
}

function star(cx: number, cy: number, r: number): string {
  const pts: string[] = [];
  for (let i = 0; i < 10; i++) {
    const radius = i % 2 === 0 ? r : r / 2.4;
    const angle = (Math.PI / 5) * i - Math.PI / 2;
    pts.push(`${cx + radius * Math.cos(angle)},${cy + radius * Math.sin(angle)}`);
  }
  return `M${pts.join("L")}Z`;
}
