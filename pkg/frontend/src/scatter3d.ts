// Rotatable 3D scatter projected orthographically onto SVG. Each axis is
// normalized by its own data range so objectives of wildly different
// magnitudes (bit/s vs bit/J) stay visually comparable.

import { FrontDoc } from "./api";

export interface Rotation {
  yaw: number; // around the vertical axis, radians
  pitch: number; // around the horizontal axis, radians
}

export interface Scatter3DOptions {
  width?: number;
  height?: number;
  axes: [number, number, number];
  names: string[];
  rotation: Rotation;
  utopia?: number[];
  marker?: number[];
}

const SVG_NS = "http://www.w3.org/2000/svg";

export function project(
  v: [number, number, number],
  rotation: Rotation,
): [number, number, number] {
  const [x, y, z] = v;
  const cy = Math.cos(rotation.yaw);
  const sy = Math.sin(rotation.yaw);
  const cp = Math.cos(rotation.pitch);
  const sp = Math.sin(rotation.pitch);
  // yaw about z, then pitch about x; orthographic drop of the depth axis
  const x1 = cy * x - sy * y;
  const y1 = sy * x + cy * y;
  const y2 = cp * y1 - sp * z;
  const z2 = sp * y1 + cp * z;
  return [x1, z2, y2]; // screen x, screen y (up), depth
}

function el(tag: string, attrs: Record<string, string | number>): SVGElement {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, String(value));
  return node;
}

export function renderScatter3D(
  svg: SVGSVGElement,
  front: FrontDoc | undefined,
  options: Scatter3DOptions,
): void {
  const width = options.width ?? 640;
  const height = options.height ?? 480;
  svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
  svg.replaceChildren();
  if (!front || front.points.length === 0) {
    const empty = el("text", { x: width / 2, y: height / 2, class: "placeholder" });
    empty.textContent = "no points";
    svg.appendChild(empty);
    return;
  }

  const [ia, ib, ic] = options.axes;
  const maxes = [ia, ib, ic].map((idx) =>
    Math.max(...front.points.map((p) => p.g[idx]), options.utopia?.[idx] ?? 0, 1e-300),
  );
  const normalize = (g: number[]): [number, number, number] => [
    g[ia] / maxes[0],
    g[ib] / maxes[1],
    g[ic] / maxes[2],
  ];

  const cx = width / 2;
  const cyScreen = height / 2;
  const scale = Math.min(width, height) / 2.6;
  const toScreen = (p: [number, number, number]) => {
    const [px, py, depth] = project(p, options.rotation);
    return { x: cx + px * scale, y: cyScreen - py * scale, depth };
  };

  // unit axis tripod with labels
  const origin = toScreen([0, 0, 0]);
  const axisEnds: [number, number, number][] = [
    [1.05, 0, 0],
    [0, 1.05, 0],
    [0, 0, 1.05],
  ];
  axisEnds.forEach((end, i) => {
    const e = toScreen(end);
    svg.appendChild(
      el("line", { x1: origin.x, y1: origin.y, x2: e.x, y2: e.y, class: "axis3d" }),
    );
    const label = el("text", { x: e.x, y: e.y, class: "axis-label" });
    label.textContent = options.names[[ia, ib, ic][i]];
    svg.appendChild(label);
  });

  const drawn = front.points
    .map((p) => ({ kind: p.boundary_kind, screen: toScreen(normalize(p.g)) }))
    .sort((a, b) => a.screen.depth - b.screen.depth);
  for (const { kind, screen } of drawn) {
    svg.appendChild(
      el("circle", {
        cx: screen.x,
        cy: screen.y,
        r: kind === "interior" ? 2 : 4,
        class: `pt pt-${kind}`,
        "data-kind": kind,
      }),
    );
  }

  if (options.utopia) {
    const u = toScreen(normalize(options.utopia));
    svg.appendChild(
      el("circle", { cx: u.x, cy: u.y, r: 7, class: "utopia", "data-role": "utopia" }),
    );
  }
  if (options.marker) {
    const m = toScreen(normalize(options.marker));
    svg.appendChild(
      el("circle", { cx: m.x, cy: m.y, r: 6, class: "marker", "data-role": "marker" }),
    );
  }
}

/** Pointer-drag rotation: returns a disposer. */
export function attachRotation(
  svg: SVGSVGElement,
  rotation: Rotation,
  onChange: (r: Rotation) => void,
): () => void {
  let dragging = false;
  let last: [number, number] = [0, 0];
  const down = (event: PointerEvent) => {
    dragging = true;
    last = [event.clientX, event.clientY];
  };
  const move = (event: PointerEvent) => {
    if (!dragging) return;
    const dx = event.clientX - last[0];
    const dy = event.clientY - last[1];
    last = [event.clientX, event.clientY];
    rotation.yaw += dx * 0.01;
    rotation.pitch = Math.max(-1.4, Math.min(1.4, rotation.pitch + dy * 0.01));
    onChange({ ...rotation });
  };
  const up = () => {
    dragging = false;
  };
  svg.addEventListener("pointerdown", down);
  svg.addEventListener("pointermove", move);
  svg.addEventListener("pointerup", up);
  svg.addEventListener("pointerleave", up);
  return () => {
    svg.removeEventListener("pointerdown", down);
    svg.removeEventListener("pointermove", move);
    svg.removeEventListener("pointerup", up);
    svg.removeEventListener("pointerleave", up);
  };
}
