/**
 * SVG renderer for the log-log convergence figure. Output is vector-only:
 * a .svg path is required, raster formats are out of scope here.
 */

import { FigureModel, RefLine } from "./figure";

const WIDTH = 760;
const HEIGHT = 520;
const MARGIN = { top: 28, right: 200, bottom: 52, left: 76 };

const PALETTE = [
  "#4361ee",
  "#e63946",
  "#2d6a4f",
  "#f3722c",
  "#7209b7",
  "#0096c7",
  "#b5838d",
  "#718355",
];

export function assertSvgPath(path: string): void {
  if (!path.toLowerCase().endsWith(".svg")) {
    throw new Error(
      `unsupported output extension for ${JSON.stringify(path)}: only .svg output is supported`
    );
  }
}

function escapeXml(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function fmtSlope(s: number): string {
  const r = Math.round(s * 10000) / 10000;
  return `${r}`;
}

/** Tick values at powers of `base` inside [lo, hi]. */
function logTicks(lo: number, hi: number, base: number): number[] {
  const ticks: number[] = [];
  const kLo = Math.ceil(Math.log(lo) / Math.log(base) - 1e-9);
  const kHi = Math.floor(Math.log(hi) / Math.log(base) + 1e-9);
  for (let k = kLo; k <= kHi; k++) {
    ticks.push(Math.pow(base, k));
  }
  return ticks;
}

function tickLabel(v: number, base: number): string {
  const k = Math.round(Math.log(v) / Math.log(base));
  return `${base}^${k}`;
}

export function renderSvg(model: FigureModel): string {
  const plotW = WIDTH - MARGIN.left - MARGIN.right;
  const plotH = HEIGHT - MARGIN.top - MARGIN.bottom;
  const [xMin, xMax] = model.xRange;
  const [yMin, yMax] = model.yRange;
  const lx0 = Math.log(xMin);
  const lx1 = Math.log(xMax);
  const ly0 = Math.log(yMin);
  const ly1 = Math.log(yMax);
  const px = (x: number): number =>
    MARGIN.left + ((Math.log(x) - lx0) / (lx1 - lx0)) * plotW;
  const py = (y: number): number =>
    MARGIN.top + plotH - ((Math.log(y) - ly0) / (ly1 - ly0)) * plotH;
  const f = (v: number): string => v.toFixed(2);

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" ` +
      `viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="sans-serif" font-size="12">`
  );
  parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="#ffffff"/>`);

  // grid + axes
  let xTicks = logTicks(xMin, xMax, 2);
  if (xTicks.length > 12) {
    xTicks = xTicks.filter((_, i) => i % 2 === 0);
  }
  const yTicks = logTicks(yMin, yMax, 10);
  for (const t of xTicks) {
    const x = px(t);
    parts.push(
      `<line x1="${f(x)}" y1="${MARGIN.top}" x2="${f(x)}" ` +
        `y2="${MARGIN.top + plotH}" stroke="#e0e0e0" stroke-width="1"/>`
    );
    parts.push(
      `<text x="${f(x)}" y="${MARGIN.top + plotH + 18}" text-anchor="middle" ` +
        `fill="#444">${tickLabel(t, 2)}</text>`
    );
  }
  for (const t of yTicks) {
    const y = py(t);
    parts.push(
      `<line x1="${MARGIN.left}" y1="${f(y)}" x2="${MARGIN.left + plotW}" ` +
        `y2="${f(y)}" stroke="#e0e0e0" stroke-width="1"/>`
    );
    parts.push(
      `<text x="${MARGIN.left - 8}" y="${f(y + 4)}" text-anchor="end" ` +
        `fill="#444">${tickLabel(t, 10)}</text>`
    );
  }
  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${plotW}" height="${plotH}" ` +
      `fill="none" stroke="#888" stroke-width="1"/>`
  );
  parts.push(
    `<text x="${MARGIN.left + plotW / 2}" y="${HEIGHT - 14}" text-anchor="middle" ` +
      `fill="#222">n</text>`
  );
  parts.push(
    `<text x="20" y="${MARGIN.top + plotH / 2}" text-anchor="middle" fill="#222" ` +
      `transform="rotate(-90 20 ${MARGIN.top + plotH / 2})">error</text>`
  );

  // reference lines under the data
  model.refLines.forEach((r: RefLine, i: number) => {
    const color = PALETTE[i % PALETTE.length];
    parts.push(
      `<line x1="${f(px(r.x0))}" y1="${f(py(r.y0))}" x2="${f(px(r.x1))}" ` +
        `y2="${f(py(r.y1))}" stroke="${color}" stroke-width="1" ` +
        `stroke-dasharray="6,4" opacity="0.7" class="refline"/>`
    );
    parts.push(
      `<text x="${f(px(r.x1) + 4)}" y="${f(py(r.y1) - 4)}" fill="${color}" ` +
        `font-size="10">slope ${fmtSlope(r.slope)}</text>`
    );
  });

  // data series: markers plus a thin connecting line
  model.series.forEach((s, i) => {
    const color = PALETTE[i % PALETTE.length];
    const pts = s.points.map((p) => `${f(px(p.x))},${f(py(p.y))}`).join(" ");
    parts.push(
      `<polyline points="${pts}" fill="none" stroke="${color}" ` +
        `stroke-width="1.2" opacity="0.9"/>`
    );
    for (const p of s.points) {
      parts.push(
        `<circle cx="${f(px(p.x))}" cy="${f(py(p.y))}" r="3.2" fill="${color}" ` +
          `class="marker"/>`
      );
    }
  });

  // legend
  const legendX = MARGIN.left + plotW + 16;
  model.series.forEach((s, i) => {
    const color = PALETTE[i % PALETTE.length];
    const y = MARGIN.top + 10 + i * 20;
    parts.push(
      `<line x1="${legendX}" y1="${y}" x2="${legendX + 22}" y2="${y}" ` +
        `stroke="${color}" stroke-width="1.2"/>`
    );
    parts.push(
      `<circle cx="${legendX + 11}" cy="${y}" r="3.2" fill="${color}"/>`
    );
    parts.push(
      `<text x="${legendX + 28}" y="${y + 4}" fill="#222" class="legend">` +
        `${escapeXml(s.label)}</text>`
    );
  });

  parts.push("</svg>");
  return parts.join("\n");
}
