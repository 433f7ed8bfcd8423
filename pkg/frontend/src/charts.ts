import type { ClassificationResult, ExplainReport } from './types.js';

// Pure view-model builders: they map server numbers to geometry and never
// perform any scoring arithmetic of their own.

export interface BarView {
  label: string;
  value: number;
  isWinner: boolean;
}

export interface RadarAxis {
  label: string;
  angle: number;
}

export interface RadarSeriesView {
  name: string;
  points: { axis: string; radius: number | null }[];
}

export interface RadarView {
  axes: RadarAxis[];
  series: RadarSeriesView[];
}

export function barChartView(report: ExplainReport): BarView[] {
  const bar = report.chart_data.bar;
  const values = bar.series[0]?.values ?? [];
  return bar.labels.map((label, i) => ({
    label,
    value: values[i] ?? 0,
    isWinner: label === report.result.winner,
  }));
}

export function radarChartView(report: ExplainReport): RadarView {
  const spider = report.chart_data.spider;
  const n = spider.labels.length;
  const axes = spider.labels.map((label, i) => ({
    label,
    angle: (2 * Math.PI * i) / Math.max(n, 1) - Math.PI / 2,
  }));
  const series = spider.series.map((s) => ({
    name: s.name,
    points: spider.labels.map((axis, i) => ({ axis, radius: s.values[i] ?? null })),
  }));
  return { axes, series };
}

export function disputableBadge(result: ClassificationResult): boolean {
  return result.disputable;
}

// --- SVG rendering -------------------------------------------------------

const PALETTE = ['#58a6ff', '#f78166', '#56d364', '#d2a8ff', '#ffa657', '#79c0ff'];

export function renderBarChart(bars: BarView[], width = 420, height = 220): string {
  const margin = 28;
  const barWidth = bars.length ? (width - 2 * margin) / bars.length : 0;
  const parts: string[] = [];
  bars.forEach((bar, i) => {
    const h = bar.value * (height - 2 * margin);
    const x = margin + i * barWidth;
    const y = height - margin - h;
    const fill = bar.isWinner ? PALETTE[0] : '#3d444d';
    parts.push(
      `<rect x="${(x + 4).toFixed(1)}" y="${y.toFixed(1)}" width="${(barWidth - 8).toFixed(1)}" height="${h.toFixed(1)}" fill="${fill}" rx="3"><title>${bar.label}: ${bar.value.toFixed(4)}</title></rect>`,
      `<text x="${(x + barWidth / 2).toFixed(1)}" y="${height - margin + 14}" text-anchor="middle" class="tick">${bar.label}</text>`,
      `<text x="${(x + barWidth / 2).toFixed(1)}" y="${(y - 5).toFixed(1)}" text-anchor="middle" class="value">${bar.value.toFixed(3)}</text>`,
    );
  });
  return `<svg viewBox="0 0 ${width} ${height}" role="img" aria-label="typicality per concept">${parts.join('')}</svg>`;
}

export function renderRadarChart(view: RadarView, size = 320): string {
  const cx = size / 2;
  const cy = size / 2;
  const r = size / 2 - 40;
  const parts: string[] = [];
  for (const ring of [0.25, 0.5, 0.75, 1.0]) {
    const ringPoints = view.axes
      .map((a) => `${(cx + r * ring * Math.cos(a.angle)).toFixed(1)},${(cy + r * ring * Math.sin(a.angle)).toFixed(1)}`)
      .join(' ');
    parts.push(`<polygon points="${ringPoints}" fill="none" stroke="#30363d"/>`);
  }
  view.axes.forEach((a) => {
    const x = cx + r * Math.cos(a.angle);
    const y = cy + r * Math.sin(a.angle);
    parts.push(`<line x1="${cx}" y1="${cy}" x2="${x.toFixed(1)}" y2="${y.toFixed(1)}" stroke="#30363d"/>`);
    const lx = cx + (r + 14) * Math.cos(a.angle);
    const ly = cy + (r + 14) * Math.sin(a.angle);
    parts.push(`<text x="${lx.toFixed(1)}" y="${ly.toFixed(1)}" text-anchor="middle" class="tick">${a.label}</text>`);
  });
  view.series.forEach((s, k) => {
    const pts = s.points
      .map((p, i) => {
        const radius = p.radius ?? 0;
        const a = view.axes[i].angle;
        return `${(cx + r * radius * Math.cos(a)).toFixed(1)},${(cy + r * radius * Math.sin(a)).toFixed(1)}`;
      })
      .join(' ');
    const color = PALETTE[k % PALETTE.length];
    parts.push(`<polygon points="${pts}" fill="${color}22" stroke="${color}" stroke-width="1.5"><title>${s.name}</title></polygon>`);
  });
  return `<svg viewBox="0 0 ${size} ${size}" role="img" aria-label="membership per dimension">${parts.join('')}</svg>`;
}
