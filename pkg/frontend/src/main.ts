import { ApiClient, ApiError } from './api.js';
import { barChartView, disputableBadge, radarChartView, renderBarChart, renderRadarChart } from './charts.js';
import { debounce } from './debounce.js';
import { ProbeSession } from './session.js';
import type { ClassificationResult, ModelView, Value, WhatIfResponse } from './types.js';

const api = new ApiClient('');

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function setError(message: string | null): void {
  const panel = el<HTMLDivElement>('error-panel');
  panel.textContent = message ?? '';
  panel.style.display = message ? 'block' : 'none';
}

function describeApiError(err: unknown): string {
  if (err instanceof ApiError) {
    const body = err.body as { message?: string; path?: string };
    return body?.path ? `${body.path}: ${body.message}` : (body?.message ?? err.message);
  }
  return err instanceof Error ? err.message : String(err);
}

function scoreRows(result: ClassificationResult, deltas?: Record<string, number>): string {
  const ordered = Object.keys(result.scores).sort((a, b) => result.scores[b] - result.scores[a] || a.localeCompare(b));
  return ordered
    .map((cid) => {
      const d = deltas?.[cid];
      const deltaCell =
        d === undefined ? '' : `<td class="${d > 0 ? 'up' : d < 0 ? 'down' : ''}">${d >= 0 ? '+' : ''}${d.toFixed(4)}</td>`;
      const mark = cid === result.winner ? ' &#9733;' : '';
      return `<tr><td>${cid}${mark}</td><td>${result.scores[cid].toFixed(4)}</td>${deltaCell}</tr>`;
    })
    .join('');
}

async function refreshBaseViews(session: ProbeSession): Promise<void> {
  const report = await api.explain(session.instanceValues);
  el('bar-chart').innerHTML = renderBarChart(barChartView(report));
  el('radar-chart').innerHTML = renderRadarChart(radarChartView(report));
  el('rationale').textContent = report.rationale;
  el<HTMLSpanElement>('disputable-badge').style.display = disputableBadge(report.result) ? 'inline-block' : 'none';
  el('base-scores').innerHTML = scoreRows(report.result);
}

function renderWhatIf(response: WhatIfResponse | null): void {
  const panel = el<HTMLDivElement>('whatif-panel');
  if (!response) {
    panel.innerHTML = '<p class="muted">No overrides active.</p>';
    return;
  }
  const flip = response.changed
    ? `<p class="flip">Winner changed: ${response.before.winner} &rarr; ${response.after.winner}</p>`
    : '<p class="muted">Winner unchanged.</p>';
  panel.innerHTML = `
    ${flip}
    <table><thead><tr><th>concept</th><th>after</th><th>&Delta;</th></tr></thead>
    <tbody>${scoreRows(response.after, response.delta_scores)}</tbody></table>`;
}

function buildInstanceControls(session: ProbeSession, onChange: () => void): void {
  const host = el<HTMLDivElement>('instance-controls');
  host.innerHTML = '';
  for (const dim of session.model.dimensions) {
    const row = document.createElement('div');
    row.className = 'field';
    const label = document.createElement('label');
    label.textContent = dim.unit ? `${dim.id} (${dim.unit})` : dim.id;
    row.appendChild(label);
    const current = session.instanceValues[dim.id];
    if (dim.kind === 'continuous') {
      const input = document.createElement('input');
      input.type = 'range';
      const [lo, hi] = dim.range ?? [0, 1];
      input.min = String(lo);
      input.max = String(hi);
      input.step = String((hi - lo) / 200);
      input.value = String(current);
      const readout = document.createElement('span');
      readout.className = 'readout';
      readout.textContent = Number(current).toFixed(3);
      input.addEventListener('input', () => {
        try {
          session.setValueOverride(dim.id, Number(input.value));
          readout.textContent = Number(input.value).toFixed(3);
          setError(null);
          onChange();
        } catch (err) {
          setError(describeApiError(err));
        }
      });
      row.append(input, readout);
    } else {
      const select = document.createElement('select');
      for (const cat of dim.categories ?? []) {
        const option = document.createElement('option');
        option.value = String(cat);
        option.textContent = String(cat);
        option.selected = cat === current;
        select.appendChild(option);
      }
      select.addEventListener('change', () => {
        const value: Value = dim.kind === 'binary' ? Number(select.value) : select.value;
        try {
          session.setValueOverride(dim.id, value);
          setError(null);
          onChange();
        } catch (err) {
          setError(describeApiError(err));
        }
      });
      row.appendChild(select);
    }
    host.appendChild(row);
  }
}

function buildWeightControls(session: ProbeSession, onChange: () => void): void {
  const host = el<HTMLDivElement>('weight-controls');
  host.innerHTML = '';
  for (const [cid, concept] of Object.entries(session.model.concepts)) {
    const block = document.createElement('details');
    const summary = document.createElement('summary');
    summary.textContent = cid;
    block.appendChild(summary);
    for (const entry of concept.weights) {
      const row = document.createElement('div');
      row.className = 'field';
      const label = document.createElement('label');
      label.textContent = entry.dimension;
      const input = document.createElement('input');
      input.type = 'range';
      input.min = '0.001';
      input.max = '1';
      input.step = '0.001';
      input.value = String(entry.weight);
      const readout = document.createElement('span');
      readout.className = 'readout';
      readout.textContent = entry.weight.toFixed(3);
      input.addEventListener('input', () => {
        try {
          session.setWeightOverride(cid, entry.dimension, Number(input.value));
          readout.textContent = Number(input.value).toFixed(3);
          setError(null);
          onChange();
        } catch (err) {
          setError(describeApiError(err));
        }
      });
      row.append(label, input, readout);
      block.appendChild(row);
    }
    host.appendChild(block);
  }
}

async function start(): Promise<void> {
  let model: ModelView;
  try {
    model = await api.getModel();
  } catch (err) {
    setError(`cannot reach the probing service: ${describeApiError(err)}`);
    return;
  }
  const firstConcept = Object.keys(model.concepts).sort()[0];
  const session = new ProbeSession(model, { ...model.concepts[firstConcept].prototype });
  el('model-info').textContent =
    `${Object.keys(model.concepts).length} concepts, ${model.dimensions.length} dimensions ` +
    `(model ${model.hash.slice(0, 12)}, delta ${model.delta_default})`;

  const submit = debounce(async () => {
    if (!session.hasOverrides()) {
      renderWhatIf(null);
      return;
    }
    try {
      const response = await api.whatif(session.buildWhatIfRequest());
      renderWhatIf(response);
      setError(null);
    } catch (err) {
      if ((err as Error).name !== 'AbortError') {
        setError(describeApiError(err));
      }
    }
  }, 250);

  buildInstanceControls(session, submit);
  buildWeightControls(session, submit);

  el<HTMLButtonElement>('reset-button').addEventListener('click', async () => {
    session.reset();
    renderWhatIf(null);
    buildInstanceControls(session, submit);
    buildWeightControls(session, submit);
    await refreshBaseViews(session);
  });

  await refreshBaseViews(session);
  renderWhatIf(null);
}

start().catch((err) => setError(describeApiError(err)));
