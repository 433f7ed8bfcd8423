import type { ModelView, OverrideSet, Value, WhatIfRequestBody } from './types.js';

export function emptyOverrides(): OverrideSet {
  return { weights: {}, memberships: {}, values: {} };
}

/**
 * Client-side state of one probing session: the model view, the instance
 * being probed, and the current override set. Overrides are validated
 * against the model's dimension schema before they ever reach the server.
 */
export class ProbeSession {
  overrides: OverrideSet = emptyOverrides();

  constructor(
    readonly model: ModelView,
    public instanceValues: Record<string, Value>,
  ) {}

  private dimension(id: string) {
    const spec = this.model.dimensions.find((d) => d.id === id);
    if (!spec) {
      throw new Error(`unknown dimension ${id}`);
    }
    return spec;
  }

  private concept(id: string) {
    if (!(id in this.model.concepts)) {
      throw new Error(`unknown concept ${id}`);
    }
    return this.model.concepts[id];
  }

  /** Slider bounds for a weight override: (0, 1]. */
  setWeightOverride(concept: string, dimension: string, weight: number): void {
    this.concept(concept);
    this.dimension(dimension);
    if (!(weight > 0 && weight <= 1)) {
      throw new Error(`weight for ${concept}/${dimension} must lie in (0, 1]`);
    }
    (this.overrides.weights[concept] ??= {})[dimension] = weight;
  }

  setMembershipWidthOverride(concept: string, dimension: string, width: number): void {
    this.concept(concept);
    const spec = this.dimension(dimension);
    if (spec.kind !== 'continuous') {
      throw new Error(`${dimension} has no width to override`);
    }
    if (!(width > 0)) {
      throw new Error(`width for ${concept}/${dimension} must be positive`);
    }
    (this.overrides.memberships[concept] ??= {})[dimension] = { width };
  }

  /** Value overrides respect the dimension's declared range or categories. */
  setValueOverride(dimension: string, value: Value): void {
    const spec = this.dimension(dimension);
    if (spec.kind === 'continuous') {
      if (typeof value !== 'number' || !Number.isFinite(value)) {
        throw new Error(`${dimension} needs a finite number`);
      }
      if (spec.range && (value < spec.range[0] || value > spec.range[1])) {
        throw new Error(`${dimension} must stay within [${spec.range[0]}, ${spec.range[1]}]`);
      }
    } else if (spec.kind === 'binary') {
      if (value !== 0 && value !== 1) {
        throw new Error(`${dimension} must be 0 or 1`);
      }
    } else if (spec.categories && !spec.categories.includes(value)) {
      throw new Error(`${dimension} must be one of ${spec.categories.join(', ')}`);
    }
    this.overrides.values[dimension] = value;
  }

  hasOverrides(): boolean {
    return (
      Object.keys(this.overrides.weights).length > 0 ||
      Object.keys(this.overrides.memberships).length > 0 ||
      Object.keys(this.overrides.values).length > 0
    );
  }

  reset(): void {
    this.overrides = emptyOverrides();
  }

  buildWhatIfRequest(delta?: number): WhatIfRequestBody {
    return {
      instance: { id: 'probe', values: { ...this.instanceValues } },
      overrides: {
        weights: structuredClone(this.overrides.weights),
        memberships: structuredClone(this.overrides.memberships),
        values: structuredClone(this.overrides.values),
      },
      ...(delta === undefined ? {} : { delta }),
    };
  }
}
