// Wire types mirroring the backend's JSON responses. Every number shown in
// the UI comes from these payloads; the client never recomputes scores.

export type Value = number | string;

export interface DimensionView {
  id: string;
  domain: string;
  kind: 'continuous' | 'nominal' | 'binary';
  unit?: string;
  range?: [number, number];
  categories?: Value[];
}

export interface WeightEntry {
  dimension: string;
  weight: number;
  normalized: number;
}

export interface ConceptView {
  support: number;
  prototype: Record<string, Value>;
  weights: WeightEntry[];
}

export interface ModelView {
  schema_version: string;
  hash: string;
  delta_default: number;
  dimensions: DimensionView[];
  standardization: Record<string, [number, number]>;
  concepts: Record<string, ConceptView>;
}

export interface DimensionBreakdown {
  mu: number;
  w: number;
  w_norm: number;
  contribution: number;
}

export interface ClassificationResult {
  winner: string | null;
  scores: Record<string, number>;
  disputable: boolean;
  margin: number;
  per_dimension: Record<string, Record<string, DimensionBreakdown>>;
  warnings: string[];
}

export interface ChartSeries {
  name: string;
  values: (number | null)[];
}

export interface ExplainReport {
  result: ClassificationResult;
  rationale: string;
  top_factors: {
    dimension: string;
    concept: string;
    w: number;
    mu: number;
    contribution: number;
    weight_rank: number;
  }[];
  exemplar: Record<string, Record<string, Value>>;
  chart_data: {
    bar: { labels: string[]; series: ChartSeries[] };
    spider: { labels: string[]; series: ChartSeries[] };
  };
}

export interface WhatIfResponse {
  before: ClassificationResult;
  after: ClassificationResult;
  changed: boolean;
  delta_scores: Record<string, number>;
}

export interface MembershipOverride {
  center?: number;
  width?: number;
  table?: Record<string, number>;
}

export interface OverrideSet {
  weights: Record<string, Record<string, number>>;
  memberships: Record<string, Record<string, MembershipOverride>>;
  values: Record<string, Value>;
}

export interface WhatIfRequestBody {
  instance: { id: string; values: Record<string, Value> };
  overrides: OverrideSet;
  delta?: number;
}
