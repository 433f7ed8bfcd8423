"""Pydantic request models for the HTTP service."""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field

Value = int | float | str


class InstancePayload(BaseModel):
    model_config = ConfigDict(extra="forbid")

    id: str = "instance"
    values: dict[str, Value]


class ClassifyPayload(BaseModel):
    model_config = ConfigDict(extra="forbid")

    instance: InstancePayload
    delta: float | None = Field(default=None, ge=0.0, le=1.0)


class MembershipOverridePayload(BaseModel):
    model_config = ConfigDict(extra="forbid")

    center: float | None = None
    width: float | None = None
    table: dict[str, float] | None = None


class OverridesPayload(BaseModel):
    model_config = ConfigDict(extra="forbid")

    weights: dict[str, dict[str, float]] = Field(default_factory=dict)
    memberships: dict[str, dict[str, MembershipOverridePayload]] = Field(default_factory=dict)
    values: dict[str, Value] = Field(default_factory=dict)


class WhatIfPayload(BaseModel):
    model_config = ConfigDict(extra="forbid")

    instance: InstancePayload
    overrides: OverridesPayload = Field(default_factory=OverridesPayload)
    delta: float | None = Field(default=None, ge=0.0, le=1.0)
