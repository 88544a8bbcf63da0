"""Pydantic request/response models for the HTTP API."""

from __future__ import annotations

from typing import Any, Literal

from pydantic import BaseModel


class ErrorPayload(BaseModel):
    code: str
    message: str
    detail: dict[str, Any] | None = None


class SessionCreated(BaseModel):
    id: str
    individuals: int
    groups: list[str]


class ConfigAccepted(BaseModel):
    config_digest: str
    stale_result: bool


class SweepStarted(BaseModel):
    status: Literal["sweeping"]
    config_digest: str


class StatusResponse(BaseModel):
    id: str
    status: Literal["idle", "sweeping", "ready", "error"]
    progress: float
    config_digest: str | None = None
    result_digest: str | None = None
    stale: bool = False
    sweep_size: int | None = None
    front_size: int | None = None
    error: str | None = None


class PointPayload(BaseModel):
    index: int
    thresholds: dict[str, float]
    dm_utility: float
    fairness_score: float
    position_utilities: dict[str, float]
    claim_counts: dict[str, int]
    on_front: bool
    viable: bool


class ExtremesPayload(BaseModel):
    max_dm_utility: PointPayload
    max_fairness: PointPayload


class ParetoResponse(BaseModel):
    config_digest: str
    groups: list[str]
    sweep_size: int
    front_size: int
    viability_floor: float
    extremes: ExtremesPayload | None
    points: list[PointPayload]


class RuleDetailResponse(BaseModel):
    index: int
    thresholds: dict[str, float]
    dm_utility: float
    fairness_score: float
    position_utilities: dict[str, float]
    claim_counts: dict[str, int]
    acceptance_rates: dict[str, float]
    accepted_counts: dict[str, int]
    group_sizes: dict[str, int]
    on_front: bool
    viable: bool


class SelectionRequest(BaseModel):
    index: int | None = None
    thresholds: dict[str, float] | None = None


class SelectionRecord(BaseModel):
    session_id: str
    dataset_digest: str
    config_digest: str
    config: dict[str, Any]
    thresholds: dict[str, float]
    dm_utility: float
    fairness_score: float
    position_utilities: dict[str, float]
    claim_counts: dict[str, int]
    selected_at: str
