"""Request/response models for the computation service."""

from __future__ import annotations

from typing import Any, Literal

from pydantic import BaseModel, Field


class HealthResponse(BaseModel):
    status: Literal["ok"] = "ok"
    version: str


class TheoremListResponse(BaseModel):
    theorems: list[str]


class VerifyRequest(BaseModel):
    seed: int = 0
    count: int = Field(default=200, ge=0)
    max_objects: int = Field(default=4, ge=1)
    max_morphisms: int = Field(default=16, ge=1)
    kind: Literal["general", "posets", "groupoids", "over-[1]", "over-[2]"] = "general"
    mutate: bool = False


class VerifyResponse(BaseModel):
    schema_version: int = Field(default=1, alias="schema")
    theorem: str
    seed: int
    instances: int
    failures: list[dict[str, Any]]
    cap_events: list[dict[str, Any]]
    millis: int

    model_config = {"populate_by_name": True}

    @property
    def ok(self) -> bool:
        return not self.failures


class OpRequest(BaseModel):
    """An ad-hoc computation on a parsed document. ``args`` name the
    document entries the operation consumes (and operation options)."""

    document: str
    args: dict[str, Any] = Field(default_factory=dict)


class OpResponse(BaseModel):
    op: str
    result: dict[str, Any]


class ErrorDetail(BaseModel):
    kind: str
    message: str
    line: int | None = None
    col: int | None = None
