"""HTTP probing service.

Wraps a single immutable model: classification, explanation, and what-if
probing are stateless reads, so any request sequence leaves the model hash
unchanged and repeated POSTs return byte-identical bodies. Schema violations
return 400 with the offending field path; domain errors return 422.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from ..classifier import classify, result_to_doc
from ..errors import ConceptSpaceError, InvalidModelError
from ..explain import WhatIfRequest, explain, feature_importance, report_to_doc, whatif, whatif_result_to_doc
from ..model import DEFAULT_DELTA, ConceptualSpace, Instance, validate_space
from ..serialization import canonical_json, load_space, model_hash, space_to_doc
from .schemas import ClassifyPayload, WhatIfPayload

ENV_MODEL = "CONCEPTSPACE_MODEL"
ENV_LISTEN = "CONCEPTSPACE_LISTEN"


@dataclass(frozen=True)
class ServiceConfig:
    model_path: str
    host: str = "127.0.0.1"
    port: int = 8000
    delta: float = DEFAULT_DELTA
    fixture_paths: tuple[str, ...] = ()
    live_knowledge: bool = False
    cors_origins: tuple[str, ...] = ()

    @classmethod
    def from_env(cls, **overrides) -> "ServiceConfig":
        model_path = overrides.pop("model_path", None) or os.environ.get(ENV_MODEL)
        if not model_path:
            raise InvalidModelError(f"no model path given (flag or {ENV_MODEL})")
        listen = os.environ.get(ENV_LISTEN)
        if listen and "host" not in overrides:
            host, _, port = listen.partition(":")
            overrides["host"] = host or "127.0.0.1"
            if port:
                overrides["port"] = int(port)
        return cls(model_path=model_path, **overrides)


def _canonical_response(doc: dict, status_code: int = 200) -> Response:
    return Response(content=canonical_json(doc), media_type="application/json", status_code=status_code)


def _schema_error(path: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=400, content={"error": "schema", "path": path, "message": message})


def _check_instance_dimensions(space: ConceptualSpace, values: dict, path_prefix: str) -> JSONResponse | None:
    for key in values:
        if not space.has_dimension(key):
            return _schema_error(f"{path_prefix}.{key}", f"unknown dimension {key!r}")
    return None


def _model_summary(space: ConceptualSpace, space_hash: str, delta: float) -> dict:
    return {
        "schema_version": space.schema_version,
        "hash": space_hash,
        "delta_default": delta,
        "dimensions": space_to_doc(space)["dimensions"],
        "standardization": {d: [lo, hi] for d, (lo, hi) in sorted(space.standardization.items())},
        "concepts": {
            cid: {
                "support": space.concepts[cid].support,
                "prototype": {d: space.concepts[cid].prototype[d] for d in sorted(space.concepts[cid].prototype, key=str)},
                # Importance order, so the heaviest dimension lists first.
                "weights": feature_importance_listing(space, cid),
            }
            for cid in sorted(space.concepts)
        },
    }


def feature_importance_listing(space: ConceptualSpace, cid: str) -> list[dict]:
    concept = space.concepts[cid]
    ranked = feature_importance(concept)
    return [
        {"dimension": f["dimension"], "weight": concept.weights[f["dimension"]], "normalized": f["weight"]}
        for f in ranked
    ]


def create_app(config: ServiceConfig) -> FastAPI:
    space = load_space(Path(config.model_path))
    violations = validate_space(space)
    if violations:
        raise InvalidModelError(
            f"model {config.model_path} fails validation: " + "; ".join(v.message for v in violations[:5])
        )
    space_hash = model_hash(space)
    app = FastAPI(title="conceptspace probing service", version="0.1.0")
    if config.cors_origins:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=list(config.cors_origins),
            allow_methods=["GET", "POST"],
            allow_headers=["*"],
        )

    @app.exception_handler(RequestValidationError)
    async def on_validation_error(request: Request, exc: RequestValidationError) -> JSONResponse:
        errors = exc.errors()
        first = errors[0] if errors else {"loc": (), "msg": "invalid request"}
        path = ".".join(str(p) for p in first.get("loc", ()))
        return _schema_error(path, first.get("msg", "invalid request"))

    @app.exception_handler(ConceptSpaceError)
    async def on_domain_error(request: Request, exc: ConceptSpaceError) -> JSONResponse:
        return JSONResponse(status_code=422, content={"error": type(exc).__name__, "message": str(exc)})

    @app.get("/v1/health")
    def health() -> Response:
        return _canonical_response({"status": "ok", "model_hash": space_hash})

    @app.get("/v1/model")
    def model_view() -> Response:
        return _canonical_response(_model_summary(space, space_hash, config.delta))

    @app.post("/v1/classify")
    def classify_endpoint(payload: ClassifyPayload) -> Response:
        bad = _check_instance_dimensions(space, payload.instance.values, "body.instance.values")
        if bad is not None:
            return bad
        instance = Instance(id=payload.instance.id, values=payload.instance.values)
        result = classify(instance, space, payload.delta if payload.delta is not None else config.delta)
        return _canonical_response(result_to_doc(result))

    @app.post("/v1/explain")
    def explain_endpoint(payload: ClassifyPayload) -> Response:
        bad = _check_instance_dimensions(space, payload.instance.values, "body.instance.values")
        if bad is not None:
            return bad
        instance = Instance(id=payload.instance.id, values=payload.instance.values)
        report = explain(instance, space, payload.delta if payload.delta is not None else config.delta)
        return _canonical_response(report_to_doc(report))

    @app.post("/v1/whatif")
    def whatif_endpoint(payload: WhatIfPayload) -> Response:
        bad = _check_instance_dimensions(space, payload.instance.values, "body.instance.values")
        if bad is not None:
            return bad
        request = WhatIfRequest(
            instance=Instance(id=payload.instance.id, values=payload.instance.values),
            weight_overrides=payload.overrides.weights,
            membership_overrides={
                cid: {dim: mo.model_dump(exclude_none=True) for dim, mo in dims.items()}
                for cid, dims in payload.overrides.memberships.items()
            },
            value_overrides=payload.overrides.values,
            delta=payload.delta if payload.delta is not None else config.delta,
        )
        result = whatif(request, space)
        return _canonical_response(whatif_result_to_doc(result))

    return app
