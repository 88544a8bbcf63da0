"""HTTP facade: sessions, config updates, background sweeps, Pareto data.

State lives in the session store; every numeric payload is a pure
function of (dataset, config), so re-running a sweep under an unchanged
config digest reproduces the payload exactly.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from datetime import datetime, timezone

from fastapi import FastAPI, File, Form, Request, UploadFile
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from ..errors import (
    EmptyPosition,
    FairfrontError,
    ParseError,
    SchemaViolation,
    TooFewGroups,
    WeightLengthMismatch,
)
from ..ingest import DatasetSchema, ValueConfig, parse_config_value, parse_dataset
from ..justice import Prioritarian, claims_mask
from ..model import apply_rule
from ..output import fmt_float, round12, sweep_doc
from ..sweep import SweepResult, filter_viable, pareto_front, sweep
from .schemas import (
    ConfigAccepted,
    ErrorPayload,
    ParetoResponse,
    RuleDetailResponse,
    SelectionRecord,
    SelectionRequest,
    SessionCreated,
    StatusResponse,
    SweepStarted,
)
from .store import Session, SessionStore


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str, detail: dict | None = None):
        self.status = status
        self.payload = ErrorPayload(code=code, message=message, detail=detail)
        super().__init__(message)


def _api_error_from(exc: FairfrontError, status: int) -> ApiError:
    return ApiError(status, type(exc).__name__, str(exc))


def create_app(
    persist_dir: str | None = None,
    max_upload_bytes: int = 10_000_000,
    workers: int = 2,
    session_ttl: float = 3600.0,
    cors_origins: list[str] | None = None,
) -> FastAPI:
    app = FastAPI(title="fairfront", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=cors_origins or ["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    store = SessionStore(ttl=session_ttl, persist_dir=persist_dir)
    executor = ThreadPoolExecutor(max_workers=workers, thread_name_prefix="sweep")
    app.state.store = store
    app.state.executor = executor

    @app.exception_handler(ApiError)
    async def _handle_api_error(request: Request, exc: ApiError):
        return JSONResponse(status_code=exc.status, content=exc.payload.model_dump())

    def _session_or_404(session_id: str) -> Session:
        session = store.get(session_id)
        if session is None:
            raise ApiError(404, "UnknownSession", f"no session with id {session_id!r}")
        return session

    def _ready_result(session: Session) -> SweepResult:
        if session.status != "ready" or session.latest_result is None:
            raise ApiError(
                409,
                "NotReady",
                f"session status is {session.status!r}; run a sweep first",
            )
        if session.stale:
            raise ApiError(
                409,
                "StaleResult",
                "config changed after this result was computed; re-run the sweep",
                detail={
                    "result_digest": session.result_digest,
                    "config_digest": session.config.digest if session.config else None,
                },
            )
        return session.latest_result

    @app.post("/sessions", status_code=201, response_model=SessionCreated)
    async def create_session(
        file: UploadFile = File(...),
        score_column: str = Form("score"),
        group_column: str = Form("group"),
        outcome_column: str = Form("outcome"),
        amount_column: str | None = Form(None),
        id_column: str | None = Form(None),
        attribute_columns: str | None = Form(None),
    ):
        raw = await file.read()
        if len(raw) > max_upload_bytes:
            raise ApiError(
                413,
                "UploadTooLarge",
                f"upload of {len(raw)} bytes exceeds the limit of {max_upload_bytes}",
            )
        try:
            schema = DatasetSchema(
                score_column=score_column,
                group_column=group_column,
                outcome_column=outcome_column,
                amount_column=amount_column,
                attribute_columns=tuple(c.strip() for c in attribute_columns.split(",") if c.strip())
                if attribute_columns
                else None,
                id_column=id_column,
            )
            dataset = parse_dataset(raw, schema)
        except ParseError as exc:
            raise _api_error_from(exc, 400)
        except FairfrontError as exc:
            raise _api_error_from(exc, 400)
        session = store.create(raw, schema, dataset)
        return SessionCreated(
            id=session.id,
            individuals=len(dataset),
            groups=list(dataset.group_vocabulary),
        )

    @app.put("/sessions/{session_id}/config", response_model=ConfigAccepted)
    async def put_config(session_id: str, body: dict):
        session = _session_or_404(session_id)
        with session.lock:
            if session.status == "sweeping":
                raise ApiError(409, "SweepInFlight", "cannot change config during a sweep")
            try:
                config = parse_config_value(body)
                dataset = session.reparse_for(config)
                _validate_config_against(dataset, config)
            except SchemaViolation as exc:
                raise ApiError(422, "SchemaViolation", str(exc), detail={"path": exc.path})
            except ParseError as exc:
                raise _api_error_from(exc, 422)
            except FairfrontError as exc:
                raise _api_error_from(exc, 422)
            session.config = config
            session.dataset = dataset
            if session.status in ("error",):
                session.status = "ready" if session.latest_result else "idle"
                session.error_detail = None
        store.snapshot(session)
        return ConfigAccepted(config_digest=config.digest, stale_result=session.stale)

    def _validate_config_against(dataset, config: ValueConfig) -> None:
        if isinstance(config.pattern, Prioritarian):
            expected = len(dataset.group_vocabulary)
            if len(config.pattern.weights) != expected:
                raise WeightLengthMismatch(expected, len(config.pattern.weights))
        config.grid.build(dataset)  # surfaces per-group coverage problems

    def _run_sweep_job(session: Session, config: ValueConfig) -> None:
        def on_progress(done: int, total: int) -> None:
            session.progress = done / total

        try:
            grid = config.grid.build(session.dataset)
            result = sweep(
                session.dataset,
                grid,
                config.dm_spec,
                config.ds_spec,
                config.differentiator,
                config.pattern,
                config.mode,
                progress=on_progress,
                config_digest=config.digest,
            )
            result = filter_viable(pareto_front(result), config.viability_floor)
            with session.lock:
                session.latest_result = result
                session.status = "ready"
                session.progress = 1.0
        except Exception as exc:  # surface the failure through /status
            with session.lock:
                session.status = "error"
                session.error_detail = str(exc)

    @app.post("/sessions/{session_id}/sweep", status_code=202, response_model=SweepStarted)
    async def run_sweep(session_id: str):
        session = _session_or_404(session_id)
        with session.lock:
            if session.status == "sweeping":
                raise ApiError(409, "SweepInFlight", "a sweep is already running for this session")
            if session.config is None:
                raise ApiError(422, "ConfigMissing", "set a value config before sweeping")
            config = session.config
            try:
                _precheck_positions(session, config)
            except FairfrontError as exc:
                raise _api_error_from(exc, 422)
            session.status = "sweeping"
            session.progress = 0.0
            session.error_detail = None
        executor.submit(_run_sweep_job, session, config)
        return SweepStarted(status="sweeping", config_digest=config.digest)

    def _precheck_positions(session: Session, config: ValueConfig) -> None:
        dataset = session.dataset
        vocab = dataset.group_vocabulary
        if len(vocab) < 2:
            raise TooFewGroups(len(vocab))
        mask = claims_mask(dataset, config.differentiator)
        for k, g in enumerate(vocab):
            if not bool((mask & (dataset.group_codes == k)).any()):
                raise EmptyPosition(g)

    @app.get("/sessions/{session_id}/status", response_model=StatusResponse)
    async def get_status(session_id: str):
        session = _session_or_404(session_id)
        result = session.latest_result
        return StatusResponse(
            id=session.id,
            status=session.status,
            progress=session.progress,
            config_digest=session.config.digest if session.config else None,
            result_digest=session.result_digest,
            stale=session.stale,
            sweep_size=len(result.evaluated) if result else None,
            front_size=sum(1 for er in result.evaluated if er.on_front) if result else None,
            error=session.error_detail,
        )

    @app.get("/sessions/{session_id}/pareto", response_model=ParetoResponse)
    async def get_pareto(session_id: str, viable_only: bool = False):
        session = _session_or_404(session_id)
        result = _ready_result(session)
        doc = sweep_doc(result)
        if viable_only:
            doc["points"] = [p for p in doc["points"] if p["viable"]]
        doc["viability_floor"] = session.config.viability_floor if session.config else 0.0
        return ParetoResponse(**doc)

    def _resolve_rule(session: Session, result: SweepResult, key: str) -> int:
        groups = result.groups
        try:
            index = int(key)
        except ValueError:
            try:
                parts = dict(part.split("=", 1) for part in key.split(","))
                wanted = tuple(fmt_float(float(parts[g])) for g in groups)
            except (ValueError, KeyError):
                raise ApiError(404, "UnknownRule", f"cannot parse rule key {key!r}")
            for i, er in enumerate(result.evaluated):
                have = tuple(fmt_float(er.rule.thresholds[g]) for g in groups)
                if have == wanted:
                    return i
            raise ApiError(404, "UnknownRule", f"thresholds {key!r} are not part of this sweep")
        if not 0 <= index < len(result.evaluated):
            raise ApiError(404, "UnknownRule", f"rule index {index} out of range")
        return index

    def _rule_detail(session: Session, result: SweepResult, index: int) -> RuleDetailResponse:
        er = result.evaluated[index]
        dataset = session.dataset
        decisions = apply_rule(dataset, er.rule)
        accepted = {
            g: int(decisions.values[idx].sum()) for g, idx in dataset.group_index_arrays.items()
        }
        sizes = {g: int(len(idx)) for g, idx in dataset.group_index_arrays.items()}
        groups = result.groups
        return RuleDetailResponse(
            index=index,
            thresholds={g: round12(er.rule.thresholds[g]) for g in groups},
            dm_utility=round12(er.dm_utility),
            fairness_score=round12(er.fairness_score),
            position_utilities={g: round12(er.position_utilities.utilities[g]) for g in groups},
            claim_counts={g: er.position_utilities.counts[g] for g in groups},
            acceptance_rates={g: round12(accepted[g] / sizes[g]) for g in groups},
            accepted_counts=accepted,
            group_sizes=sizes,
            on_front=er.on_front,
            viable=er.viable,
        )

    @app.get("/sessions/{session_id}/rules/{key}", response_model=RuleDetailResponse)
    async def get_rule_detail(session_id: str, key: str):
        session = _session_or_404(session_id)
        result = _ready_result(session)
        index = _resolve_rule(session, result, key)
        return _rule_detail(session, result, index)

    @app.post("/sessions/{session_id}/selection", response_model=SelectionRecord)
    async def post_selection(session_id: str, body: SelectionRequest):
        session = _session_or_404(session_id)
        result = _ready_result(session)
        if body.index is None and not body.thresholds:
            raise ApiError(422, "BadSelection", "provide a rule index or thresholds")
        if body.index is not None:
            key = str(body.index)
        else:
            key = ",".join(f"{g}={t}" for g, t in body.thresholds.items())
        index = _resolve_rule(session, result, key)
        er = result.evaluated[index]
        groups = result.groups
        record = SelectionRecord(
            session_id=session.id,
            dataset_digest=session.dataset.digest,
            config_digest=result.config_digest,
            config=session.config.canonical() if session.config else {},
            thresholds={g: round12(er.rule.thresholds[g]) for g in groups},
            dm_utility=round12(er.dm_utility),
            fairness_score=round12(er.fairness_score),
            position_utilities={g: round12(er.position_utilities.utilities[g]) for g in groups},
            claim_counts={g: er.position_utilities.counts[g] for g in groups},
            selected_at=datetime.now(timezone.utc).isoformat(),
        )
        with session.lock:
            session.selection = record.model_dump()
        store.snapshot(session)
        return record

    return app


# default instance so `uvicorn fairfront.service.app:app` works out of the box
app = create_app()
