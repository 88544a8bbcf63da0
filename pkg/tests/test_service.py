import json
import time

import pytest
from fastapi.testclient import TestClient

from conftest import base_config_doc
from fairfront.service.app import create_app

FOUR_ROWS = "id,score,group,outcome\n1,0.9,F,1\n2,0.5,F,1\n3,0.95,M,1\n4,0.6,M,0\n"


@pytest.fixture
def client():
    app = create_app(session_ttl=0)  # ttl<=0 disables eviction
    with TestClient(app) as c:
        yield c


def upload(client, csv_text=FOUR_ROWS, **form):
    return client.post(
        "/sessions", files={"file": ("data.csv", csv_text, "text/csv")}, data=form
    )


def small_config(**overrides):
    return base_config_doc(grid={"n": 3}, **overrides)


def wait_ready(client, session_id, timeout=10.0):
    deadline = time.time() + timeout
    while time.time() < deadline:
        status = client.get(f"/sessions/{session_id}/status").json()
        if status["status"] in ("ready", "error"):
            return status
        time.sleep(0.01)
    raise AssertionError("sweep did not finish in time")


def run_to_ready(client, config=None):
    session_id = upload(client).json()["id"]
    config = config or small_config()
    assert client.put(f"/sessions/{session_id}/config", json=config).status_code == 200
    assert client.post(f"/sessions/{session_id}/sweep").status_code == 202
    status = wait_ready(client, session_id)
    assert status["status"] == "ready", status
    return session_id, status


class TestSessionCreation:
    def test_upload_creates_session(self, client):
        response = upload(client)
        assert response.status_code == 201
        body = response.json()
        assert body["individuals"] == 4
        assert body["groups"] == ["F", "M"]

    def test_bad_score_rejected(self, client):
        response = upload(client, "score,group,outcome\n1.5,F,1\n")
        assert response.status_code == 400
        body = response.json()
        assert body["code"] == "BadScore"
        assert "row 1" in body["message"]

    def test_oversized_upload(self):
        app = create_app(max_upload_bytes=64)
        with TestClient(app) as client:
            response = upload(client, FOUR_ROWS * 100)
            assert response.status_code == 413
            assert response.json()["code"] == "UploadTooLarge"

    def test_custom_columns(self, client):
        csv_text = "p,sex,repaid\n0.9,F,1\n0.4,M,0\n"
        response = upload(
            client, csv_text, score_column="p", group_column="sex", outcome_column="repaid"
        )
        assert response.status_code == 201
        assert response.json()["groups"] == ["F", "M"]


class TestConfig:
    def test_put_config(self, client):
        session_id = upload(client).json()["id"]
        response = client.put(f"/sessions/{session_id}/config", json=small_config())
        assert response.status_code == 200
        body = response.json()
        assert body["stale_result"] is False
        assert len(body["config_digest"]) == 64

    def test_unknown_session(self, client):
        assert client.put("/sessions/nope/config", json=small_config()).status_code == 404

    def test_schema_violation(self, client):
        session_id = upload(client).json()["id"]
        bad = small_config(pattern={"prioritarian": {"weights": [1, 2]}})
        response = client.put(f"/sessions/{session_id}/config", json=bad)
        assert response.status_code == 422
        assert response.json()["code"] == "SchemaViolation"

    def test_weights_must_match_group_count(self, client):
        session_id = upload(client).json()["id"]
        bad = small_config(pattern={"prioritarian": {"weights": [3, 2, 1]}})
        response = client.put(f"/sessions/{session_id}/config", json=bad)
        assert response.status_code == 422
        assert response.json()["code"] == "WeightLengthMismatch"

    def test_rejected_while_sweeping(self, client):
        session_id = upload(client).json()["id"]
        client.put(f"/sessions/{session_id}/config", json=small_config())
        store = client.app.state.store
        session = store.get(session_id)
        session.status = "sweeping"
        try:
            response = client.put(f"/sessions/{session_id}/config", json=small_config())
            assert response.status_code == 409
            assert client.post(f"/sessions/{session_id}/sweep").status_code == 409
        finally:
            session.status = "idle"

    def test_group_column_override_reparses(self, client):
        csv_text = "score,group,outcome,region\n0.9,F,1,north\n0.5,M,1,south\n0.7,F,0,south\n0.8,M,1,north\n"
        session_id = upload(client, csv_text).json()["id"]
        config = small_config(positions={"group_column": "region"})
        assert client.put(f"/sessions/{session_id}/config", json=config).status_code == 200
        client.post(f"/sessions/{session_id}/sweep")
        wait_ready(client, session_id)
        pareto = client.get(f"/sessions/{session_id}/pareto").json()
        assert pareto["groups"] == ["north", "south"]


class TestSweepLifecycle:
    def test_full_lifecycle(self, client):
        session_id, status = run_to_ready(client)
        assert status["progress"] == 1.0
        assert status["sweep_size"] == 9
        assert status["front_size"] >= 1
        assert status["stale"] is False

    def test_sweep_requires_config(self, client):
        session_id = upload(client).json()["id"]
        response = client.post(f"/sessions/{session_id}/sweep")
        assert response.status_code == 422
        assert response.json()["code"] == "ConfigMissing"

    def test_empty_position_rejected_before_start(self, client):
        session_id = upload(client).json()["id"]
        config = small_config(claims={"outcome_equals": {"y": 0}})
        assert client.put(f"/sessions/{session_id}/config", json=config).status_code == 200
        response = client.post(f"/sessions/{session_id}/sweep")
        assert response.status_code == 422
        assert response.json()["code"] == "EmptyPosition"

    def test_pareto_before_sweep_is_409(self, client):
        session_id = upload(client).json()["id"]
        client.put(f"/sessions/{session_id}/config", json=small_config())
        response = client.get(f"/sessions/{session_id}/pareto")
        assert response.status_code == 409
        assert response.json()["code"] == "NotReady"

    def test_config_change_marks_result_stale(self, client):
        session_id, _ = run_to_ready(client)
        new_config = small_config(pattern={"egalitarian": {}})
        response = client.put(f"/sessions/{session_id}/config", json=new_config)
        assert response.status_code == 200
        assert response.json()["stale_result"] is True
        pareto = client.get(f"/sessions/{session_id}/pareto")
        assert pareto.status_code == 409
        body = pareto.json()
        assert body["code"] == "StaleResult"
        assert body["detail"]["result_digest"] != body["detail"]["config_digest"]
        # re-running clears the staleness
        client.post(f"/sessions/{session_id}/sweep")
        wait_ready(client, session_id)
        assert client.get(f"/sessions/{session_id}/pareto").status_code == 200


class TestParetoEndpoint:
    def test_point_cloud_shape(self, client):
        session_id, _ = run_to_ready(client)
        body = client.get(f"/sessions/{session_id}/pareto").json()
        assert body["sweep_size"] == 9
        assert len(body["points"]) == 9
        assert body["groups"] == ["F", "M"]
        front = [p for p in body["points"] if p["on_front"]]
        assert len(front) == body["front_size"]
        extremes = body["extremes"]
        assert extremes["max_dm_utility"]["dm_utility"] == max(
            p["dm_utility"] for p in body["points"]
        )
        assert extremes["max_fairness"]["fairness_score"] == max(
            p["fairness_score"] for p in body["points"]
        )

    def test_viable_only_filter(self, client):
        session_id, _ = run_to_ready(client)
        full = client.get(f"/sessions/{session_id}/pareto").json()
        viable = client.get(f"/sessions/{session_id}/pareto", params={"viable_only": "true"}).json()
        assert [p["index"] for p in viable["points"]] == [
            p["index"] for p in full["points"] if p["viable"]
        ]
        assert all(p["dm_utility"] >= 0.0 for p in viable["points"])

    def test_identical_config_gives_identical_payload(self, client):
        session_a, _ = run_to_ready(client)
        session_b, _ = run_to_ready(client)
        a = client.get(f"/sessions/{session_a}/pareto").json()
        b = client.get(f"/sessions/{session_b}/pareto").json()
        assert a["config_digest"] == b["config_digest"]
        assert a["points"] == b["points"]
        assert a["extremes"] == b["extremes"]


class TestRuleDetail:
    def test_detail_by_index(self, client):
        session_id, _ = run_to_ready(client)
        pareto = client.get(f"/sessions/{session_id}/pareto").json()
        point = pareto["points"][4]
        detail = client.get(f"/sessions/{session_id}/rules/4").json()
        assert detail["thresholds"] == point["thresholds"]
        assert detail["dm_utility"] == point["dm_utility"]
        assert detail["position_utilities"] == point["position_utilities"]
        assert set(detail["acceptance_rates"]) == {"F", "M"}
        assert detail["group_sizes"] == {"F": 2, "M": 2}

    def test_detail_by_thresholds(self, client):
        session_id, _ = run_to_ready(client)
        detail = client.get(f"/sessions/{session_id}/rules/F=0.5,M=1").json()
        assert detail["thresholds"] == {"F": 0.5, "M": 1.0}

    def test_out_of_grid_is_404(self, client):
        session_id, _ = run_to_ready(client)
        response = client.get(f"/sessions/{session_id}/rules/F=0.33,M=0.5")
        assert response.status_code == 404
        assert response.json()["code"] == "UnknownRule"
        assert client.get(f"/sessions/{session_id}/rules/99").status_code == 404

    def test_max_fairness_extreme_attains_sweep_wide_maximin(self, client):
        session_id, _ = run_to_ready(client)
        pareto = client.get(f"/sessions/{session_id}/pareto").json()
        best = pareto["extremes"]["max_fairness"]
        detail = client.get(f"/sessions/{session_id}/rules/{best['index']}").json()
        best_min = min(detail["position_utilities"].values())
        sweep_wide = max(
            min(p["position_utilities"].values()) for p in pareto["points"]
        )
        assert best_min == sweep_wide


class TestSelection:
    def test_selection_record(self, client):
        session_id, _ = run_to_ready(client)
        pareto = client.get(f"/sessions/{session_id}/pareto").json()
        chosen = pareto["extremes"]["max_fairness"]
        response = client.post(
            f"/sessions/{session_id}/selection", json={"index": chosen["index"]}
        )
        assert response.status_code == 200
        record = response.json()
        assert record["thresholds"] == chosen["thresholds"]
        assert record["config_digest"] == pareto["config_digest"]
        assert len(record["dataset_digest"]) == 64
        assert record["config"]["pattern"] == {"maximin": {}}
        assert record["selected_at"].endswith("+00:00")

    def test_selection_by_thresholds(self, client):
        session_id, _ = run_to_ready(client)
        response = client.post(
            f"/sessions/{session_id}/selection", json={"thresholds": {"F": 0.5, "M": 1.0}}
        )
        assert response.status_code == 200

    def test_selection_requires_known_rule(self, client):
        session_id, _ = run_to_ready(client)
        response = client.post(f"/sessions/{session_id}/selection", json={"index": 1234})
        assert response.status_code == 404

    def test_selection_requires_result(self, client):
        session_id = upload(client).json()["id"]
        response = client.post(f"/sessions/{session_id}/selection", json={"index": 0})
        assert response.status_code == 409


class TestIsolationAndPersistence:
    def test_no_cross_session_leakage(self, client):
        session_a, _ = run_to_ready(client)
        session_b = upload(client).json()["id"]
        # B has no config/result; A's state must be untouched by B's calls
        assert client.get(f"/sessions/{session_b}/pareto").status_code == 409
        status_a_before = client.get(f"/sessions/{session_a}/status").json()
        client.put(
            f"/sessions/{session_b}/config",
            json=small_config(pattern={"egalitarian": {}}),
        )
        client.post(f"/sessions/{session_b}/sweep")
        wait_ready(client, session_b)
        status_a_after = client.get(f"/sessions/{session_a}/status").json()
        assert status_a_before == status_a_after
        a_points = client.get(f"/sessions/{session_a}/pareto").json()["points"]
        b_points = client.get(f"/sessions/{session_b}/pareto").json()["points"]
        assert a_points != b_points  # different patterns produce different scores

    def test_snapshot_restores_sessions(self, tmp_path):
        persist = tmp_path / "sessions"
        app = create_app(persist_dir=str(persist))
        with TestClient(app) as client:
            session_id, _ = run_to_ready(client)
            client.post(f"/sessions/{session_id}/selection", json={"index": 0})
        files = list(persist.glob("*.json"))
        assert len(files) == 1

        revived = create_app(persist_dir=str(persist))
        with TestClient(revived) as client:
            status = client.get(f"/sessions/{session_id}/status")
            assert status.status_code == 200
            body = status.json()
            assert body["status"] == "idle"  # results are recomputed, not persisted
            assert body["config_digest"] is not None
            # the restored session can sweep again right away
            client.post(f"/sessions/{session_id}/sweep")
            assert wait_ready(client, session_id)["status"] == "ready"
