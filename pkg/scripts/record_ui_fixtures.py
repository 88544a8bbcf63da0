#!/usr/bin/env python3
"""Record real service responses as fixtures for the frontend contract tests.

Boots the app in-process, runs a session through upload -> config -> sweep ->
pareto/detail/selection on the shipped demo data (21-point grids to keep the
fixture files small) and writes the raw JSON payloads under
frontend/test/fixtures/.
"""

from __future__ import annotations

import json
import time
from pathlib import Path

from fastapi.testclient import TestClient

from fairfront.service.app import create_app

REPO_ROOT = Path(__file__).resolve().parent.parent
FIXTURE_DIR = REPO_ROOT / "frontend" / "test" / "fixtures"

CONFIG = {
    "dm_utility": {"lending": {"interest_rate": 0.1}},
    "ds_utility": {"base": {"tp": 10, "fp": -5, "fn": -1, "tn": 0}, "amount_scaled": False},
    "claims": {"outcome_equals": {"y": 1}},
    "positions": {"group_column": "group"},
    "pattern": {"maximin": {}},
    "mode": "expected",
    "grid": {"n": 21, "lo": 0.0, "hi": 1.0},
    "viability_floor": 0.0,
}


def wait_ready(client: TestClient, session_id: str) -> dict:
    for _ in range(1000):
        status = client.get(f"/sessions/{session_id}/status").json()
        if status["status"] in ("ready", "error"):
            return status
        time.sleep(0.01)
    raise RuntimeError("sweep did not finish")


def main() -> None:
    FIXTURE_DIR.mkdir(parents=True, exist_ok=True)
    demo_csv = (REPO_ROOT / "data" / "demo_credit.csv").read_bytes()
    app = create_app()
    with TestClient(app) as client:
        created = client.post(
            "/sessions", files={"file": ("demo_credit.csv", demo_csv, "text/csv")}
        ).json()
        session_id = created["id"]
        put = client.put(f"/sessions/{session_id}/config", json=CONFIG).json()
        client.post(f"/sessions/{session_id}/sweep")
        status = wait_ready(client, session_id)
        assert status["status"] == "ready", status

        pareto = client.get(f"/sessions/{session_id}/pareto").json()
        pareto_viable = client.get(
            f"/sessions/{session_id}/pareto", params={"viable_only": "true"}
        ).json()
        max_fair = pareto["extremes"]["max_fairness"]["index"]
        max_dm = pareto["extremes"]["max_dm_utility"]["index"]
        rule_fair = client.get(f"/sessions/{session_id}/rules/{max_fair}").json()
        rule_dm = client.get(f"/sessions/{session_id}/rules/{max_dm}").json()
        selection = client.post(
            f"/sessions/{session_id}/selection", json={"index": max_fair}
        ).json()

    fixtures = {
        "session_created.json": created,
        "config_accepted.json": put,
        "config_used.json": CONFIG,
        "status_ready.json": status,
        "pareto.json": pareto,
        "pareto_viable.json": pareto_viable,
        "rule_max_fairness.json": rule_fair,
        "rule_max_dm.json": rule_dm,
        "selection.json": selection,
    }
    for name, doc in fixtures.items():
        (FIXTURE_DIR / name).write_text(json.dumps(doc, indent=2) + "\n")
        print(f"wrote {FIXTURE_DIR / name}")


if __name__ == "__main__":
    main()
