"""Tests for the HTTP API."""
import os
import sys

from fastapi.testclient import TestClient

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.main import app
from src.models.database import Base, engine

client = TestClient(app)

MP = """
system ALFAO
theorem mp
from: a (a (b))
  step R5 => a ((b))
  step R2 => ((b))
  step R6 => b
qed
"""


def setup_test_db():
    """Create fresh test database."""
    Base.metadata.drop_all(bind=engine)
    Base.metadata.create_all(bind=engine)


def test_root_and_health():
    assert client.get("/health").json() == {"status": "healthy"}
    assert "ALFA_IO_CLASSIC" in client.get("/").json()["systems"]


def test_translate_and_embed():
    response = client.post("/api/v1/translate", json={"graph": "a (b)"})
    assert response.status_code == 200
    assert response.json() == {"graph": "(b) a", "formula": "~b & a"}

    response = client.post("/api/v1/embed", json={"formula": "p -> q"})
    assert response.status_code == 200
    assert response.json()["graph"] == "{p => q}"


def test_bad_graph_is_rejected():
    response = client.post("/api/v1/translate", json={"graph": "a (b"})
    assert response.status_code == 400


def test_oracle():
    response = client.post("/api/v1/oracle", json={"logic": "ipc", "formula": "p v ~p"})
    assert response.status_code == 200
    data = response.json()
    assert data["valid"] is False
    assert len(data["countermodel"]["worlds"]) == 2

    assert client.post("/api/v1/oracle", json={"logic": "modal", "formula": "p"}).status_code == 400


def test_check_is_stored_and_listed():
    setup_test_db()

    response = client.post("/api/v1/check", json={"script": MP, "certify": True})
    assert response.status_code == 201
    run = response.json()
    assert run["ok"] is True
    assert run["kind"] == "check"
    theorem = run["report"]["theorems"][0]
    assert theorem["theorem"] == "mp"
    assert theorem["certified"] is True

    fetched = client.get(f"/api/v1/runs/{run['run_id']}")
    assert fetched.status_code == 200
    assert fetched.json()["run_id"] == run["run_id"]

    listed = client.get("/api/v1/runs", params={"kind": "check"}).json()
    assert [item["run_id"] for item in listed] == [run["run_id"]]

    print(f"\n[PASS] check run stored as {run['run_id']}")


def test_rejected_script_is_stored_as_failed():
    setup_test_db()
    script = "system ALFA_IO theorem t from: ((a)) step R6 => a qed"
    run = client.post("/api/v1/check", json={"script": script}).json()
    assert run["ok"] is False
    assert "rule not in system" in run["report"]["theorems"][0]["reason"]


def test_unparsable_script_is_a_bad_request():
    response = client.post("/api/v1/check", json={"script": "system ALFAO theorem"})
    assert response.status_code == 400


def test_missing_run_is_not_found():
    setup_test_db()
    assert client.get("/api/v1/runs/nope").status_code == 404
