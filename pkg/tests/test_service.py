import pytest
from fastapi.testclient import TestClient

from mulseries.service.app import app


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


CUSP = {"maximal_contact": [2, 3, 6]}


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json()["status"] == "ok"


def test_info(client):
    response = client.post("/info", json={"source": CUSP})
    assert response.status_code == 200
    body = response.json()
    assert body["n"] == 3
    assert body["valuation_divisor"] == [2, 3, 6]
    assert body["canonical"] == [1, 2, 4]
    assert body["g"] == 1 and body["g_star"] == 0
    assert body["contributors"] == [3]
    assert body["log_canonical_threshold"] == "5/6"
    assert body["terminal_is_satellite"] is True


def test_info_proximity_source(client):
    response = client.post(
        "/info", json={"source": {"proximity": {"n": 4, "satellite": {"3": 1, "4": 2}}}}
    )
    assert response.status_code == 200
    assert response.json()["maximal_contact"] == [3, 5, 15]


def test_jumps(client):
    response = client.post("/jumps", json={"source": CUSP, "bound": "2"})
    assert response.status_code == 200
    body = response.json()
    assert body["count"] == 7
    first = body["rows"][0]
    assert first["value"] == "5/6"
    assert first["dimension"] == 1
    assert first["contributing"] == [3]
    assert body["rows"][5] == {
        "value": "11/6",
        "memberships": [1],
        "witnesses": [{"family": 1, "tuples": [[1, 4], [3, 1]]}],
        "contributing": [3],
        "dimension": 2,
        "in_omega": False,
    }


def test_ideal(client):
    response = client.post("/ideal", json={"source": CUSP, "at": "11/6"})
    assert response.status_code == 200
    assert response.json() == {
        "at": "11/6",
        "divisor": [3, 4, 7],
        "multiplicities": [3, 1, 0],
        "colength": 7,
    }


def test_series_with_check(client):
    response = client.post(
        "/series", json={"source": {"maximal_contact": [1, 1]}, "bound": "4", "check": True}
    )
    assert response.status_code == 200
    body = response.json()
    assert body["denominator"] == 1
    assert body["closed_form"] == {"simple": [], "omega": [[2, 1]]}
    assert body["truncation"] == [[2, 1], [3, 2], [4, 3]]
    assert body["check"]["equal"] is True


def test_invalid_contact_is_a_client_error(client):
    response = client.post("/info", json={"source": {"maximal_contact": [2, 3, 5]}})
    assert response.status_code == 400
    body = response.json()
    assert body["error"] == "InvalidContactSequence"
    assert "terminal value" in body["detail"]


def test_ambiguous_source_is_rejected(client):
    response = client.post(
        "/info",
        json={"source": {"maximal_contact": [1, 1], "proximity": {"n": 1}}},
    )
    assert response.status_code == 400


def test_explicit_model_rejected_outside_verify(client):
    source = {"model": {"n": 3, "satellite": {"3": 1}}}
    response = client.post("/info", json={"source": source})
    assert response.status_code == 400


def test_float_bound_rejected(client):
    response = client.post("/jumps", json={"source": CUSP, "bound": "1.5"})
    assert response.status_code == 400


def test_verify_single_model(client):
    response = client.post("/verify", json={"source": CUSP, "bound": "2"})
    assert response.status_code == 200
    body = response.json()
    assert body["passed"] is True
    assert body["models"] == 1
    assert body["failed_checks"] == 0


def test_verify_tampered_model_fails_by_name(client):
    source = {
        "model": {"n": 3, "satellite": {"3": 1}, "valuation_divisor": [2, 3, 7]}
    }
    response = client.post("/verify", json={"source": source, "bound": "2"})
    assert response.status_code == 200
    body = response.json()
    assert body["passed"] is False
    failed = {c["name"] for c in body["checks"] if not c["passed"]}
    assert "intersection-identities" in failed


def test_verify_corpus(client):
    request = {"corpus": {"max_multiplicity": 2, "max_terminal": 8}, "bound": "3"}
    response = client.post("/verify", json=request)
    assert response.status_code == 200
    body = response.json()
    assert body["passed"] is True
    assert body["models"] == 11


def test_verify_needs_exactly_one_source(client):
    response = client.post("/verify", json={"bound": "2"})
    assert response.status_code == 400
    response = client.post(
        "/verify",
        json={
            "source": CUSP,
            "corpus": {"max_multiplicity": 1, "max_terminal": 2},
        },
    )
    assert response.status_code == 400
