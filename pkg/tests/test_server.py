import pytest
from fastapi.testclient import TestClient

from paircomp import StudyStore
from paircomp.server import create_app

THREE = {"kind": "three_point", "F": 3, "G": 9}


@pytest.fixture()
def client(tmp_path):
    return TestClient(create_app(StudyStore(tmp_path)))


def _study(client, labels=("a", "b", "c"), scale=THREE):
    r = client.post("/studies", json={"labels": list(labels), "scale": dict(scale)})
    assert r.status_code == 201
    return r.json()["study_id"]


def _session(client, study_id, expert="e1"):
    r = client.post(f"/studies/{study_id}/sessions", json={"expert": expert})
    assert r.status_code == 201
    return r.json()["session_id"]


def _judge(client, sid, num, den=1):
    return client.post(
        f"/sessions/{sid}/judgments", json={"value_num": num, "value_den": den}
    )


class TestStudyEndpoints:
    def test_create_study_saaty(self, client):
        r = client.post("/studies", json={"labels": ["x", "y"], "scale": {"kind": "saaty9"}})
        assert r.status_code == 201
        assert r.json()["study_id"]

    def test_duplicate_labels_rejected(self, client):
        r = client.post("/studies", json={"labels": ["x", "x"], "scale": THREE})
        assert r.status_code == 422

    def test_single_label_rejected(self, client):
        r = client.post("/studies", json={"labels": ["x"], "scale": THREE})
        assert r.status_code == 422

    def test_free_scale_rejected(self, client):
        r = client.post("/studies", json={"labels": ["x", "y"], "scale": {"kind": "free"}})
        assert r.status_code == 422

    def test_malformed_scale_rejected(self, client):
        r = client.post(
            "/studies", json={"labels": ["x", "y"], "scale": {"kind": "three_point"}}
        )
        assert r.status_code == 422
        r = client.post("/studies", json={"labels": ["x", "y"], "scale": {"kind": "log5"}})
        assert r.status_code == 422

    def test_session_for_unknown_study(self, client):
        r = client.post("/studies/missing/sessions", json={"expert": "e"})
        assert r.status_code == 404


class TestJudgmentFlow:
    def test_next_pair_payload(self, client):
        sid = _session(client, _study(client))
        r = client.get(f"/sessions/{sid}/next")
        assert r.status_code == 200
        body = r.json()
        assert (body["i"], body["j"]) == (1, 2)
        assert (body["label_i"], body["label_j"]) == ("a", "b")
        assert body["progress"] == {"committed": 0, "total": 3}
        assert [c["value_num"] for c in body["choices"]] == [1, 1, 1, 3, 9]
        assert [c["value_den"] for c in body["choices"]] == [9, 3, 1, 1, 1]
        assert all(c["verbal"] for c in body["choices"])

    def test_accepted_payload(self, client):
        sid = _session(client, _study(client))
        r = _judge(client, sid, 3)
        assert r.status_code == 200
        assert r.json() == {
            "status": "accepted",
            "done": False,
            "progress": {"committed": 1, "total": 3},
        }

    def test_conflict_payload(self, client):
        sid = _session(client, _study(client))
        _judge(client, sid, 1)
        _judge(client, sid, 1)
        r = _judge(client, sid, 3)
        assert r.status_code == 200
        body = r.json()
        assert body["status"] == "conflict"
        assert body["triads"] == [
            {
                "m": 1, "i": 2, "j": 3,
                "r_mj": "equal", "r_ij": "more", "r_mi": "equal",
                "required": "equal",
            }
        ]
        assert body["candidates"] == [{"i": 2, "j": 3}, {"i": 1, "j": 3}, {"i": 1, "j": 2}]
        assert body["admissible"] == ["equal"]
        assert body["pending"] == {"value_num": 3, "value_den": 1}
        assert body["stalled"] is False
        assert body["progress"] == {"committed": 2, "total": 3}

    def test_value_off_scale_is_422(self, client):
        sid = _session(client, _study(client))
        r = _judge(client, sid, 7)
        assert r.status_code == 422

    def test_zero_denominator_is_422(self, client):
        sid = _session(client, _study(client))
        r = _judge(client, sid, 1, den=0)
        assert r.status_code == 422

    def test_unknown_session_is_404(self, client):
        assert client.get("/sessions/nope/next").status_code == 404
        assert _judge(client, "nope", 1).status_code == 404
        assert client.get("/sessions/nope/results").status_code == 404

    def test_next_blocked_during_conflict(self, client):
        sid = _session(client, _study(client))
        _judge(client, sid, 1)
        _judge(client, sid, 1)
        _judge(client, sid, 3)
        assert client.get(f"/sessions/{sid}/next").status_code == 409
        assert _judge(client, sid, 1).status_code == 409

    def test_done_payload(self, client):
        sid = _session(client, _study(client))
        for _ in range(3):
            _judge(client, sid, 1)
        r = client.get(f"/sessions/{sid}/next")
        assert r.json() == {"done": True, "progress": {"committed": 3, "total": 3}}


class TestRevisionEndpoint:
    def _conflicted(self, client):
        sid = _session(client, _study(client))
        _judge(client, sid, 1)
        _judge(client, sid, 1)
        _judge(client, sid, 3)
        return sid

    def test_revision_resolves(self, client):
        sid = self._conflicted(client)
        r = client.post(
            f"/sessions/{sid}/revisions",
            json={"i": 2, "j": 3, "value_num": 1, "value_den": 1},
        )
        assert r.status_code == 200
        assert r.json()["status"] == "accepted"
        assert r.json()["done"] is True

    def test_revision_outside_dialog_is_409(self, client):
        sid = _session(client, _study(client))
        r = client.post(
            f"/sessions/{sid}/revisions",
            json={"i": 1, "j": 2, "value_num": 1, "value_den": 1},
        )
        assert r.status_code == 409

    def test_illegal_target_is_422(self, client):
        sid = self._conflicted(client)
        r = client.post(
            f"/sessions/{sid}/revisions",
            json={"i": 3, "j": 2, "value_num": 1, "value_den": 1},
        )
        assert r.status_code == 422

    def test_off_scale_revision_is_422(self, client):
        sid = self._conflicted(client)
        r = client.post(
            f"/sessions/{sid}/revisions",
            json={"i": 2, "j": 3, "value_num": 7, "value_den": 1},
        )
        assert r.status_code == 422

    def test_repeated_rejection_reports_stalled(self, client):
        sid = self._conflicted(client)
        for _ in range(10):
            r = client.post(
                f"/sessions/{sid}/revisions",
                json={"i": 2, "j": 3, "value_num": 3, "value_den": 1},
            )
        assert r.json()["status"] == "conflict"
        assert r.json()["stalled"] is True


class TestResultsAndAggregate:
    def test_results_payload(self, client):
        sid = _session(client, _study(client))
        for num, den in ((1, 1), (3, 1), (3, 1)):
            _judge(client, sid, num, den)
        r = client.get(f"/sessions/{sid}/results")
        assert r.status_code == 200
        body = r.json()
        assert set(body) == {
            "w_approx", "w_eigen", "lambda_max", "ci", "ri", "cr", "acceptable"
        }
        assert body["acceptable"] is True
        assert sum(body["w_eigen"]) == pytest.approx(1.0)

    def test_results_before_completion_is_409(self, client):
        sid = _session(client, _study(client))
        _judge(client, sid, 1)
        assert client.get(f"/sessions/{sid}/results").status_code == 409

    def test_aggregate_two_experts(self, client):
        study = _study(client)
        for expert, plan in (("e1", (1, 3, 3)), ("e2", (3, 3, 1))):
            sid = _session(client, study, expert)
            for v in plan:
                _judge(client, sid, v)
        r = client.get(f"/studies/{study}/aggregate")
        assert r.status_code == 200
        body = r.json()
        assert body["k"] == 2
        assert body["level"] == 0.95
        assert sum(body["mean_w"]) == pytest.approx(1.0)
        assert len(body["half_width"]) == 3

    def test_aggregate_single_expert_has_no_half_width(self, client):
        study = _study(client)
        sid = _session(client, study)
        for v in (1, 3, 3):
            _judge(client, sid, v)
        body = client.get(f"/studies/{study}/aggregate").json()
        assert body["k"] == 1
        assert "half_width" not in body

    def test_aggregate_methods_and_validation(self, client):
        study = _study(client)
        sid = _session(client, study)
        for v in (1, 3, 3):
            _judge(client, sid, v)
        assert client.get(f"/studies/{study}/aggregate?method=approx").status_code == 200
        assert client.get(f"/studies/{study}/aggregate?method=median").status_code == 422
        assert client.get(f"/studies/{study}/aggregate?level=1.5").status_code == 422

    def test_aggregate_none_completed_is_409(self, client):
        study = _study(client)
        _session(client, study)
        assert client.get(f"/studies/{study}/aggregate").status_code == 409

    def test_aggregate_unknown_study_is_404(self, client):
        assert client.get("/studies/missing/aggregate").status_code == 404


class TestPersistenceAcrossApps:
    def test_sessions_survive_restart(self, tmp_path):
        first = TestClient(create_app(StudyStore(tmp_path)))
        study = _study(first)
        sid = _session(first, study)
        _judge(first, sid, 1)
        _judge(first, sid, 1)

        second = TestClient(create_app(StudyStore(tmp_path)))
        r = second.get(f"/sessions/{sid}/next")
        assert r.status_code == 200
        assert (r.json()["i"], r.json()["j"]) == (2, 3)
        assert r.json()["progress"]["committed"] == 2
        _judge(second, sid, 1)
        assert second.get(f"/sessions/{sid}/results").status_code == 200

    def test_mid_conflict_state_survives_restart(self, tmp_path):
        first = TestClient(create_app(StudyStore(tmp_path)))
        study = _study(first)
        sid = _session(first, study)
        _judge(first, sid, 1)
        _judge(first, sid, 1)
        _judge(first, sid, 3)

        second = TestClient(create_app(StudyStore(tmp_path)))
        assert second.get(f"/sessions/{sid}/next").status_code == 409
        r = second.post(
            f"/sessions/{sid}/revisions",
            json={"i": 2, "j": 3, "value_num": 1, "value_den": 1},
        )
        assert r.json()["status"] == "accepted"


class TestCors:
    def test_cross_origin_request_gets_allow_header(self, client):
        r = client.post(
            "/studies",
            json={"labels": ["a", "b"], "scale": THREE},
            headers={"Origin": "http://localhost:8080"},
        )
        assert r.status_code == 201
        assert r.headers["access-control-allow-origin"] == "*"

    def test_preflight_allows_json_posts(self, client):
        r = client.options(
            "/sessions/whatever/judgments",
            headers={
                "Origin": "http://localhost:8080",
                "Access-Control-Request-Method": "POST",
                "Access-Control-Request-Headers": "content-type",
            },
        )
        assert r.status_code == 200
        assert "POST" in r.headers["access-control-allow-methods"]
