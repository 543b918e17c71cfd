import json
from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from logiclab import ops
from logiclab.cli import run
from logiclab.service import create_app

FIXTURES = Path(__file__).parent / "fixtures"
EINSTEIN_PATH = (
    Path(__file__).parent.parent / "src" / "logiclab" / "data" / "einstein.json"
)


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def run_cli(argv, capsys):
    code = run(argv)
    return code, capsys.readouterr().out


def load_parity_cases():
    cases = json.loads((FIXTURES / "parity.json").read_text())
    einstein = json.loads(EINSTEIN_PATH.read_text())
    for case in cases:
        if case["body"].get("spec") == "@einstein":
            case["body"]["spec"] = einstein
        case["argv"] = [
            str(EINSTEIN_PATH) if a == "@einstein" else a for a in case["argv"]
        ]
    return cases


PARITY_CASES = load_parity_cases()


class TestParity:
    def test_twenty_golden_requests(self):
        assert len(PARITY_CASES) == 20

    @pytest.mark.parametrize(
        "case", PARITY_CASES, ids=[c["name"] for c in PARITY_CASES]
    )
    def test_cli_and_http_bytes_match(self, case, client, capsys):
        code, out = run_cli(case["argv"], capsys)
        assert code == case["exit_code"], case["name"]
        cli_line = out.strip()
        response = client.post(case["endpoint"], json=case["body"])
        assert response.status_code == 200, response.content
        expected = ('{"ok":true,"result":' + cli_line + "}").encode("utf-8")
        assert response.content == expected, case["name"]


class TestHttpErrors:
    def test_malformed_json_is_400(self, client):
        r = client.post(
            "/api/parse", content=b"{not json", headers={"Content-Type": "application/json"}
        )
        assert r.status_code == 400
        body = r.json()
        assert body["ok"] is False
        assert body["error"]["code"] == "bad_request"

    def test_missing_field_is_400(self, client):
        r = client.post("/api/parse", json={"logic": "prop"})
        assert r.status_code == 400

    def test_wrong_field_type_is_400(self, client):
        r = client.post("/api/puzzle/solve", json={"spec": "not a dict"})
        assert r.status_code == 400

    def test_parse_error_is_422_with_position(self, client):
        r = client.post("/api/parse", json={"logic": "prop", "text": "A &"})
        assert r.status_code == 422
        err = r.json()["error"]
        assert err["code"] == "parse_error"
        assert "position" in err
        assert err["position"]["offset"] == 3

    def test_domain_error_is_422(self, client):
        r = client.post(
            "/api/equiv",
            json={"f1": "P(x)", "f2": "P(x)", "method": "finite"},
        )
        assert r.status_code == 422
        assert r.json()["error"]["code"] == "not_a_sentence"

    def test_contradiction_includes_cell(self, client):
        spec = {
            "positions": 2,
            "categories": [{"name": "color", "values": ["red", "blue"]}],
            "clues": [
                {"kind": "PositionIs", "a": ["color", "red"], "index": 0},
                {"kind": "PositionIs", "a": ["color", "red"], "index": 1},
            ],
        }
        r = client.post("/api/puzzle/propagate", json={"spec": spec})
        assert r.status_code == 422
        err = r.json()["error"]
        assert err["code"] == "contradiction"
        assert err["cell"] == [1, "color"]

    def test_propagate_round_trip_grid(self, client):
        einstein = json.loads(EINSTEIN_PATH.read_text())
        first = client.post("/api/puzzle/propagate", json={"spec": einstein})
        assert first.status_code == 200
        grid = first.json()["result"]["grid"]
        second = client.post(
            "/api/puzzle/propagate", json={"spec": einstein, "grid": grid}
        )
        assert second.status_code == 200
        assert second.json()["ok"] is True

    def test_equiv_sat_contract(self, client):
        r = client.post(
            "/api/equiv",
            json={
                "f1": "(A | B) & C -> D",
                "f2": "(A -> (C -> D)) & (C -> (B -> D))",
                "method": "sat",
            },
        )
        assert r.status_code == 200
        body = r.json()
        assert body["ok"] is True
        assert body["result"]["equivalent"] is True


class TestCli:
    def test_parse_human_output(self, capsys):
        code, out = run_cli(["parse", "(A|B)&C->D"], capsys)
        assert code == 0
        assert out.strip() == "(A | B) & C -> D"

    def test_parse_error_exit_code(self, capsys):
        assert run(["parse", "A &"]) == 2

    def test_usage_error_exit_code(self, capsys):
        assert run(["no-such-command"]) == 2

    def test_equiv_negative_exit_code(self, capsys):
        code, out = run_cli(["equiv", "A", "A | B"], capsys)
        assert code == 1
        assert "not equivalent" in out
        assert "A=false" in out and "B=true" in out

    def test_tt_human_output(self, capsys):
        code, out = run_cli(["tt", "A -> B"], capsys)
        assert code == 0
        assert "A" in out and "B" in out

    def test_nnf_json(self, capsys):
        code, out = run_cli(["--json", "nnf", "(A | B) & C -> D"], capsys)
        assert code == 0
        assert json.loads(out) == {"text": "!A & !B | !C | D"}

    def test_cnf_json(self, capsys):
        code, out = run_cli(["--json", "cnf", "(A | B) & C -> D"], capsys)
        assert code == 0
        data = json.loads(out)
        assert data["clauses"] == [[-1, -3, 4], [-2, -3, 4]]
        assert data["dimacs"].splitlines()[0] == "c map 1 A"

    def test_cnf_dimacs_flag(self, capsys):
        code, out = run_cli(["cnf", "A & B", "--dimacs"], capsys)
        assert code == 0
        assert "p cnf 2 2" in out

    def test_cnf_tseitin(self, capsys):
        code, out = run_cli(["--json", "cnf", "(A & B) | C", "--tseitin"], capsys)
        assert code == 0
        data = json.loads(out)
        assert data["var_map"]["4"] == "def:A & B"

    def test_derive_human_output(self, capsys):
        code, out = run_cli(["derive", "A -> B", "!A | B"], capsys)
        assert code == 0
        assert "impl_elim" in out

    def test_step_rejected_exit_code(self, capsys):
        code, out = run_cli(["step", "A & B", "A | B"], capsys)
        assert code == 1
        assert "rejected" in out

    def test_rules_human_output(self, capsys):
        code, out = run_cli(["rules"], capsys)
        assert code == 0
        assert len(out.strip().splitlines()) == 25

    def test_syllogism_invalid_exit_code(self, capsys):
        code, out = run_cli(
            ["syllogism", "A(P,M)", "A(S,M)", "A(S,P)"], capsys
        )
        assert code == 1
        assert "counter-model" in out

    def test_puzzle_solve_human_output(self, capsys):
        code, out = run_cli(["puzzle", "solve", str(EINSTEIN_PATH)], capsys)
        assert code == 0
        assert "German" in out

    def test_puzzle_missing_file(self, capsys):
        assert run(["puzzle", "solve", "/nonexistent.json"]) == 2

    def test_puzzle_unsat_exit_code(self, tmp_path, capsys):
        spec = {
            "positions": 2,
            "categories": [{"name": "color", "values": ["red", "blue"]}],
            "clues": [
                {"kind": "PositionIs", "a": ["color", "red"], "index": 0},
                {"kind": "PositionIs", "a": ["color", "red"], "index": 1},
            ],
        }
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(spec))
        code, out = run_cli(["puzzle", "solve", str(path)], capsys)
        assert code == 1
        assert "unsatisfiable" in out


class TestSerializer:
    def test_compact_and_sorted(self):
        assert ops.dumps({"b": 1, "a": [True, None]}) == '{"a":[true,null],"b":1}'

    def test_non_ascii_passthrough(self):
        assert ops.dumps({"s": "café"}) == '{"s":"café"}'
