import json
import subprocess
import sys

import pytest

from invcorr import fixtures as fx
from invcorr import io
from invcorr.cli import main
from invcorr.errors import ParseError, UnknownKind
from invcorr.inverse_set import find_set_isomorphism
from invcorr.semigroup import find_isomorphism

F = fx.semigroups()

E2_TEXT = '{"kind": "semigroup", "name": "E2", "order": 2, "table": [[0, 0], [0, 1]]}\n'


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def cli(*argv, env=None):
    return subprocess.run([sys.executable, "-m", "invcorr", *argv], capture_output=True, text=True, env=env)


class TestParse:
    def test_semigroup(self):
        ws = io.parse_text(E2_TEXT)
        assert ws.kinds == {"E2": "semigroup"}

    def test_syntax_error_position(self):
        with pytest.raises(ParseError) as e:
            io.parse_text('{"order": 2,\n  "table": [[0, 0] [0, 1]]}')
        assert e.value.witness == (2, 20)

    def test_out_of_range_position(self):
        text = '{"order": 2,\n "table": [[0, 0],\n           [0, 2]]}'
        with pytest.raises(ParseError) as e:
            io.parse_text(text)
        assert e.value.witness == (3, 16) and "out of range" in str(e.value)

    def test_wrong_row_count(self):
        with pytest.raises(ParseError) as e:
            io.parse_text('{"order": 2, "table": [[0, 0]]}')
        assert e.value.witness == (1, 23)

    def test_unknown_kind(self):
        with pytest.raises(UnknownKind):
            io.parse_text('{"kind": "groupoid"}')
        with pytest.raises(UnknownKind):
            io.parse_text('{"name": "x"}')

    def test_references(self):
        text = json.dumps({"structures": {
            "S": json.loads(E2_TEXT),
            "U": {"semigroup": "S", "size": 1, "action": [[0, 0]], "pairing": [[0]]},
            "V": {"semigroup": "B2", "size": 1, "action": [[0] * 5], "pairing": [[0]]},
        }})
        ws = io.parse_text(text)
        assert ws.kinds == {"S": "semigroup", "U": "set", "V": "set"}
        assert ws.entries["V"].semigroup is F["B2"]

    def test_circular(self):
        text = json.dumps({"structures": {"U": {"semigroup": "U", "size": 0, "action": [], "pairing": []}}})
        with pytest.raises(ParseError):
            io.parse_text(text)

    def test_generators(self):
        assert io.named_structure("I3").order == 34
        with pytest.raises(ParseError):
            io.named_structure("I9")


class TestRoundTrip:
    @pytest.mark.parametrize("name", sorted(fx.sets()))
    def test_sets(self, name):
        U = fx.sets()[name]
        V = next(iter(io.parse_text(io.dumps(U)).entries.values()))
        assert V.action == U.action and V.pairing == U.pairing
        assert find_set_isomorphism(U, V) is not None

    @pytest.mark.parametrize("name", sorted(F))
    def test_semigroups(self, name):
        T = next(iter(io.parse_text(io.dumps(F[name])).entries.values()))
        assert T.table == F[name].base.table

    @pytest.mark.parametrize("name", ["B2-enlarge", "I(2,1)", "U_p(E3-steps)"])
    def test_morita(self, name):
        M = fx.morita_fixtures()[name]
        back = next(iter(io.parse_text(io.dumps(M)).entries.values()))
        assert back.left_pairing == M.left_pairing and back.left_action == M.left_action

    def test_correspondence_and_mcalister(self):
        c = fx.correspondences()["B2-enlarge"]
        back = next(iter(io.parse_text(io.dumps(c)).entries.values()))
        assert back.left_action == c.left_action
        pm = fx.mcalister_functions()["E3-steps"]
        back = next(iter(io.parse_text(io.dumps(pm)).entries.values()))
        assert back.p == pm.p and back.is_full_MF == pm.is_full_MF


class TestCheck:
    def test_pass(self, tmp_path, capsys):
        f = tmp_path / "e2.json"
        f.write_text(E2_TEXT)
        code, out = run(capsys, "check", str(f))
        assert code == 0 and out.startswith("check: pass")

    def test_not_associative(self, tmp_path, capsys):
        f = tmp_path / "bad.json"
        f.write_text('{"order": 2, "table": [[0, 0], [1, 0]]}')
        code, out = run(capsys, "check", str(f), "--format", "structured")
        rep = json.loads(out)
        assert code == 1 and rep["verdict"] == "fail"
        assert any(v["axiom"] == "NOT_ASSOCIATIVE" for r in rep["results"] for v in r["violations"])

    def test_parse_error_exit(self, tmp_path, capsys):
        f = tmp_path / "bad.json"
        f.write_text('{"order": 2, "table": [[0, 0], [0, 7]]}')
        code, out = run(capsys, "check", str(f))
        assert code == 2 and "PARSE_ERROR" in out and "line 1" in out

    def test_wrong_kind(self, tmp_path, capsys):
        f = tmp_path / "e2.json"
        f.write_text(E2_TEXT)
        code, _ = run(capsys, "check", str(f), "--kind", "set")
        assert code == 2

    def test_invalid_mcalister_reported(self, tmp_path, capsys):
        f = tmp_path / "p.json"
        f.write_text(json.dumps({"semigroup": "Z2", "index_size": 2, "p": [[0, 1], [0, 0]]}))
        code, out = run(capsys, "check", str(f))
        assert code == 1 and "(MF3)" in out


class TestCompute:
    def test_L_of_semilattice(self, tmp_path, capsys):
        out_file = tmp_path / "L.json"
        code, _ = run(capsys, "compute", "L", "E2-as-set", "--out", str(out_file))
        assert code == 0
        S = next(iter(io.load(out_file).entries.values()))
        assert S.order == 2

    def test_tensor_of_identity(self, tmp_path, capsys):
        f = tmp_path / "id.json"
        f.write_text(io.dumps(fx.correspondences()["id(B2)"]))
        code, out = run(capsys, "compute", "tensor", str(f), str(f), "--format", "structured")
        rep = json.loads(out)
        W = next(iter(io.parse_text(json.dumps(rep["result"])).entries.values()))
        assert code == 0 and find_set_isomorphism(W.right_set, fx.sets()["B2-as-set"]) is not None

    def test_rees_collapse(self, tmp_path, capsys):
        f = tmp_path / "pm.json"
        f.write_text(io.dumps(fx.mcalister_functions()["T1-pair"]))
        code, out = run(capsys, "compute", "rees-IM", str(f), "--format", "structured")
        assert code == 0 and json.loads(out)["result"]["order"] == 1

    def test_middle_mismatch(self, tmp_path, capsys):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        a.write_text(io.dumps(fx.correspondences()["id(B2)"]))
        b.write_text(io.dumps(fx.correspondences()["id(E2)"]))
        code, out = run(capsys, "compute", "tensor", str(a), str(b))
        assert code == 2 and "MIDDLE_MISMATCH" in out

    def test_budget_exit(self, capsys):
        code, out = run(capsys, "compute", "L", "I2-as-set", "--budget", "3")
        assert code == 3 and "SIZE_LIMIT" in out

    def test_env_budget_and_flag_precedence(self, monkeypatch, capsys):
        monkeypatch.setenv("INVCORR_BUDGET", "3")
        assert run(capsys, "compute", "L", "I2-as-set")[0] == 3
        assert run(capsys, "compute", "L", "I2-as-set", "--budget", "100000")[0] == 0

    @pytest.mark.parametrize("argv", [
        ["multiplier", "B2"], ["K", "B2-row"], ["I_n", "2"], ["partial-bijection-biset", "1", "2"],
        ["enlargement", "B2", "0,1,2,3,4"], ["direct-sum", "B2-row", "B2-row"],
        ["from-hom", "E2", "E3", "0,2"], ["presheaf", "E2", "1,1", '{"0,1": [0]}'],
    ])
    def test_constructions_run(self, argv, capsys):
        assert run(capsys, "compute", *argv)[0] == 0

    def test_arity(self, capsys):
        assert run(capsys, "compute", "tensor", "B2")[0] == 2


class TestIso:
    def test_semigroups(self, capsys):
        code, out = run(capsys, "iso", "E2", "I1")
        assert code == 0 and "isomorphism: [" in out

    def test_not_isomorphic(self, capsys):
        assert run(capsys, "iso", "E2", "Z2")[0] == 1

    def test_mixed(self, capsys):
        assert run(capsys, "iso", "E2", "E2-as-set")[0] == 2


class TestVerify:
    def test_scope(self, capsys):
        code, out = run(capsys, "verify", "--scope", "rees", "--format", "structured")
        rep = json.loads(out)
        assert code == 0 and {t["scope"] for t in rep["theorems"]} == {"rees"}

    def test_mutated_file_fails(self, tmp_path, capsys):
        # flip one entry of the E2 table: 1 * 1 = 0 is associative but 1 has no inverse
        f = tmp_path / "mut.json"
        f.write_text('{"order": 2, "table": [[0, 0], [0, 0]]}')
        code, out = run(capsys, "verify", str(f), "--scope", "core")
        assert code == 1 and "mut:mut: (1,) NOT_INVERSE" in out

    def test_file_plus_fixtures(self, tmp_path, capsys):
        f = tmp_path / "e2.json"
        f.write_text(E2_TEXT)
        code, out = run(capsys, "verify", str(f), "--fixtures", "--scope", "core", "--format", "structured")
        rep = json.loads(out)
        assert code == 0 and rep["counts"]["pass"] > 1
        assert '"e2:E2"' not in out  # passing subjects are counted, not listed


class TestProcess:
    def test_reports_are_byte_identical(self):
        a = cli("verify", "--format", "structured")
        b = cli("verify", "--format", "structured")
        assert a.returncode == 0 and a.stdout == b.stdout and a.stdout

    def test_timing_is_opt_in(self):
        plain = cli("iso", "B2", "B2")
        timed = cli("iso", "B2", "B2", "--timing")
        assert "time:" not in plain.stdout and "time:" in timed.stdout

    def test_usage_error(self):
        assert cli("compute", "no-such-construction").returncode == 2

    def test_report_to_file(self, tmp_path):
        out = tmp_path / "report.txt"
        r = cli("iso", "E2", "I1", "--out", str(out))
        assert r.returncode == 0 and out.read_text() == r.stdout
