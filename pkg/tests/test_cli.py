import io
import json
import subprocess
import sys
from fractions import Fraction as F
from pathlib import Path

import pytest

from arcnerve.cli import format_table, main, parse_document, InputError
from arcnerve.circle import Arc
from arcnerve.homology import get_caps, set_caps

GOLDEN = Path(__file__).parent / "data" / "nk_homotopy_table.tsv"


@pytest.fixture(autouse=True)
def restore_caps():
    old = get_caps()
    yield
    set_caps(old["vertices"], old["dim"])


def run(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(json.dumps(stdin) if not isinstance(stdin, str) else stdin))
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, doc):
    p = tmp_path / "in.json"
    p.write_text(json.dumps(doc) if not isinstance(doc, str) else doc)
    return str(p)


U63 = {"arcs": [{"start": f"{i}/6", "length": "1/2"} for i in range(6)]}


class TestHomotopy:
    def test_six_arcs(self, capsys, tmp_path):
        code, out, _ = run(capsys, "homotopy", "--input", write(tmp_path, U63))
        doc = json.loads(out)
        assert code == 0
        assert doc["homotopy"] == {"type": "wedge", "dim": 2, "count": 2}
        assert doc["n"] == 6 and doc["reduced"] == {"n": 6, "k": 3, "kept": list(range(6))}

    def test_stdin(self, capsys, monkeypatch):
        code, out, _ = run(capsys, "homotopy", stdin=U63, monkeypatch=monkeypatch)
        assert code == 0 and json.loads(out)["homotopy"]["count"] == 2

    def test_vietoris_rips(self, capsys, tmp_path):
        doc = {"points": [f"{i}/9" for i in range(9)], "radius": "3/9", "complex": "vr"}
        code, out, _ = run(capsys, "homotopy", "--input", write(tmp_path, doc))
        assert code == 0
        assert json.loads(out)["homotopy"] == {"type": "wedge", "dim": 2, "count": 2}

    @pytest.mark.parametrize("kind", ["cech", "vr"])
    def test_large_radius_contractible(self, capsys, tmp_path, kind):
        doc = {"points": ["0", "1/3", "0.7"], "radius": "1/2", "complex": kind}
        code, out, _ = run(capsys, "homotopy", "--input", write(tmp_path, doc))
        assert code == 0 and json.loads(out)["homotopy"] == {"type": "contractible"}

    def test_overrides_and_log(self, capsys, tmp_path):
        doc = {"points": [f"{i}/9" for i in range(9)], "radius": "0"}
        code, out, _ = run(
            capsys, "homotopy", "--input", write(tmp_path, doc), "--complex", "vr", "--radius", "1/3",
            "--log-removals", "--verify",
        )
        doc = json.loads(out)
        assert code == 0 and doc["verified"] and doc["removals"] == []
        assert doc["homotopy_text"] == "vee^2 S^2"

    def test_reduce_verb(self, capsys, tmp_path):
        doc = {"arcs": [{"start": "0", "end": "1/2"}, {"start": "1/8", "end": "3/8"}, {"start": "3/4", "length": "0"}]}
        code, out, _ = run(capsys, "reduce", "--input", write(tmp_path, doc))
        doc = json.loads(out)
        assert code == 0 and doc["verified"]
        assert doc["removals"] == [{"removed": 1, "by": 0, "case": "a"}]


class TestExitCodes:
    @pytest.mark.parametrize("text", ["{not json", json.dumps({"arcs": [{"start": "1/0", "length": "1"}]}),
                                      json.dumps({"arcs": [{"start": "x", "length": "1"}]}),
                                      json.dumps({"shapes": []}), json.dumps({"points": ["0"]})])
    def test_parse_errors(self, capsys, tmp_path, text):
        code, _, err = run(capsys, "homotopy", "--input", write(tmp_path, text))
        assert code == 2 and err.startswith("error:")

    def test_position_reported(self, capsys, tmp_path):
        doc = {"arcs": [{"start": "0", "length": "1/2"}, {"start": "1/3", "length": "bad"}]}
        _, _, err = run(capsys, "homotopy", "--input", write(tmp_path, doc))
        assert "arcs[1].length" in err

    @pytest.mark.parametrize("doc", [{"arcs": []}, {"points": [], "radius": "1/5"}])
    def test_empty(self, capsys, tmp_path, doc):
        code, _, _ = run(capsys, "homotopy", "--input", write(tmp_path, doc))
        assert code == 3

    def test_missing_file(self, capsys, tmp_path):
        code, _, _ = run(capsys, "homotopy", "--input", str(tmp_path / "nope.json"))
        assert code == 2

    def test_preconditions(self, capsys):
        assert run(capsys, "generators", "7", "4")[0] == 4
        assert run(capsys, "chromatic", "5", "3")[0] == 4
        assert run(capsys, "table", "--n-max", "1")[0] == 4
        assert run(capsys, "bench", "--count", "0")[0] == 4
        assert run(capsys, "polytope", "7", "4", "--check-inclusion", "9")[0] == 4


class TestTable:
    def test_cells(self):
        rows = [line.split("\t") for line in format_table(18, 12).splitlines()]
        cell = {(int(r[0]), k): v for r in rows[1:] for k, v in enumerate(r[1:])}
        assert cell[6, 3] == "vee^2 S^2"
        assert cell[10, 5] == "vee^4 S^2"
        assert cell[13, 11] == "S^11"
        assert cell[12, 6] == "vee^5 S^2"
        assert cell[12, 9] == "vee^2 S^6"
        assert cell[13, 12] == "*"

    def test_golden(self, capsys):
        code, out, _ = run(capsys, "table", "--n-max", "18", "--k-max", "12")
        assert code == 0
        assert out.encode() == GOLDEN.read_bytes()

    def test_default_width(self):
        lines = format_table(5).splitlines()
        assert lines[0] == "n/k\t0\t1\t2\t3"
        assert len(lines) == 5

    def test_clique_variant(self, capsys):
        code, out, _ = run(capsys, "table", "--n-max", "9", "--complex", "clique")
        assert code == 0 and out.splitlines()[-1].split("\t")[4] == "vee^2 S^2"


class TestVerify:
    def test_passes(self, capsys):
        code, out, _ = run(capsys, "verify", "--n-max", "7", "--random", "50")
        assert code == 0 and "counterexample" not in out

    def test_injected_fault(self, capsys):
        code, out, _ = run(capsys, "verify", "--n-max", "6", "--random", "10", "--inject-fault")
        assert code == 1 and "counterexample" in out


class TestBench:
    def test_single_arc(self, capsys):
        code, out, _ = run(capsys, "bench", "--count", "1")
        doc = json.loads(out)["single"]
        assert code == 0 and (doc["n_prime"], doc["k_prime"]) == (1, 0)

    def test_small_ladder(self, capsys):
        code, out, _ = run(capsys, "bench", "--count", "100", "--ladder", "6:8", "--backend", "python")
        ladder = json.loads(out)["ladder"]
        assert code == 0 and [r["count"] for r in ladder] == [64, 128, 256]
        assert all(r["backend"] == "python" for r in ladder)
        assert "reduce_growth" in ladder[1]

    def test_deterministic(self, capsys):
        a = json.loads(run(capsys, "bench", "--count", "500", "--seed", "4")[1])["single"]
        b = json.loads(run(capsys, "bench", "--count", "500", "--seed", "4")[1])["single"]
        assert (a["mutations"], a["n_prime"], a["k_prime"]) == (b["mutations"], b["n_prime"], b["k_prime"])


class TestSuites:
    def test_generators(self, capsys):
        code, out, _ = run(capsys, "generators", "6", "3", "--json")
        doc = json.loads(out)
        assert code == 0 and doc["ok"]
        assert doc["evaluation_matrix"] == [[1, 0], [0, 1]]
        assert doc["beta_support"] == [[0, 1, 3], [0, 2, 3]]

    def test_generators_text(self, capsys):
        code, out, _ = run(capsys, "generators", "9", "6")
        assert code == 0 and "evaluation matrix" in out

    def test_polytope_inclusion(self, capsys):
        code, out, _ = run(capsys, "polytope", "7", "4", "--check-inclusion", "4", "--json")
        doc = json.loads(out)
        assert code == 0 and doc["inclusion"]["holds"] and doc["inclusion"]["inclusion_expected"]
        assert len(doc["facets"]) == 14 and doc["gale_evenness_agrees"]

    def test_polytope_missing_facets_listed(self, capsys):
        code, out, _ = run(capsys, "polytope", "6", "4", "--check-inclusion", "3")
        assert code == 0 and "inclusion into N(6,3): fails" in out and "missing: 0 1 3 4" in out

    def test_chromatic(self, capsys):
        code, out, _ = run(capsys, "chromatic", "5", "2", "--json")
        assert code == 0
        doc = json.loads(out)
        assert (doc["chi"], doc["bound"], doc["gap"]) == (3, 3, 0)
        assert "chi=3, bound=3, gap=0" in run(capsys, "chromatic", "5", "2")[1]


class TestFlags:
    def test_caps_after_verb(self, capsys):
        code, _, _ = run(capsys, "verify", "--n-max", "7", "--random", "0", "--caps", "5:8")
        # suites that exceed the lowered cap are skipped, not failed
        assert code == 0

    def test_caps_before_verb(self, capsys):
        run(capsys, "--caps", "9:7", "chromatic", "5", "2")
        assert get_caps() == {"vertices": 9, "dim": 7}

    def test_backend_after_verb(self, capsys):
        out = json.loads(run(capsys, "bench", "--count", "10", "--backend", "python")[1])
        assert out["single"]["backend"] == "python"

    def test_bad_caps(self, capsys):
        with pytest.raises(SystemExit):
            main(["--caps", "12", "table"])


class TestDocuments:
    def test_exact_parse(self):
        coll, variant = parse_document({"arcs": [{"start": "0.1", "length": "1/3"}, {"start": 0, "end": "1/2"}]})
        assert variant == "nerve"
        assert coll[0] == Arc(F(1, 10), F(1, 3)) and coll[1] == Arc(0, F(1, 2))

    def test_end_equal_start_is_a_point(self):
        coll, _ = parse_document({"arcs": [{"start": "1/4", "end": "1/4"}]})
        assert coll[0].length == 0

    def test_round_trip(self, capsys, tmp_path):
        doc = {"arcs": [{"start": str(F(i, 7)), "length": str(F(4, 7))} for i in range(7)]}
        first = run(capsys, "homotopy", "--input", write(tmp_path, doc))[1]
        again = json.loads(json.dumps(json.loads(first)))
        assert json.loads(first) == again
        assert again["homotopy"] == {"type": "wedge", "dim": 3, "count": 1} and again["homotopy_text"] == "S^3"
        coll, _ = parse_document(doc)
        assert [{"start": str(a.start), "length": str(a.length)} for a in coll] == doc["arcs"]

    def test_bad_variant(self):
        with pytest.raises(InputError):
            parse_document({"arcs": [{"start": "0", "length": "1"}]}, "vr")


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "arcnerve", "chromatic", "7", "2"], capture_output=True, text=True, check=True,
    )
    assert "gap=1" in out.stdout
