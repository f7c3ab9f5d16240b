"""Command line tool: verbs, payload shapes, exit codes."""
import json

import pytest

from xoppak import cli
from xoppak.classical import LaguerreParams
from xoppak.exact import InternalInconsistencyError, Poly, rat
from xoppak.laguerre import LaguerreExcFamily
from xoppak.pairs import PairSpec


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def walk_leaves(obj):
    if isinstance(obj, dict):
        for v in obj.values():
            yield from walk_leaves(v)
    elif isinstance(obj, list):
        for v in obj:
            yield from walk_leaves(v)
    else:
        yield obj


# -- construct ---------------------------------------------------------------

def test_construct_laguerre_golden(capsys):
    code, doc = run_json(
        capsys, "construct", "--kind", "laguerre", "--F1", "1",
        "--alpha", "-3/2", "--n", "0..4",
    )
    assert code == 0
    assert doc["schema"] == "xoppak/1"
    assert doc["kind"] == "laguerre"
    assert doc["alpha"] == "-3/2"
    assert doc["u"] == 0 and doc["v"] == 2
    assert doc["excluded_degrees"] == [1]
    members = {m["n"]: m for m in doc["members"]}
    assert members[0]["included"] and members[0]["coeffs"] == ["-1"]
    assert not members[1]["included"] and members[1]["coeffs"] == []
    assert members[2]["included"]
    assert doc["omega"] == ["-1/2", "-1"]
    assert set(doc["operator"]["terms"]) == {"0", "1", "2"}
    assert doc["operator"]["eigenvalue_sign"] == -1
    assert doc["operator"]["variety"] == "differential"


def test_construct_never_emits_floats(capsys):
    code, doc = run_json(
        capsys, "construct", "--kind", "laguerre", "--F1", "1,2", "--F2", "1",
        "--alpha", "1/3", "--n", "4..8",
    )
    assert code == 0
    for leaf in walk_leaves(doc):
        assert not isinstance(leaf, float), leaf


def test_construct_meixner_golden(capsys):
    code, doc = run_json(
        capsys, "construct", "--kind", "meixner", "--F1", "1",
        "--a", "1/2", "--c", "3", "--n", "0",
    )
    assert code == 0
    assert doc["members"] == [{"n": 0, "included": True, "coeffs": ["1"]}]
    assert "lambda" in doc
    assert set(doc["operator"]["terms"]) == {"-1", "0", "1"}
    assert doc["operator"]["eigenvalue_sign"] == 1
    assert doc["operator"]["variety"] == "difference"


def test_construct_round_trip(capsys):
    code, doc = run_json(
        capsys, "construct", "--kind", "laguerre", "--F1", "1", "--F2", "2",
        "--alpha", "1/2", "--n", "2..7",
    )
    assert code == 0
    fam = LaguerreExcFamily(LaguerreParams(rat(1, 2)), PairSpec([1], [2]))
    for m in doc["members"]:
        if not m["included"]:
            assert not fam.pair.sigma_contains(m["n"])
            continue
        rebuilt = Poly([rat(c) for c in m["coeffs"]])
        assert rebuilt == fam.member(m["n"])
    assert Poly([rat(c) for c in doc["omega"]]) == fam.omega


def test_construct_trivial_pair_is_classical(capsys):
    code, doc = run_json(
        capsys, "construct", "--kind", "laguerre", "--alpha", "1/2", "--n", "0..2",
    )
    assert code == 0
    assert doc["u"] == 0 and doc["excluded_degrees"] == []
    assert doc["omega"] == ["1"]
    assert doc["members"][1]["coeffs"] == ["3/2", "-1"]


def test_construct_krawtchouk(capsys):
    code, doc = run_json(
        capsys, "construct", "--kind", "krawtchouk", "--F1", "1",
        "--a", "1/3", "--c", "-4", "--n", "0..2",
    )
    assert code == 0
    assert doc["kind"] == "krawtchouk"
    assert doc["members"][0]["coeffs"] == ["1"]
    assert "lambda" in doc


def test_construct_default_range(capsys):
    code, doc = run_json(
        capsys, "construct", "--kind", "meixner", "--F2", "1",
        "--a", "1/2", "--c", "3",
    )
    assert code == 0
    ns = [m["n"] for m in doc["members"]]
    assert ns == list(range(doc["u"], doc["u"] + 7))


# -- usage errors ------------------------------------------------------------

def test_bad_parameter_exits_2(capsys):
    code, _, err = run(capsys, "construct", "--kind", "meixner", "--F1", "1",
                       "--a", "1", "--c", "3", "--n", "0")
    assert code == 2
    assert err.strip()


def test_missing_parameter_exits_2(capsys):
    code, _, err = run(capsys, "construct", "--kind", "laguerre", "--F1", "1")
    assert code == 2
    assert "alpha" in err


def test_bad_rational_exits_2(capsys):
    code, _, err = run(capsys, "construct", "--kind", "laguerre", "--F1", "1",
                       "--alpha", "x/y")
    assert code == 2


def test_bad_set_exits_2(capsys):
    for f1 in ("0", "1,1", "1,x"):
        code, _, err = run(capsys, "construct", "--kind", "laguerre",
                           "--F1", f1, "--alpha", "1/2")
        assert code == 2, f1


def test_bad_n_range_exits_2(capsys):
    code, _, _ = run(capsys, "construct", "--kind", "laguerre", "--F1", "1",
                     "--alpha", "1/2", "--n", "4..2")
    assert code == 2


def test_integer_alpha_at_most_minus_one_exits_2(capsys):
    code, _, err = run(capsys, "construct", "--kind", "laguerre", "--F1", "1",
                       "--alpha", "-2", "--n", "0")
    assert code == 2


def test_verify_krawtchouk_exits_2(capsys):
    code, _, err = run(capsys, "verify", "--kind", "krawtchouk", "--F1", "1",
                       "--a", "1/3", "--c", "-4")
    assert code == 2


def test_verify_unknown_check_exits_2(capsys):
    code, _, err = run(capsys, "verify", "--kind", "laguerre", "--F1", "1",
                       "--alpha", "-3/2", "--checks", "eigen,nope")
    assert code == 2
    assert "nope" in err


def test_verify_kind_mismatched_check_exits_2(capsys):
    # duality is a discrete-family identity
    code, _, err = run(capsys, "verify", "--kind", "laguerre", "--F1", "1",
                       "--alpha", "-3/2", "--checks", "duality")
    assert code == 2
    # and the continuous limit has no meaning for the discrete family
    code, _, err = run(capsys, "verify", "--kind", "meixner", "--F1", "1",
                       "--a", "1/2", "--c", "3", "--checks", "limit")
    assert code == 2


# -- verify ------------------------------------------------------------------

def test_verify_eigen_passes(capsys):
    code, doc = run_json(
        capsys, "verify", "--kind", "meixner", "--F1", "1",
        "--a", "1/2", "--c", "3", "--checks", "eigen,duality",
    )
    assert code == 0
    assert doc["status"] == "pass"
    assert [r["status"] for r in doc["checks"]] == ["pass", "pass"]


def test_verify_admissible_failure_carries_witnesses(capsys):
    code, doc = run_json(
        capsys, "verify", "--kind", "meixner", "--F1", "1",
        "--a", "1/2", "--c", "-7/2", "--checks", "admissible",
    )
    assert code == 4
    assert doc["status"] == "fail"
    row = doc["checks"][0]
    assert row["status"] == "fail"
    assert row["witness"]["witnesses"] == [0, 3]


def test_verify_refusals_do_not_fail(capsys):
    # F2 empty refuses darboux; the non-admissible weight refuses norms
    code, doc = run_json(
        capsys, "verify", "--kind", "meixner", "--F1", "1",
        "--a", "1/2", "--c", "3", "--checks", "darboux,norms,orthogonality",
    )
    assert code == 0
    assert doc["status"] == "pass"
    statuses = {r["check"]: r["status"] for r in doc["checks"]}
    assert statuses == {
        "darboux": "refused", "norms": "refused", "orthogonality": "refused",
    }
    for r in doc["checks"]:
        assert r["detail"]["reason"]


def test_verify_full_admissible_laguerre(capsys):
    code, doc = run_json(
        capsys, "verify", "--kind", "laguerre", "--F1", "1",
        "--alpha", "-3/2",
    )
    assert code == 0
    statuses = {r["check"]: r["status"] for r in doc["checks"]}
    assert statuses["eigen"] == "pass"
    assert statuses["norms"] == "pass"
    assert statuses["orthogonality"] == "pass"
    assert statuses["nonvanish"] == "pass"
    assert statuses["limit"] == "pass"
    assert statuses["admissible"] == "pass"
    assert statuses["darboux"] == "refused"


def test_verify_darboux_with_f2(capsys):
    code, doc = run_json(
        capsys, "verify", "--kind", "laguerre", "--F2", "1",
        "--alpha", "1/2", "--checks", "darboux",
    )
    assert code == 0
    assert doc["checks"][0]["status"] == "pass"


def test_verify_csv_format(capsys):
    code, out, _ = run(
        capsys, "verify", "--kind", "laguerre", "--F1", "1",
        "--alpha", "-3/2", "--checks", "eigen,admissible", "--format", "csv",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "check,status,seconds"
    assert lines[1].startswith("eigen,pass,")
    assert lines[2].startswith("admissible,pass,")


def test_verify_internal_inconsistency_exits_3(capsys, monkeypatch):
    def boom(job):
        raise InternalInconsistencyError("cross-check mismatch")

    monkeypatch.setattr(cli, "cmd_verify", boom)
    code, _, err = run(capsys, "verify", "--kind", "laguerre", "--F1", "1",
                       "--alpha", "-3/2")
    assert code == 3
    assert "inconsistency" in err


# -- admissible --------------------------------------------------------------

def test_admissible_verb(capsys):
    code, doc = run_json(capsys, "admissible", "--kind", "laguerre",
                         "--F1", "1", "--alpha", "-3/2")
    assert code == 0
    assert doc["admissible"] is True
    assert doc["witnesses"] == []
    assert doc["parameter"] == "-1/2"

    code, doc = run_json(capsys, "admissible", "--kind", "meixner",
                         "--F1", "1", "--c", "-7/2")
    assert code == 0
    assert doc["admissible"] is False
    assert doc["witnesses"] == [0, 3]


def test_admissible_needs_pair_and_param(capsys):
    code, _, _ = run(capsys, "admissible", "--kind", "laguerre", "--alpha", "1/2")
    assert code == 2
    code, _, _ = run(capsys, "admissible", "--kind", "laguerre", "--F1", "1")
    assert code == 2
    code, _, _ = run(capsys, "admissible", "--kind", "krawtchouk", "--F1", "1",
                     "--a", "1/3", "--c", "-4")
    assert code == 2


# -- sweep -------------------------------------------------------------------

def test_sweep_json(capsys):
    code, doc = run_json(capsys, "sweep", "2", "2", "--a", "1/2", "--c", "3",
                         "--alpha", "1/2")
    assert code == 0
    assert doc["schema"] == "xoppak/1"
    assert doc["total"] == doc["passed"] + doc["skipped"]
    assert doc["counterexamples"] == []
    assert doc["a"] == "1/2" and doc["alpha"] == "1/2"


def test_sweep_empty(capsys):
    code, doc = run_json(capsys, "sweep", "2", "0", "--alpha", "1/2")
    assert code == 0
    assert doc["total"] == 0 and doc["cells"] == []


def test_sweep_csv(capsys):
    code, out, _ = run(capsys, "sweep", "2", "1", "--alpha", "1/2",
                       "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "kind,f1,f2,check,ok,note"
    # four singleton pairs from elements {1, 2}, two checks each
    assert len(lines) == 1 + 8
    assert all(line.split(",")[4] == "yes" for line in lines[1:])


def test_sweep_needs_parameters(capsys):
    code, _, err = run(capsys, "sweep", "2", "2")
    assert code == 2


# -- output plumbing ---------------------------------------------------------

def test_out_flag_writes_file(capsys, tmp_path):
    path = tmp_path / "report.json"
    code, out, _ = run(capsys, "construct", "--kind", "laguerre", "--F1", "1",
                       "--alpha", "-3/2", "--n", "0", "--out", str(path))
    assert code == 0
    assert out == ""
    doc = json.loads(path.read_text())
    assert doc["schema"] == "xoppak/1"


def test_csv_undefined_for_construct(capsys):
    code, _, err = run(capsys, "construct", "--kind", "laguerre", "--F1", "1",
                       "--alpha", "-3/2", "--n", "0", "--format", "csv")
    assert code == 2


def test_usage_error_without_verb():
    with pytest.raises(SystemExit) as exc:
        cli.main([])
    assert exc.value.code == 2
