import json

import pytest

from starclean import cli, groups
from starclean.errors import ParseError


# ---------------------------------------------------------------- parsing

def test_parse_q8():
    s = cli.parse_group_spec("Q8")
    assert isinstance(s, groups.SLCStructure)
    assert s.ptype is groups.Presentation.D2 and s.k == 1
    assert s.group.order == 8


def test_parse_q8xc7():
    s = cli.parse_group_spec("Q8xC7")
    assert s.group.order == 56
    assert s.abelian == (7,)


def test_parse_d5_minimal():
    s = cli.parse_group_spec("D5[k=1,k2=1,k3=1]")
    assert s.group.order == 32
    assert groups.is_slc(s.group)


def test_parse_abelian_product():
    g = cli.parse_group_spec("C2xC4")
    assert isinstance(g, groups.FiniteGroup)
    assert g.order == 8


def test_parse_json_config():
    s = cli.parse_group_spec('{"type": "D2", "k": 1, "abelian": [3]}')
    assert isinstance(s, groups.SLCStructure)
    assert s.group.order == 24


def test_parse_errors_carry_position():
    with pytest.raises(ParseError):
        cli.parse_group_spec("Q8xJ5")
    with pytest.raises(ParseError):
        cli.parse_group_spec("Q8xQ8")
    with pytest.raises(ParseError):
        cli.parse_group_spec("D3[k=1,k4=2]")


# ---------------------------------------------------------------- exit codes

def test_decide_q8xc7_exit_zero(capsys):
    code = cli.main(["decide", "--group", "Q8xC7", "--ring", "Q", "--json"])
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert out["verdict"]["status"] == "star-clean"
    assert any(r["citation"] == "CorollaryA.2" for r in out["verdict"]["reasons"])


def test_decide_q8xc3_exit_one(capsys):
    code = cli.main(["decide", "--group", "Q8xC3", "--ring", "Q", "--json"])
    out = json.loads(capsys.readouterr().out)
    assert code == 1
    assert any(r["citation"] == "CorollaryA.1" for r in out["verdict"]["reasons"])


def test_decide_abelian_out_of_scope_exit_two(capsys):
    code = cli.main(["decide", "--group", "C4", "--ring", "F3", "--json"])
    assert code == 2


def test_brute_q8_f3_exit_one(capsys):
    code = cli.main(
        ["brute", "--group", "Q8", "--ring", "F3", "--involution", "canonical", "--json"]
    )
    out = json.loads(capsys.readouterr().out)
    assert code == 1
    assert out["result"]["result"] is False
    assert out["result"]["counterexample"]


def test_brute_clean_property(capsys):
    code = cli.main(
        ["brute", "--group", "Q8", "--ring", "F3", "--property", "clean", "--json"]
    )
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert out["result"]["result"] is True


def test_levels_command(capsys):
    code = cli.main(["levels", "--prime", "23", "--json"])
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert out["label"] == "Level4"  # 23 = 7 mod 8


def test_levels_17(capsys):
    cli.main(["levels", "--prime", "17", "--json"])
    out = json.loads(capsys.readouterr().out)
    assert out["label"] == "TwoOrFour"


def test_witness_command(capsys):
    code = cli.main(["witness", "--group", "Q8xC4", "--ring", "F3", "--json"])
    out = json.loads(capsys.readouterr().out)
    assert code == 1
    assert out["witness"]["case"] == "order-4-element"
    assert out["witness"]["validation"]["condition1"] == "0"


def test_witness_none_over_q(capsys):
    code = cli.main(["witness", "--group", "Q8", "--ring", "Q", "--json"])
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert out["witness"] is None


def test_canonical_command(capsys):
    element = json.dumps({"1": "1", "s": "2"})  # 1 - s over F3
    code = cli.main(
        [
            "canonical",
            "--group",
            "Q8",
            "--ring",
            "F3",
            "--element",
            element,
            "--list-projections",
            "--json",
        ]
    )
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert out["canonical"]["symmetric"] is True
    assert out["canonical"]["roundtrip_ok"] is True
    assert len(out["canonical"]["f_projections"]) == 2


def test_crossval_q8_f3(capsys):
    code = cli.main(["crossval", "--group", "Q8", "--ring", "F3", "--json"])
    out = json.loads(capsys.readouterr().out)
    assert code == 1
    assert out["agreement"] == "agree"
    assert out["brute"]["clean"]["result"] is True
    assert out["brute"]["star_clean"]["result"] is False


def test_crossval_abelian_theory_na(capsys):
    code = cli.main(
        ["crossval", "--group", "C2", "--ring", "F3", "--involution", "classical", "--json"]
    )
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert out["agreement"] == "theory-not-applicable"


def test_lift_command(capsys):
    code = cli.main(
        ["lift", "--group", "C2", "--ring", "F3", "--seed", "3", "--json"]
    )
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert out["validated"] is True
    assert out["lifted_group_order"] == 4


def test_explain_attaches_canonical_forms(capsys):
    code = cli.main(
        ["witness", "--group", "Q8", "--ring", "F3", "--explain", "--json"]
    )
    out = json.loads(capsys.readouterr().out)
    assert code == 1
    assert "canonical_forms" in out


# ---------------------------------------------------------------- error exits

def test_parse_error_exit_three(capsys):
    assert cli.main(["decide", "--group", "Nope", "--ring", "Q"]) == 3


def test_capacity_error_exit_four(capsys):
    assert cli.main(["decide", "--group", "C8000", "--ring", "Q"]) == 4


def test_bad_ring_exit_five(capsys):
    assert cli.main(["decide", "--group", "Q8", "--ring", "Z/4"]) == 5


def test_canonical_involution_on_abelian_exit_five(capsys):
    assert cli.main(["brute", "--group", "C4", "--ring", "F3"]) == 5


def test_usage_error_exit_three(capsys):
    with pytest.raises(SystemExit) as err:
        cli.main(["decide", "--group", "Q8"])  # --ring missing
    assert err.value.code == 3


# ---------------------------------------------------------------- determinism

def _strip_timings(report: dict) -> dict:
    report = dict(report)
    report.pop("timings", None)
    return report


def test_json_reports_deterministic_and_roundtrip(capsys):
    cli.main(["crossval", "--group", "Q8", "--ring", "F3", "--seed", "7", "--json"])
    first = capsys.readouterr().out
    cli.main(["crossval", "--group", "Q8", "--ring", "F3", "--seed", "7", "--json"])
    second = capsys.readouterr().out
    a, b = json.loads(first), json.loads(second)
    assert _strip_timings(a) == _strip_timings(b)
    # round-trip: serialize/parse preserves the verdict fields
    again = json.loads(json.dumps(a, sort_keys=True))
    assert again["theory"] == a["theory"]
    assert again["agreement"] == a["agreement"]
