import json

import pytest

from obstruction_lab.cli import ahss_report, run_cli
from obstruction_lab.groups import parse_group_spec


def run_json(args):
    code, out = run_cli(args + ["--json"])
    assert code == 0, out
    return json.loads(out)


def test_condition_z4_z2():
    payload = run_json(["condition", "Z/4 x Z/2"])
    assert payload["condition_holds"] == "yes"
    # gamma is the class of multidegree (1,2); with ascending-lex labels
    # ((0,3),(1,2),(2,1),(3,0)) that is mask 2
    gamma_entry = next(c for c in payload["classes"] if c["mask"] == 2)
    assert gamma_entry["verdict"] == "odd"


def test_homology_command():
    payload = run_json(
        ["homology", "Z x Z/2", "--coefficients", "Z", "--degree", "2"]
    )
    assert payload["summary"] == "Z/2"
    code, text = run_cli(
        ["homology", "Z x Z/2", "--coefficients", "Z", "--degree", "2"]
    )
    assert code == 0 and text.endswith("Z/2")


def test_homology_mod_m():
    payload = run_json(
        ["homology", "Z/4", "--coefficients", "Z4", "--degree", "3"]
    )
    assert payload["summary"] == "Z/4"


def test_ahss_z_x_z2_graded_pieces():
    payload = run_json(["ahss", "Z x Z/2"])
    graded = payload["graded_pieces"]
    assert graded["(3,1)"] == "Z/2"
    assert graded["(2,2)"].startswith("Z/2")
    assert any("Z/8" in note for note in payload["notes"])


def test_ahss_trivial_group_signature():
    payload = run_json(["ahss", "Z/3"])
    assert payload["reduced_group"] == "1"
    assert "signature/16" in payload["signature_summand"]
    assert payload["graded_pieces"]["(3,1)"] == "0"


def test_ahss_quaternion_e22_trivial_by_paper_fact():
    payload = run_json(["ahss", "Q8"])
    assert payload["graded_pieces"]["(2,2)"] == "0"
    assert any(i["tag"] == "PAPER_FACT" for i in payload["ingredients"])


def test_ahss_z8_z2_kernel_killed_note():
    payload = run_json(["ahss", "Z/8 x Z/2"])
    assert any("trivial on ker d2[5,0]" in n for n in payload["notes"])


def test_d2_command():
    payload = run_json(["d2", "Z/8", "--degree", "5"])
    assert payload["image_dimension"] == 1
    assert payload["tag"] == "MACHINE_CHECKED"


def test_amap_command():
    payload = run_json(["amap", "Q8"])
    assert payload["h3_dim"] == 1
    assert payload["kernel_masks"] == [0]


def test_tertiary_command():
    payload = run_json(["tertiary", "Z/2 x Z/4"])
    assert payload["criterion"] == "GAMMA_TORSION_FREE"


def test_report_command():
    payload = run_json(["report", "Z/4"])
    assert payload["condition"]["condition_holds"] == "yes"
    assert payload["tertiary"]["criterion"] == "TRIVIAL_TARGET"


def test_evenness_command(tmp_path):
    # lambda = (1 - T^-1)(1 - T) on Z[Z/4]/(N_T): even
    form = {
        "generators": 1,
        "relations": [[[[1, [0]], [1, [1]], [1, [2]], [1, [3]]]]],
        "matrix": [[[[2, [0]], [-1, [1]], [-1, [3]]]]],
    }
    path = tmp_path / "form.json"
    path.write_text(json.dumps(form))
    payload = run_json(["evenness", "Z/4", "--form", str(path)])
    assert payload["verdict"] == "even"


def test_exit_codes():
    code, _ = run_cli(["condition", "not a group"])
    assert code == 2
    code, _ = run_cli(["condition", "Q24"])
    assert code == 3
    code, _ = run_cli(["condition", "Z x Z"])
    assert code == 3
    code, out = run_cli(["homology", "Z/4", "--coefficients", "Z", "--degree", "-1"])
    assert code == 2


def test_json_roundtrip_and_determinism():
    code1, out1 = run_cli(["condition", "Z/4 x Z/2", "--json"])
    code2, out2 = run_cli(["condition", "Z/4 x Z/2", "--json"])
    assert code1 == code2 == 0
    assert out1 == out2
    payload = json.loads(out1)
    assert json.loads(json.dumps(payload)) == payload


def test_odd_strip_consistency_reports():
    # condition "Z/3 x Z/4" is the condition "Z/4" report up to labels
    a = run_json(["condition", "Z/3 x Z/4"])
    b = run_json(["condition", "Z/4"])
    for key in ("h3_dim", "condition_holds", "kernel_masks", "image_masks"):
        assert a[key] == b[key]
    assert a["reduced_group"] == "Z/4" == b["reduced_group"]


def test_ahss_report_invariant_q3_row_zero():
    rep = ahss_report(parse_group_spec("Z/4 x Z/2"))
    for p in range(6):
        assert rep.e2[f"({p},3)"] == "0"


def test_d2_degree_four():
    payload = run_json(["d2", "Z x Z/2", "--degree", "4"])
    assert payload["rows"] == [[0, 0]]  # the degree-4 composite vanishes


def test_evenness_command_quaternion(tmp_path):
    import json as _json

    # the rank-one form of d_3(1) over Q8, entered through the file format
    from obstruction_lab.amap import AContext, a_of_class
    from obstruction_lab.groups import parse_group_spec as p

    ctx = AContext.build(p("Q8"))
    L = a_of_class(ctx, 1)

    def encode(e):
        return [[c, list(k)] for k, c in sorted(e.coeffs.items())]

    form = {
        "generators": 2,
        "relations": [
            [encode(ctx.module.relations[i, j]) for j in range(2)]
            for i in range(2)
        ],
        "matrix": [[encode(L.entries[i, j]) for j in range(2)] for i in range(2)],
    }
    path = tmp_path / "q8.json"
    path.write_text(_json.dumps(form))
    payload = run_json(["evenness", "Q8", "--form", str(path)])
    assert payload["verdict"] == "odd"


def test_condition_undecided_with_tight_budgets():
    payload = run_json(
        [
            "condition",
            "Z x Z/2",
            "--max-support",
            "0",
            "--max-quotient-exponent",
            "0",
        ]
    )
    assert payload["condition_holds"] == "undecided"
    verdicts = {c["verdict"] for c in payload["classes"]}
    assert "undecided" in verdicts
