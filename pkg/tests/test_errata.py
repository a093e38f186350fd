import numpy as np

from shadowsim.errata import build_erratum_report


def test_report_deterministic():
    a = build_erratum_report()
    b = build_erratum_report()
    assert a == b


def test_expected_findings_present():
    report = build_erratum_report()
    ids = [f["id"] for f in report["findings"]]
    assert ids == [
        "entangled-pair-prefactor",
        "teleportation-resource-mismatch",
        "teleportation-branch-flip",
        "swap-branch-signs",
        "ladder-factor-double-application",
        "zone-expansion-coefficients",
    ]


def test_verdicts_follow_oracles():
    by_id = {f["id"]: f for f in build_erratum_report()["findings"]}
    assert by_id["entangled-pair-prefactor"]["verdict"] == "erratum"
    assert by_id["teleportation-resource-mismatch"]["verdict"] == "erratum"
    assert by_id["teleportation-branch-flip"]["verdict"] == "erratum"
    assert by_id["ladder-factor-double-application"]["verdict"] == "erratum"
    assert by_id["zone-expansion-coefficients"]["verdict"] == "erratum"
    # the swap identity survives the brute-force expansion as printed
    assert by_id["swap-branch-signs"]["verdict"] == "match"


def test_teleport_finding_branch_detail():
    by_id = {f["id"]: f for f in build_erratum_report()["findings"]}
    verdicts = by_id["teleportation-branch-flip"]["branch_verdicts"]
    assert verdicts["phi-plus"] == "match"
    assert verdicts["phi-minus"] == "match"
    assert verdicts["psi-plus"] == "erratum"
    assert verdicts["psi-minus"] == "erratum"


def test_ladder_finding_values():
    by_id = {f["id"]: f for f in build_erratum_report()["findings"]}
    f = by_id["ladder-factor-double-application"]
    assert f["matrix_element"] == np.sqrt(2.0)
    assert f["single_application_residual"] < 1e-12
    assert f["residual"] > 0.5
