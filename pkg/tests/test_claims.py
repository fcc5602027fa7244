from forbconfig.claims import ClaimResult, builtin_claims, run_builtin_claims, run_claims


def test_builtin_claim_ids_cover_expected_groups():
    ids = {c.claim_id for c in builtin_claims()}
    expected = {
        "tab1:131", "tab1:122", "tab1:I3", "tab1:Q3", "tab1:Q8", "tab1:Q9",
        "tab2:141", "tab2:F9", "tab2:F10", "tab2:F11", "tab2:F12", "tab2:F13",
        "tab6:F14", "tab6:F15",
        "Const1:only", "ConstF9:only", "ConstF11:only", "ConstF13:only",
        "P14:only", "P15:only",
        "L-F9", "L-F11", "L-all-prod",
        "form:Q9", "form:1F9", "form:122F9", "form:Q9-141", "form:131Q9",
    }
    assert expected <= ids


def test_builtin_claims_pass_within_budget():
    results = run_builtin_claims(time_budget=240.0)
    by_status = {}
    for r in results:
        by_status.setdefault(r.status, []).append(r.claim_id)
        assert isinstance(r.line(), str) and r.claim_id in r.line()
    assert not by_status.get("FAIL"), by_status.get("FAIL")
    # everything but the deliberately expensive entries must actually run
    assert set(by_status.get("SKIPPED(budget)", [])) <= {"form:141F9"}


def test_budget_gate_skips_expensive_claims():
    claims = builtin_claims()
    results = run_claims(claims, time_budget=0.0)
    # zero budget: every claim with a positive cost hint is skipped
    assert all(r.status == "SKIPPED(budget)" for r in results)


def test_claim_result_line_format():
    r = ClaimResult("x:y", "checked stuff", "PASS", "note")
    line = r.line()
    assert line.startswith("x:y") and "PASS" in line and "[note]" in line
