import json

import jsonschema
import pytest

from qspectra.report import (
    Check,
    VerificationReport,
    check_from,
    flag_check,
    validate_payload,
)


class TestChecks:
    def test_check_from_compares_residual(self):
        assert check_from("x", 1e-12, 1e-10).passed
        assert not check_from("x", 1e-8, 1e-10).passed

    def test_flag_check(self):
        assert flag_check("x", True).passed
        assert not flag_check("x", False).passed


class TestReport:
    def test_status_follows_checks(self):
        good = VerificationReport("s", [check_from("a", 0.0, 1.0)])
        assert good.passed and good.to_dict()["status"] == "pass"
        bad = VerificationReport("s", [check_from("a", 2.0, 1.0)])
        assert not bad.passed and bad.to_dict()["status"] == "fail"

    def test_payload_validates_against_schema(self):
        rep = VerificationReport("s", [check_from("a", 0.0, 1.0)], seed=3)
        validate_payload(rep.to_dict())

    def test_schema_rejects_missing_fields(self):
        rep = VerificationReport("s", [check_from("a", 0.0, 1.0)])
        payload = rep.to_dict()
        payload.pop("checks")
        with pytest.raises(jsonschema.ValidationError):
            validate_payload(payload)

    def test_schema_rejects_wrong_version(self):
        payload = VerificationReport("s", []).to_dict()
        payload["schema"] = "qspectra-report-v0"
        with pytest.raises(jsonschema.ValidationError):
            validate_payload(payload)

    def test_json_roundtrip_stable(self):
        rep = VerificationReport("s", [Check("a", 1.0 / 3.0, 1e-10, False)], seed=1)
        assert json.loads(rep.to_json()) == rep.to_dict()
