"""Tests for error reporting and runtime settings."""

import json

import pytest
from pydantic import ValidationError

from shift import (
    CertificationError, DomainError, ErrorCode, ErrorInfo, ResourceError, Settings, Severity, ShiftError,
    UsageError, collect_errors, diagnostic_line, error_summary, errors_to_response, get_settings, has_fatal,
    override_settings,
)


class TestErrorInfo:

    @pytest.mark.parametrize("code,category", [
        (ErrorCode.ENC_MALFORMED_TEXT, "encoding"),
        (ErrorCode.GRAPH_RESOURCE_CAP, "graph"),
        (ErrorCode.LP_RADIUS_TOO_SMALL, "lp"),
        (ErrorCode.KERNEL_ODD_DEPTH, "kernel"),
        (ErrorCode.SPEC_NO_DECAY, "spectrum"),
        (ErrorCode.CLI_USAGE, "cli"),
    ])
    def test_category(self, code, category):
        assert ErrorInfo(code, "x").category == category

    def test_to_dict(self):
        info = ErrorInfo(ErrorCode.KERNEL_ODD_DEPTH, "depth 3", Severity.ERROR, "kernel build")
        assert info.to_dict() == {
            "code": 4002, "category": "kernel", "message": "depth 3", "severity": "error",
            "context": "kernel build",
        }

    def test_to_dict_without_context(self):
        assert "context" not in ErrorInfo(ErrorCode.CLI_USAGE, "bad").to_dict()

    def test_str(self):
        assert str(ErrorInfo(ErrorCode.SPEC_NO_DECAY, "no tail")) == "E5003: no tail"


class TestExceptions:

    @pytest.mark.parametrize("cls", [DomainError, ResourceError, CertificationError, UsageError])
    def test_create(self, cls):
        err = cls.create(ErrorCode.CLI_USAGE, "oops", Severity.FATAL)
        assert isinstance(err, ShiftError)
        assert err.info.severity is Severity.FATAL
        assert str(err) == "E6001: oops"
        assert err.to_dict()["severity"] == "fatal"

    @pytest.mark.parametrize("cls,exit_code", [
        (DomainError, 2), (CertificationError, 2), (UsageError, 2), (ResourceError, 3),
    ])
    def test_exit_code(self, cls, exit_code):
        assert cls.create(ErrorCode.CLI_USAGE, "x").exit_code == exit_code


class TestCollect:

    def test_flattens_and_skips_none(self):
        warning = ErrorInfo(ErrorCode.GRAPH_DEGREE_BOUND, "loose", Severity.WARNING)
        errors = collect_errors(None, warning, DomainError.create(ErrorCode.SPEC_NO_DECAY, "b = 0"))
        assert [e.code for e in errors] == [ErrorCode.GRAPH_DEGREE_BOUND, ErrorCode.SPEC_NO_DECAY]
        assert not has_fatal(errors)
        assert len(errors_to_response(errors)) == 2
        assert [d["code"] for d in errors_to_response(errors, include_warnings=False)] == [5003]
        assert error_summary(errors) == "E2007: loose; E5003: b = 0"

    def test_fatal(self):
        assert has_fatal([ErrorInfo(ErrorCode.CLI_INTERNAL, "boom", Severity.FATAL)])

    def test_empty(self):
        assert error_summary([]) == "No errors"

    def test_diagnostic_line(self):
        doc = json.loads(diagnostic_line(ResourceError.create(ErrorCode.GRAPH_RESOURCE_CAP, "too many")))
        assert doc == {
            "error": True, "message": "E2003: too many",
            "errors": [{"code": 2003, "category": "graph", "message": "too many", "severity": "error"}],
        }


class TestSettings:

    def test_defaults(self):
        settings = Settings()
        assert settings.max_truncation_vertices == 5_000_000
        assert settings.root_tol == 1e-12

    def test_from_env(self):
        settings = Settings.from_env({"GRAPHSHIFT_ROOT_TOL": "1e-8", "GRAPHSHIFT_MAX_TRUNCATION_VERTICES": "99",
                                      "UNRELATED": "1"})
        assert settings.root_tol == 1e-8
        assert settings.max_truncation_vertices == 99

    def test_from_env_validates(self):
        with pytest.raises(ValidationError):
            Settings.from_env({"GRAPHSHIFT_FLOAT_TOL": "-1"})

    def test_override_restores(self):
        before = get_settings()
        with override_settings(float_tol=1e-3) as settings:
            assert get_settings() is settings
            assert settings.float_tol == 1e-3
            assert settings.root_tol == before.root_tol
        assert get_settings() is before

    def test_override_restores_after_error(self):
        before = get_settings()
        with pytest.raises(RuntimeError):
            with override_settings(max_truncation_vertices=1):
                raise RuntimeError("inside")
        assert get_settings() is before

    def test_frozen(self):
        with pytest.raises(ValidationError):
            get_settings().float_tol = 1.0
