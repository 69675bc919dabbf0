"""Tests for tree-spec parsing and payload records."""

import json

import pytest
from pydantic import ValidationError

from shift import (
    AlmostRegularTree, AlternatingTree, DomainError, EncodingError, ErrorCode, ExplicitBeta, StretchedTree,
    get_json_schema, parse_tree_spec, validate_record,
)
from shift.schemas import RECORDS


class TestParseTreeSpec:
    """JSON documents selected by "kind"."""

    @pytest.mark.parametrize("doc,spec", [
        ({"kind": "alternating", "m": 2, "M": 4}, AlternatingTree(2, 4)),
        ({"kind": "almost-regular", "k": 3}, AlmostRegularTree(3)),
        ({"kind": "almost-regular", "k": 3, "root_children": 2}, AlmostRegularTree(3, 2)),
        ({"kind": "stretched", "M": 2}, StretchedTree(2, "squares")),
        ({"kind": "stretched", "M": 3, "t": "selfpow"}, StretchedTree(3, "selfpow")),
        ({"kind": "stretched", "M": 2, "t": [1, 2, 4]}, StretchedTree(2, (1, 2, 4))),
        ({"kind": "explicit", "levels": [3, 1, 2], "default": 2}, ExplicitBeta((3, 1, 2), 2)),
    ])
    def test_valid(self, doc, spec):
        assert parse_tree_spec(doc) == spec
        assert parse_tree_spec(json.dumps(doc)) == spec

    @pytest.mark.parametrize("doc", [
        {"kind": "alternating", "m": 0, "M": 4},
        {"kind": "almost-regular", "k": 1},
        {"kind": "stretched", "M": 2, "t": "fibonacci"},
        {"kind": "stretched", "M": 2, "t": [1, 0]},
        {"kind": "explicit", "levels": [2], "default": 0},
        {"kind": "binary"},
        {"m": 2, "M": 4},
        '{"kind": "alternating", "m": 2',
    ])
    def test_invalid(self, doc):
        with pytest.raises(DomainError) as exc:
            parse_tree_spec(doc)
        assert exc.value.info.code == ErrorCode.KERNEL_INVALID_SPEC

    def test_message_names_field(self):
        with pytest.raises(DomainError) as exc:
            parse_tree_spec({"kind": "alternating", "m": 0, "M": 4})
        assert "alternating.m" in exc.value.info.message

    def test_empty_stretched_list(self):
        # the document validates; the tree rejects an empty prefix
        with pytest.raises(DomainError):
            parse_tree_spec({"kind": "stretched", "M": 2, "t": []})


class TestJsonSchema:

    def test_tree_spec(self):
        schema = get_json_schema("tree-spec")
        assert "$defs" in schema
        assert {"AlternatingTreeDoc", "StretchedTreeDoc"} <= set(schema["$defs"])

    def test_every_record(self):
        for name in RECORDS:
            assert get_json_schema(name)["type"] == "object"

    def test_membership_uses_alias(self):
        assert "lambda" in get_json_schema("membership")["properties"]

    def test_unknown(self):
        with pytest.raises(EncodingError) as exc:
            get_json_schema("histogram")
        assert exc.value.info.code == ErrorCode.ENC_WRONG_VARIANT


class TestValidateRecord:

    def test_membership_alias(self):
        out = validate_record("membership", {"lambda": 1.0, "in_spectrum": True, "criterion": True, "interval": True})
        assert out == {"lambda": 1.0, "in_spectrum": True, "criterion": True, "interval": True}

    def test_level_sums_keep_strings(self):
        out = validate_record("level-sums", {"p": 2.0, "sums": ["1", "1/2"], "ratios": ["1/2"]})
        assert out["sums"] == ["1", "1/2"]

    def test_infinite_p(self):
        out = validate_record("kernel-class", {"m": 2, "M": 4, "p": "inf", "verdict": "Nontrivial",
                                               "theorem": "nontrivial: p = inf"})
        assert out["p"] == "inf"

    def test_rejects_bad_verdict(self):
        with pytest.raises(ValidationError):
            validate_record("kernel-class", {"m": 2, "M": 4, "p": 2.0, "verdict": "Maybe", "theorem": ""})

    def test_command_envelope(self):
        out = validate_record("command", {"command": "gamma", "parameters": {"n": 3},
                                          "payload": {"counts": [1]}, "elapsed_ms": 0.5})
        assert set(out) == {"command", "parameters", "payload", "elapsed_ms"}
