"""
Tests for reporter module.

Tests output formatting for terminal, JSON and markdown reporters.
"""

import io
import json

import pytest

from loop_factor.documents import identity_document, specs_to_document
from loop_factor.exactnum import gq
from loop_factor.formsla import Subspace
from loop_factor.loops import GroupContext
from loop_factor.reporter import (
    JsonReporter,
    MarkdownReporter,
    TerminalReporter,
    document_kind,
    get_reporter,
)
from loop_factor.simplefactor import SimpleFactorSpec


@pytest.fixture
def check_doc():
    return {
        "group": "so",
        "n": 3,
        "twist": None,
        "member": True,
        "reason": None,
        "multiplier": None,
        "normalized": True,
        "real": False,
        "twisted": None,
        "poles": [{"pole": "1+2*i", "k": 1, "rank": 1}],
        "ok": False,
    }


@pytest.fixture
def factors_doc():
    line = Subspace.line((1, gq(0, 1), 0))
    spec = SimpleFactorSpec.so(gq(1, 2), line)
    doc = specs_to_document([spec], GroupContext.so(3))
    doc["residual"] = "identity"
    doc["steps"] = [
        {
            "pole": "1+2*i",
            "branch": "so",
            "before": [1, 1],
            "after": [0, 0],
            "det_zero_before": 0,
            "det_zero_after": 0,
            "factor": "SO(1+2*i; dim 1)",
            "decreased": True,
        }
    ]
    return doc


class TestGetReporter:
    """Tests for reporter factory function."""

    def test_terminal_reporter(self):
        assert isinstance(get_reporter("terminal"), TerminalReporter)

    def test_json_reporter(self):
        assert isinstance(get_reporter("json"), JsonReporter)

    def test_markdown_reporter(self):
        assert isinstance(get_reporter("markdown"), MarkdownReporter)

    def test_unknown_format_returns_json(self):
        assert isinstance(get_reporter("csv"), JsonReporter)

    def test_verbose_flag_passed(self):
        assert get_reporter("terminal", verbose=False).verbose is False


class TestDocumentKind:
    def test_kinds(self, check_doc, factors_doc):
        assert document_kind(check_doc) == "check"
        assert document_kind(factors_doc) == "result"
        assert document_kind(identity_document(GroupContext.so(2))) == "loop"
        assert document_kind({"sign": 1}) == "other"


class TestJsonReporter:
    """Tests for JSON output."""

    def test_outputs_valid_json(self, factors_doc):
        output = io.StringIO()
        JsonReporter().report(factors_doc, output)
        assert json.loads(output.getvalue()) == factors_doc

    def test_output_is_byte_stable(self, check_doc):
        first, second = io.StringIO(), io.StringIO()
        JsonReporter().report(check_doc, first)
        JsonReporter().report(dict(check_doc), second)
        assert first.getvalue() == second.getvalue()


class TestTerminalReporter:
    """Tests for terminal output."""

    def test_check_report(self, check_doc):
        output = io.StringIO()
        TerminalReporter().report(check_doc, output)
        text = output.getvalue()
        assert "Check report: so (size 3)" in text
        assert "1+2*i: order 1, leading rank 1" in text

    def test_factor_report_with_steps(self, factors_doc):
        output = io.StringIO()
        TerminalReporter(verbose=True).report(factors_doc, output)
        text = output.getvalue()
        assert "Factors (1):" in text
        assert "SO(1+2*i; dim 1)" in text
        assert "Reduction steps:" in text

    def test_quiet_hides_steps(self, factors_doc):
        output = io.StringIO()
        TerminalReporter(verbose=False).report(factors_doc, output)
        assert "Reduction steps:" not in output.getvalue()

    def test_loop_report(self):
        output = io.StringIO()
        TerminalReporter().report(identity_document(GroupContext.so(2)), output)
        assert "row 0: poles none" in output.getvalue()


class TestMarkdownReporter:
    """Tests for markdown output."""

    def test_check_table(self, check_doc):
        output = io.StringIO()
        MarkdownReporter().report(check_doc, output)
        text = output.getvalue()
        assert text.startswith("# Check report")
        assert "| `1+2*i` | 1 | 1 |" in text

    def test_factor_list(self, factors_doc):
        output = io.StringIO()
        MarkdownReporter().report(factors_doc, output)
        text = output.getvalue()
        assert "1. `SO(1+2*i; dim 1)`" in text
        assert "## Reduction steps" in text

    def test_other_documents_as_json(self):
        output = io.StringIO()
        MarkdownReporter().report({"sign": -1, "unit": 5}, output)
        assert "```json" in output.getvalue()
