"""
Tests for the JSON document layer.
"""

import pytest

from loop_factor.documents import (
    check_report_document,
    dumps,
    identity_document,
    loads,
    loop_from_document,
    loop_to_document,
    read_document,
    result_from_document,
    rf_from_json,
    rf_text,
    rf_to_json,
    spec_from_json,
    spec_to_json,
    specs_from_document,
    specs_to_document,
)
from loop_factor.errors import DimensionMismatch, ParseError
from loop_factor.exactnum import I_UNIT, Polynomial, RationalFunction, gq
from loop_factor.loops import GroupContext, TwistContext, membership, pole_spectrum, symmetry_check
from loop_factor.simplefactor import SimpleFactorSpec, TwistedQSpec, materialize


class TestParsing:
    """JSON text and field errors."""

    def test_malformed_json(self):
        with pytest.raises(ParseError) as excinfo:
            loads('{"group": "so",\n "n": }')
        assert excinfo.value.exit_code == 3

    def test_missing_file(self, tmp_path):
        with pytest.raises(ParseError):
            read_document(tmp_path / "absent.json")

    def test_dumps_is_stable(self):
        doc = identity_document(GroupContext.so(3))
        assert dumps(doc) == dumps(loads(dumps(doc)))
        assert dumps(doc).endswith("\n")

    def test_missing_field_names_path(self):
        with pytest.raises(ParseError) as excinfo:
            loop_from_document({"group": "so", "n": 2})
        assert "entries" in str(excinfo.value)

    def test_unknown_group(self):
        with pytest.raises(ParseError):
            loop_from_document({"group": "sl", "n": 2, "entries": []})

    def test_wrong_row_count(self):
        with pytest.raises(DimensionMismatch):
            loop_from_document({"group": "so", "n": 2, "entries": [[]]})

    def test_bad_scalar(self):
        with pytest.raises(ParseError):
            rf_from_json({"num": ["1/0"]}, "$")


class TestEntries:
    """Rational-function entries."""

    def test_scale_folds_into_numerator(self):
        f = rf_from_json({"num": ["1"], "den": [{"root": "i", "mult": 1}], "scale": "2"}, "$")
        assert f == RationalFunction.build(Polynomial.constant(2), [(I_UNIT, 1)])

    def test_entry_shape(self):
        doc = rf_to_json(RationalFunction.mobius(gq(0, 1)))
        assert doc == {"num": ["-i", "1"], "den": [{"root": "-i", "mult": 1}], "scale": "1"}

    def test_rf_text(self):
        assert rf_text(RationalFunction.constant(3)) == "(3)"
        assert rf_text(None) is None
        assert "lam - (-i)" in rf_text(RationalFunction.mobius(gq(0, 1)))


class TestLoops:
    """Loop documents."""

    def test_loop_round_trip(self, alpha, sampler, so3):
        g = materialize(sampler.simple_spec(so3, alpha))
        parsed = loop_from_document(loads(dumps(loop_to_document(g, so3))))
        assert parsed.loop == g
        assert parsed.group == so3
        assert parsed.twist is None

    def test_twist_header(self):
        doc = identity_document(GroupContext.so(3))
        doc["twist"] = {"flavor": "so-grassmannian", "k": 1}
        parsed = loop_from_document(doc)
        assert parsed.twist == TwistContext.so_grassmannian(3, 1)

    def test_unknown_twist(self):
        doc = identity_document(GroupContext.so(3))
        doc["twist"] = {"flavor": "sp-u"}
        with pytest.raises(ParseError):
            loop_from_document(doc)

    def test_csp_size_is_matrix_size(self):
        doc = identity_document(GroupContext.csp(2))
        assert doc["n"] == 4
        assert loop_from_document(doc).group == GroupContext.csp(2)


class TestSpecs:
    """Factor specifications."""

    def test_spec_round_trip(self, alpha, sampler):
        spec = SimpleFactorSpec.g2_pair(alpha, *sampler.g2_pair_lines())
        assert spec_from_json(spec_to_json(spec), 7) == spec

    def test_so_pair_round_trip(self, sampler):
        twist = TwistContext.so_u(2)
        spec = SimpleFactorSpec.so_pair(gq(0, 1), *sampler.so_u_pair_lines(twist))
        doc = spec_to_json(spec)
        assert doc["variant"] == "SOPair"
        assert len(doc["data"]) == 2
        assert spec_from_json(doc, 4) == spec

    def test_q_spec_needs_twist(self, alpha, sampler, so3):
        q = TwistedQSpec(sampler.simple_spec(so3, gq(1, 1)), TwistContext.so_grassmannian(3, 1))
        with pytest.raises(ParseError):
            spec_from_json(spec_to_json(q), 3)

    def test_q_spec_round_trip(self, sampler, so3):
        twist = TwistContext.so_grassmannian(3, 1)
        q = TwistedQSpec(sampler.simple_spec(so3, gq(1, 1)), twist, inverted=True)
        doc = specs_to_document([q], so3, twist)
        group, parsed_twist, factors = specs_from_document(loads(dumps(doc)))
        assert group == so3
        assert parsed_twist == twist
        assert factors == [q]

    def test_wrong_subspace_count(self, alpha):
        doc = {"variant": "G2Pair", "alpha": "1+i", "data": [[["1", "0", "0", "0", "0", "0", "0"]]]}
        with pytest.raises(ParseError):
            spec_from_json(doc, 7)

    def test_unknown_variant(self):
        with pytest.raises(ParseError):
            spec_from_json({"variant": "SU", "alpha": "i", "data": [[]]}, 3)

    def test_result_product(self, alpha, sampler, so3):
        specs = [sampler.simple_spec(so3, alpha)]
        result = result_from_document(specs_to_document(specs, so3))
        assert result.product() == materialize(specs[0])


class TestCheckReport:
    """The check report document."""

    def test_report_fields(self, alpha, sampler, so3):
        g = materialize(sampler.simple_spec(so3, alpha))
        doc = check_report_document(
            so3, None, membership(g, so3), symmetry_check(g, so3), pole_spectrum(g)
        )
        assert doc["ok"] is True
        assert doc["twisted"] is None
        assert doc["reason"] is None
        assert doc["poles"][0] == {"pole": "1+2*i", "k": 1, "rank": 1}
