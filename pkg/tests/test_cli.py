"""Command-line interface: grammar, exit codes, JSON output, golden files."""

import json
from fractions import Fraction
from pathlib import Path

import pytest
from jsonschema import Draft202012Validator

from wittkit.cli import main, parse_field, parse_form, parse_pfister
from wittkit.errors import ParseError, UnknownVariable, ZeroEntry
from wittkit.fields import QQ, LaurentExt, PrimeField, QuadExt, RatFuncExt
from wittkit.forms import format_form, normalized, orth_sum, scale, tensor

GOLDEN = Path(__file__).parent / "golden"
DATA = Path(__file__).parent / "data"
DOCS = Path(__file__).parent.parent / "docs"


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# Field-spec parsing
# ---------------------------------------------------------------------------


class TestFieldSpecs:
    @pytest.mark.parametrize(
        "spec",
        ["Q", "F7", "F13", "Q(sqrt -1)", "Q(sqrt 5)", "Q((x))", "F7((x))((y))", "Q(x)", "F5(t)", "Q((x))((y))"],
    )
    def test_round_trips_through_spec_string(self, spec):
        F = parse_field(spec)
        assert F.spec_string() == spec
        assert parse_field(F.spec_string()).spec_string() == spec

    def test_whitespace_is_tolerated(self):
        assert parse_field(" Q( sqrt -1 ) ").spec_string() == "Q(sqrt -1)"
        assert parse_field("Q(( x ))").spec_string() == "Q((x))"

    def test_structures(self):
        F = parse_field("F7((x))((y))")
        assert isinstance(F, LaurentExt) and F.var == "y"
        assert isinstance(F.base, LaurentExt) and F.base.var == "x"
        assert isinstance(F.base.base, PrimeField) and F.base.base.p == 7
        K = parse_field("Q(sqrt -5)")
        assert isinstance(K, QuadExt) and K.a == Fraction(-5)
        R = parse_field("Q(t)")
        assert isinstance(R, RatFuncExt) and R.var == "t"

    def test_sqrt_argument_is_reduced_to_its_square_class(self):
        assert parse_field("Q(sqrt -4)").a == Fraction(-1)
        assert parse_field("Q(sqrt 8)").a == Fraction(2)

    @pytest.mark.parametrize(
        "bad",
        ["", "R", "F", "Fx", "Q(", "Q((x)", "Q(((x))", "Q(sqrt)", "Q(sqrt 4)", "Q()", "F7((x))((x))", "Q extra"],
    )
    def test_bad_specs_raise_parse_errors(self, bad):
        with pytest.raises(ParseError):
            parse_field(bad)


# ---------------------------------------------------------------------------
# Form-expression grammar
# ---------------------------------------------------------------------------


class TestFormGrammar:
    def test_plain_diagonal(self):
        q = parse_form("<1,-1>", QQ)
        assert q.entries == (Fraction(1), Fraction(-1))

    def test_pfister_expansion(self):
        q = parse_form("pf(1,1)", QQ)
        assert q.entries == (Fraction(1),) * 4

    def test_empty_pfister_is_the_unit_form(self):
        q = parse_form("pf()", QQ)
        assert q.entries == (Fraction(1),)

    def test_scalar_times_form_and_orthogonal_sum(self):
        F = LaurentExt(QQ, "x")
        q = parse_form("<1,-1> + x*<1,1>", F)
        base = parse_form("<1,-1>", F)
        arm = scale(parse_form("<1,1>", F), parse_form("<x>", F).entries[0])
        assert q.entries == orth_sum(base, arm).entries

    def test_form_times_form_is_the_tensor_product(self):
        q = parse_form("<1,2>*<1,3>", QQ)
        assert q.entries == tensor(parse_form("<1,2>", QQ), parse_form("<1,3>", QQ)).entries

    def test_fractions_and_arithmetic_inside_entries(self):
        q = parse_form("<3/2, 1 + 1/2, 2*3, -(2 - 5)>", QQ)
        assert q.entries == (Fraction(3, 2), Fraction(3, 2), Fraction(6), Fraction(3))

    def test_scalar_division_and_powers(self):
        q = parse_form("<6/4, 2^3, 3^-1>", QQ)
        assert q.entries == (Fraction(3, 2), Fraction(8), Fraction(1, 3))

    def test_laurent_variables_with_signed_powers(self):
        F = LaurentExt(QQ, "x")
        q = parse_form("<x^-2, 3*x, 1 - x>", F)
        assert [F.format(e) for e in q.entries] == ["x^-2", "3*x", "1 - x"]

    def test_nested_tower_variables(self):
        F = LaurentExt(LaurentExt(PrimeField(7), "x"), "y")
        q = parse_form("<x*y, y^2, 2>", F)
        assert [F.format(e) for e in q.entries] == ["x*y", "y^2", "2"]

    def test_rational_function_variables(self):
        F = RatFuncExt(QQ, "t")
        q = parse_form("<t, 1/2*t^2, t^-1>", F)
        assert [F.format(e) for e in q.entries] == ["t", "1/2*t^2", "1/t"]

    def test_sqrt_entries_over_a_quadratic_extension(self):
        K = QuadExt(QQ, Fraction(-1))
        q = parse_form("<sqrt(-1), 2 + sqrt(-4)>", K)
        assert q.entries == ((Fraction(0), Fraction(1)), (Fraction(2), Fraction(2)))

    def test_parenthesised_scalar_subexpressions(self):
        q = parse_form("(1+1)*<1, (2+3)*2>", QQ)
        assert q.entries == (Fraction(2), Fraction(20))

    def test_negated_form(self):
        q = parse_form("-<1,-2>", QQ)
        assert q.entries == (Fraction(-1), Fraction(2))

    @pytest.mark.parametrize(
        "text,field",
        [
            ("<1,-1,3>", "Q"),
            ("<1,2,3,4>", "F7"),
            ("<x, 1, -x, 2*x^3>", "Q((x))"),
            ("<y, 3*x*y, 2>", "F7((x))((y))"),
            ("pf(2,3) + <-6>", "Q"),
        ],
    )
    def test_print_parse_round_trip_on_normalized_forms(self, text, field):
        F = parse_field(field)
        q = parse_form(text, F)
        printed = format_form(q)
        assert parse_form(printed, F).entries == normalized(q).entries
        # and printing is a fixed point on normalized forms
        assert format_form(parse_form(printed, F)) == printed

    def test_parse_pfister_returns_the_slots(self):
        spec = parse_pfister("pf(2, -3)", QQ)
        assert spec.slots == (Fraction(2), Fraction(-3))

    def test_parse_pfister_rejects_other_expressions(self):
        with pytest.raises(ParseError):
            parse_pfister("<1,2>", QQ)
        with pytest.raises(ParseError):
            parse_pfister("pf(2) + <1>", QQ)


class TestGrammarErrors:
    def test_zero_entry(self):
        with pytest.raises(ZeroEntry):
            parse_form("<1, 0>", QQ)

    def test_zero_entry_by_arithmetic(self):
        with pytest.raises(ZeroEntry):
            parse_form("<1, 2 - 2>", QQ)

    def test_zero_pfister_slot(self):
        with pytest.raises(ZeroEntry):
            parse_form("pf(1, 0)", QQ)

    def test_scaling_a_form_by_zero(self):
        with pytest.raises(ZeroEntry):
            parse_form("0*<1,1>", QQ)

    def test_unknown_variable_names_the_declared_ones(self):
        with pytest.raises(UnknownVariable, match="declares x"):
            parse_form("<1, z>", LaurentExt(QQ, "x"))

    def test_unknown_variable_over_rationals(self):
        with pytest.raises(UnknownVariable, match="no variables"):
            parse_form("<x>", QQ)

    @pytest.mark.parametrize(
        "bad",
        ["", "<1,>", "<1", "1,2>", "<1,2> +", "<1,2> + 3", "3", "<1/0>", "<<1>>", "pf", "pf(1", "<1,2>*", "sqrt(2)"],
    )
    def test_malformed_expressions(self, bad):
        with pytest.raises(ParseError):
            parse_form(bad, QQ)

    def test_errors_carry_column_positions(self):
        with pytest.raises(ParseError, match="column 5"):
            parse_form("<1, ?>", QQ)
        with pytest.raises(ZeroEntry, match="column 5"):
            parse_form("<1, 0>", QQ)

    def test_forms_cannot_be_subtracted(self):
        with pytest.raises(ParseError, match="negate"):
            parse_form("<1,1> - <1>", QQ)

    def test_sqrt_requires_a_quadratic_extension(self):
        with pytest.raises(ParseError, match="quadratic extension"):
            parse_form("<sqrt(2)>", QQ)

    def test_sqrt_of_a_value_outside_the_field(self):
        with pytest.raises(ParseError, match="does not lie in"):
            parse_form("<sqrt(2)>", QuadExt(QQ, Fraction(-1)))


# ---------------------------------------------------------------------------
# Exit codes
# ---------------------------------------------------------------------------


class TestExitCodes:
    def test_decided_yes_and_no_exit_zero(self, capsys):
        assert run(capsys, ["isotropy", "<1,-1>"])[0] == 0
        assert run(capsys, ["isotropy", "<1,1>"])[0] == 0

    def test_expect_match_and_mismatch(self, capsys):
        assert run(capsys, ["isotropy", "<1,1>", "--expect", "no"])[0] == 0
        assert run(capsys, ["isotropy", "<1,1>", "--expect", "yes"])[0] == 1
        assert run(capsys, ["isometric", "<1,1>", "<2,2>", "--expect", "no"])[0] == 1

    def test_unknown_verdict_exits_two(self, capsys):
        code, out, _ = run(capsys, ["neighbor", "<1,2,5,7,11>", "--budget", "2"])
        assert code == 2
        assert "Unknown" in out

    def test_expect_unknown_matches(self, capsys):
        assert run(capsys, ["neighbor", "<1,2,5,7,11>", "--budget", "2", "--expect", "unknown"])[0] == 0

    @pytest.mark.parametrize(
        "argv",
        [
            ["isotropy", "<1,0>"],
            ["isotropy", "<1,z>", "--field", "Q((x))"],
            ["isotropy", "<1,"],
            ["isotropy", "<1,1>", "--field", "Q((("],
            ["divide", "--q", "<1,1>", "--by", "<1,1>"],
            ["verify", "no-such-suite"],
            ["no-such-verb"],
            [],
            ["isotropy"],
        ],
    )
    def test_usage_errors_exit_sixty_four(self, capsys, argv):
        assert run(capsys, argv)[0] == 64

    def test_unsupported_field_for_a_suite_exits_sixty_four(self, capsys):
        code, _, err = run(capsys, ["verify", "index-transfer", "--field", "F3", "--samples", "2"])
        assert code == 64
        assert "error" in err

    def test_verify_pass_exits_zero(self, capsys):
        assert run(capsys, ["verify", "springer", "--samples", "3"])[0] == 0

    def test_help_exits_zero(self, capsys):
        assert run(capsys, ["--help"])[0] == 0
        assert run(capsys, ["witt", "--help"])[0] == 0


# ---------------------------------------------------------------------------
# Outputs
# ---------------------------------------------------------------------------


class TestOutputs:
    def test_witt_human_output(self, capsys):
        _, out, _ = run(capsys, ["witt", "<1,-1> + x*<1,1>", "--field", "Q((x))"])
        assert out.splitlines() == ["index 1", "anisotropic part <x,x>"]

    def test_witt_hyperbolic_reports_no_kernel(self, capsys):
        _, out, _ = run(capsys, ["witt", "<1,-1,2,-2>"])
        assert out.splitlines() == ["index 2", "anisotropic part none (hyperbolic)"]

    def test_isotropy_json_payload(self, capsys):
        _, out, _ = run(capsys, ["isotropy", "<1,-1,3>", "--json"])
        doc = json.loads(out)
        assert doc == {
            "verb": "isotropy",
            "field": "Q",
            "form": "<1,-1,3>",
            "isotropic": True,
        }

    def test_subform_reports_a_complement(self, capsys):
        _, out, _ = run(capsys, ["subform", "<1,1>", "<1,1,1>", "--json"])
        doc = json.loads(out)
        assert doc["is_subform"] is True
        assert doc["complement"] == "<1>"

    def test_output_forms_use_square_free_canonical_entries(self, capsys):
        _, out, _ = run(capsys, ["repl-free-eval", "<8, 9/2, 50>", "--json"])
        doc = json.loads(out)
        assert doc["form"] == "<2,2,2>"
        assert doc["determinant"] == "2"
        assert doc["discriminant"] == "-2"

    def test_decision_payloads_match_the_schema(self, capsys):
        schema = json.loads((DOCS / "decision.schema.json").read_text())
        validator = Draft202012Validator(schema)
        for argv in (
            ["pfister", "<2,2,2,2>", "--json"],
            ["pfister", "<1,2,3,4,5>", "--json"],
            ["neighbor", "<1,2,5,7,11>", "--budget", "2", "--json"],
            ["hyp-over", "--q", "<1,1,1,1>", "--p", "<1,1>", "--json"],
            ["divide", "--q", "pf(2,3)", "--by", "pf(2)", "--json"],
        ):
            _, out, _ = run(capsys, argv)
            validator.validate(json.loads(out)["decision"])

    def test_suite_reports_match_the_schema(self, capsys):
        schema = json.loads((DOCS / "suite_report.schema.json").read_text())
        validator = Draft202012Validator(schema)
        _, out, _ = run(capsys, ["verify", "springer", "local-global", "--samples", "3", "--json"])
        doc = json.loads(out)
        for report in doc["reports"]:
            validator.validate(report)

    def test_verify_json_excludes_wall_clock_time(self, capsys):
        _, out, _ = run(capsys, ["verify", "springer", "--samples", "3", "--json"])
        assert "elapsed" not in out


# ---------------------------------------------------------------------------
# Corpus replay
# ---------------------------------------------------------------------------


class TestCorpus:
    def test_bundled_corpus_passes_with_no_skips(self, capsys):
        code, out, _ = run(capsys, ["verify", "springer", "--samples", "0", "--corpus", str(DATA / "corpus.jsonl"), "--json"])
        assert code == 0
        doc = json.loads(out)
        corpus = [r for r in doc["reports"] if r["suite"] == "corpus"][0]
        assert corpus["instances"] == 10
        assert corpus["skipped"] == 0
        assert corpus["violations"] == []

    def test_corpus_with_a_bad_line_is_a_usage_error(self, capsys, tmp_path):
        bad = tmp_path / "bad.jsonl"
        bad.write_text('"<1,2>"\nnot json\n')
        assert run(capsys, ["verify", "springer", "--samples", "0", "--corpus", str(bad)])[0] == 64

    def test_missing_corpus_file_is_a_usage_error(self, capsys, tmp_path):
        assert run(capsys, ["verify", "--samples", "0", "--corpus", str(tmp_path / "absent.jsonl")])[0] == 64


# ---------------------------------------------------------------------------
# Golden files: documented invocations, byte-exact at seed 0
# ---------------------------------------------------------------------------


class TestGoldenFiles:
    @pytest.mark.parametrize(
        "name,argv",
        [
            ("witt_laurent.json", ["witt", "<1,-1> + x*<1,1>", "--field", "Q((x))", "--json"]),
            ("hyp_over_rationals.json", ["hyp-over", "--field", "Q", "--q", "<1,1,1,1>", "--p", "<1,1>", "--json"]),
            ("verify_hauptsatz.json", ["verify", "hauptsatz", "--samples", "20", "--json"]),
        ],
    )
    def test_documented_invocations_are_byte_exact(self, capsys, name, argv):
        code, out, _ = run(capsys, argv)
        assert code == 0
        assert out == (GOLDEN / name).read_text()

    def test_golden_values(self):
        witt = json.loads((GOLDEN / "witt_laurent.json").read_text())
        assert witt["index"] == 1
        assert witt["anisotropic_part"] == "<x,x>"
        hyp = json.loads((GOLDEN / "hyp_over_rationals.json").read_text())
        assert hyp["decision"]["verdict"] == "Yes"
        assert hyp["decision"]["certificate"]["kind"] == "QuadExtDivisibility"
        ver = json.loads((GOLDEN / "verify_hauptsatz.json").read_text())
        assert ver["violations"] == 0
        assert ver["reports"][0]["instances"] == 20
