import json
from fractions import Fraction

import pytest

import mulseries as ms
from mulseries.errors import InputError


class TestParseRational:
    @pytest.mark.parametrize(
        "text,expected",
        [("5/6", Fraction(5, 6)), ("2", Fraction(2)), (3, Fraction(3)),
         ("-1/2", Fraction(-1, 2)), (" 7 / 3 ", Fraction(7, 3))],
    )
    def test_accepted(self, text, expected):
        assert ms.parse_rational(text) == expected

    @pytest.mark.parametrize("text", ["0.5", "1e3", "five", "1/0", "", "1/2/3"])
    def test_rejected(self, text):
        with pytest.raises(InputError):
            ms.parse_rational(text)


class TestParseCorpusSpec:
    def test_accepted(self):
        assert ms.parse_corpus_spec("b0<=4,bg<=40") == (4, 40)
        assert ms.parse_corpus_spec(" b0 <= 2 , bg <= 10 ") == (2, 10)

    @pytest.mark.parametrize("text", ["b0<=4", "bg<=40,b0<=4", "b0=4,bg=40", ""])
    def test_rejected(self, text):
        with pytest.raises(InputError):
            ms.parse_corpus_spec(text)


class TestModelFromSource:
    def test_contact_and_proximity(self):
        by_contact = ms.model_from_source({"maximal_contact": [2, 3, 6]})
        by_chain = ms.model_from_source(
            {"proximity": {"n": 3, "satellite": {"3": 1}}}
        )
        assert by_contact.proximity == by_chain.proximity

    @pytest.mark.parametrize(
        "data",
        [
            {},
            {"maximal_contact": [2, 3, 6], "proximity": {"n": 1}},
            {"maximal_contact": []},
            {"proximity": {"satellite": {}}},
        ],
    )
    def test_rejected(self, data):
        with pytest.raises(InputError):
            ms.model_from_source(data)

    def test_explicit_model_is_gated(self):
        data = {"model": {"n": 3, "satellite": {"3": 1}, "valuation_divisor": [2, 3, 7]}}
        with pytest.raises(InputError):
            ms.model_from_source(data)
        tampered = ms.model_from_source(data, allow_explicit=True)
        assert tampered.valuation_divisor == (2, 3, 7)
        assert tampered.canonical == (1, 2, 4)  # untouched fields stay derived

    def test_explicit_model_length_check(self):
        data = {"model": {"n": 3, "valuation_divisor": [1, 2]}}
        with pytest.raises(InputError):
            ms.model_from_source(data, allow_explicit=True)


class TestLoadModelFile:
    def test_roundtrip(self, tmp_path):
        path = tmp_path / "model.json"
        path.write_text(json.dumps({"maximal_contact": [2, 3, 7]}))
        model = ms.load_model_file(path)
        assert model.contact.values == (2, 3, 7)

    def test_missing_file(self, tmp_path):
        with pytest.raises(InputError):
            ms.load_model_file(tmp_path / "absent.json")

    def test_bad_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        with pytest.raises(InputError):
            ms.load_model_file(path)

    def test_non_object(self, tmp_path):
        path = tmp_path / "list.json"
        path.write_text("[1, 2]")
        with pytest.raises(InputError):
            ms.load_model_file(path)
