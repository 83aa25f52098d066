import pytest
from hypothesis import given, strategies as st

from afcm.errors import MissingAttributeError, UnknownAttributeError, UnknownValueError
from afcm.fuzzy import (
    DEFAULT_LABEL_SCALE,
    LabelBand,
    OutputLabelScale,
    encode_record,
    evenly_spaced_encoding,
    label_output,
)


class TestEvenSpacing:
    def test_three_levels(self):
        assert evenly_spaced_encoding(("no", "occasionally", "yes")) == {"no": 0.0, "occasionally": 0.5, "yes": 1.0}

    def test_five_levels(self):
        enc = evenly_spaced_encoding(("a", "b", "c", "d", "e"))
        assert list(enc.values()) == [0.0, 0.25, 0.5, 0.75, 1.0]

    def test_single_level_rejected(self):
        with pytest.raises(ValueError):
            evenly_spaced_encoding(("only",))


class TestEncodeRecord:
    def test_cad_examples(self, cad_model):
        tables = cad_model.encoding_tables()
        record = {c.id: "no" for c in cad_model.inputs}
        record.update({"A15": "occasionally", "A1": "yes", "A31": "definitely abnormal"})
        crisp = encode_record(record, tables)
        assert crisp["A15"] == 0.5
        assert crisp["A1"] == 1.0
        assert crisp["A31"] == 1.0
        assert crisp["A2"] == 0.0

    def test_unknown_value_names_attribute(self, cad_model, benign_record):
        record = dict(benign_record)
        record["A20"] = "maybe"
        with pytest.raises(UnknownValueError, match="A20"):
            encode_record(record, cad_model.encoding_tables())

    def test_missing_attribute_named(self, cad_model, benign_record):
        record = dict(benign_record)
        del record["A7"]
        with pytest.raises(MissingAttributeError, match="A7"):
            encode_record(record, cad_model.encoding_tables())

    def test_undeclared_attribute_named(self, cad_model, benign_record):
        record = dict(benign_record)
        record["A99"] = "yes"
        with pytest.raises(UnknownAttributeError, match="A99"):
            encode_record(record, cad_model.encoding_tables())

    def test_totality_and_monotonicity(self, cad_model, benign_record):
        tables = cad_model.encoding_tables()
        for attr, table in tables.items():
            previous = None
            for value in table:
                record = dict(benign_record)
                record[attr] = value
                crisp = encode_record(record, tables)[attr]
                assert 0.0 <= crisp <= 1.0
                if previous is not None:
                    assert crisp > previous
                previous = crisp


class TestLabelOutput:
    def test_paper_example(self):
        assert label_output(0.85, DEFAULT_LABEL_SCALE) == "Definitely Abnormal"

    def test_floor(self):
        assert label_output(0.0, DEFAULT_LABEL_SCALE) == "Normal"

    def test_boundary_goes_to_lower_band(self):
        assert label_output(0.2, DEFAULT_LABEL_SCALE) == "Normal"
        assert label_output(0.4, DEFAULT_LABEL_SCALE) == "Doubtful"

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            label_output(1.5, DEFAULT_LABEL_SCALE)
        with pytest.raises(ValueError):
            label_output(-0.1, DEFAULT_LABEL_SCALE)

    @given(st.floats(min_value=0, max_value=1, allow_nan=False))
    def test_total_over_unit_interval(self, score):
        assert label_output(score, DEFAULT_LABEL_SCALE) in {b.label for b in DEFAULT_LABEL_SCALE.bands}

    @given(
        st.floats(min_value=0, max_value=1, allow_nan=False),
        st.floats(min_value=0, max_value=1, allow_nan=False),
    )
    def test_monotone_in_score(self, a, b):
        lo, hi = min(a, b), max(a, b)
        order = [band.label for band in DEFAULT_LABEL_SCALE.bands]
        assert order.index(label_output(lo, DEFAULT_LABEL_SCALE)) <= order.index(label_output(hi, DEFAULT_LABEL_SCALE))

    def test_bounds_must_increase_and_end_at_one(self):
        with pytest.raises(ValueError):
            OutputLabelScale(bands=(LabelBand(upto=0.5, label="a"), LabelBand(upto=0.4, label="b")))
        with pytest.raises(ValueError):
            OutputLabelScale(bands=(LabelBand(upto=0.5, label="a"),))
