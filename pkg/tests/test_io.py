import json

import numpy as np
import pytest

from vaguespace import io
from vaguespace.errors import SpecFileError
from vaguespace.partition import check_partition, fuzzy_set_of

from conftest import FIXTURES, data_path, fixture_path

MALFORMED = {
    "bad_degree_out_of_range.json": "measures.rows[2].degrees.q",
    "bad_duplicate_x.json": "measures.rows[2].x",
    "bad_variable_unknown_attribute.json": "variables.X.r",
    "bad_missing_omega.json": "omega",
    "bad_bad_tnorm.json": "algebra.tnorm",
    "bad_non_dual_tconorm.json": "algebra",
    "bad_row_unknown_attribute.json": "measures.rows[1].degrees.r",
    "bad_row_missing_degree.json": "measures.rows[0].degrees.q",
    "bad_universe_mismatch.json": "universe",
    "bad_override_unknown_x.json": "negation_overrides[0].x",
    "bad_anchors_not_increasing.json": "measures.anchors.p",
    "bad_anchors_missing_attribute.json": "measures.anchors.q",
    "bad_bad_profile.json": "profile",
    "bad_degree_not_number.json": "measures.rows[0].degrees.p",
    "bad_product_bad_component.json": "components[1].measures.rows[2].degrees.q",
    "bad_process_duplicate_t.json": "steps",
    "bad_not_json.json": "bad_not_json.json:2:3",
}


def test_every_malformed_fixture_is_covered():
    assert {p.name for p in FIXTURES.glob("bad_*.json")} == set(MALFORMED)


@pytest.mark.parametrize("name, field", sorted(MALFORMED.items()))
def test_malformed_fixture_names_field(name, field):
    with pytest.raises(SpecFileError) as info:
        io.load(fixture_path(name))
    assert info.value.field.endswith(field)
    assert str(info.value).startswith(info.value.field)


def test_missing_file():
    with pytest.raises(SpecFileError):
        io.load(fixture_path("does_not_exist.json"))


def test_load_age_fixture():
    model = io.load_space(data_path("age"))
    part = model.partition
    assert part.omega.names == ("Childhood", "Juvenile", "Youth", "Maturity", "Midlife", "Elder", "Senectitude")
    assert part.universe[0] == 0 and part.universe[-1] == 200 and len(part) == 201
    s29 = part.space_at(29)
    assert s29.degrees["Youth"] == pytest.approx(0.6) and s29.degrees["Maturity"] == pytest.approx(0.4)
    assert model.variable("Young adults").values["Midlife"] == 0.5


def test_anchor_interpolation_clamps_and_extrapolates():
    doc = json.loads(fixture_path("valid_pq.json").read_text())
    doc["universe"] = {"min": -1, "max": 3, "step": 0.5}
    doc["measures"] = {"anchors": {"p": [[0, 1], [2, 0]], "q": [[0, 0], [2, 1]]}}
    model = io.space_from_dict(doc)
    fs = fuzzy_set_of(model.partition, "p")
    xs, mu = fs.xs, fs.mu
    np.testing.assert_allclose(mu, np.clip(np.interp(xs, [0, 2], [1, 0]), 0, 1))
    assert mu[0] == 1.0 and mu[-1] == 0.0


def test_interval_fixture_passes_at_25():
    model = io.load_space(data_path("interval"))
    rep = check_partition(model.partition)
    assert rep.valid and rep.regular and rep.normal
    s = model.partition.space_at(25)
    assert s.degrees["[0,40]"] == 1.0 and sum(s.degrees.values()) == 1.0


@pytest.mark.parametrize("name", ["age", "interval", "older_man"])
def test_space_roundtrip(tmp_path, name):
    model = io.load_space(data_path(name))
    out = tmp_path / f"{name}.json"
    io.save_space(model, out)
    again = io.load_space(out)
    assert io.partitions_close(model.partition, again.partition, 1e-12)
    assert again.variables == model.variables
    io.save_space(again, tmp_path / "twice.json")
    assert (tmp_path / "twice.json").read_bytes() == out.read_bytes()


def test_roundtrip_keeps_overrides(tmp_path):
    doc = json.loads(fixture_path("valid_pq.json").read_text())
    doc["negation_overrides"] = [{"x": 1, "degrees": {"p": 0.45}}]
    model = io.space_from_dict(doc)
    io.save_space(model, tmp_path / "o.json")
    again = io.load_space(tmp_path / "o.json")
    assert again.partition.space_at(1).negation_overrides == {"p": 0.45}
    assert again == model


def test_product_roundtrip_keeps_order(tmp_path):
    comps = [io.load_space(data_path(n)) for n in ("older_man", "interval", "age")]
    io.save_product(io.ProductFile(comps), tmp_path / "p.json")
    again = io.load_product(tmp_path / "p.json")
    assert [c.partition.omega.names for c in again.components] == [c.partition.omega.names for c in comps]


def test_process_roundtrip_keeps_order(tmp_path):
    proc = io.load_process(data_path("process"))
    assert proc.process.index == (1950, 2000, 2050)
    io.save_process(proc, tmp_path / "proc.json")
    again = io.load_process(tmp_path / "proc.json")
    assert again.process.index == proc.process.index
    for a, b in zip(proc.process.partitions, again.process.partitions):
        assert io.partitions_close(a, b)


def test_load_space_rejects_other_kinds():
    with pytest.raises(SpecFileError):
        io.load_space(data_path("process"))


def test_csv_format():
    model = io.load_space(data_path("older_man"))
    text = io.fuzzy_set_csv(fuzzy_set_of(model.partition, "Young"))
    assert text == "x,mu\n0,0.8\n"
    assert io.cdf_csv([(-np.inf, 0.0), (0.1 + 0.2, 1 / 3), (np.inf, 1.0)]) == (
        "threshold,degree\n-inf,0\n0.3,0.333333333\ninf,1\n"
    )


def test_unwritable_path(tmp_path):
    model = io.load_space(data_path("older_man"))
    with pytest.raises(SpecFileError):
        io.save_space(model, tmp_path / "missing_dir" / "x.json")
