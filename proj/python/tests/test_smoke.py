# Copyright 2026 The Datadesc Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import os
import pathlib

import pytest

import datadesc

FIXTURES = pathlib.Path(os.environ.get(
    "DATADESC_FIXTURES", pathlib.Path(__file__).resolve().parents[2] / "tests" / "fixtures"))


def fixture(name):
    return (FIXTURES / name).read_text(encoding="utf-8")


def test_check_melanoma_has_only_warning():
    codes = [d["code"] for d in datadesc.check(fixture("melanoma.ddesc"))]
    assert codes == ["W020"]


def test_check_with_data_reports_rule_type_error():
    codes = {d["code"] for d in datadesc.check(fixture("melanoma.ddesc"), fixture("skin_sample.csv"))}
    assert "E031" in codes


def test_load_model_values():
    model = datadesc.load(fixture("melanoma.ddesc"))
    assert model["metadata"]["version"] == "v0001"
    sizes = [i["size"] for i in model["composition"]["instances"]]
    assert sizes == [33126]


def test_broken_document_raises_with_diagnostics():
    with pytest.raises(datadesc.DescriptionError) as err:
        datadesc.load('Metadata:\n  Title: "x\n')
    assert err.value.diagnostics[0]["code"].startswith("E")


def test_format_round_trip():
    text = datadesc.format(fixture("gender_inclusive_coreference.ddesc"))
    assert datadesc.format(text) == text
    assert datadesc.load(text) == datadesc.load(fixture("gender_inclusive_coreference.ddesc"))


def test_docgen():
    html = datadesc.to_html(fixture("melanoma.ddesc"))
    assert "<title>2020 SIIM-ISIC Melanoma Classification ...</title>" in html
    assert "| ageGroup | Categorical |" in datadesc.to_markdown(fixture("melanoma.ddesc"))


def test_completeness_and_diff():
    report = datadesc.completeness(fixture("movie_reviews.ddesc"))
    missing = [m for s in report["sections"] for m in s["missing_items"]]
    assert "provenance.gathering.demographics" in missing
    assert datadesc.diff(fixture("melanoma.ddesc"), fixture("melanoma.ddesc"))["entries"] == []


def test_scaffold_is_valid():
    text = datadesc.scaffold("a,b\n1,x\n2,y\n3,x\n", "Tiny", "tiny")
    assert not [d for d in datadesc.check(text) if d["severity"] == "error"]
    assert "Size: 3" in text


def test_registry_search():
    reg = datadesc.Registry()
    for name in ("melanoma.ddesc", "gender_inclusive_coreference.ddesc", "movie_reviews.ddesc"):
        reg.add(fixture(name))
    assert len(reg) == 3
    assert [m["title"] for m in reg.search("task=Image-classification")] == [
        "2020 SIIM-ISIC Melanoma Classification ..."]
    assert len(reg.search("issue_type=Bias")) == 2
    with pytest.raises(datadesc.DescriptionError) as err:
        reg.search("bogus=1")
    assert err.value.diagnostics[0]["code"] == "E050"
