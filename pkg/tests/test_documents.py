import json

import pytest
from hypothesis import given

from conftest import raw_systems
from setpairs.constructions import catalog
from setpairs.documents import (
    DocumentError,
    partition_from_text,
    partition_to_text,
    read_sps,
    sps_from_text,
    sps_to_text,
    write_text,
)
from setpairs.duality import BICLIQUE, CLIQUE, EdgePartition, dualize


@given(raw_systems())
def test_sps_round_trip(sps):
    text = sps_to_text(sps, {"construction": "random"})
    back, meta = sps_from_text(text)
    assert back == sps and meta == {"construction": "random"}
    assert sps_to_text(back, meta) == text


def test_field_order_and_layout():
    text = sps_to_text(catalog("w22").system, {"b": 1, "a": 2})
    assert list(json.loads(text)) == ["format_version", "ground_set_size", "pairs", "metadata"]
    assert '    {"A": [0, 1], "B": [2, 4]},\n' in text
    assert text.endswith("}\n") and "\r" not in text
    assert '"metadata": {"a": 2, "b": 1}' in text


def test_without_metadata():
    text = sps_to_text(catalog("w22").system)
    assert "metadata" not in text
    assert sps_from_text(text)[1] == {}


@pytest.mark.parametrize("bad", [
    "",
    "[1, 2]",
    '{"format_version": 2, "ground_set_size": 3, "pairs": []}',
    '{"format_version": 1, "ground_set_size": -1, "pairs": []}',
    '{"format_version": 1, "ground_set_size": 3, "pairs": {}}',
    '{"format_version": 1, "ground_set_size": 3, "pairs": [{"A": [0]}]}',
    '{"format_version": 1, "ground_set_size": 3, "pairs": [{"A": [1, 0], "B": [2]}]}',
    '{"format_version": 1, "ground_set_size": 3, "pairs": [{"A": [0, 0], "B": [2]}]}',
    '{"format_version": 1, "ground_set_size": 3, "pairs": [{"A": [0], "B": [3]}]}',
    '{"format_version": 1, "ground_set_size": 3, "pairs": [{"A": ["0"], "B": [2]}]}',
    '{"format_version": 1, "ground_set_size": true, "pairs": []}',
])
def test_malformed_rejected(bad):
    with pytest.raises(DocumentError):
        sps_from_text(bad)


def test_file_io(tmp_path):
    path = tmp_path / "w.json"
    write_text(path, sps_to_text(catalog("w23").system))
    assert read_sps(path)[0] == catalog("w23").system
    assert path.read_bytes().count(b"\r") == 0
    with pytest.raises(DocumentError):
        read_sps(tmp_path / "missing.json")


@pytest.mark.parametrize("name,kind", [("w22", BICLIQUE), ("mod8_n3", CLIQUE), ("pg23_diff_n4", CLIQUE)])
def test_partition_round_trip(name, kind):
    p = dualize(catalog(name).system, kind)
    text = partition_to_text(p)
    assert partition_from_text(text) == p
    assert list(json.loads(text)) == ["format_version", "m", "kind", "parts", "width"]


def test_partition_tokens():
    p = EdgePartition(2, BICLIQUE, [{0, 3}, {1, 2}], 1)
    assert json.loads(partition_to_text(p))["parts"] == [["x0", "y1"], ["x1", "y0"]]
    empty = EdgePartition(0, BICLIQUE, [], 0)
    assert partition_from_text(partition_to_text(empty)) == empty


@pytest.mark.parametrize("bad", [
    "{",
    '{"format_version": 1, "m": 2, "kind": "other", "parts": [], "width": 0}',
    '{"format_version": 1, "m": 2, "kind": "biclique_of_B2m", "parts": [["x5"]], "width": 1}',
    '{"format_version": 1, "m": 2, "kind": "biclique_of_B2m", "parts": [["q1"]], "width": 1}',
])
def test_partition_malformed(bad):
    with pytest.raises(DocumentError):
        partition_from_text(bad)
