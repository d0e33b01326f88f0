import json
import math
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import matrigid
from matrigid import Framework, MatrixNormedSpace, NormSpec, ProductNormSpace, analyze
from matrigid.config import ToleranceConfig
from matrigid.exceptions import DegenerateFrameworkError, FileFormatError
from matrigid.fileformat import (
    dumps,
    framework_to_dict,
    load_framework,
    load_graph,
    loads_framework,
    report_document,
)

DATA = Path(matrigid.__file__).parent / "data"

SPACES = [
    MatrixNormedSpace.make("complex", 2, "hermitian", NormSpec.schatten(math.inf)),
    MatrixNormedSpace.make("real", 3, "full", NormSpec.kyfan(2)),
    ProductNormSpace.hypercylindrical(),
    ProductNormSpace.sup(2),
    ProductNormSpace.euclidean(3),
]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(0, len(SPACES) - 1))
def test_round_trip_is_bit_identical(seed, which):
    rng = np.random.default_rng(seed)
    space = SPACES[which]
    P = rng.standard_normal((4, space.dim)) * 10.0 ** rng.integers(-8, 8)
    fw = Framework(space, ["a", "b", 3, 4], [("a", "b"), ("b", 3), (3, 4)], P)
    text = dumps(framework_to_dict(fw, tolerances={"gap_tol": 1e-7}))
    back = loads_framework(text)
    assert np.array_equal(back.framework.P, fw.P)
    assert back.framework.edges == fw.edges
    assert back.tolerances == {"gap_tol": 1e-7}
    assert back.tolerance_config().gap_tol == 1e-7
    assert dumps(framework_to_dict(back.framework, tolerances=back.tolerances)) == text


def test_fixtures_load():
    for name in ("k6e_cyl", "k6e_trace", "k7_hcyl", "cone_edge"):
        ff = load_framework(DATA / f"{name}.json")
        assert len(ff.framework.vertices) >= 3
    assert load_framework(DATA / "k7_hcyl.json").certificate["verdict"] == "MinimallyRigid"


def test_matrix_form_positions():
    doc = {
        "space": {"type": "matrix", "field": "complex", "n": 2, "kind": "hermitian",
                  "norm": {"variant": "schatten", "q": 1}},
        "vertices": [1, 2],
        "edges": [[1, 2]],
        "placement": {"1": {"re": [[1, 0], [0, 0]]}, "2": {"re": [[0, 1], [1, 0]], "im": [[0, -1], [1, 0]]}},
    }
    fw = loads_framework(json.dumps(doc)).framework
    np.testing.assert_allclose(fw.space.matrix(fw.P[1]), [[0, 1 - 1j], [1 + 1j, 0]])


def _doc_text():
    doc = json.loads((DATA / "cone_edge.json").read_text())
    return doc, json.dumps(doc, indent=2)


def _line_of(text, needle):
    return next(i for i, line in enumerate(text.splitlines(), start=1) if needle in line)


def test_schema_error_carries_line():
    doc, _ = _doc_text()
    doc["space"]["norm"]["variant"] = "bogus"
    text = json.dumps(doc, indent=2)
    with pytest.raises(FileFormatError) as info:
        loads_framework(text)
    assert info.value.line == _line_of(text, '"bogus"')
    assert str(info.value).startswith(f"line {info.value.line}: ")


def test_semantic_errors_carry_line():
    doc, _ = _doc_text()
    doc["edges"].append([1, 9])
    text = json.dumps(doc, indent=2)
    with pytest.raises(FileFormatError, match="undeclared") as info:
        loads_framework(text)
    assert info.value.line is not None
    doc, _ = _doc_text()
    doc["placement"]["2"] = [0, 1]
    text = json.dumps(doc, indent=2)
    with pytest.raises(FileFormatError, match="coordinates"):
        loads_framework(text)
    doc, _ = _doc_text()
    doc["edges"].append([2, 1])
    with pytest.raises(FileFormatError, match="duplicate"):
        loads_framework(json.dumps(doc))


def test_json_syntax_error_line():
    with pytest.raises(FileFormatError) as info:
        loads_framework('{\n  "space": {},\n  "vertices": [1,,2]\n}')
    assert info.value.line == 3


def test_coincident_adjacent_vertices_is_degenerate():
    doc, _ = _doc_text()
    doc["placement"]["2"] = doc["placement"]["1"]
    with pytest.raises(DegenerateFrameworkError):
        loads_framework(json.dumps(doc))


def test_report_document_and_graph_files(tmp_path):
    fw = load_framework(DATA / "k6e_trace.json").framework
    tol = ToleranceConfig(rank_rel_tol=1e-8)
    doc = report_document(analyze(fw, tol), tol)
    assert doc["tolerances"]["rank_rel_tol"] == 1e-8
    assert doc["version"] == matrigid.__version__
    json.dumps(doc)
    p = tmp_path / "g.txt"
    p.write_text("1 2\n2 3\n")
    assert load_graph(p).edges == ((1, 2), (2, 3))
    p = tmp_path / "g.json"
    p.write_text('{"edges": [[1, 2], [2, 3]]}')
    assert load_graph(p).vertices == (1, 2, 3)
    assert len(load_graph(DATA / "k7_hcyl.json").edges) == 21
