from xml.etree import ElementTree as ET

import pytest

from subgrid.errors import DimensionMismatchError
from subgrid.functions import get_objective
from subgrid.slm import SlmConfig, slm_run
from subgrid.slmga import GaConfig, ga_run
from subgrid.svgtrace import emit_trace_svg

NS = "{http://www.w3.org/2000/svg}"


@pytest.fixture(scope="module")
def easom_run():
    obj = get_objective("easom")
    return slm_run(obj, SlmConfig(h_tol=0.1)), obj


class TestStructure:
    def test_well_formed_single_root(self, easom_run):
        rep, obj = easom_run
        doc = emit_trace_svg(rep, obj)
        root = ET.fromstring(doc)
        assert root.tag == NS + "svg"
        assert root.get("width") and root.get("height")

    def test_cell_outline_per_level(self, easom_run):
        rep, obj = easom_run
        root = ET.fromstring(emit_trace_svg(rep, obj))
        outlines = root.findall(".//%srect[@class='cell-outline']" % NS)
        assert len(outlines) == rep.generations == 11
        levels = [g.get("data-level") for g in root.findall(".//%sg[@class='step']" % NS)]
        assert levels == [str(i) for i in range(1, 12)]

    def test_best_marker_present(self, easom_run):
        rep, obj = easom_run
        root = ET.fromstring(emit_trace_svg(rep, obj))
        marker = root.findall(".//%scircle[@class='best']" % NS)
        assert len(marker) == 1

    def test_background_shading(self, easom_run):
        rep, obj = easom_run
        root = ET.fromstring(emit_trace_svg(rep, obj))
        shade = root.find(".//%sg[@class='shade']" % NS)
        assert shade is not None
        assert len(shade) == 64 * 64

    def test_vertex_labels_annotated(self, easom_run):
        rep, obj = easom_run
        root = ET.fromstring(emit_trace_svg(rep, obj))
        labels = root.findall(".//%stext[@class='label']" % NS)
        assert labels, "expected annotated vertex labels"
        assert all(t.text in {"0", "1", "2"} for t in labels)


class TestSlmgaTrace:
    def test_two_dim_ga_run_renders(self):
        obj = get_objective("f2")
        rep = ga_run(obj, GaConfig(h_tol=0.02, seed=0))
        root = ET.fromstring(emit_trace_svg(rep, obj))
        assert root.tag == NS + "svg"


class TestDimensionGuard:
    def test_three_dim_rejected(self):
        obj = get_objective("f1")
        rep = ga_run(obj, GaConfig(h_tol=1.0, seed=0))
        with pytest.raises(DimensionMismatchError):
            emit_trace_svg(rep, obj)
