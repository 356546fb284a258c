"""URDF parsing, Mermaid export, and reach-envelope tests."""

import pytest

from langarm.assets import load_text
from langarm.robot import (
    CyclicChain,
    DanglingReference,
    MalformedXml,
    chain_depth,
    parse_mermaid_edges,
    parse_urdf,
    reach_check,
    reach_envelope,
    summary_text,
    to_mermaid,
)

TWO_LINK = """
<robot name="mini">
  <link name="base"/>
  <link name="tool"/>
  <joint name="mount" type="fixed">
    <parent link="base"/>
    <child link="tool"/>
    <origin xyz="0 0 0.1"/>
  </joint>
</robot>
"""


class TestParseUrdf:
    def test_six_dof_fixture_counts(self):
        model = parse_urdf(load_text("urdf/arm6.urdf"))
        assert len(model.links) == 7
        assert len(model.joints) == 6
        assert chain_depth(model) == 7
        assert model.root == "base_link"

    def test_origins_normalized_to_mm(self):
        model = parse_urdf(load_text("urdf/arm6.urdf"))
        first = model.joint_to("shoulder_link")
        assert first.origin_mm == (0.0, 0.0, 100.0)

    def test_single_fixed_joint_depth_2(self):
        model = parse_urdf(TWO_LINK)
        assert chain_depth(model) == 2

    def test_cycle_detected(self):
        xml = """
        <robot name="loop">
          <link name="a"/><link name="b"/>
          <joint name="j1" type="fixed"><parent link="a"/><child link="b"/></joint>
          <joint name="j2" type="fixed"><parent link="b"/><child link="a"/></joint>
        </robot>
        """
        with pytest.raises(CyclicChain):
            parse_urdf(xml)

    def test_dangling_reference(self):
        xml = """
        <robot name="bad">
          <link name="a"/>
          <joint name="j1" type="fixed"><parent link="a"/><child link="ghost"/></joint>
        </robot>
        """
        with pytest.raises(DanglingReference) as e:
            parse_urdf(xml)
        assert e.value.name == "ghost"

    def test_disconnected_forest_rejected(self):
        xml = """
        <robot name="forest">
          <link name="a"/><link name="b"/><link name="c"/>
          <joint name="j1" type="fixed"><parent link="a"/><child link="b"/></joint>
        </robot>
        """
        with pytest.raises(DanglingReference):
            parse_urdf(xml)

    def test_malformed_xml(self):
        with pytest.raises(MalformedXml):
            parse_urdf("<robot><link name='a'>")

    def test_limits_parsed(self):
        model = parse_urdf(load_text("urdf/arm10.urdf"))
        finger = model.joint_to("finger")
        assert finger.limits == (0.0, 0.04)


class TestMermaid:
    def test_two_link_export(self):
        text = to_mermaid(parse_urdf(TWO_LINK))
        lines = text.splitlines()
        assert lines[0] == "graph TD"
        nodes = [l for l in lines if '["' in l]
        edges = [l for l in lines if "-->" in l]
        assert len(nodes) == 2
        assert len(edges) == 1
        assert "mount (fixed)" in edges[0]

    def test_six_dof_counts(self):
        model = parse_urdf(load_text("urdf/arm6.urdf"))
        text = to_mermaid(model)
        nodes = [l for l in text.splitlines() if '["' in l]
        edges = [l for l in text.splitlines() if "-->" in l]
        assert len(nodes) == 7
        assert len(edges) == 6

    def test_ten_level_fixture_depth(self):
        model = parse_urdf(load_text("urdf/arm10.urdf"))
        assert chain_depth(model) == 10

    def test_parse_back_reconstructs_relation(self):
        model = parse_urdf(load_text("urdf/arm10.urdf"))
        edges = parse_mermaid_edges(to_mermaid(model))
        expected = {(j.parent, j.child) for j in model.joints}
        assert edges == expected


class TestReach:
    def test_out_of_reach_deficit(self):
        model = parse_urdf(load_text("urdf/reach700.urdf"))
        result = reach_check(model, (0.0, 0.0, 0.0), (800.0, 0.0, 0.0))
        assert result.status == "out_of_reach"
        assert result.deficit_mm == pytest.approx(100.0)

    def test_target_at_base_reachable(self):
        model = parse_urdf(load_text("urdf/reach700.urdf"))
        assert reach_check(model, (0.0, 0.0, 0.0), (0.0, 0.0, 0.0)).status == "reachable"

    def test_near_singularity_margin(self):
        model = parse_urdf(load_text("urdf/reach700.urdf"))
        result = reach_check(model, (0.0, 0.0, 0.0), (695.0, 0.0, 0.0))
        assert result.status == "near_singularity"
        assert result.margin_mm == pytest.approx(5.0)

    def test_envelope_radius(self):
        model = parse_urdf(load_text("urdf/reach700.urdf"))
        env = reach_envelope(model, (0.0, 0.0, 0.0))
        assert env.max_radius == pytest.approx(700.0)

    def test_tree_law_and_monotonicity(self):
        model = parse_urdf(load_text("urdf/arm6.urdf"))
        assert len(model.links) == len(model.joints) + 1
        base = reach_envelope(model, (0, 0, 0)).max_radius
        extended = parse_urdf(
            load_text("urdf/arm6.urdf").replace(
                "</robot>",
                '<link name="extra"/>'
                '<joint name="extra_j" type="fixed">'
                '<parent link="wrist_3_link"/><child link="extra"/>'
                '<origin xyz="0 0 0.05"/></joint></robot>',
            )
        )
        assert reach_envelope(extended, (0, 0, 0)).max_radius > base

    def test_scale_consistency(self):
        model = parse_urdf(load_text("urdf/reach700.urdf"))
        d1 = reach_check(model, (0, 0, 0), (800.0, 0.0, 0.0)).deficit_mm
        doubled = parse_urdf(
            load_text("urdf/reach700.urdf")
            .replace("0.30", "0.60")
            .replace("0.25", "0.50")
            .replace("0.15", "0.30")
        )
        d2 = reach_check(doubled, (0, 0, 0), (1600.0, 0.0, 0.0)).deficit_mm
        assert d2 == pytest.approx(2 * d1)


def test_summary_text_mentions_structure():
    model = parse_urdf(load_text("urdf/arm6.urdf"))
    text = summary_text(model)
    assert "Links (7):" in text
    assert "shoulder_pan_joint" in text
    assert "Max reach radius" in text
