import json
import math
import xml.etree.ElementTree as ET

import pytest

from topoinc.errors import DomainError
from topoinc.render import RenderOptions, to_svg
from topoinc.sequences import BitSeqSpec
from topoinc.spaces import SpaceSpec, build

NS = "{http://www.w3.org/2000/svg}"


def parse(svg):
    root = ET.fromstring(svg.encode())
    paths = root.findall(f".//{NS}path")
    meta = json.loads(root.find(f"{NS}metadata").text)
    return root, paths, meta


def points(path):
    d = path.get("d")[1:]
    return [tuple(float(v) for v in p.split(",")) for p in d.split(" L")]


def c_model():
    return build(SpaceSpec("C", g=BitSeqSpec.from_window("100", 1), K=1))


def test_a_tree_render_is_stable():
    m = build(SpaceSpec("A", M=[4, 6]))
    svg = to_svg(m)
    assert svg == to_svg(build(SpaceSpec("A", M=[4, 6])))
    _, paths, meta = parse(svg)
    assert len(paths) == len(m.edges)
    assert meta["space"] == {"kind": "A", "M": [4, 6]}


def test_compressed_geometry_stays_in_strip():
    m = c_model()
    q_edges = {e for e, x in m.edges.items() if getattr(x.curve, "frame", None) == "compressed"}
    _, paths, _ = parse(to_svg(m))
    for p in paths:
        if int(p.get("data-edge")) in q_edges:
            continue
        assert all(-1 <= x <= 1 for x, _ in points(p))


def test_cap_one_half_oscillation():
    opts = RenderOptions(cap=1, samples_per_period=24)
    m = build(SpaceSpec("Y", g=BitSeqSpec.from_window("100", 1), K=1))
    _, paths, meta = parse(to_svg(m, opts))
    sines = [p for p in paths if p.get("class") == "sine"]
    assert len(sines) == 2
    for p in sines:
        pts = points(p)
        # 12 samples per half-oscillation, each side, sharing the midpoint
        assert len(pts) == 2 * 12 + 1
    assert "truncated" in meta["truncation"]


def test_phi_toggle_omits_compressed_layers():
    _, paths, meta = parse(to_svg(c_model(), RenderOptions(compress=False)))
    assert meta["omitted"] == ["Q", "tails"]
    assert all(p.get("class") != "tail" for p in paths)


def test_numbers_have_at_most_12_decimals():
    svg = to_svg(c_model())
    _, paths, _ = parse(svg)
    for p in paths:
        for chunk in p.get("d")[1:].replace(" L", ",").split(","):
            if "." in chunk:
                assert len(chunk.split(".")[1]) <= 12


def test_sine_samples_follow_the_formula():
    m = build(SpaceSpec("Y", g=BitSeqSpec.from_window("000", 1), K=1))
    _, paths, _ = parse(to_svg(m, RenderOptions(cap=3, compress=False)))
    for p in paths:
        if p.get("class") != "sine":
            continue
        for x, y in points(p):
            k = math.floor(x)
            u = (x - k - 1 / 3) * (x - k - 2 / 3)
            assert y == pytest.approx(math.sin(1 / u), abs=1e-6)


def test_options_validation():
    with pytest.raises(DomainError):
        RenderOptions(cap=0)
    with pytest.raises(DomainError):
        RenderOptions(viewport=(1, 0, 0, 1))
    svg = to_svg(c_model(), RenderOptions(viewport=(-1, -2, 1, 2)))
    assert 'viewBox="-1 -2 2 4"' in svg
