"""Smoke test for the graphheight extension module.

Build and run from the repository root:

    cargo build -p graphheight-python --features extension-module --release
    cp target/release/libgraphheight_py.so python/graphheight.so
    python3 python/smoke_test.py
"""

import json
import math
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import graphheight as gh


def main():
    star = gh.Graph.family("star:3")
    assert star.vertex_count == 4 and star.edge_count == 3
    assert star.base_height() == 2
    assert star.cell_count() == 3

    theta = gh.Graph.from_json(
        '{"vertices":["a","b"],"edges":[["e1","a","b"],["e2","a","b"],["e3","a","b"]]}'
    )
    assert theta.base_height() == 1

    x4 = gh.Graph.family("xn:4")
    scheme = x4.plan(9)
    assert json.loads(scheme)["variant"] == "MarksWithSequence"
    assert x4.scheme_height(scheme) == 9
    assert x4.plan(math.inf) == '{"variant":"Trivial"}'
    try:
        gh.Graph.family("interval").plan(0)
    except ValueError:
        pass
    else:
        raise AssertionError("height 0 should be rejected on the interval")

    circle = gh.Graph.family("circle")
    rot = '{"variant":"Rotation","angle":{"rational":"1/3"}}'
    assert circle.scheme_height(rot) == math.inf

    check = json.loads(gh.Graph.family("lollipop").cross_check())
    assert check["engine"] == check["chainSearch"] == 3
    assert check["agree"] and not check["publishedClaim"]["matches"]

    f = gh.PLMap([("0", "0"), ("1/2", "1/4"), ("1", "1")])
    assert f.fixed_points() == ["0", "1"]
    cert = f.infinity_certificate(5, 20)
    assert f.verify_certificate(cert)

    witness = json.loads(gh.search(3, 4, 4))
    assert len(witness["vertices"]) == 2 and len(witness["edges"]) == 2

    rows = json.loads(gh.verify_paper())
    assert all(r["status"] != "mismatch" for r in rows)

    print("graphheight", gh.__version__, "smoke test passed")


if __name__ == "__main__":
    main()
