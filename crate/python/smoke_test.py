"""Smoke test for the staircase_py extension module.

Build and run from the repository root:

    cargo build --release -p staircase-py --features extension-module
    cp target/release/libstaircase_py.so python/staircase_py.so
    python3 python/smoke_test.py
"""

import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import staircase_py as st  # noqa: E402


def main():
    pts = st.PointSet([[0, 0], [1, 1], [2, 1], [2, 2], [3, 2], [4, 2], [2, 3]])
    e = pts.staircase()
    assert len(e) == 7 and e.elements[-1] == [2, 1], e.elements
    assert pts.r_value() == 3 and pts.s_value() == 3
    assert [1, 1] in e and [0, 3] not in e

    tri = st.LatticePolygon([(0, 0), (4, 2), (2, 3)])
    assert tri.double_area() == 8 and len(tri.lattice_points()) == 7
    f, m, dim = tri.max_order_witness()
    assert (m, dim) == (3, 1), (m, dim)
    assert f[[2, 3]] == "1/1"
    assert f.newton_polygon() == tri
    assert f.certify_irreducible() == "irreducible"

    g = st.FiniteFn([([0, 0], 1), ([1, 0], 1), ([1, 1], -3), ([2, 3], "1")])
    assert g.certify_irreducible() == "irreducible"
    tri2 = st.Polygon([(0, 0), (1, 0), (2, 3)])
    body, v, w = tri2.exact_body(g)
    assert (v, w) == ("3/2", "2/1"), (v, w)
    b = tri2.bracket(4)
    assert b["points"] == 31 and body.contains_polygon(b["a_poly"])

    sq = st.Polygon([(0, 0), (1, 0), (1, 1), (0, 1)])
    b = sq.bracket("3/1")
    assert (b["v_lo"], b["v_hi"], b["w_lo"], b["w_hi"]) == ("1/1", "1/1", "2/1", "2/1")

    p1, p2 = st.p_r(1), st.p_r(2)
    assert p1.mixed_volume_2x(p2) == 6
    assert p1.canonical().is_equivalent(p1)
    assert st.verify_pr(2)

    rows, unsure = st.atlas_rows(8)
    assert len(rows) == 4 and unsure == 0, rows

    for rho in ("forward", "reverse"):
        assert st.seshadri(1, 1, 1, rho=rho) == ("1/1", "1/1")
    try:
        st.seshadri(2, 4, 6)
    except ValueError:
        pass
    else:
        raise AssertionError("non-coprime weights accepted")

    ok, failed = st.run_checks(seed=3, cases=4)
    assert ok, failed
    print("python smoke test: ok")


if __name__ == "__main__":
    main()
