#!/usr/bin/env python3
"""Smoke test for the reeslab_py extension module.

Build and stage the module first:

    cargo build -p reeslab-py --release
    cp target/release/libreeslab_py.so python/reeslab_py.so

then run `python3 python/smoke_test.py`.
"""

import json
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import reeslab_py


def main():
    ring = reeslab_py.Ring(["x", "y", "z"])
    assert ring.vars() == ["x", "y", "z"]

    e = reeslab_py.Module.direct_sum_of_ideals(
        ring, [["x^2", "x*y"], ["y", "z"]]
    )
    assert e.rank() == 2
    assert e.mu() == 4
    assert e.depth() == 2
    assert e.is_torsion_free()
    assert e.analytic_spread() == 4
    assert e.is_linear_type()

    is_cm, depth, dim = e.rees_is_cm()
    assert is_cm and depth == 5 and dim == 5

    powers = e.depth_of_powers(2)
    assert powers[1] == 2

    height, gens = e.bourbaki(mode="random", seed=42)
    assert height == 2
    assert len(gens) == 4

    r, status, seed = e.reduction_number(seed=42)
    assert status == "probabilistic"

    text = """
ring {
  vars = x y z
}
module {
  kind = direct_sum_of_ideals
  ideal = x^2, x*y
  ideal = y*z, z^2
}
"""
    report = json.loads(reeslab_py.analyze(text, theorem="minrank"))
    assert report["invariants"]["mu"] == 4
    assert report["invariants"]["analytic_spread"] == 4
    minrank = report["theorem_reports"][0]
    assert minrank["theorem_id"] == "minrank"
    assert minrank["all_hypotheses_hold"]
    assert minrank["consistent"]

    # determinism of the JSON report
    again = reeslab_py.analyze(text, theorem="minrank")
    assert json.dumps(report, sort_keys=True) == json.dumps(
        json.loads(again), sort_keys=True
    )

    print("smoke test passed")


if __name__ == "__main__":
    main()
