"""Smoke test for the pybicover extension module.

Build and install it first, e.g. `maturin build --release -m crates/py/Cargo.toml`
followed by `pip install target/wheels/pybicover-*.whl`.
"""

import json
import pathlib
import sys

import jsonschema
import pybicover as bc

ROOT = pathlib.Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"
SCHEMAS = ROOT / "schemas"


def schema(name):
    return json.loads((SCHEMAS / f"{name}.schema.json").read_text())


def check(doc, name):
    jsonschema.validate(json.loads(doc) if isinstance(doc, str) else doc, schema(name))


def main():
    grid_text = (FIXTURES / "grid3x3.json").read_text()
    check(grid_text, "instance")
    grid = bc.Instance.from_json(grid_text)
    assert (grid.m, grid.n) == (9, 6)
    assert len(grid.edges()) == 18

    cover = bc.build_cover(grid, merge=True)
    check(cover.to_json(), "cover")
    report = json.loads(bc.verify_cover(grid, cover))
    check(report, "verification-report")
    assert report["pass"], report["problems"]
    assert 24 <= cover.cost_j <= 36

    cost, witness = bc.min_cover_cost(grid, edge_cap=18)
    assert cost == 24 and witness.cost_j == 24

    matching = bc.Instance.from_json((FIXTURES / "matching6.json").read_text())
    assert bc.min_cover_cost(matching)[0] == 12
    try:
        bc.min_cover_cost(bc.Instance.from_json((FIXTURES / "edges20.json").read_text()))
    except bc.RefusedError:
        pass
    else:
        raise AssertionError("20-edge instance should be refused")

    st = bc.generate("st-grid", 3)
    assert len(st.edges()) == 81
    round_trip = bc.Instance.from_json(st.to_json())
    assert round_trip.edges() == st.edges()

    tampered = json.loads(cover.to_json())
    tampered["costJ"] += 1
    bad = json.loads(bc.verify_cover(grid, bc.Cover.from_json(json.dumps(tampered))))
    assert not bad["pass"] and any("cost mismatch" in p for p in bad["problems"])

    hyper = bc.generate("hyper-orient", 6, seed=3)
    check(hyper.to_json(), "hyper-instance")
    hcover = bc.build_hyper_cover(hyper, merge=True)
    check(hcover.to_json(), "hyper-cover")
    hreport = json.loads(bc.verify_hyper_cover(hyper, hcover))
    check(hreport, "hyper-verification-report")
    assert hreport["pass"] and hcover.cost <= 3 * hreport["edgeCount"]

    assert abs(bc.fstar_func([2, 2], [100.0, 100.0]) - (100.0 ** (4 / 3) + 200.0)) < 1e-6
    assert bc.graph_exponents(2, 2) == (2 / 3, 2 / 3)

    print("smoke test passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
