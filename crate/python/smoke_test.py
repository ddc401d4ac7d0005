"""Smoke test for the `hwp` extension module.

Build and copy the module next to this script first:

    cargo build --release -p hwp-py --features extension-module
    cp target/release/libhwp.so python/hwp.so
    python3 python/smoke_test.py
"""

import json
import pathlib

import hwp

ROOT = pathlib.Path(__file__).resolve().parent.parent


def check_groups():
    for name, order in [("2O", 48), ("Q24", 24), ("SL23", 24)]:
        g = hwp.Group(name)
        assert g.order == order
        els = g.elements()
        assert len(set(els)) == order
        for a in els[:6]:
            assert g.mul(a, g.inverse(a)) == els[0]
    g = hwp.Group("2O")
    assert g.involution() == "-1"
    assert g.mul("i", "j") == "k"
    assert g.format("1/r2(1+k)", unicode=True) == "1/√2(1+k)"
    assert hwp.Group("Q24").element_order("a") == 12


def check_solutions():
    ids = hwp.list_solutions()
    assert len(ids) == 9
    for sid in ids:
        cert = hwp.Solution.load(sid).verify()
        assert cert.verified, (sid, cert.witness)
        v, r, s = cert.params
        assert r + s == (v - 2) // 2
        assert json.loads(cert.to_json())["verdict"] == "verified"

    sol = hwp.Solution.load("48-5-18")
    assert sorted(sol.omega("C4")) == ["-k", "k"]
    assert len(hwp.Solution.load("24-9-2").orbit("C4", "H")) == 4

    notes = hwp.Solution.load("24-5-6").verify().notes
    assert any("5, 5" in n for n in notes)

    bad = sol.to_toml().replace('"C4"', '"C3"', 1)
    cert = hwp.Solution.from_toml(bad).verify()
    assert not cert.verified and cert.witness

    try:
        hwp.Solution.from_toml("id = 1")
    except ValueError:
        pass
    else:
        raise AssertionError("malformed document accepted")


def check_search():
    target = (ROOT / "targets" / "24-9-2.toml").read_text()
    res = hwp.search(target)
    assert res.verdict == "found", res
    assert res.solution.verify().verified
    assert hwp.search(target, node_budget=10).verdict == "budget-exceeded"


if __name__ == "__main__":
    check_groups()
    check_solutions()
    check_search()
    print("python smoke test passed")
