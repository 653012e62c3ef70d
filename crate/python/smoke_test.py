#!/usr/bin/env python3
"""Smoke test for the gjrs_py extension module.

Builds nothing itself: it looks for the compiled cdylib under
target/{debug,release}, copies it next to a temp dir as gjrs_py.so and
imports it. Run from the repository root:

    cargo build -p gjrs-py
    python3 python/smoke_test.py
"""

import json
import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def locate_module():
    candidates = []
    for profile in ("release", "debug"):
        for stem in ("libgjrs_py.so", "gjrs_py.so", "libgjrs_py.dylib"):
            candidates.append(ROOT / "target" / profile / stem)
    for path in candidates:
        if path.exists():
            return path
    sys.exit(
        "gjrs_py cdylib not found; run `cargo build -p gjrs-py` first "
        f"(searched {len(candidates)} paths under {ROOT / 'target'})"
    )


def main():
    lib = locate_module()
    staging = pathlib.Path(tempfile.mkdtemp(prefix="gjrs-py-"))
    shutil.copy2(lib, staging / "gjrs_py.so")
    sys.path.insert(0, str(staging))

    import gjrs_py

    # parse / format round trip
    rep = gjrs_py.parse("st(unram(-1/2),2)")
    assert str(rep) == "st(unram(-1/2),2)", str(rep)
    assert rep.degree() == 2
    assert rep.field() == "nonarch"

    # standard L-factor and pole bookkeeping
    lf = rep.lfactor()
    assert str(lf) == "Euler(s-1/2)", str(lf)
    assert lf.pole_order("1/2") == 1
    assert lf.pole_order("1") == 0
    assert lf.poles() == [("1/2", 1)], lf.poles()

    # duality: the generalized Steinberg on |.|^{-1/2} is not self-dual
    dual = rep.dual()
    assert str(dual) == "st(unram(3/2),2)", str(dual)
    assert dual.lfactor().pole_order("1/2") == 0
    assert str(rep.dual().dual()) == str(rep)

    # twisting shifts exponents
    assert str(rep.twist("1/2")) == "st(unram(0),2)", str(rep.twist("1/2"))

    # Rankin-Selberg pole at 1 for the Steinberg pair
    st1 = gjrs_py.parse("st(unram(-1/2),1)")
    rs = rep.rs(st1)
    assert rs.pole_order("1") == 1, str(rs)
    assert rs.poles() == [("1", 1)], rs.poles()

    # theta certificates
    cert = rep.theta_certificate()
    assert cert["certified"] is True
    assert cert["sigma_pole_order"] == 1
    assert cert["dual_pole_order"] == 0
    assert "dual side has no pole at 1/2" in cert["reason"]

    bad = gjrs_py.parse("chiR(0,-1/2) x chiR(0,1/2)")
    assert bad.theta_certificate()["certified"] is False
    assert bad.is_irreducible() is False

    # reducibility of the classical pair
    assert gjrs_py.pair_reducible("st(unram(1/2),1)", "st(unram(-1/2),1)") is True
    assert gjrs_py.pair_reducible("chiR(0,0)", "chiR(1,0)") is False

    # algebra on factors
    sq = lf * lf
    assert sq.pole_order("1/2") == 2
    assert lf.shift("1").pole_order("-1/2") == 1

    # a sweep over the default non-archimedean grid
    report = json.loads(gjrs_py.run_sweep_json("pat1", "nonarch"))
    assert report["verdict"] == "PASS", report["verdict"]
    assert report["counterexamples"] == []
    assert report["cases"] > 1000

    # a corrupted rule must be caught
    mutated = json.loads(
        gjrs_py.run_sweep_json("pat1", "nonarch", mutate="drop-tensor-summand")
    )
    assert mutated["verdict"] == "FAIL"
    assert len(mutated["counterexamples"]) > 0

    # numeric oracle
    assert gjrs_py.check_duplication(20) <= 1e-9
    for s in (0.5, 1.0, 1.5, 2.0, 3.0):
        for m in (0, 1):
            assert gjrs_py.tate_relative_error(m, s) <= 1e-6

    # errors surface as ValueError
    try:
        gjrs_py.parse("indR(0,1)")
    except ValueError as e:
        assert "reducible" in str(e)
    else:
        raise AssertionError("indR(0,1) must be rejected")

    print("gjrs_py smoke test passed")


if __name__ == "__main__":
    main()
