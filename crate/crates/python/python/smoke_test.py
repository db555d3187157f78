"""Smoke test for the mtcalc extension module.

Build and run from the repository root:

    cargo build -p mtcalc-python --features extension-module
    python3 crates/python/python/smoke_test.py target/debug
"""

import importlib.util
import pathlib
import shutil
import sys
import tempfile


def load(build_dir):
    for name in ("libmtcalc.so", "libmtcalc.dylib", "mtcalc.dll"):
        lib = pathlib.Path(build_dir) / name
        if lib.exists():
            break
    else:
        sys.exit(f"no built extension in {build_dir}")
    suffix = ".pyd" if lib.suffix == ".dll" else ".so"
    dest = pathlib.Path(tempfile.mkdtemp()) / f"mtcalc{suffix}"
    shutil.copy(lib, dest)
    spec = importlib.util.spec_from_file_location("mtcalc", dest)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def main():
    mt = load(sys.argv[1] if len(sys.argv) > 1 else "target/debug")

    ring = mt.cohomology_ring("O", 3, "f2")
    assert ring.label == "H^*(BO(3);F2)", ring.label
    assert [g for g, _ in ring.generators] == ["w_1", "w_2", "w_3"]
    assert ring.series(6).coefficients == [1, 1, 2, 3, 4, 5, 7]

    j = mt.restriction("j", 1)
    assert j["images"]["w_2"] == "w_1^2 + w_2", j["images"]
    u = mt.restriction("u-selfmap", 2, prime=3)
    assert u["invertible"] is False and u["c1_coefficient"] == 0

    mtu = mt.thom_series("U", 2, "q", 10)
    assert mtu.min_degree == -4 and mtu.coeff(-4) == 1
    checks = mt.thom_checks("U", 2, "q", 40)
    assert checks["ses"] and checks["direct_sum"]

    assert mt.q_homology_series([1], 5).coefficients == [1, 1, 1, 2, 3, 4]
    assert mt.q0s0_series(3).coefficients == [1, 1, 2, 4]

    assert mt.splitting_verdict("O2n-SO2n1", 1, 2)["verdict"] == "splits"
    assert mt.splitting_verdict("Un-SUn1", 2, 3)["verdict"] == "inconclusive"
    assert mt.euler_char("CP^3") == 4
    assert mt.odd_p_consistency(2, 5, 40)

    assert mt.nu_to_mu(2, [1, 0]) == "μ_{0,1}+μ_{1,0}^2"
    assert [mt.count_independent_nu(2, d) for d in range(2, 10)] == [1, 1, 0, 1, 1, 1, 1, 2]
    rows = mt.reproduce_table()
    assert sum(1 for r in rows if r["warning"]) == 2

    s = mt.PoincareSeries(0, [1, 1]) * mt.PoincareSeries(0, [1, -1])
    assert s.coefficients == [1, 0]

    try:
        mt.splitting_verdict("O2n-SO2n1", 1, 4)
    except ValueError:
        pass
    else:
        raise AssertionError("composite prime accepted")

    print("smoke test ok")


if __name__ == "__main__":
    main()
