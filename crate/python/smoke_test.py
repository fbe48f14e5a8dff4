#!/usr/bin/env python3
"""Smoke test for the dfrac_py extension module.

Build the module first:

    cargo build -p dfrac-py --release

then run this script from anywhere inside the repository:

    python3 python/smoke_test.py
"""

import math
import shutil
import sys
import tempfile
from pathlib import Path


def load_module():
    root = Path(__file__).resolve().parent.parent
    for profile in ("release", "debug"):
        so = root / "target" / profile / "libdfrac_py.so"
        if so.exists():
            tmp = Path(tempfile.mkdtemp(prefix="dfrac_py_"))
            shutil.copy2(so, tmp / "dfrac_py.so")
            sys.path.insert(0, str(tmp))
            import dfrac_py

            return dfrac_py
    sys.exit("libdfrac_py.so not found; run `cargo build -p dfrac-py --release` first")


def close(a, b, tol=1e-10):
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def main():
    d = load_module()

    # factorial powers and the pole convention
    assert d.falling("3", "2") == 6.0
    assert d.falling("1", "2") == 0.0  # division at a pole yields zero
    assert close(d.rising("2", "1/2"), 0.75 * math.sqrt(math.pi))
    assert d.gamma_ratio("-1", "-3") == 6.0  # both-poles limit
    assert d.floor_order("7/3") == 3

    # fractional sums: the order-1 nabla sum is the cumulative sum
    f = d.GridFn("0", [0.0, 1.0, 2.0, 3.0])
    s = d.apply("sum", "nabla", "left", "1", "0", f)
    assert s.values == [0.0, 1.0, 3.0, 6.0]
    assert s.offset == "0"

    # a delta sum lands on the shifted grid N_{a+1/2}
    s = d.apply("sum", "delta", "left", "1/2", "0", d.GridFn("0", [1.0] * 4))
    assert s.points()[0] == "1/2"
    assert close(s.values[1], 1.5)

    # the Caputo difference kills constants; the Riemann difference does not
    ones = d.GridFn("0", [1.0] * 8)
    c = d.apply("caputo", "nabla", "left", "1/2", "0", ones)
    assert all(v == 0.0 for v in c.values)
    r = d.apply("riemann", "nabla", "left", "1/2", "0", ones)
    assert close(r.values[0], 1.0)

    # Q reflection is an involution
    g = d.GridFn("0", [1.0, 2.0, 3.0])
    q = d.q_transform(g, "0", "2")
    assert q.values == [3.0, 2.0, 1.0]
    assert d.q_transform(q, "0", "2").values == g.values

    # Mittag-Leffler closed forms
    value, terms = d.ml_eval("nabla", "1", 0.5, "2")
    assert close(value, 4.0)
    value, terms = d.ml_eval("delta", "1", 1.0, "3")
    assert value == 8.0 and terms == 4

    # one identity suite end to end
    rows = d.check("q-nabla-caputo")
    assert len(rows) == 1 and rows[0][3], rows

    # solve the nabla exponential equation two ways
    y_ml, res_ml = d.solve("nabla", "1", 0.5, 1.0, 4)
    y_march, res_march = d.solve("nabla", "1", 0.5, 1.0, 4, method="march")
    assert close(y_ml.values[2], 4.0)
    assert all(close(a, b, 1e-8) for a, b in zip(y_ml.values, y_march.values))
    assert res_ml < 1e-8 and res_march < 1e-12

    # explicit forcing samples
    y, res = d.solve("nabla", "1/2", 0.3, 1.0, 5, forcing=[1.0] * 5)
    assert y.values[0] == 1.0 and res < 1e-8

    print("dfrac_py smoke test: all checks passed")


if __name__ == "__main__":
    main()
