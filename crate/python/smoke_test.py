"""Smoke test for the Python bindings.

Build first, e.g. `maturin develop -m crates/python/Cargo.toml`, or
`cargo build --release -p stable-euler-py` and put
`target/release/libstable_euler_py.so` on the path as `stable_euler_py.so`.
"""

from fractions import Fraction

import stable_euler_py as se


def main() -> None:
    assert Fraction(se.count("H", 2, 0, 3)["-"]) == 27
    assert Fraction(se.count("Q", 3, 0, 2)["-"]) == 65
    assert Fraction(se.count("M", 1, 1, 2)["1"]) == 2

    rows = se.pipeline(6)
    genus4 = [int(c) for c in rows[(4, 0, "-")]]
    assert genus4 == [1, 4, 13, 32, 50, 50, 32, 13, 4, 1], genus4
    assert [int(c) for c in rows[(1, 1, "1")]] == [1, 1]
    assert se.genus4_matches_reference()

    ok, matrix = se.verify_tables("table2", "fast")
    assert ok, matrix

    try:
        se.count("Q", 3, 0, 5)
    except ValueError:
        pass
    else:
        raise AssertionError("q=5 quartic count should be rejected")

    print("smoke test passed")


if __name__ == "__main__":
    main()
