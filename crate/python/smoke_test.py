"""Smoke test for the `jacquet` extension module.

Build it first, e.g. `pip install --no-build-isolation -e crates/python`
(needs maturin), then run `python3 python/smoke_test.py`.
"""

import jacquet


def main():
    assert jacquet.parse("d([-1,2;rho]) |x| sigma") == ("d([-1,2;rho]) |x| sigma", "g")
    assert jacquet.parse("nu^1/2 rho x nu^3/2 rho")[1] == "gl"

    terms = jacquet.m_star("d([0,1;rho])")
    assert len(terms) == 3 and all(c == 1 for c, _, _ in terms)

    lefts = [left for _, left, _ in jacquet.mu_star("d([1,1;rho0]) |x| sigma")]
    assert lefts == ["1", "nu^-1 rho0", "nu^1 rho0"], lefts

    d = jacquet.aubert("z([-2,-1;rho0]) |x| sigma", bruteforce=True)
    assert d["matches_factorwise"] and d["sign"] == 1
    assert d["hat"] == "d([1,2;rho0]) |x| sigma"
    assert jacquet.aubert("z([-2,-1;rho0]) |x| sigma")["hat"] == d["hat"]

    v = jacquet.dps(alpha=2, a=1, b=2, x=4, same=True)
    assert not v["irreducible"] and v["length"] == 2, v
    v = jacquet.dps(alpha="1/2", beta="1/2", a="1/2", b="3/2", x="1/2", family="gspin-odd")
    assert v["length"] >= 1

    results = jacquet.verify()
    assert results and not [r for r in results if r[1] == "fail"]

    gspin = jacquet.mu_star("nu^1/2 rho x nu^3/2 rho |x| sigma", profile="gspin")
    assert gspin

    for bad in ("d([2,1;rho])", "nu^1 tau", "nu^1/3 rho"):
        try:
            jacquet.m_star(bad)
        except jacquet.JacquetError as e:
            assert isinstance(e, ValueError)
        else:
            raise AssertionError(f"{bad} parsed")

    print("smoke test ok")


if __name__ == "__main__":
    main()
