"""Smoke test for the affvir Python bindings."""

import json

import affvir


def main():
    alg = affvir.Algebra.sl2()
    assert (alg.name, alg.dim, alg.rank) == ("sl2", 3, 1)
    assert alg.dual_coxeter() == "2"
    assert alg.irrep_dim("3") == 4
    print("bracket [e(1), f(-1)] =", alg.bracket("e(1)", "f(-1)"))

    m = affvir.Module.verma("2", "3/2", "2", "5/2", depth=2, charge=2)
    q = m.quotient()
    assert q.total_dim() < m.total_dim()
    assert json.loads(q.to_json())["kind"] == "irreducible_quotient"
    print(m, q)

    p45 = affvir.TensorParams("0", "0", "1", "2", "1", "0", "1/2")
    v = affvir.is_irreducible(p45)
    assert v["irreducible"] and v["exceptionalN"] == []
    assert sorted(affvir.ann_labels(p45)) == ["D(-1)", "f0^2", "f1"]
    assert affvir.endo_dim(p45, with_doubled=True) == (1, 4)

    exceptional = affvir.TensorParams("0", "0", "1", "2", "1", "0", "1")
    assert affvir.is_irreducible(exceptional)["exceptionalN"] == [0]

    shifted = affvir.TensorParams("0", "0", "1", "2", "1", "3", "1/2")
    assert affvir.iso_check(p45, shifted) == (True, None)
    other = affvir.TensorParams("0", "0", "1", "2", "1", "0", "3/2")
    assert affvir.iso_check(p45, other) == (False, "b")

    report = affvir.run_preset("example-4.6")
    assert report["passed"]
    try:
        affvir.run_preset("no-such-preset")
    except affvir.AffvirError as e:
        print("expected error:", e)
    else:
        raise AssertionError("unknown preset accepted")
    try:
        affvir.TensorParams("0", "0", "1", "2", "1", "0.5", "1/2")
    except affvir.AffvirError:
        pass
    else:
        raise AssertionError("decimal accepted")
    print("python smoke test passed")


if __name__ == "__main__":
    main()
