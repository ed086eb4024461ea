"""Smoke test for the ftkcenter extension module.

Build with `cargo build --release -p ftkcenter-py`, then copy
target/release/libftkcenter.so to ftkcenter.so somewhere on PYTHONPATH
(or use `maturin develop -m crates/python/Cargo.toml`).
"""

import json

import ftkcenter


def path3(caps, variant="ft"):
    pts = [("0", "0"), ("1", "0"), ("2", "0")]
    return ftkcenter.Instance.from_points(pts, k=2, alpha=1, capacities=caps, variant=variant, name="p3")


def main():
    inst = path3([3, 3, 3])
    assert inst.n == 3 and inst.k == 2 and inst.alpha == 1
    assert inst.distinct_distances() == ["0", "1", "2"]
    assert ftkcenter.Instance.from_json(inst.to_json()).to_json() == inst.to_json()

    report = ftkcenter.solve(inst, "ft-0l", with_oracle=True)
    assert report["outcome"] == "solved", report
    assert report["tau_star"] == "1" and report["radius_bound"] == "6"
    assert report["verified"] is True
    assert report["factor_observed"] >= 1.0

    check = ftkcenter.verify(inst, report["centers"], report["verified_radius"])
    assert check["pass"] is True
    assert ftkcenter.verify(inst, [0, 1], "1")["pass"] is False

    cert = ftkcenter.solve(path3([1, 1, 1]), "ft-general")
    assert cert["outcome"] == "infeasible" and cert["infeasible_at"] == "2"

    cons = path3([3, 3, 3], variant="conservative")
    report = ftkcenter.solve(cons, "cons-general")
    assert report["outcome"] == "solved", report
    check = ftkcenter.verify(cons, report["centers"], report["verified_radius"], report["initial_assignment"])
    assert check["pass"] is True

    best = ftkcenter.exact_opt(inst)
    assert best["opt"] == "2"

    gap = ftkcenter.gap_instance(4)
    assert ftkcenter.exact_opt(gap, max_n=16)["opt"] == "2"

    try:
        ftkcenter.solve(path3([1, 2, 3]), "ft-0l")
    except ValueError:
        pass
    else:
        raise AssertionError("mixed capacities accepted by ft-0l")

    print(json.dumps({"algorithms": ftkcenter.ALGORITHMS, "status": "ok"}))


if __name__ == "__main__":
    main()
