"""Smoke test for the crsym Python extension."""

import crsym


def main():
    p = crsym.Polynomial("Re(Z1*z2^2)")
    assert p.is_real() and p.levi_rank() == 0
    assert p.weights() == ("1/3", "1/3")

    a = crsym.analyze(p)
    assert a.dim == 10 and a.table_row == "T1"
    row = a.row()
    assert (row["dim_gt"], row["dim_gc"], row["dim_gn"], row["dim_g1"]) == (2, 1, 2, 1)
    assert str(a.exotic()) == "i*z2^2*d1"
    for nu in a.component_weights():
        for x in a.basis(nu):
            assert x.residual(p).is_zero()
    assert a.report()["schema_version"] == crsym.SCHEMA_VERSION

    s5 = crsym.analyze("8*(z1*Z1)^3*Re(z1^5*Z2)^2 + 4*(z1*Z1)^4*Re(z1^9)")
    assert s5.weights == ("1/17", "1/34") and s5.dim == 3

    x = crsym.Field("z1*z2^2*(5*z1-6*z2)*d1 - z2^3*(4*z1-3*z2)*d2")
    pp = crsym.Polynomial("i*z1^2*z2^3*(z1-z2)")
    qq = crsym.Polynomial("3*z1^3*z2^5*(z1-z2)")
    assert x.apply(pp) == qq * "i" and x.apply(qq).is_zero()

    assert str(crsym.catalog_model("T4", "alpha=2")) == str(crsym.catalog_model("T4"))
    assert crsym.catalog_verify("T2", "k=1,m=2")["pass"]

    u, v, total, field = crsym.pure_chains(1, 1, 1, 0, 2, 0, 1)
    assert len(u) == len(v) == 2 and field.is_symmetry(total)

    try:
        crsym.analyze("z1*Z2")
    except ValueError:
        pass
    else:
        raise AssertionError("non-real model accepted")
    print("python smoke test passed")


if __name__ == "__main__":
    main()
