"""Quick import check for the oscent extension module."""

import math

import oscent


def close(a, b, tol=1e-10):
    assert abs(a - b) <= tol * max(1.0, abs(b)), (a, b)


def main():
    r = oscent.renyi_angular(1, 0, 2.0)
    close(r.lambda_value, 9.0 / (20.0 * math.pi))
    close(r.renyi, math.log(20.0 * math.pi / 9.0))

    ground = oscent.shannon_total(0, 0, 0)
    close(ground.total, 1.5 * (1.0 + math.log(math.pi)))
    close(ground.radial + ground.angular, ground.total)

    rep = oscent.uncertainty_sum(0, 0, 0, 2.0)
    assert rep.saturated and rep.sum >= rep.bound - 1e-12, rep
    assert not oscent.uncertainty_sum(1, 0, 0, 2.0).saturated

    t = oscent.tsallis_from_renyi(0.7, 2.0)
    close(t, -math.expm1(-0.7))

    assert oscent.cosine_constant(2.0) is None
    close(oscent.oracle_entropy(2, 1, 0, 2.0), oscent.renyi_total(2, 1, 0, 2.0).total, 1e-8)

    try:
        oscent.renyi_angular(1, 2, 2.0)
    except oscent.DomainError:
        pass
    else:
        raise AssertionError("|m| > l accepted")

    print("oscent", oscent.__version__, "smoke test ok")


if __name__ == "__main__":
    main()
