"""Walk through the four five-body regimes and what settles each one.

Run with ``python3 demos/five_body_atlas.py``.
"""

from curved_nbody import family5, verify

POINTS = [(0.5, 0.8), (0.5, 1.5), (0.5, 3.0), (2.0, 3.0)]


def describe(a, r):
    verdict = family5.region_verdict(a, r)
    print(f"(a, r) = ({a}, {r}): {verdict.case}, claimed {verdict.paper_claim}, "
          f"found exists={verdict.exists}")
    if verdict.solution is not None:
        sol = verdict.solution
        print(f"    exact solve: mu={sol.mu:.8g}, m={sol.m:.8g}, residual {sol.residual_max:.1e}")
    if verdict.certificate is not None:
        cert = verdict.certificate
        print(f"    certificate ({cert.lemma or 'weights'}): lhs {cert.lhs:.4g} against "
              f"coefficients {cert.rhs_coefficients}")


def main():
    for a, r in POINTS:
        describe(a, r)
    outside = verify.measure_estimate("five", [1, 5, 1, 5], 10_000, seed=1)
    straddle = verify.measure_estimate("five", [0.05, 1, 1, 20], 10_000, seed=1)
    print(f"\n1<a<r<5: {outside['positive']}/{outside['accepted']} positive, "
          f"Wilson 95% {outside['wilson95']}")
    print(f"a<1<r, box (0.05,1)x(1,20): {straddle['positive']}/{straddle['accepted']} positive")


if __name__ == "__main__":
    main()
