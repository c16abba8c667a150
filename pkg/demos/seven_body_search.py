"""Scan the all-outside seven-body regime and the one regime that works.

Run with ``python3 demos/seven_body_search.py``.
"""

from curved_nbody import family7


def summarize(case, fixed, scan_range, points=200):
    res = family7.paper_existence_search(case, fixed, scan_range, points)
    certified = sum(p.certified for p in res.points)
    print(f"{case} with {fixed}, {len(res.points)} points: {certified} certified, "
          f"{len(res.found)} positive")
    last = res.points[-1].solution
    print(f"    at the end of the range: mu={last.mu:.6g}, M={last.M:.3g}, m={last.m:.3g}")


def main():
    summarize("AllOutside", {"x": 2, "z": 4}, (3.5, 4.0))
    summarize("InnerPairInside_Mid", {"x": 0.5, "z": 3}, None)
    for pos in [(0.5, 0.8, 1.5), (0.5, 1.2, 1.5)]:
        cert = family7.violation_certificate(*pos)
        print(f"{pos}: {family7.classify7(*pos).value}, certificate via {cert.lemma}, "
              f"lhs {cert.lhs:.4g}")
    for pos in [(0.5, 1.5, 3.0), (2.0, 3.0, 4.0)]:
        six = family7.corollary_6body(*pos)
        print(f"six bodies at {pos}: {six.status}")


if __name__ == "__main__":
    main()
