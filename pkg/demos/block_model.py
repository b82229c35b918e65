"""Block-sequence model of infinite direct sums.

Emulates infinite-dimensional systems as sequences of finite blocks and
certifies, over a horizon, whether the per-block spectral gaps stay
bounded below (closed on horizon) or decay to zero (gap vanishing).
Run: python3 demos/block_model.py
"""

import numpy as np

import sumspaces as ss


def main():
    print("one_over_k family, n = 3, horizon 100:")
    BS = ss.paper_families("one_over_k", {"n": 3})
    full = ss.certify(BS, [1, 2, 3], 100)
    print(f"  full subset: {full.status}, inf gap = {full.inf_gap:.2e}, "
          f"log-log slope = {full.trend_slope:.2f}")
    for subset in ([1, 2], [1, 3], [2, 3]):
        v = ss.certify(BS, subset, 100)
        print(f"  subset {subset}: {v.status}, inf gap = {v.inf_gap:.3f}")

    print("\nhalmos_accumulating family (pair angles closing like 1/k):")
    H = ss.paper_families("halmos_accumulating", {"rate": 1.0})
    v = ss.certify(H, [1, 2], 80)
    print(f"  pair: {v.status}, slope = {v.trend_slope:.2f}")

    print("\ncompact_triple family:")
    C = ss.paper_families("compact_triple")
    print(f"  subset (2,3): {ss.certify(C, [2, 3], 60).status}")
    print(f"  subset (1,2): {ss.certify(C, [1, 2], 60).status}")

    print("\nsum_as_two: every block sum rewritten as two subspaces")
    m1, m2, rep = ss.sum_as_two(BS, 20)
    print(f"  rank equality on all blocks: "
          f"{rep.extras['rank_equality_all_blocks']}")
    print(f"  block dims M1 = {[s.dim for s in m1[:5]]}..., "
          f"M2 = {[s.dim for s in m2[:5]]}...")


if __name__ == "__main__":
    main()
