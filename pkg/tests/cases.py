"""Problem instances shared by the acceptance suite and the fixtures."""
from conepredictor import generate_example

EPSILON = 1e-12
LP_SIZES = [(2, 4), (3, 6), (4, 8), (3, 8), (5, 8)]
LP_CASES = [("sharp_lp", LP_SIZES[i % len(LP_SIZES)], i) for i in range(20)]
SDP_CASES = [("sharp_sdp", (n,), seed) for n, seed in [(2, 0), (3, 0), (3, 1), (4, 0), (4, 1)]]
SHARP_CASES = LP_CASES + SDP_CASES


def label(case):
    name, params, seed = case
    return f"{name}({','.join(map(str, params))})#{seed}"


def build(case):
    name, params, seed = case
    problem, _ = generate_example(name, params, seed)
    return problem
