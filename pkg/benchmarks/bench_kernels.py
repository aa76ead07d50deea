"""Compare the pure-Python kernels against the compiled extension.

Run from the repository root:

    python benchmarks/bench_kernels.py

The compiled column is skipped when the extension has not been built
(``python setup.py build_ext --inplace``).
"""

from __future__ import annotations

import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from latsimplex import realize_vertices, simplex_code_group  # noqa: E402
from latsimplex._kernels import pykernels  # noqa: E402
from latsimplex.geometry import _adjugate, _det  # noqa: E402

try:
    from latsimplex._kernels import _speed
except ImportError:
    _speed = None


def timed(fn, repeat):
    best = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best


def bench_cases():
    cases = []

    b5_gens = [g.nums for g in simplex_code_group(5).generators]
    cases.append((
        "closure: order-32 code group on 31 coordinates",
        lambda impl: impl.closure_table(b5_gens, 31, 2, 1 << 20),
        20,
    ))

    import random
    rng = random.Random(1)
    dense_gens = []
    for _ in range(3):
        nums = [rng.randrange(6) for _ in range(8)]
        nums[-1] = (-sum(nums[:-1])) % 6
        dense_gens.append(tuple(nums))
    cases.append((
        "closure: three denominator-6 generators on 8 coordinates",
        lambda impl: impl.closure_table(dense_gens, 8, 6, 1 << 20),
        20,
    ))

    status, base = pykernels.closure_table(dense_gens[:2], 8, 6, 1 << 20)
    assert status == 0
    row = dense_gens[2]
    cases.append((
        "extend: add one generator to a closed table",
        lambda impl: impl.extend_closure(base, row, 8, 6, 1 << 20),
        50,
    ))

    S3 = realize_vertices(simplex_code_group(3))
    bordered = S3.bordered()
    det = _det(bordered)
    adj = _adjugate(bordered, det)
    sign = 1 if det > 0 else -1
    n = 6
    lows = [n * min(v[j] for v in S3.vertices) for j in range(S3.d)]
    highs = [n * max(v[j] for v in S3.vertices) for j in range(S3.d)]
    cases.append((
        "count: dilation 6 of the realized order-8 six-simplex",
        lambda impl: impl.count_box_points(adj, sign, lows, highs, n),
        3,
    ))

    return cases


def main() -> int:
    rows = []
    for name, fn, repeat in bench_cases():
        pure = timed(lambda: fn(pykernels), repeat)
        if _speed is not None:
            fast = timed(lambda: fn(_speed), repeat)
            assert fn(pykernels) == fn(_speed), f"backend mismatch in {name}"
            rows.append((name, pure, fast, pure / fast))
        else:
            rows.append((name, pure, None, None))

    width = max(len(r[0]) for r in rows)
    print(f"{'case'.ljust(width)}  {'pure':>10}  {'compiled':>10}  {'speedup':>8}")
    for name, pure, fast, ratio in rows:
        if fast is None:
            print(f"{name.ljust(width)}  {pure * 1e3:9.2f}ms  {'n/a':>10}  {'n/a':>8}")
        else:
            print(f"{name.ljust(width)}  {pure * 1e3:9.2f}ms  "
                  f"{fast * 1e3:9.2f}ms  {ratio:7.1f}x")
    if _speed is None:
        print("\ncompiled extension not built; "
              "run: python setup.py build_ext --inplace")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
