"""Compare the compiled and pure-Python kernels on representative workloads.

    python benchmarks/bench_kernels.py [--repeat 3]

Every workload is run through each available backend and the results are
checked for equality before timings are reported.
"""
import argparse
import timeit

from modunits import kernels
from modunits.divpoly import DivisionPolynomials
from modunits.gonality import _kernel_tables
from modunits.polyring import _guard


def _workloads():
    R = DivisionPolynomials.generic()
    qa = R.bigQ(13).body
    qb = R.bigQ(14).body
    qc = R.bigQ(7).body
    prod = qa * qb
    guard = _guard(len(qa.vars))
    tables = _kernel_tables()
    return [
        ("mul Q13*Q14 (x,a,b)", lambda k: k.mul(qa._t, qb._t)),
        ("divexact Q13*Q14 / Q14", lambda k: k.divexact(prod._t, qb._t, guard)),
        ("divexact Q14 / Q7", lambda k: k.divexact(qb._t, qc._t, guard)),
        ("sample_scaled N=200000", lambda k: k.sample_scaled(*tables, 200000)),
    ]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    impls = kernels.backends()
    if "cython" not in impls:
        print("compiled extension not built; timing the Python backend only")
    names = sorted(impls)
    print(f"{'workload':<26}" + "".join(f"{n:>12}" for n in names) + f"{'speedup':>10}")
    for label, fn in _workloads():
        results = {n: fn(impls[n]) for n in names}
        ref = results[names[0]]
        if any(r != ref for r in results.values()):
            raise SystemExit(f"backends disagree on {label}")
        times = {n: min(timeit.repeat(lambda: fn(impls[n]), number=1, repeat=args.repeat))
                 for n in names}
        speed = times["python"] / times["cython"] if "cython" in times else 1.0
        print(f"{label:<26}" + "".join(f"{times[n]:>11.4f}s" for n in names) + f"{speed:>9.1f}x")


if __name__ == "__main__":
    main()
