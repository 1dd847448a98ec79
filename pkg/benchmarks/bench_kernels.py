"""Compare the compiled and pure-Python kernels on representative workloads.

    python benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import timeit

import numpy as np

from spinlink import _pykernels
from spinlink.lattice import GramLattice, discriminant_theory, hyperbolic
from spinlink.narain import adaptive_radius, hyperbolic_polarization, standard_polarization

try:
    from spinlink import _ckernels
except ImportError:
    _ckernels = None


def theta_workloads():
    e8 = GramLattice((
        (2, -1, 0, 0, 0, 0, 0, 0), (-1, 2, -1, 0, 0, 0, 0, 0), (0, -1, 2, -1, 0, 0, 0, -1),
        (0, 0, -1, 2, -1, 0, 0, 0), (0, 0, 0, -1, 2, -1, 0, 0), (0, 0, 0, 0, -1, 2, -1, 0),
        (0, 0, 0, 0, 0, -1, 2, 0), (0, 0, -1, 0, 0, 0, 0, 2)))
    cases = {
        "hyperbolic r=1.3 tau=0.1+0.5i": (hyperbolic_polarization(1.3), 0.5),
        "rank-4 indefinite tau=0.1+0.6i": (standard_polarization(
            GramLattice(((2, 1, 0, 0), (1, -2, 1, 0), (0, 1, 4, 1), (0, 0, 1, -2)))), 0.6),
        "E8 tau=0.1+1.0i": (standard_polarization(e8), 1.0),
    }
    for name, (pol, y) in cases.items():
        radius = adaptive_radius(pol, y, 1e-12)
        args = (pol.chol.tolist(), pol.hmat.tolist(), pol.gram.tolist(),
                [0.0] * pol.lattice.rank, radius, 0.1, y)
        yield name, args


def q_table_workload():
    lat = GramLattice(((0, 6, 1), (6, 0, 0), (1, 0, 12)))
    t = discriminant_theory(lat).theory
    n = t.modulus
    qnum = [x.numerator * (2 * n // x.denominator) for x in t.q_gen]
    lnum = [[x.numerator * (2 * n // x.denominator) for x in row] for row in t.l_gen]
    return f"q table |D|={t.size}", (list(t.group.orders), qnum, lnum, 2 * n)


def bench(fn, args, repeat):
    timer = timeit.Timer(lambda: fn(*args))
    loops, _ = timer.autorange()
    return min(timer.repeat(repeat, loops)) / loops


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    if _ckernels is None:
        print("compiled extension not built; only the Python backend is available")
    rows = []
    for name, targs in theta_workloads():
        rows.append((f"theta {name}", "theta_coset", targs))
    rows.append((*q_table_workload()[:1], "q_table", q_table_workload()[1]))
    print(f"{'workload':<42} {'python':>10} {'cython':>10} {'speedup':>8}")
    for name, fn_name, fargs in rows:
        py = bench(getattr(_pykernels, fn_name), fargs, args.repeat)
        if _ckernels is None:
            print(f"{name:<42} {py * 1e3:>8.2f}ms {'-':>10} {'-':>8}")
            continue
        cy = bench(getattr(_ckernels, fn_name), fargs, args.repeat)
        if fn_name == "theta_coset":
            a, b = _pykernels.theta_coset(*fargs), _ckernels.theta_coset(*fargs)
            assert a[2] == b[2] and abs(complex(a[0], a[1]) - complex(b[0], b[1])) < 1e-12
        else:
            assert np.array_equal(_pykernels.q_table(*fargs), _ckernels.q_table(*fargs))
        print(f"{name:<42} {py * 1e3:>8.2f}ms {cy * 1e3:>8.2f}ms {py / cy:>7.1f}x")


if __name__ == "__main__":
    main()
