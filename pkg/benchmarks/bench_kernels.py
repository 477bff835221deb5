"""Compare the compiled and pure-Python Cayley-table kernels.

    python benchmarks/bench_kernels.py [--repeat N]

Both backends get identical inputs; results are checked for equality before
timings are reported.
"""

import argparse
import sys
import time
from array import array

from reidemeister import _kernels
from reidemeister.corpus import corpus_entry
from reidemeister.groups import enumerate_automorphisms, from_permutation_generators
from reidemeister.torus import MappingTorus

GROUPS = ["S4", "Z7:Z3", "D6", "Q8"]


def _groups():
    for name in GROUPS:
        yield name, corpus_entry(name).group
    yield "S5", from_permutation_generators(5, [[2, 1, 3, 4, 5], [2, 3, 4, 5, 1]], name="S5")


def _cases(G):
    inv = array("i", G.inverse)
    movers = array("i", range(G.order))
    gens = array("i", G.generator_indices)
    auts = enumerate_automorphisms(G)
    tori = []
    for phi in auts[:20]:
        T = MappingTorus(G, phi)
        flat = array("i")
        for p in T.phi_powers:
            flat.extend(p)
        tori.append((phi.flat, flat, T.phi_order))
    n = G.order
    return {
        "twisted_orbits": lambda k: [k.twisted_orbits(G.flat, n, inv, phi.flat, movers) for phi in auts],
        "is_homomorphism": lambda k: [k.is_homomorphism(G.flat, n, G.flat, n, phi.flat) for phi in auts],
        "associative_on": lambda k: k.associative_on(G.flat, n, gens),
        "coset_conjugacy_labels": lambda k: [
            k.coset_conjugacy_labels(G.flat, n, inv, phi, flat, m) for phi, flat, m in tori
        ],
    }


def _normalize(result):
    if isinstance(result, (list, tuple)):
        return [_normalize(r) for r in result]
    if isinstance(result, array):
        return list(result)
    return result


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)

    compiled = _kernels.compiled_backend()
    py = _kernels.python_backend
    if compiled is None:
        print("compiled kernels are not built; run `pip install -e . --no-build-isolation`")
        return 1

    print(f"{'group':<8}{'kernel':<26}{'python (s)':>12}{'cython (s)':>12}{'speedup':>10}")
    for name, G in _groups():
        for kernel, fn in _cases(G).items():
            if _normalize(fn(py)) != _normalize(fn(compiled)):
                print(f"{name}: {kernel} results differ between backends")
                return 2
            tp = _time(lambda: fn(py), args.repeat)
            tc = _time(lambda: fn(compiled), args.repeat)
            print(f"{name:<8}{kernel:<26}{tp:>12.5f}{tc:>12.5f}{tp / max(tc, 1e-9):>9.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
