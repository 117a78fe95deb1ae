"""Compare the compiled and pure-Python kernel backends.

    python benchmarks/bench_kernels.py [--repeat 3]

Each backend runs in its own subprocess (the backend is chosen at import
time through RELTYPE_PURE_PYTHON).  Micro-benchmarks time the two kernels
directly; the end-to-end cases time full relation-type and oracle runs.
"""

import argparse
import json
import os
import subprocess
import sys
import time

WORKER = r"""
import json, random, sys, time
import numpy as np
from reltype import kernels, rees_ideal, relation_type
from reltype.field import GF, QQ
from reltype.geometry import nodal_curve_instance, six_points_instance, unbounded_family_gens
from reltype.oracle import minimal_generator_bidegrees

repeat = int(sys.argv[1])

def best(fn):
    out = []
    for _ in range(repeat):
        t = time.perf_counter(); fn(); out.append(time.perf_counter() - t)
    return min(out)

rng = random.Random(1)
p = 32003
fm = sorted(rng.sample(range(1 << 40), 400), reverse=True)
gm = sorted(rng.sample(range(1 << 40), 400), reverse=True)
fc = [rng.randrange(1, p) for _ in fm]
gc = [rng.randrange(1, p) for _ in gm]
def micro_sub_mul():
    for _ in range(200):
        kernels.sub_mul(fm, fc, 0, gm, gc, 12345, 77, p)
a = np.random.default_rng(1).integers(0, p, (32, 600))
def micro_rref():
    for _ in range(5):
        kernels.rref_mod_p(a.copy(), p)

def rt_of(inst):
    return lambda: relation_type(rees_ideal(inst.ring, inst.generators))

F = GF(p)
cases = {
    "sub_mul x200 (400 terms)": micro_sub_mul,
    "rref_mod_p x5 (32x600)": micro_rref,
    "rt six points GF(32003)": rt_of(six_points_instance(field=F)),
    "rt six points QQ": rt_of(six_points_instance(field=QQ)),
    "rt nodal g=5 GF(32003)": rt_of(nodal_curve_instance(5, field=F)),
    "rt nodal g=4 QQ": rt_of(nodal_curve_instance(4, field=QQ)),
    "rt unbounded d=6 GF(32003)": rt_of(unbounded_family_gens(6, F)),
    "oracle nodal g=4 (8,6)": lambda: minimal_generator_bidegrees(nodal_curve_instance(4, field=F).generators, 8, 6),
}
print(json.dumps({"backend": kernels.BACKEND, "times": {k: best(f) for k, f in cases.items()}}))
"""


def run(pure: bool, repeat: int) -> dict:
    env = dict(os.environ)
    if pure:
        env["RELTYPE_PURE_PYTHON"] = "1"
    else:
        env.pop("RELTYPE_PURE_PYTHON", None)
    out = subprocess.run([sys.executable, "-c", WORKER, str(repeat)], env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout.strip().splitlines()[-1])


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    t0 = time.perf_counter()
    fast = run(False, args.repeat)
    slow = run(True, args.repeat)
    if fast["backend"] != "cython":
        print("compiled kernels are not built; both columns use the Python fallback")
    w = max(len(k) for k in slow["times"])
    print(f"{'case':<{w}}  {'cython s':>10}  {'python s':>10}  speedup")
    for k, ts in slow["times"].items():
        tf = fast["times"][k]
        print(f"{k:<{w}}  {tf:>10.4f}  {ts:>10.4f}  {ts / tf:6.2f}x")
    print(f"total wall time {time.perf_counter() - t0:.1f} s")


if __name__ == "__main__":
    main()
