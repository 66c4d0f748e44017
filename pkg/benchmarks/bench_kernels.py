"""Compare the compiled and numpy convolution kernels.

    python benchmarks/bench_kernels.py [--repeat 20]

Times im2col/col2im on the VAE and classifier layer shapes, then one
forward+backward pass of the image classifier under each backend.
"""
import argparse
import os
import subprocess
import sys
import timeit
from functools import partial

import numpy as np

from clarity.numerics import kernels

# (batch, channels, height, width), kernel, stride, pad: the three stride-2 encoder convolutions
SHAPES = [((128, 1, 28, 28), 3, 2, 1), ((128, 32, 14, 14), 3, 2, 1), ((128, 64, 7, 7), 3, 2, 1)]


def time_kernels(repeat):
    rng = np.random.default_rng(0)
    rows = []
    for shape, k, s, p in SHAPES:
        x = rng.random(shape, dtype=np.float32)
        for name in ("cython", "python"):
            mod = kernels.backend_module(name)
            cols = mod.im2col(x, k, s, p)
            fwd = min(timeit.repeat(partial(mod.im2col, x, k, s, p), number=1, repeat=repeat))
            bwd = min(timeit.repeat(partial(mod.col2im, cols, shape, k, s, p), number=1, repeat=repeat))
            rows.append((shape, name, fwd, bwd))
    return rows


STEP = """
import timeit
import numpy as np
from clarity import classifiers as clf
from clarity.numerics import Tensor, ops
m = clf.ClassifierModel.create("image", seed=0)
x = np.random.default_rng(0).random((128, 1, 28, 28), dtype=np.float32)
y = np.arange(128) % 10
def step():
    loss = ops.softmax_cross_entropy(m.logits_tensor(Tensor(x), train=True), y)
    loss.backward()
step()
print(min(timeit.repeat(step, number=1, repeat={repeat})))
"""


def time_training_step(repeat):
    """Each backend in a fresh interpreter, since the backend is fixed at import."""
    out = {}
    for name, env in (("cython", {}), ("python", {"CLARITY_PURE_PYTHON": "1"})):
        res = subprocess.run([sys.executable, "-c", STEP.format(repeat=repeat)], env={**os.environ, **env},
                             capture_output=True, text=True, check=True)
        out[name] = float(res.stdout.strip())
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=20)
    args = ap.parse_args()
    print(f"{'input shape':<22}{'backend':<9}{'im2col ms':>11}{'col2im ms':>11}")
    rows = time_kernels(args.repeat)
    for shape, name, fwd, bwd in rows:
        print(f"{shape!s:<22}{name:<9}{fwd * 1e3:>11.2f}{bwd * 1e3:>11.2f}")
    for i in range(0, len(rows), 2):
        (_, _, cf, cb), (_, _, pf, pb) = rows[i], rows[i + 1]
        print(f"speed-up {rows[i][0]}: im2col x{pf / cf:.1f}, col2im x{pb / cb:.1f}")
    step = time_training_step(max(3, args.repeat // 4))
    print(f"image classifier fwd+bwd, batch 128: cython {step['cython'] * 1e3:.1f} ms, "
          f"python {step['python'] * 1e3:.1f} ms (x{step['python'] / step['cython']:.2f})")


if __name__ == "__main__":
    main()
