#!/usr/bin/env python3
"""Write the 5000-digit MNIST sample shipped inside the mlxtend wheel as IDX files.

Usage: make_mnist_subset.py MLXTEND_WHEEL OUTDIR

The sample is sorted by class; it is shuffled with a fixed seed and split into
4000 training and 1000 test digits.
"""
import gzip
import struct
import sys
import zipfile
from pathlib import Path

import numpy as np


def write_idx_images(path, images):
    with open(path, "wb") as f:
        f.write(struct.pack(">IIII", 0x00000803, len(images), 28, 28))
        f.write(images.astype(np.uint8).tobytes())


def write_idx_labels(path, labels):
    with open(path, "wb") as f:
        f.write(struct.pack(">II", 0x00000801, len(labels)))
        f.write(labels.astype(np.uint8).tobytes())


def main():
    wheel, outdir = sys.argv[1], Path(sys.argv[2])
    with zipfile.ZipFile(wheel) as z:
        raw = gzip.decompress(z.read("mlxtend/data/data/mnist_5k.csv.gz")).decode()
    rows = np.array([[int(float(v)) for v in line.split(",")]
                     for line in raw.splitlines() if line.strip()])
    order = np.random.default_rng(20240601).permutation(len(rows))
    rows = rows[order]
    images, labels = rows[:, :-1], rows[:, -1]
    outdir.mkdir(parents=True, exist_ok=True)
    write_idx_images(outdir / "mnist5k-train-images-idx3-ubyte", images[:4000])
    write_idx_labels(outdir / "mnist5k-train-labels-idx1-ubyte", labels[:4000])
    write_idx_images(outdir / "mnist5k-test-images-idx3-ubyte", images[4000:])
    write_idx_labels(outdir / "mnist5k-test-labels-idx1-ubyte", labels[4000:])


if __name__ == "__main__":
    main()
