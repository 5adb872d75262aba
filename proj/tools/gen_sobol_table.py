#!/usr/bin/env python3
"""Regenerates src/sobol_directions.inc from the Joe-Kuo new-joe-kuo-6.21201
direction numbers (as shipped with scipy.stats.qmc)."""
import os
import sys

import numpy as np
import scipy

DIMS = 1024

path = os.path.join(os.path.dirname(scipy.__file__), "stats", "_sobol_direction_numbers.npz")
table = np.load(path)
poly, vinit = table["poly"], table["vinit"]

out = sys.argv[1] if len(sys.argv) > 1 else "src/sobol_directions.inc"
with open(out, "w") as f:
    f.write("// Generated by tools/gen_sobol_table.py; do not edit.\n")
    f.write("// Joe-Kuo new-joe-kuo-6.21201 direction numbers, first %d dimensions.\n" % DIMS)
    f.write("// {polynomial, {m_1, ..., m_s}}; dimension 0 is the van der Corput sequence.\n")
    for dim in range(DIMS):
        p = int(poly[dim])
        degree = max(p.bit_length() - 1, 1)
        ms = ", ".join(str(int(v)) for v in vinit[dim][:degree])
        f.write("{%d, {%s}},\n" % (p, ms))
