#!/usr/bin/env python3
# Copyright 2026 The racecars Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Example external objective for `racecars run --fn-external`.

Speaks the line protocol on stdin/stdout: the first line is "DIM n" and is
answered with "OK"; every later line holds n space-separated reals and is
answered with one real. Replace `objective` with your own function.
"""

import math
import sys


def objective(x):
    return sum((v - 0.2) ** 2 for v in x)


def main():
    header = sys.stdin.readline().split()
    if len(header) != 2 or header[0] != "DIM":
        sys.exit("expected 'DIM n'")
    n = int(header[1])
    print("OK", flush=True)
    for line in sys.stdin:
        x = [float(t) for t in line.split()]
        if len(x) != n:
            print("nan", flush=True)
            continue
        y = objective(x)
        print(repr(y) if math.isfinite(y) else "nan", flush=True)


if __name__ == "__main__":
    main()
