#!/usr/bin/env python3
"""Solve an LP file with HiGHS and write a `name value` solution file.

Usage: highs_solve.py MODEL SOLUTION [TIMEOUT] [MST]

Meant as a solver template for the `grundy` tools:

    GRUNDY_IP_SOLVER='python3 scripts/highs_solve.py {model} {solution} {timeout} {mst}'
"""
import os
import sys

import highspy


def main():
    model, solution = sys.argv[1], sys.argv[2]
    timeout = float(sys.argv[3]) if len(sys.argv) > 3 else float("inf")
    mst = sys.argv[4] if len(sys.argv) > 4 else None

    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    if timeout != float("inf"):
        h.setOptionValue("time_limit", timeout)
    if h.readModel(model) != highspy.HighsStatus.kOk:
        sys.exit(f"cannot read {model}")
    names = list(h.getLp().col_names_)

    if mst and os.path.getsize(mst) > 0:
        start = {}
        with open(mst) as f:
            for line in f:
                name, value = line.split()
                start[name] = float(value)
        warm = highspy.HighsSolution()
        warm.col_value = [start.get(n, 0.0) for n in names]
        warm.value_valid = True
        h.setSolution(warm)

    h.run()
    status = h.modelStatusToString(h.getModelStatus())
    values = h.getSolution().col_value
    with open(solution, "w") as f:
        f.write(f"status {status}\n")
        if values:
            f.write(f"objective {h.getInfo().objective_function_value}\n")
            for name, value in zip(names, values):
                f.write(f"{name} {round(value)}\n")


if __name__ == "__main__":
    main()
