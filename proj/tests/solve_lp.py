#!/usr/bin/env python3
"""Solve an LP-format MILP with HiGHS and print the optimal objective.

Exit status 3 when highspy is missing, 1 when the model has no optimum.
"""
import sys

try:
    import highspy
except ImportError:
    sys.exit(3)


def main() -> int:
    if len(sys.argv) != 2:
        print("usage: solve_lp.py MODEL.lp", file=sys.stderr)
        return 2
    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    h.setOptionValue("mip_rel_gap", 0.0)
    h.setOptionValue("mip_abs_gap", 0.0)
    if h.readModel(sys.argv[1]) != highspy.HighsStatus.kOk:
        print("cannot read " + sys.argv[1], file=sys.stderr)
        return 1
    h.run()
    if h.getModelStatus() != highspy.HighsModelStatus.kOptimal:
        print("status: " + h.modelStatusToString(h.getModelStatus()), file=sys.stderr)
        return 1
    print(repr(h.getInfo().objective_function_value))
    return 0


if __name__ == "__main__":
    sys.exit(main())
