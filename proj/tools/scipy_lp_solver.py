#!/usr/bin/env python3
"""Reference external solver for swc: reads an LP file in the subset written by
swc (Minimize / Subject To / Bounds / End) and writes a HiGHS-style solution
file using scipy's HiGHS backend.

usage: scipy_lp_solver.py MODEL.lp SOLUTION.sol
"""
import math
import sys

import numpy as np
from scipy.optimize import linprog
from scipy.sparse import csr_matrix


def parse_value(tok):
    t = tok.lower()
    if t in ("inf", "+inf", "infinity", "+infinity"):
        return math.inf
    if t in ("-inf", "-infinity"):
        return -math.inf
    return float(tok)


def is_number(tok):
    try:
        parse_value(tok)
        return True
    except ValueError:
        return False


def parse_expr(tokens):
    terms, sign, coef = [], 1.0, None
    for t in tokens:
        if t == "+":
            sign = 1.0
        elif t == "-":
            sign = -1.0
        elif coef is None and is_number(t):
            coef = parse_value(t)
        else:
            terms.append((t, sign * (1.0 if coef is None else coef)))
            sign, coef = 1.0, None
    return terms


def read_lp(path):
    names, index = [], {}
    cost, lower, upper = [], [], []
    rows = []

    def var(n):
        if n not in index:
            index[n] = len(names)
            names.append(n)
            cost.append(0.0)
            lower.append(0.0)
            upper.append(math.inf)
        return index[n]

    section = None
    with open(path) as f:
        for raw in f:
            s = raw.strip()
            if not s or s.startswith("\\"):
                continue
            low = s.lower()
            if low in ("minimize", "minimise", "min"):
                section = "obj"
                continue
            if low in ("subject to", "such that", "st", "s.t."):
                section = "con"
                continue
            if low == "bounds":
                section = "bnd"
                continue
            if low == "end":
                section = None
                continue
            if section == "obj":
                body = s.split(":", 1)[1] if ":" in s else s
                for n, v in parse_expr(body.split()):
                    cost[var(n)] += v
            elif section == "con":
                body = s.split(":", 1)[1]
                toks = body.split()
                op = next(k for k, t in enumerate(toks) if t in ("<=", ">=", "=", "<", ">"))
                terms = [(var(n), v) for n, v in parse_expr(toks[:op])]
                rows.append((terms, toks[op], parse_value(toks[op + 1])))
            elif section == "bnd":
                toks = s.split()
                if len(toks) == 2 and toks[1].lower() == "free":
                    j = var(toks[0])
                    lower[j], upper[j] = -math.inf, math.inf
                elif len(toks) == 3:
                    j, v = var(toks[0]), parse_value(toks[2])
                    if toks[1] == ">=":
                        lower[j] = v
                    elif toks[1] == "<=":
                        upper[j] = v
                    else:
                        lower[j] = upper[j] = v
                elif len(toks) == 5:
                    j = var(toks[2])
                    lower[j], upper[j] = parse_value(toks[0]), parse_value(toks[4])
    return names, np.array(cost), lower, upper, rows


def main():
    lp_path, sol_path = sys.argv[1], sys.argv[2]
    names, c, lower, upper, rows = read_lp(lp_path)
    n = len(names)
    ub_r, ub_c, ub_v, b_ub = [], [], [], []
    eq_r, eq_c, eq_v, b_eq = [], [], [], []
    for terms, op, rhs in rows:
        if op in ("=",):
            r = len(b_eq)
            for j, v in terms:
                eq_r.append(r), eq_c.append(j), eq_v.append(v)
            b_eq.append(rhs)
        else:
            sgn = 1.0 if op in ("<=", "<") else -1.0
            r = len(b_ub)
            for j, v in terms:
                ub_r.append(r), ub_c.append(j), ub_v.append(sgn * v)
            b_ub.append(sgn * rhs)
    a_ub = csr_matrix((ub_v, (ub_r, ub_c)), shape=(len(b_ub), n)) if b_ub else None
    a_eq = csr_matrix((eq_v, (eq_r, eq_c)), shape=(len(b_eq), n)) if b_eq else None
    bounds = [(None if math.isinf(lo) else lo, None if math.isinf(up) else up)
              for lo, up in zip(lower, upper)]
    res = linprog(c, A_ub=a_ub, b_ub=b_ub or None, A_eq=a_eq, b_eq=b_eq or None,
                  bounds=bounds, method="highs")
    status = {0: "Optimal", 1: "Iteration limit reached", 2: "Infeasible", 3: "Unbounded"}
    with open(sol_path, "w") as out:
        out.write("Model status\n%s\n\n" % status.get(res.status, "Unknown"))
        if res.status == 0:
            out.write("# Primal solution values\nFeasible\nObjective %.17g\n" % res.fun)
            out.write("# Columns %d\n" % n)
            for name, v in zip(names, res.x):
                out.write("%s %.17g\n" % (name, v))
    return 0


if __name__ == "__main__":
    sys.exit(main())
