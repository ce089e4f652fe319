#!/usr/bin/env python3
"""MILP backend: reads an LP-format model, solves it with scipy's HiGHS
interface, and writes a plain-text solution file.

Solution file format (one item per line):
    status   optimal|feasible|infeasible|unbounded|timeout|unread
    objective <value>          (when an incumbent exists)
    bound     <value>          (when a dual bound is known)
    var <name> <value>         (one per variable, when an incumbent exists)
"""

import argparse
import re
import sys

TOKEN = re.compile(
    r"<=|>=|=<|=>|[<>=:+-]|[0-9.][0-9.eE+-]*|[A-Za-z_!\"#$%&(),;?@'`{}~][A-Za-z0-9_!\"#$%&(),;?@.'`{}~]*"
)

SECTION_STARTS = {
    "minimize": "objective",
    "minimum": "objective",
    "min": "objective",
    "maximize": "objective_max",
    "maximum": "objective_max",
    "max": "objective_max",
    "subject": "constraints",
    "st": "constraints",
    "s.t.": "constraints",
    "such": "constraints",
    "bounds": "bounds",
    "bound": "bounds",
    "binaries": "binaries",
    "binary": "binaries",
    "bin": "binaries",
    "generals": "generals",
    "general": "generals",
    "gen": "generals",
    "integers": "generals",
    "integer": "generals",
    "end": "end",
}


def is_number(tok):
    try:
        float(tok)
        return True
    except ValueError:
        return tok.lower() in ("inf", "+inf", "-inf", "infinity")


def to_number(tok):
    low = tok.lower()
    if low in ("inf", "+inf", "infinity"):
        return float("inf")
    if low == "-inf":
        return float("-inf")
    return float(tok)


class Model:
    def __init__(self):
        self.maximize = False
        self.obj = {}  # var -> coef
        self.obj_const = 0.0
        self.rows = []  # (name, {var: coef}, sense, rhs)
        self.vars = []  # order of first appearance
        self.var_ids = {}
        self.lb = {}
        self.ub = {}
        self.integer = set()

    def var(self, name):
        if name not in self.var_ids:
            self.var_ids[name] = len(self.vars)
            self.vars.append(name)
        return name


def tokenize(text):
    tokens = []
    for line in text.splitlines():
        line = line.split("\\", 1)[0]
        tokens.extend(TOKEN.findall(line))
    return tokens


def parse_expression(model, tokens, i):
    """Parse a linear expression, returning (coefs, const, next_index).
    Stops at a sense token or a section keyword."""
    coefs = {}
    const = 0.0
    sign = 1.0
    pending = None
    while i < len(tokens):
        tok = tokens[i]
        low = tok.lower()
        if tok in ("<=", ">=", "=<", "=>", "<", ">", "="):
            break
        if low in SECTION_STARTS and tok not in model.var_ids:
            # A bare keyword ends the expression (e.g. "Bounds").
            break
        if tok == "+":
            if pending is not None:
                const += sign * pending
                pending = None
            sign = 1.0
        elif tok == "-":
            if pending is not None:
                const += sign * pending
                pending = None
            sign = -1.0
        elif is_number(tok):
            if pending is not None:
                const += sign * pending
            pending = to_number(tok)
        else:
            name = model.var(tok)
            coef = sign * (pending if pending is not None else 1.0)
            coefs[name] = coefs.get(name, 0.0) + coef
            pending = None
            sign = 1.0
        i += 1
    if pending is not None:
        const += sign * pending
    return coefs, const, i


def parse_lp(text):
    model = Model()
    tokens = tokenize(text)
    i = 0
    section = None
    row_counter = 0
    while i < len(tokens):
        tok = tokens[i]
        low = tok.lower()
        if low in SECTION_STARTS and not (i + 1 < len(tokens) and tokens[i + 1] == ":"):
            section = SECTION_STARTS[low]
            if section == "objective_max":
                model.maximize = True
                section = "objective"
            if low == "subject" or low == "such":
                i += 1  # swallow "to"/"that"
            if section == "end":
                break
            i += 1
            continue
        if section == "objective":
            if i + 1 < len(tokens) and tokens[i + 1] == ":":
                i += 2  # objective name
            coefs, const, i = parse_expression(model, tokens, i)
            model.obj = coefs
            model.obj_const = const
        elif section == "constraints":
            if i + 1 < len(tokens) and tokens[i + 1] == ":":
                name = tok
                i += 2
            else:
                name = "r%d" % row_counter
            row_counter += 1
            coefs, const, i = parse_expression(model, tokens, i)
            sense = tokens[i]
            i += 1
            rhs_sign = 1.0
            if tokens[i] in ("+", "-"):
                rhs_sign = -1.0 if tokens[i] == "-" else 1.0
                i += 1
            rhs = rhs_sign * to_number(tokens[i]) - const  # rhs is a constant
            i += 1
            if sense in ("<=", "=<", "<"):
                s = "<="
            elif sense in (">=", "=>", ">"):
                s = ">="
            else:
                s = "="
            model.rows.append((name, coefs, s, rhs))
        elif section == "bounds":
            # forms: l <= x <= u | x <= u | x >= l | x = v | x free
            if is_number(tok):
                lo = to_number(tok)
                i += 1  # the sense token
                if i < len(tokens) and tokens[i] in ("<=", "=<", "<"):
                    i += 1
                name = model.var(tokens[i])
                i += 1
                model.lb[name] = lo
                if i < len(tokens) and tokens[i] in ("<=", "=<", "<"):
                    i += 1
                    model.ub[name] = to_number(tokens[i])
                    i += 1
            else:
                name = model.var(tok)
                i += 1
                nxt = tokens[i] if i < len(tokens) else ""
                if nxt.lower() == "free":
                    model.lb[name] = float("-inf")
                    i += 1
                elif nxt in ("<=", "=<", "<"):
                    i += 1
                    model.ub[name] = to_number(tokens[i])
                    i += 1
                elif nxt in (">=", "=>", ">"):
                    i += 1
                    model.lb[name] = to_number(tokens[i])
                    i += 1
                elif nxt == "=":
                    i += 1
                    v = to_number(tokens[i])
                    model.lb[name] = v
                    model.ub[name] = v
                    i += 1
        elif section in ("binaries", "generals"):
            name = model.var(tok)
            model.integer.add(name)
            if section == "binaries":
                model.lb.setdefault(name, 0.0)
                model.ub.setdefault(name, 1.0)
            i += 1
        else:
            i += 1
    return model


def solve(model, time_limit):
    import numpy as np
    from scipy import sparse
    from scipy.optimize import Bounds, LinearConstraint, milp

    n = len(model.vars)
    ids = model.var_ids
    c = np.zeros(n)
    for v, coef in model.obj.items():
        c[ids[v]] = coef
    if model.maximize:
        c = -c
    integrality = np.zeros(n)
    lb = np.zeros(n)
    ub = np.full(n, float("inf"))
    for v in model.vars:
        j = ids[v]
        if v in model.lb:
            lb[j] = model.lb[v]
        if v in model.ub:
            ub[j] = model.ub[v]
        if v in model.integer:
            integrality[j] = 1
    constraints = None
    if model.rows:
        data, ri, ci = [], [], []
        lo = np.full(len(model.rows), float("-inf"))
        hi = np.full(len(model.rows), float("inf"))
        for r, (_, coefs, sense, rhs) in enumerate(model.rows):
            for v, coef in coefs.items():
                data.append(coef)
                ri.append(r)
                ci.append(ids[v])
            if sense in ("<=", "="):
                hi[r] = rhs
            if sense in (">=", "="):
                lo[r] = rhs
        a = sparse.csr_matrix((data, (ri, ci)), shape=(len(model.rows), n))
        constraints = LinearConstraint(a, lo, hi)
    options = {"presolve": True}
    if time_limit and time_limit > 0:
        options["time_limit"] = float(time_limit)
    res = milp(
        c=c,
        constraints=constraints,
        integrality=integrality,
        bounds=Bounds(lb, ub),
        options=options,
    )
    return res


def write_solution(path, status, objective, bound, values):
    with open(path, "w") as f:
        f.write("status %s\n" % status)
        if objective is not None:
            f.write("objective %.17g\n" % objective)
        if bound is not None:
            f.write("bound %.17g\n" % bound)
        if values is not None:
            for name, value in values:
                f.write("var %s %.17g\n" % (name, value))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("model")
    ap.add_argument("solution")
    ap.add_argument("--time-limit", type=float, default=0.0)
    ap.add_argument("--abs-gap", type=float, default=1.0)  # HiGHS via scipy
    ap.add_argument("--threads", type=int, default=1)  # exposes no gap/thread knobs
    args = ap.parse_args()

    try:
        with open(args.model) as f:
            model = parse_lp(f.read())
    except Exception as exc:  # malformed input maps to "unread"
        print("parse error: %s" % exc, file=sys.stderr)
        write_solution(args.solution, "unread", None, None, None)
        return 0

    try:
        res = solve(model, args.time_limit)
    except Exception as exc:
        print("solve error: %s" % exc, file=sys.stderr)
        write_solution(args.solution, "unread", None, None, None)
        return 0

    sign = -1.0 if model.maximize else 1.0
    status = {0: "optimal", 1: "timeout", 2: "infeasible", 3: "unbounded"}.get(
        res.status, "unread"
    )
    objective = None
    values = None
    if res.x is not None:
        objective = sign * float(res.fun) + model.obj_const
        values = [(v, float(res.x[model.var_ids[v]])) for v in model.vars]
    bound = None
    dual = getattr(res, "mip_dual_bound", None)
    if dual is not None and dual == dual and abs(dual) != float("inf"):
        bound = sign * float(dual) + model.obj_const
    elif status == "optimal" and objective is not None:
        bound = objective
    write_solution(args.solution, status, objective, bound, values)
    return 0


if __name__ == "__main__":
    sys.exit(main())
