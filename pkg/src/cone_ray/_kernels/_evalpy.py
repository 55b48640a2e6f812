"""Pure-numpy program evaluator: the fallback backend.

Evaluates a compiled stack program over all points at once with
vectorized operations.  Domain violations are detected by masks before
(or right after, for overflow) each operation, and the *lowest* failing
point index is reported, matching the compiled backend's first-hit
semantics.
"""

from __future__ import annotations

import numpy as np

from . import program as prog


def _first_bad(mask: np.ndarray) -> int:
    return int(np.flatnonzero(mask)[0])


def eval_program(ops, args, consts, slots, n, stack_need):
    stack: list[np.ndarray] = []
    for j in range(len(ops)):
        op = int(ops[j])
        arg = int(args[j])
        if op == prog.OP_CONST:
            stack.append(np.full(n, consts[arg]))
            continue
        if op == prog.OP_VAR:
            stack.append(slots[arg])
            continue
        if op == prog.OP_NEG:
            stack[-1] = -stack[-1]
            continue
        if op in (prog.OP_EXP, prog.OP_LOG, prog.OP_SQRT, prog.OP_ABS):
            a = stack.pop()
            if op == prog.OP_ABS:
                stack.append(np.abs(a))
                continue
            if op == prog.OP_LOG:
                bad = a <= 0.0
                if bad.any():
                    i = _first_bad(bad)
                    return None, prog.ERR_LOG_DOMAIN, j, i, float(a[i])
                stack.append(np.log(a))
                continue
            if op == prog.OP_SQRT:
                bad = a < 0.0
                if bad.any():
                    i = _first_bad(bad)
                    return None, prog.ERR_SQRT_DOMAIN, j, i, float(a[i])
                stack.append(np.sqrt(a))
                continue
            with np.errstate(over="ignore"):
                r = np.exp(a)
            bad = ~np.isfinite(r)
            if bad.any():
                i = _first_bad(bad)
                return None, prog.ERR_NONFINITE, j, i, float(a[i])
            stack.append(r)
            continue

        b = stack.pop()
        a = stack.pop()
        if op == prog.OP_MIN:
            stack.append(np.minimum(a, b))
            continue
        if op == prog.OP_MAX:
            stack.append(np.maximum(a, b))
            continue
        if op == prog.OP_DIV:
            bad = b == 0.0
            if bad.any():
                i = _first_bad(bad)
                return None, prog.ERR_DIV_ZERO, j, i, 0.0
            with np.errstate(over="ignore"):
                r = a / b
        elif op == prog.OP_POW:
            bad = ((a < 0.0) & (b != np.floor(b))) | ((a == 0.0) & (b < 0.0))
            if bad.any():
                i = _first_bad(bad)
                return None, prog.ERR_POW_DOMAIN, j, i, float(a[i])
            with np.errstate(over="ignore", invalid="ignore"):
                r = np.power(a, b)
        elif op == prog.OP_ADD:
            with np.errstate(over="ignore"):
                r = a + b
        elif op == prog.OP_SUB:
            with np.errstate(over="ignore"):
                r = a - b
        else:  # OP_MUL
            with np.errstate(over="ignore"):
                r = a * b
        bad = ~np.isfinite(r)
        if bad.any():
            i = _first_bad(bad)
            return None, prog.ERR_NONFINITE, j, i, float(a[i])
        stack.append(r)

    return stack.pop(), prog.ERR_OK, -1, -1, 0.0
