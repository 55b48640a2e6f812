"""Compilation of expression ASTs to flat stack programs.

The hot paths (nonlinearity evaluation at every mesh node, box sampling
in the hypothesis checks) evaluate one expression over many points.  A
tree walk per point is wasteful, so expressions are compiled once into a
postfix opcode program that both backends (compiled extension and the
numpy fallback) execute.

Opcode numbering is mirrored in ``_evalc.pyx``; keep them in sync.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ExprEvalError
from ..expr import BinOp, Call, Expr, Lit, Neg, Var

OP_CONST = 0   # push consts[arg]
OP_VAR = 1     # push slots[arg, point]
OP_NEG = 2
OP_ADD = 3
OP_SUB = 4
OP_MUL = 5
OP_DIV = 6
OP_POW = 7
OP_EXP = 8
OP_LOG = 9
OP_SQRT = 10
OP_ABS = 11
OP_MIN = 12
OP_MAX = 13

_CALL_OPS = {"exp": OP_EXP, "log": OP_LOG, "sqrt": OP_SQRT, "abs": OP_ABS,
             "min": OP_MIN, "max": OP_MAX}
_BIN_OPS = {"+": OP_ADD, "-": OP_SUB, "*": OP_MUL, "/": OP_DIV, "^": OP_POW}

# error codes shared by both backends
ERR_OK = 0
ERR_DIV_ZERO = 1
ERR_POW_DOMAIN = 2
ERR_LOG_DOMAIN = 3
ERR_SQRT_DOMAIN = 4
ERR_NONFINITE = 5

_ERR_TEXT = {
    ERR_DIV_ZERO: "division by zero",
    ERR_POW_DOMAIN: "power domain error (fractional power of negative base, "
                    "or zero to a negative power)",
    ERR_LOG_DOMAIN: "log of non-positive value",
    ERR_SQRT_DOMAIN: "sqrt of negative value",
    ERR_NONFINITE: "overflow to non-finite value",
}


@dataclass(frozen=True)
class Program:
    ops: np.ndarray          # (n_ops,) int32
    args: np.ndarray         # (n_ops,) int32; const index / var slot / -1
    consts: np.ndarray       # (n_consts,) float64
    var_names: tuple[str, ...]
    stack_need: int
    source: str              # for error messages


def compile_expr(e: Expr, source: str = "") -> Program:
    ops: list[int] = []
    args: list[int] = []
    consts: list[float] = []
    slots: dict[str, int] = {}

    def emit(node: Expr) -> None:
        if isinstance(node, Lit):
            ops.append(OP_CONST)
            args.append(len(consts))
            consts.append(float(node.value))
        elif isinstance(node, Var):
            slot = slots.setdefault(node.name, len(slots))
            ops.append(OP_VAR)
            args.append(slot)
        elif isinstance(node, Neg):
            emit(node.operand)
            ops.append(OP_NEG)
            args.append(-1)
        elif isinstance(node, BinOp):
            emit(node.left)
            emit(node.right)
            ops.append(_BIN_OPS[node.op])
            args.append(-1)
        elif isinstance(node, Call):
            for a in node.args:
                emit(a)
            ops.append(_CALL_OPS[node.func])
            args.append(-1)
        else:
            raise TypeError(f"not an expression node: {node!r}")

    emit(e)

    depth = 0
    need = 0
    for op in ops:
        if op in (OP_CONST, OP_VAR):
            depth += 1
        elif op in (OP_ADD, OP_SUB, OP_MUL, OP_DIV, OP_POW, OP_MIN, OP_MAX):
            depth -= 1
        need = max(need, depth)

    return Program(
        ops=np.asarray(ops, dtype=np.int32),
        args=np.asarray(args, dtype=np.int32),
        consts=np.asarray(consts, dtype=np.float64),
        var_names=tuple(slots),
        stack_need=need,
        source=source,
    )


def build_slots(program: Program, env, n: int) -> np.ndarray:
    """Assemble the (n_vars, n) slot matrix from an env of scalars/arrays."""
    slots = np.empty((len(program.var_names), n), dtype=np.float64)
    for k, name in enumerate(program.var_names):
        try:
            value = env[name]
        except KeyError:
            raise ExprEvalError(f"unbound variable {name!r}") from None
        arr = np.asarray(value, dtype=np.float64)
        if arr.ndim == 0:
            slots[k, :] = float(arr)
        else:
            if arr.shape != (n,):
                raise ValueError(
                    f"variable {name!r} has shape {arr.shape}, expected ({n},)")
            slots[k, :] = arr
    return slots


def raise_eval_error(program: Program, err: int, op_index: int,
                     point_index: int, value: float) -> None:
    text = _ERR_TEXT.get(err, f"evaluation error {err}")
    src = f" in {program.source!r}" if program.source else ""
    raise ExprEvalError(f"{text} (operand {value!r}){src}", index=point_index)
