"""JSON file formats for signatures, algebras, matrices, agendas, profiles,
criteria and frames.

Operation tables are stored row-major: arity 0 as a one-element list, arity
m >= 1 as one row per first argument, each row the flat table over the
remaining arguments. Carrier values may be given as indices or labels.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Union

from .agenda import Agenda
from .aggregation import DecisionCriterion
from .algebra import FiniteAlgebra, builtin_boolean2, builtin_mv_chain
from .modal import KripkeFrame
from .semantics import DEGREE_MODE, FILTER_MODE, Matrix
from .syntax import Signature, parse_formula, print_formula

PathLike = Union[str, Path]


def signature_to_obj(sig: Signature) -> dict:
    return {"connectives": [{"name": n, "arity": a} for n, a in sig.connectives]}


def signature_from_obj(obj: dict) -> Signature:
    return Signature(
        tuple((c["name"], int(c["arity"])) for c in obj["connectives"])
    )


def _table_to_rows(table: tuple[int, ...], arity: int, size: int) -> list:
    if arity == 0:
        return list(table)
    row = size ** (arity - 1)
    return [list(table[i * row : (i + 1) * row]) for i in range(size)]


def _table_from_rows(rows: Any, arity: int, size: int) -> tuple[int, ...]:
    if arity == 0:
        if isinstance(rows, list):
            (value,) = rows
            return (int(value),)
        return (int(rows),)
    if rows and isinstance(rows[0], list):
        flat: list[int] = []
        for row in rows:
            flat.extend(int(v) for v in row)
        return tuple(flat)
    return tuple(int(v) for v in rows)


def algebra_to_obj(algebra: FiniteAlgebra) -> dict:
    obj = {
        "signature": signature_to_obj(algebra.signature),
        "carrier": list(algebra.carrier),
        "ops": {
            name: _table_to_rows(table, algebra.signature.arity(name), algebra.size)
            for name, table in algebra.ops
        },
    }
    if algebra.order is not None:
        obj["order"] = sorted([a, b] for a, b in algebra.order)
    if algebra.name:
        obj["name"] = algebra.name
    return obj


def algebra_from_obj(obj: dict) -> FiniteAlgebra:
    sig = signature_from_obj(obj["signature"])
    carrier = tuple(str(c) for c in obj["carrier"])
    ops = tuple(
        (name, _table_from_rows(obj["ops"][name], arity, len(carrier)))
        for name, arity in sig.connectives
    )
    order = None
    if "order" in obj:
        order = frozenset((int(a), int(b)) for a, b in obj["order"])
    return FiniteAlgebra(
        signature=sig,
        carrier=carrier,
        ops=ops,
        order=order,
        name=str(obj.get("name", "")),
    )


def matrix_to_obj(matrix: Matrix) -> dict:
    obj = {"algebra": algebra_to_obj(matrix.algebra)}
    if matrix.mode == FILTER_MODE:
        obj["designated"] = sorted(matrix.designated)
    else:
        obj["mode"] = DEGREE_MODE
    return obj


def matrix_from_obj(obj: dict) -> Matrix:
    algebra = algebra_from_obj(obj["algebra"])
    if obj.get("mode") == DEGREE_MODE:
        return Matrix(algebra, None, DEGREE_MODE)
    designated = frozenset(_element_index(algebra, d) for d in obj["designated"])
    return Matrix(algebra, designated, FILTER_MODE)


def _element_index(algebra: FiniteAlgebra, value) -> int:
    if isinstance(value, int):
        return value
    return algebra.carrier.index(str(value))


BUILTIN_LOGICS = "boolean2, boolean2-degree, mvK, mvK-degree (K >= 2)"


def load_matrix(spec: PathLike) -> Matrix:
    """Load a matrix from a JSON file, or build a named builtin:
    ``boolean2``, ``mv3``, ... with an optional ``-degree`` suffix."""
    text = str(spec)
    name = text[: -len("-degree")] if text.endswith("-degree") else text
    degree = text.endswith("-degree")
    algebra = None
    if name == "boolean2":
        algebra = builtin_boolean2()
    elif name.startswith("mv") and name[2:].isdigit():
        algebra = builtin_mv_chain(int(name[2:]))
    if algebra is not None:
        if degree:
            return Matrix(algebra, None, DEGREE_MODE)
        return Matrix(algebra, frozenset({algebra.size - 1}), FILTER_MODE)
    with open(spec, "r", encoding="utf-8") as fh:
        return matrix_from_obj(json.load(fh))


def agenda_to_obj(agenda: Agenda) -> dict:
    return {"formulas": [print_formula(f) for f in agenda.formulas]}


def load_agenda(path: PathLike, matrix: Matrix) -> Agenda:
    with open(path, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    sig = matrix.algebra.signature
    if "signature_ref" in obj:
        ref = Path(path).parent / obj["signature_ref"]
        with open(ref, "r", encoding="utf-8") as fh:
            declared = signature_from_obj(json.load(fh))
        if declared != sig:
            raise ValueError(
                f"agenda signature_ref {ref} does not match the logic's signature"
            )
    formulas = tuple(parse_formula(text, sig) for text in obj["formulas"])
    return Agenda(formulas, sig, matrix, matrix.algebra)


def criterion_to_obj(criterion: DecisionCriterion) -> dict:
    return {
        "electorate": criterion.electorate,
        "values": list(criterion.values),
        "carrier": list(criterion.algebra.carrier),
    }


def load_criterion(path: PathLike, algebra: FiniteAlgebra) -> DecisionCriterion:
    """Criterion table: {"electorate": N, "values": [...]} with values in
    row-major order over voter tuples (voter 0 most significant)."""
    with open(path, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    n = int(obj["electorate"])
    values = tuple(_element_index(algebra, v) for v in obj["values"])
    return DecisionCriterion(algebra, n, values)


def profiles_from_obj(obj: list, agenda: Agenda) -> list[list[int]]:
    """A profile file is a list of attitude maps {formula text: value}."""
    profiles = []
    for row in obj:
        values = [0] * len(agenda.formulas)
        seen = set()
        for text, value in row.items():
            formula = parse_formula(text, agenda.signature)
            if formula not in agenda.index:
                raise ValueError(f"formula {text!r} is not in the agenda")
            values[agenda.index[formula]] = _element_index(agenda.algebra, value)
            seen.add(formula)
        if len(seen) != len(agenda.formulas):
            raise ValueError("attitude map must cover the whole agenda")
        profiles.append(values)
    return profiles


def frame_to_obj(frame: KripkeFrame) -> dict:
    return {"worlds": frame.worlds, "relation": sorted([a, b] for a, b in frame.relation)}


def load_frame(path: PathLike) -> KripkeFrame:
    with open(path, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    return KripkeFrame(
        int(obj["worlds"]),
        frozenset((int(a), int(b)) for a, b in obj["relation"]),
    )


def dump_json(obj: dict, path: PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")
