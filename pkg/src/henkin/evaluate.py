"""Recursive valuation over finite predicate structures.

Quantifiers are read Henkin-style: an individual quantifier ranges over the
universe, a predicate quantifier over the structure's own domain of that
arity, which may be a proper subset of all tables.  Predicate equality is
extensional table equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable

from .structures import (
    Assignment,
    CapExceeded,
    DEFAULT_TABLE_CAP,
    Structure,
    Table,
    empty_assignment,
)
from .syntax import (
    And,
    Atom,
    Eq,
    Exists,
    Forall,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    Var,
    all_vars,
)


class EvalError(Exception):
    """Evaluation cannot proceed: missing domain, bad assignment, or bad input."""


def resolve(structure: Structure, assignment: Assignment, var: Var):
    """Assignment lookup with the totality defaults.

    An unmentioned individual variable denotes the first individual, an
    unmentioned predicate variable the least table of its arity, so every
    assignment acts as a total one.
    """
    value = assignment.get(var)
    if value is None:
        if var.is_individual:
            return 0
        try:
            return structure.domain(var.arity)[0]
        except Exception:
            raise EvalError(f"no domain of arity {var.arity} for {var}") from None
    if var.is_individual:
        if not 0 <= value < structure.size:
            raise EvalError(f"{var} is assigned index {value}, out of range")
        return value
    if var.arity not in structure.domains or value not in structure.domains[var.arity]:
        raise EvalError(f"{var} is assigned a table outside the structure's domain")
    return value


def evaluate(structure: Structure, assignment: Assignment, formula: Formula) -> bool:
    """Truth value of the formula in the structure under the assignment."""
    match formula:
        case Eq(l, r):
            return resolve(structure, assignment, l) == resolve(structure, assignment, r)
        case Atom(p, args):
            table = resolve(structure, assignment, p)
            point = tuple(resolve(structure, assignment, a) for a in args)
            return table(point)
        case Not(b):
            return not evaluate(structure, assignment, b)
        case And(l, r):
            return evaluate(structure, assignment, l) and evaluate(structure, assignment, r)
        case Or(l, r):
            return evaluate(structure, assignment, l) or evaluate(structure, assignment, r)
        case Implies(l, r):
            return (not evaluate(structure, assignment, l)) or evaluate(
                structure, assignment, r
            )
        case Iff(l, r):
            return evaluate(structure, assignment, l) == evaluate(structure, assignment, r)
        case Forall(v, b) if v.is_individual:
            return all(
                evaluate(structure, assignment.updated(v, i), b)
                for i in range(structure.size)
            )
        case Forall(v, b):
            return all(
                evaluate(structure, assignment.updated(v, t), b)
                for t in _domain(structure, v)
            )
        case Exists(v, b) if v.is_individual:
            return any(
                evaluate(structure, assignment.updated(v, i), b)
                for i in range(structure.size)
            )
        case Exists(v, b):
            return any(
                evaluate(structure, assignment.updated(v, t), b)
                for t in _domain(structure, v)
            )
    raise EvalError(f"cannot evaluate node {type(formula).__name__}")


def _domain(structure: Structure, var: Var) -> tuple[Table, ...]:
    if var.arity not in structure.domains:
        raise EvalError(f"quantifier over {var}: no domain of arity {var.arity}")
    return structure.domain(var.arity)


@dataclass(frozen=True)
class DefinedPredicate:
    """A table defined by a formula, its distinguished variables, and the
    assignment of its remaining free variables."""

    table: Table
    formula: Formula
    variables: tuple[Var, ...]
    assignment: Assignment


def att(
    structure: Structure,
    formula: Formula,
    variables: Iterable[Var],
    assignment: Assignment | None = None,
) -> DefinedPredicate:
    """The predicate defined by the formula over the distinguished variables.

    Entry at a tuple is the truth value of the formula with the variables
    pointwise updated to that tuple.
    """
    variables = tuple(variables)
    assignment = assignment if assignment is not None else empty_assignment()
    if not variables:
        raise EvalError("att needs at least one distinguished variable")
    if len(set(variables)) != len(variables):
        raise EvalError("distinguished variables must be distinct")
    for v in variables:
        if not v.is_individual:
            raise EvalError(f"distinguished variable {v} must be an individual variable")
        if v in formula.bound_vars:
            raise EvalError(f"{v} must occur only free in the formula")
    bits = []
    for point in product(range(structure.size), repeat=len(variables)):
        updated = assignment.updated_many(zip(variables, point))
        bits.append(evaluate(structure, updated, formula))
    table = Table(structure.size, len(variables), tuple(bits))
    return DefinedPredicate(table, formula, variables, assignment)


@dataclass(frozen=True)
class ComprehensionResult:
    """Outcome of a single comprehension check; ``table`` is the defined
    predicate, present in the structure iff ``holds``."""

    holds: bool
    arity: int
    table: Table


def check_comprehension(
    structure: Structure,
    formula: Formula,
    variables: Iterable[Var],
    assignment: Assignment | None = None,
) -> ComprehensionResult:
    """Whether the predicate defined by the formula lies in the structure.

    This is the instance check for the comprehension axiom on the formula:
    the structure satisfies it iff the defined table is already a member of
    the matching domain.
    """
    variables = tuple(variables)
    n = len(variables)
    if n not in structure.domains:
        raise EvalError(f"arity shortfall: structure has no domain of arity {n}")
    witness_var = Var(0, n)
    if witness_var in all_vars(formula):
        raise EvalError(f"{witness_var} must not occur in the comprehension formula")
    defined = att(structure, formula, variables, assignment)
    return ComprehensionResult(
        holds=defined.table in structure.domains[n], arity=n, table=defined.table
    )


# ---------------------------------------------------------------------------
# Definability saturation.
#
# The exact closure of a structure under definability is approximated by a
# depth-bounded loop: enumerate all formulas up to the given AST depth over a
# small canonical vocabulary, take each formula's full list of free
# individual variables as the distinguished tuple, range the remaining free
# predicate variables over the current domains, and add every defined table
# that is missing.  Additions apply between rounds; the loop stops after two
# consecutive rounds without growth.
#
# Free individual parameters are deliberately not ranged over: the
# distinguished tuple absorbs every free individual variable.  Closure under
# parameter-free definability is what the stabilizer bound guarantees for
# permutation models, and it keeps invariant structures at their fixpoint.
# ---------------------------------------------------------------------------

DEFAULT_FORMULA_CAP = 200_000


@dataclass
class SaturationReport:
    depth_bound: int
    rounds: int
    formulas_used: int
    added: dict[int, int]


def saturate(
    structure: Structure,
    depth_bound: int,
    *,
    table_cap: int = DEFAULT_TABLE_CAP,
    formula_cap: int = DEFAULT_FORMULA_CAP,
) -> Structure:
    out, _ = saturate_with_report(
        structure, depth_bound, table_cap=table_cap, formula_cap=formula_cap
    )
    return out


def saturate_with_report(
    structure: Structure,
    depth_bound: int,
    *,
    table_cap: int = DEFAULT_TABLE_CAP,
    formula_cap: int = DEFAULT_FORMULA_CAP,
) -> tuple[Structure, SaturationReport]:
    from .corpus import enumerate_formulas
    from .syntax import ind, pred

    if depth_bound < 1:
        raise EvalError("depth bound must be >= 1")
    arities = sorted(structure.domains)
    max_arity = max(arities)
    ind_vocab = [ind(i) for i in range(1, max_arity + 2)]
    pred_vocab = [pred(j, n) for n in arities for j in (0, 1)]
    formulas = enumerate_formulas(depth_bound, ind_vocab, pred_vocab, cap=formula_cap)

    jobs = []
    for f in formulas:
        xs = tuple(sorted(v for v in f.free_vars if v.is_individual))
        if not 1 <= len(xs) <= max_arity or len(xs) not in structure.domains:
            continue
        if any(v in f.bound_vars for v in xs):
            continue
        preds = tuple(sorted(v for v in f.free_vars if v.is_predicate))
        jobs.append((f, xs, preds))

    domains = {n: set(ts) for n, ts in structure.domains.items()}
    added: dict[int, int] = {n: 0 for n in domains}
    rounds = 0
    quiet = 0
    while quiet < 2:
        current = Structure(
            structure.individuals, {n: frozenset(ts) for n, ts in domains.items()}
        )
        new_tables: dict[int, set[Table]] = {n: set() for n in domains}
        for formula, xs, preds in jobs:
            for combo in product(*(current.domain(p.arity) for p in preds)):
                assignment = Assignment(dict(zip(preds, combo)))
                table = att(current, formula, xs, assignment).table
                if table not in domains[len(xs)]:
                    new_tables[len(xs)].add(table)
        grew = False
        for n, tables in new_tables.items():
            if tables:
                grew = True
                domains[n] |= tables
                added[n] += len(tables)
                if len(domains[n]) > table_cap:
                    raise CapExceeded(f"saturated domain of arity {n}", len(domains[n]), table_cap)
        rounds += 1
        quiet = 0 if grew else quiet + 1
    out = Structure(structure.individuals, {n: frozenset(ts) for n, ts in domains.items()})
    report = SaturationReport(
        depth_bound=depth_bound,
        rounds=rounds,
        formulas_used=len(jobs),
        added={n: k for n, k in added.items() if k},
    )
    return out, report
