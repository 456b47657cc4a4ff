"""Core syntax for a two-sorted second-order language.

Individual variables are written ``x0, x1, ...`` and n-ary predicate
variables ``A0^n, A1^n, ...``.  Formulas are built from predicate
application ``A x1 ... xn``, equality at either sort, the connectives
``~ & | -> <->``, and quantifiers over both sorts.

Quantifier construction enforces the grammar's side condition: the bound
variable must not be bound again anywhere in the body.  Violations are
rejected rather than silently repaired; :func:`rename_bound_away` is the
explicit repair used by schema instantiation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping


class FormulaError(Exception):
    """Malformed formula construction."""


class ArityError(FormulaError):
    """Sort or arity mismatch in an atomic formula."""


class CaptureError(FormulaError):
    """A variable would be bound twice, or a substitution would be captured."""


class SignatureError(FormulaError):
    """A schema payload uses free variables outside the declared signature."""


class LoweringError(FormulaError):
    """A predicate variable cannot be rewritten to an application form."""


@dataclass(frozen=True, order=True)
class Var:
    """A sorted variable: arity 0 is an individual, arity n >= 1 an n-ary predicate."""

    index: int
    arity: int = 0

    def __post_init__(self) -> None:
        if self.index < 0:
            raise FormulaError(f"variable index must be >= 0, got {self.index}")
        if self.arity < 0:
            raise FormulaError(f"variable arity must be >= 0, got {self.arity}")

    @property
    def is_individual(self) -> bool:
        return self.arity == 0

    @property
    def is_predicate(self) -> bool:
        return self.arity > 0

    @property
    def kind(self) -> str:
        return "individual" if self.arity == 0 else "predicate"

    def __str__(self) -> str:
        if self.arity == 0:
            return f"x{self.index}"
        return f"A{self.index}^{self.arity}"


def ind(index: int) -> Var:
    """The individual variable x<index>."""
    return Var(index, 0)


def pred(index: int, arity: int) -> Var:
    """The predicate variable A<index>^<arity>."""
    if arity < 1:
        raise FormulaError(f"predicate variables need arity >= 1, got {arity}")
    return Var(index, arity)


@dataclass(frozen=True)
class Formula:
    """Base class; use the concrete node classes below."""

    def _finish(self, free: frozenset, bound: frozenset) -> None:
        object.__setattr__(self, "_free", free)
        object.__setattr__(self, "_bound", bound)

    @property
    def free_vars(self) -> frozenset[Var]:
        return self._free  # type: ignore[attr-defined]

    @property
    def bound_vars(self) -> frozenset[Var]:
        return self._bound  # type: ignore[attr-defined]

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True)
class Atom(Formula):
    """Application of a predicate variable to individual variables."""

    predicate: Var
    args: tuple[Var, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "args", tuple(self.args))
        if not self.predicate.is_predicate:
            raise ArityError(f"{self.predicate} cannot head an application")
        if len(self.args) != self.predicate.arity:
            raise ArityError(
                f"{self.predicate} expects {self.predicate.arity} arguments, "
                f"got {len(self.args)}"
            )
        for a in self.args:
            if not a.is_individual:
                raise ArityError(f"application argument {a} must be an individual variable")
        self._finish(frozenset((self.predicate, *self.args)), frozenset())


@dataclass(frozen=True)
class Eq(Formula):
    """Equality between two variables of the same sort.

    Predicate equality is extensional: it compares the assigned truth tables.
    """

    left: Var
    right: Var

    def __post_init__(self) -> None:
        if self.left.arity != self.right.arity:
            raise ArityError(
                f"equality needs both sides of the same sort: {self.left} vs {self.right}"
            )
        self._finish(frozenset((self.left, self.right)), frozenset())


@dataclass(frozen=True)
class Not(Formula):
    body: Formula

    def __post_init__(self) -> None:
        _check_formula(self.body)
        self._finish(self.body.free_vars, self.body.bound_vars)


@dataclass(frozen=True)
class _Binary(Formula):
    left: Formula
    right: Formula

    def __post_init__(self) -> None:
        _check_formula(self.left)
        _check_formula(self.right)
        self._finish(
            self.left.free_vars | self.right.free_vars,
            self.left.bound_vars | self.right.bound_vars,
        )


@dataclass(frozen=True)
class And(_Binary):
    pass


@dataclass(frozen=True)
class Or(_Binary):
    pass


@dataclass(frozen=True)
class Implies(_Binary):
    pass


@dataclass(frozen=True)
class Iff(_Binary):
    pass


@dataclass(frozen=True)
class _Quantifier(Formula):
    var: Var
    body: Formula

    def __post_init__(self) -> None:
        _check_formula(self.body)
        if self.var in self.body.bound_vars:
            raise CaptureError(
                f"{self.var} is already bound inside the body and cannot be quantified again"
            )
        self._finish(self.body.free_vars - {self.var}, self.body.bound_vars | {self.var})


@dataclass(frozen=True)
class Forall(_Quantifier):
    pass


@dataclass(frozen=True)
class Exists(_Quantifier):
    pass


@dataclass(frozen=True)
class Slot(Formula):
    """Placeholder leaf in a schema template.

    ``signature`` lists the variables a payload may use free.
    """

    name: str
    signature: frozenset[Var]

    def __post_init__(self) -> None:
        object.__setattr__(self, "signature", frozenset(self.signature))
        self._finish(self.signature, frozenset())


BINARY_NODES = (And, Or, Implies, Iff)


def _check_formula(f) -> None:
    if not isinstance(f, Formula):
        raise FormulaError(f"expected a Formula, got {type(f).__name__}")


def free_vars(f: Formula) -> frozenset[Var]:
    return f.free_vars


def bound_vars(f: Formula) -> frozenset[Var]:
    return f.bound_vars


def all_vars(f: Formula) -> frozenset[Var]:
    return f.free_vars | f.bound_vars


def depth(f: Formula) -> int:
    """AST depth; atomic formulas have depth 0."""
    match f:
        case Atom() | Eq() | Slot():
            return 0
        case Not(b) | Forall(_, b) | Exists(_, b):
            return 1 + depth(b)
        case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
            return 1 + max(depth(l), depth(r))
    raise FormulaError(f"unknown node {type(f).__name__}")


def subformulas(f: Formula) -> Iterator[Formula]:
    """All subformulas, the formula itself included, in post-order."""
    match f:
        case Atom() | Eq() | Slot():
            pass
        case Not(b) | Forall(_, b) | Exists(_, b):
            yield from subformulas(b)
        case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
            yield from subformulas(l)
            yield from subformulas(r)
    yield f


def individual_quantifier_count(f: Formula) -> int:
    """Number of quantifier nodes that bind an individual variable."""
    return sum(
        1
        for g in subformulas(f)
        if isinstance(g, (Forall, Exists)) and g.var.is_individual
    )


# ---------------------------------------------------------------------------
# Printing.
#
# Precedence: ~ binds tightest, then &, |, ->, <->; the arrows associate to
# the right, & and | to the left.  A quantifier body extends as far right as
# possible.  Negated subformulas always carry parentheses, and so does a
# quantifier body that is a binary connective; both conventions are stable
# under re-parsing.
# ---------------------------------------------------------------------------

_PREC_IFF, _PREC_IMPLIES, _PREC_OR, _PREC_AND, _PREC_UNARY = 1, 2, 3, 4, 5


def format_formula(f: Formula) -> str:
    """Render a formula in the surface syntax; inverse of ``parse``."""
    return _fmt(f, 0)


def _fmt(f: Formula, level: int) -> str:
    match f:
        case Atom(p, args):
            s, prec = " ".join(str(v) for v in (p, *args)), _PREC_UNARY + 1
        case Eq(l, r):
            s, prec = f"{l} = {r}", _PREC_UNARY + 1
        case Slot(name, _):
            s, prec = f"?{name}", _PREC_UNARY + 1
        case Not(b):
            s, prec = f"~({_fmt(b, 0)})", _PREC_UNARY
        case And(l, r):
            s, prec = f"{_fmt(l, _PREC_AND)} & {_fmt(r, _PREC_AND + 1)}", _PREC_AND
        case Or(l, r):
            s, prec = f"{_fmt(l, _PREC_OR)} | {_fmt(r, _PREC_OR + 1)}", _PREC_OR
        case Implies(l, r):
            s, prec = f"{_fmt(l, _PREC_IMPLIES + 1)} -> {_fmt(r, _PREC_IMPLIES)}", _PREC_IMPLIES
        case Iff(l, r):
            s, prec = f"{_fmt(l, _PREC_IFF + 1)} <-> {_fmt(r, _PREC_IFF)}", _PREC_IFF
        case Forall(v, b) | Exists(v, b):
            kw = "all" if isinstance(f, Forall) else "ex"
            body = _fmt(b, 0)
            if isinstance(b, BINARY_NODES):
                body = f"({body})"
            s, prec = f"{kw} {v} . {body}", 0
        case _:
            raise FormulaError(f"unknown node {type(f).__name__}")
    return f"({s})" if prec < level else s


# ---------------------------------------------------------------------------
# Substitution and renaming.
# ---------------------------------------------------------------------------


def substitute_ind(f: Formula, var: Var, replacement: Var) -> Formula:
    """Replace free occurrences of individual ``var`` by individual ``replacement``."""
    if not (var.is_individual and replacement.is_individual):
        raise FormulaError("substitute_ind works on individual variables")
    if var == replacement or var not in f.free_vars:
        return f
    match f:
        case Atom(p, args):
            return Atom(p, tuple(replacement if a == var else a for a in args))
        case Eq(l, r):
            return Eq(replacement if l == var else l, replacement if r == var else r)
        case Not(b):
            return Not(substitute_ind(b, var, replacement))
        case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
            return type(f)(
                substitute_ind(l, var, replacement), substitute_ind(r, var, replacement)
            )
        case Forall(v, b) | Exists(v, b):
            if v == replacement:
                raise CaptureError(
                    f"substituting {replacement} for {var} would be captured by "
                    f"the quantifier on {v}"
                )
            return type(f)(v, substitute_ind(b, var, replacement))
        case Slot():
            raise FormulaError("cannot substitute inside a schema slot")
    raise FormulaError(f"unknown node {type(f).__name__}")


def substitute_pred_var(f: Formula, var: Var, replacement: Var) -> Formula:
    """Replace free occurrences of predicate ``var`` by predicate ``replacement``."""
    if not (var.is_predicate and replacement.is_predicate):
        raise FormulaError("substitute_pred_var works on predicate variables")
    if var.arity != replacement.arity:
        raise ArityError(f"{var} and {replacement} differ in arity")
    if var == replacement or var not in f.free_vars:
        return f
    match f:
        case Atom(p, args):
            return Atom(replacement if p == var else p, args)
        case Eq(l, r):
            return Eq(replacement if l == var else l, replacement if r == var else r)
        case Not(b):
            return Not(substitute_pred_var(b, var, replacement))
        case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
            return type(f)(
                substitute_pred_var(l, var, replacement),
                substitute_pred_var(r, var, replacement),
            )
        case Forall(v, b) | Exists(v, b):
            if v == replacement:
                raise CaptureError(
                    f"substituting {replacement} for {var} would be captured by "
                    f"the quantifier on {v}"
                )
            return type(f)(v, substitute_pred_var(b, var, replacement))
        case Slot():
            raise FormulaError("cannot substitute inside a schema slot")
    raise FormulaError(f"unknown node {type(f).__name__}")


def lower_predicate_application(
    f: Formula, var: Var, target: Var, prefix: tuple[Var, ...]
) -> Formula:
    """Rewrite every application ``var t1..tm`` to ``target prefix t1..tm``.

    Fails with :class:`LoweringError` when ``var`` occurs in a predicate
    equality, since there is no application form to rewrite there.
    """
    if not var.is_predicate or not target.is_predicate:
        raise FormulaError("lowering rewrites predicate variables")
    if target.arity != var.arity + len(prefix):
        raise ArityError("target arity must be the prefix length plus the source arity")
    if var not in f.free_vars:
        return f
    match f:
        case Atom(p, args):
            if p == var:
                return Atom(target, tuple(prefix) + args)
            return f
        case Eq(l, r):
            if var in (l, r):
                raise LoweringError(f"{var} occurs in a predicate equality; cannot lower")
            return f
        case Not(b):
            return Not(lower_predicate_application(b, var, target, prefix))
        case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
            return type(f)(
                lower_predicate_application(l, var, target, prefix),
                lower_predicate_application(r, var, target, prefix),
            )
        case Forall(v, b) | Exists(v, b):
            if v == target or v in prefix:
                raise CaptureError(
                    f"lowering {var} under a quantifier on {v} would capture the rewrite"
                )
            return type(f)(v, lower_predicate_application(b, var, target, prefix))
        case Slot():
            raise FormulaError("cannot lower inside a schema slot")
    raise FormulaError(f"unknown node {type(f).__name__}")


def _substitute_var(f: Formula, var: Var, replacement: Var) -> Formula:
    if var.is_individual:
        return substitute_ind(f, var, replacement)
    return substitute_pred_var(f, var, replacement)


def rename_bound_away(f: Formula, forbidden: Iterable[Var]) -> Formula:
    """Rename bound variables so none of ``forbidden`` is bound in the result.

    Fresh indices are allocated per arity, above everything used in the
    formula or listed as forbidden.
    """
    forbidden = frozenset(forbidden)
    if not (f.bound_vars & forbidden):
        return f
    taken: dict[int, int] = {}
    for v in all_vars(f) | forbidden:
        taken[v.arity] = max(taken.get(v.arity, -1), v.index)

    def fresh(arity: int) -> Var:
        taken[arity] = taken.get(arity, -1) + 1
        return Var(taken[arity], arity)

    def rec(g: Formula) -> Formula:
        match g:
            case Atom() | Eq() | Slot():
                return g
            case Not(b):
                return Not(rec(b))
            case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
                return type(g)(rec(l), rec(r))
            case Forall(v, b) | Exists(v, b):
                body = rec(b)
                if v in forbidden:
                    v2 = fresh(v.arity)
                    return type(g)(v2, _substitute_var(body, v, v2))
                return type(g)(v, body)
        raise FormulaError(f"unknown node {type(g).__name__}")

    return rec(f)


# ---------------------------------------------------------------------------
# Building blocks used by the schema constructors.
# ---------------------------------------------------------------------------


def conj(parts: Iterable[Formula]) -> Formula:
    """Left-folded conjunction of a nonempty sequence."""
    parts = list(parts)
    if not parts:
        raise FormulaError("conjunction of nothing")
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


def disj(parts: Iterable[Formula]) -> Formula:
    """Left-folded disjunction of a nonempty sequence."""
    parts = list(parts)
    if not parts:
        raise FormulaError("disjunction of nothing")
    out = parts[0]
    for p in parts[1:]:
        out = Or(out, p)
    return out


def forall_many(vs: Iterable[Var], body: Formula) -> Formula:
    out = body
    for v in reversed(tuple(vs)):
        out = Forall(v, out)
    return out


def exists_many(vs: Iterable[Var], body: Formula) -> Formula:
    out = body
    for v in reversed(tuple(vs)):
        out = Exists(v, out)
    return out


def exists_unique(vs: Iterable[Var], body: Formula) -> Formula:
    """Unique existence over a tuple of individual variables.

    Expands to existence plus a two-copy clause: copies of the tuple that
    both satisfy the body are equal componentwise.  The two copies use fresh
    indices above everything in the body.
    """
    vs = tuple(vs)
    if not vs:
        raise FormulaError("exists_unique needs at least one variable")
    if any(not v.is_individual for v in vs):
        raise FormulaError("exists_unique binds individual variables")
    if len(set(vs)) != len(vs):
        raise FormulaError("exists_unique variables must be distinct")
    top = max((v.index for v in all_vars(body) | set(vs) if v.is_individual), default=-1)
    first = tuple(ind(top + 1 + i) for i in range(len(vs)))
    second = tuple(ind(top + 1 + len(vs) + i) for i in range(len(vs)))

    def copy_with(replacements: tuple[Var, ...]) -> Formula:
        out = body
        for old, new in zip(vs, replacements):
            out = substitute_ind(out, old, new)
        return out

    same = conj([Eq(a, b) for a, b in zip(first, second)])
    uniqueness = forall_many(
        first + second, Implies(And(copy_with(first), copy_with(second)), same)
    )
    return And(exists_many(vs, body), uniqueness)


# ---------------------------------------------------------------------------
# Schema templates.
# ---------------------------------------------------------------------------


def slots_of(template: Formula) -> dict[str, frozenset[Var]]:
    """The slot names of a template with their declared signatures."""
    out: dict[str, frozenset[Var]] = {}
    for g in subformulas(template):
        if isinstance(g, Slot):
            if g.name in out and out[g.name] != g.signature:
                raise SignatureError(f"slot {g.name!r} declared with two signatures")
            out[g.name] = g.signature
    return out


def instantiate_schema(template: Formula, payloads: Mapping[str, Formula]) -> Formula:
    """Fill every slot of ``template`` with its payload.

    Each payload's free variables must stay inside the slot's declared
    signature.  Bound variables of the template are renamed away from the
    payloads' variables first, so the only capture the result can still
    report is a payload binding one of its own signature variables, which
    no renaming of the template can repair.
    """
    declared = slots_of(template)
    for name in declared:
        if name not in payloads:
            raise SignatureError(f"no payload for slot {name!r}")
    for name in payloads:
        if name not in declared:
            raise SignatureError(f"template has no slot named {name!r}")
    protected: set[Var] = set()
    payload_vars: set[Var] = set()
    for name, sig in declared.items():
        h = payloads[name]
        if not h.free_vars <= sig:
            extra = ", ".join(sorted(str(v) for v in h.free_vars - sig))
            raise SignatureError(f"payload for slot {name!r} has stray free variables: {extra}")
        protected |= sig
        payload_vars |= all_vars(h)
    body = rename_bound_away(template, payload_vars - protected)

    def rec(g: Formula) -> Formula:
        match g:
            case Slot(name, _):
                return payloads[name]
            case Atom() | Eq():
                return g
            case Not(b):
                return Not(rec(b))
            case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
                return type(g)(rec(l), rec(r))
            case Forall(v, b) | Exists(v, b):
                return type(g)(v, rec(b))
        raise FormulaError(f"unknown node {type(g).__name__}")

    return rec(body)


# ---------------------------------------------------------------------------
# Derivation reconstruction.
#
# Rule 1 covers the atomic forms, rule 2 the connectives, rule 3 individual
# quantification, rule 4 predicate quantification.  The side conditions are
# re-checked by direct traversal, independently of the constructor caches,
# so this doubles as a well-formedness audit.
# ---------------------------------------------------------------------------


def derivation(f: Formula) -> list[tuple[int, Formula]]:
    """Post-order list of (rule number, node) pairs deriving the formula."""

    def scan_bound(g: Formula) -> set[Var]:
        match g:
            case Atom() | Eq():
                return set()
            case Not(b):
                return scan_bound(b)
            case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
                return scan_bound(l) | scan_bound(r)
            case Forall(v, b) | Exists(v, b):
                return {v} | scan_bound(b)
        raise FormulaError(f"{type(g).__name__} is not derivable")

    steps: list[tuple[int, Formula]] = []

    def rec(g: Formula) -> None:
        match g:
            case Atom(p, args):
                if len(args) != p.arity or not p.is_predicate:
                    raise ArityError(f"bad application {g}")
                steps.append((1, g))
            case Eq(l, r):
                if l.arity != r.arity:
                    raise ArityError(f"bad equality {g}")
                steps.append((1, g))
            case Not(b):
                rec(b)
                steps.append((2, g))
            case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
                rec(l)
                rec(r)
                steps.append((2, g))
            case Forall(v, b) | Exists(v, b):
                rec(b)
                if v in scan_bound(b):
                    raise CaptureError(f"{v} does not occur only free under its quantifier")
                steps.append((3 if v.is_individual else 4, g))
            case _:
                raise FormulaError(f"{type(g).__name__} is not derivable")

    rec(f)
    return steps
