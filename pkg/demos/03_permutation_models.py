"""Permutations acting on tables and assignments, symmetry subgroups,
subgroup filters, and the permutation-model builder."""

from henkin import (
    Assignment,
    Group,
    Permutation,
    PrincipalNormal,
    act_on_predicate,
    build_permutation_model,
    check_transport,
    check_stabilizer_bound,
    equality_table,
    ind,
    parse,
    pointwise_stabilizer,
    standard_structure,
    symmetry_subgroup,
)
from henkin.groups import AllSubgroups, cycles_string, filter_contains
from henkin.parser import parse_var
from henkin.structures import Table

labels = ("1", "2", "3", "4")
s4 = Group.symmetric(4)
a4 = Group.alternating(4)
print("S4 order:", s4.order, " A4 order:", a4.order, " A4 normal in S4:", a4.is_normal_in(s4))

# The action moves the relation forward: the image holds at the image tuple.
swap = Permutation((1, 0, 2, 3))
one = Table.from_tuples(4, 1, [(0,)])
print("swap", cycles_string(swap, labels), "sends the {1} indicator to", act_on_predicate(swap, one).tuples())

# Symmetry subgroup: the permutations fixing a table.  Equality is fixed by
# everything; a point indicator only by the point's stabilizer.
print("sym(equality) order:", symmetry_subgroup(s4, equality_table(4)).order)
print("sym({1} indicator) order:", symmetry_subgroup(s4, one).order)
print("pointwise stabilizer of {1,2} order:", pointwise_stabilizer(s4, [0, 1]).order)

# A filter of subgroups picks which symmetry subgroups count as large.  The
# principal filter over the even permutations keeps a table exactly when it
# is invariant under all of them.
filt = PrincipalNormal((a4,))
print()
print("sym({1} indicator) in the filter:", filter_contains(filt, s4, symmetry_subgroup(s4, one)))
print("sym(equality) in the filter:    ", filter_contains(filt, s4, symmetry_subgroup(s4, equality_table(4))))

model = build_permutation_model(labels, s4, filt, 2)
print("invariant model domains:", {n: len(d) for n, d in model.domains.items()})
print("binary tables:", sorted(t.bitstring() for t in model.domains[2]))

# Truth transports along any permutation the structure is closed under, and
# the defined table of a moved assignment is the moved defined table.
print()
f = parse("ex A0^1 . (A0^1 x1 <-> A0^1 x2)")
outcome = check_transport(model, Permutation((1, 2, 3, 0)), Assignment({ind(1): 0, ind(2): 3}), f)
print("transport check:", outcome)

# The stabilizer bound: the defined table's symmetry subgroup contains the
# intersection of the parameter subgroups, so definable tables stay in the
# filter whenever the parameters do.
bound = check_stabilizer_bound(
    model, parse("A0^2 x1 x2"), (ind(1), ind(2)),
    Assignment({parse_var("A0^2"): equality_table(4)}),
    s4, filt,
)
print("stabilizer bound holds:", bound.holds, " bound order:", bound.bound_order,
      " sym order:", bound.sym_order)

# Over a full standard structure the same machinery runs with the
# everything-filter.
std = standard_structure(("a", "b"), 2)
print()
print("everything-filter model is standard:",
      build_permutation_model(("a", "b"), Group.symmetric(2), AllSubgroups(), 2) == std)
