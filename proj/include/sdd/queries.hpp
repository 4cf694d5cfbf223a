#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "sdd/manager.hpp"

namespace sdd {

using BigInt = boost::multiprecision::cpp_int;

// Complete assignment, indexed by variable; entry 0 is unused.
using Assignment = std::vector<bool>;

// Value of a under a complete assignment.
bool evaluate(const Manager& m, NodeId a, const Assignment& assignment);

bool is_consistent(Manager& m, NodeId a);
bool is_valid(Manager& m, NodeId a);

// a |= (l1 or ... or lk). Evaluated by consistency under the negated
// literals without materializing the conditioned SDD.
bool entails_clause(const Manager& m, NodeId a, std::span<const int> clause);

// (l1 and ... and lk) |= a.
bool is_implicant(const Manager& m, NodeId a, std::span<const int> term);

// Constant time in compressed mode; otherwise both sides are reduced into a
// scratch compressed manager and compared there.
bool equivalent(Manager& m, NodeId a, NodeId b);

// Number of models over all vtree variables.
BigInt model_count(const Manager& m, NodeId a);

// a |= b.
bool entails(Manager& m, NodeId a, NodeId b);

// Visits models in lexicographic order by variable (false before true),
// stopping after `limit` models or when visit returns false. Each model costs
// O(vars * size(a)) consistency checks.
void for_each_model(const Manager& m, NodeId a, std::optional<std::size_t> limit,
                    const std::function<bool(const Assignment&)>& visit);

std::vector<Assignment> enumerate_models(const Manager& m, NodeId a,
                                         std::optional<std::size_t> limit = std::nullopt);

}  // namespace sdd
