#pragma once
// Error taxonomy shared by every module.
//
// Structural problems (malformed tables, type mismatches) throw; questions
// with a negative answer (no adjoint, no sup, search exhausted) return
// std::optional or a report instead.  Budget overruns are their own class so
// callers can map them to a distinct exit code.

#include <stdexcept>
#include <string>

namespace qkan {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input data: broken order, non-associative table, size mismatch.
struct structure_error : error {
    using error::error;
};

// Type-level misuse: composing arrows with mismatched endpoints, applying a
// functor to the wrong category, and the like.
struct type_error : error {
    using error::error;
};

// An enumeration would exceed its candidate budget.  `count` is the number
// of candidates that would have to be visited.
struct budget_error : error {
    long long count;
    budget_error(const std::string& what, long long n) : error(what), count(n) {}
};

// Problems with a workspace document: parse failure, unknown name, failed
// validation of a declared entity.
struct workspace_error : error {
    using error::error;
};

// Something the underlying theory guarantees failed to hold; always a bug in
// this library, never a property of the input.
struct internal_error : error {
    using error::error;
};

}  // namespace qkan
