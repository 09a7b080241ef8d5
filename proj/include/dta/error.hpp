#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace dta {

// Base class for every failure the library raises deliberately.  Callers that
// want coarse handling can catch this; the CLI maps the subclasses below onto
// distinct exit codes.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

// A k-NN bandwidth is exactly zero (k-th neighbour coincides with the point),
// so the kernel cannot be scaled there.
class DegenerateBandwidthError : public Error {
public:
    DegenerateBandwidthError(std::ptrdiff_t index, const std::string& what_arg)
        : Error(what_arg), index(index) {}
    std::ptrdiff_t index;
};

// Matrix/vector dimension mismatch or an out-of-domain parameter.
class BadShapesError : public Error {
public:
    using Error::Error;
};

// Correspondence index out of range, or a duplicated pair.
class BadCorrespondenceError : public Error {
public:
    using Error::Error;
};

// Rows of a bridged operator that carry no mass: the diffusion cannot reach
// any correspondence point from them at the chosen scale.
class UnreachablePointError : public Error {
public:
    UnreachablePointError(std::vector<std::ptrdiff_t> rows, const std::string& what_arg)
        : Error(what_arg), rows(std::move(rows)) {}
    std::vector<std::ptrdiff_t> rows;
};

// Label vector missing or of the wrong length where labels are required.
class BadLabelsError : public Error {
public:
    using Error::Error;
};

// Requested transported mass exceeds what the marginal caps admit.
class InfeasibleMassError : public Error {
public:
    using Error::Error;
};

// The transport solver failed to converge within its iteration budget.
class SolverFailureError : public Error {
public:
    using Error::Error;
};

// A plan passed to hard-assignment extraction has a row with more than one
// significant entry, i.e. it is not a vertex of the transport polytope.
class NotAVertexSolutionError : public Error {
public:
    using Error::Error;
};

// Min-max normalisation of a plan whose entries are all equal.
class ConstantPlanError : public Error {
public:
    using Error::Error;
};

// The joint affinity graph splits into several components, so a connected
// spectral embedding does not exist.
class DisconnectedGraphError : public Error {
public:
    DisconnectedGraphError(std::vector<std::ptrdiff_t> component_sizes, const std::string& what_arg)
        : Error(what_arg), component_sizes(std::move(component_sizes)) {}
    std::vector<std::ptrdiff_t> component_sizes;
};

// Partial-overlap restriction left the two domains with no common classes.
class NoSharedMassError : public Error {
public:
    using Error::Error;
};

// Unreadable, unparsable or structurally invalid input file.
class BadFileError : public Error {
public:
    using Error::Error;
};

}  // namespace dta
