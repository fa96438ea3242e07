#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace affinelab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Arithmetic mixing jets of different (num_vars, order).
struct ShapeMismatch : Error {
    using Error::Error;
};

// Analytic function outside its domain, division by a jet with zero
// constant term, and similar degeneracies.
struct DomainError : Error {
    using Error::Error;
};

// Constant-term matrix singular within pivot tolerance.
struct SingularMatrix : Error {
    using Error::Error;
};

// Tangent vectors plus transversal hint fail to span, or |det h| below
// tolerance.
struct DegenerateFrame : Error {
    using Error::Error;
};

// (h_ij) indefinite: the immersion is not locally strongly convex there.
struct NotConvex : Error {
    using Error::Error;
};

// mu outside the admissible range, grid outside the chart, bad jet order.
struct InadmissibleParameter : Error {
    using Error::Error;
};

// Base and parallel frames ended up in different working charts.
struct ChartMismatch : Error {
    using Error::Error;
};

// Newton tube inversion failed to converge: point outside the tube.
struct NewtonDivergence : Error {
    using Error::Error;
};

} // namespace affinelab
