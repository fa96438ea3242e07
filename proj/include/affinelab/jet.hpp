#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "affinelab/errors.hpp"

namespace affinelab {

/// Dense layout of multi-indices alpha with |alpha| <= order in
/// graded-lexicographic order, shared by every jet of one shape.
/// Cached per (num_vars, order); thread-safe to obtain.
class JetLayout {
public:
    static const JetLayout& get(int num_vars, int order);

    int num_vars() const { return num_vars_; }
    int order() const { return order_; }
    int size() const { return static_cast<int>(exponents_.size()); }

    std::span<const int> exponent(int idx) const {
        return {exponents_[idx].data(), exponents_[idx].size()};
    }
    int degree(int idx) const { return degrees_[idx]; }

    /// Linear index of a multi-index, -1 if |alpha| > order.
    int index_of(std::span<const int> alpha) const;

    /// Index of alpha_i + alpha_j, -1 when the sum exceeds the order.
    int product_index(int i, int j) const { return prod_[static_cast<size_t>(i) * size() + j]; }

    /// Pairs (j, k) with alpha_j + alpha_k = alpha_g, used by division.
    const std::vector<std::pair<int, int>>& decompositions(int g) const { return decomp_[g]; }

    /// prod_i alpha_i! as a double.
    double factorial(int idx) const { return factorials_[idx]; }

private:
    JetLayout(int num_vars, int order);

    int num_vars_;
    int order_;
    std::vector<std::vector<int>> exponents_;
    std::vector<int> degrees_;
    std::vector<double> factorials_;
    std::vector<int> prod_;
    std::vector<std::vector<std::pair<int, int>>> decomp_;
};

/// Truncated multivariate Taylor expansion at a point. Coefficients store
/// Taylor coefficients, i.e. coeff(alpha) = d^alpha f / alpha!, which keeps
/// the product recurrences factorial-free.
class Jet {
public:
    Jet() : num_vars_(0), order_(0) {}

    static Jet constant(double value, int num_vars, int order);
    static Jet variable(double value, int var_index, int num_vars, int order);

    int num_vars() const { return num_vars_; }
    int order() const { return order_; }
    const JetLayout& layout() const { return JetLayout::get(num_vars_, order_); }

    /// Constant term (the value at the expansion point).
    double value() const { return coeffs_.empty() ? 0.0 : coeffs_[0]; }

    double coeff(int idx) const { return coeffs_[idx]; }
    double& coeff(int idx) { return coeffs_[idx]; }
    double coeff(std::span<const int> alpha) const;

    /// d^alpha value (undoes the Taylor-coefficient convention).
    double partial(std::span<const int> alpha) const;
    double partial(std::initializer_list<int> alpha) const {
        return partial(std::span<const int>(alpha.begin(), alpha.size()));
    }

    /// Jet of d/du_i, one order lower.
    Jet partial_jet(int var) const;

    Jet truncated(int new_order) const;

    /// Coefficients of the chart reflection u_var -> -u_var.
    Jet reflected(int var) const;

    Jet operator-() const;
    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    Jet& operator+=(double s);
    Jet& operator-=(double s);
    Jet& operator*=(double s);
    Jet& operator/=(double s);

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator*(const Jet& a, const Jet& b);
    friend Jet operator/(const Jet& a, const Jet& b);
    friend Jet operator+(Jet a, double s) { return a += s; }
    friend Jet operator+(double s, Jet a) { return a += s; }
    friend Jet operator-(Jet a, double s) { return a -= s; }
    friend Jet operator-(double s, const Jet& a) { return -a + s; }
    friend Jet operator*(Jet a, double s) { return a *= s; }
    friend Jet operator*(double s, Jet a) { return a *= s; }
    friend Jet operator/(Jet a, double s) { return a /= s; }
    friend Jet operator/(double s, const Jet& a);

    /// Largest |coefficient|.
    double max_abs() const;

private:
    void check_shape(const Jet& o) const;

    int num_vars_;
    int order_;
    std::vector<double> coeffs_;
};

/// Truncated Taylor composition func(a). sqrt/log and pow with non-integer
/// exponent require a positive constant term; integer pow is evaluated by
/// binary exponentiation and accepts any base with nonzero constant term
/// (nonzero only needed for negative exponents).
Jet sqrt(const Jet& a);
Jet exp(const Jet& a);
Jet log(const Jet& a);
Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet pow(const Jet& a, double exponent);

/// f(a0 + w) for caller-supplied Taylor coefficients c_k = f^(k)(a0)/k!,
/// evaluated by Horner over the jet ring.
Jet analytic_compose(const Jet& a, std::span<const double> taylor_coeffs);

/// Substitute each variable offset of f by the corresponding jet in args
/// (args must have zero constant term and f's shape). Used for linear chart
/// changes.
Jet substitute(const Jet& f, const std::vector<Jet>& args);

} // namespace affinelab
