#include "affinelab/jet.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>

namespace affinelab {

namespace {

uint64_t pack(std::span<const int> alpha) {
    uint64_t key = 0;
    for (int a : alpha) key = (key << 8) | static_cast<uint64_t>(a & 0xff);
    return key;
}

// Enumerate multi-indices of total degree d in lexicographic order.
void enumerate_degree(int num_vars, int d, std::vector<int>& current, int pos, int remaining,
                      std::vector<std::vector<int>>& out) {
    if (pos == num_vars - 1) {
        current[pos] = remaining;
        out.push_back(current);
        return;
    }
    for (int a = 0; a <= remaining; ++a) {
        current[pos] = a;
        enumerate_degree(num_vars, d, current, pos + 1, remaining - a, out);
    }
}

std::unordered_map<uint64_t, int> build_index_map(const std::vector<std::vector<int>>& exps) {
    std::unordered_map<uint64_t, int> m;
    m.reserve(exps.size() * 2);
    for (size_t i = 0; i < exps.size(); ++i) m[pack({exps[i].data(), exps[i].size()})] = static_cast<int>(i);
    return m;
}

} // namespace

JetLayout::JetLayout(int num_vars, int order) : num_vars_(num_vars), order_(order) {
    if (num_vars < 1 || num_vars > 8 || order < 0 || order > 16)
        throw InadmissibleParameter("jet shape out of supported range");
    std::vector<int> current(num_vars, 0);
    for (int d = 0; d <= order; ++d) enumerate_degree(num_vars, d, current, 0, d, exponents_);

    const int n = size();
    degrees_.resize(n);
    factorials_.resize(n);
    for (int i = 0; i < n; ++i) {
        int deg = 0;
        double fact = 1.0;
        for (int a : exponents_[i]) {
            deg += a;
            for (int k = 2; k <= a; ++k) fact *= k;
        }
        degrees_[i] = deg;
        factorials_[i] = fact;
    }

    auto index_map = build_index_map(exponents_);
    prod_.assign(static_cast<size_t>(n) * n, -1);
    decomp_.resize(n);
    std::vector<int> sum(num_vars);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (degrees_[i] + degrees_[j] > order) continue;
            for (int v = 0; v < num_vars; ++v) sum[v] = exponents_[i][v] + exponents_[j][v];
            const int g = index_map.at(pack(sum));
            prod_[static_cast<size_t>(i) * n + j] = g;
            decomp_[g].emplace_back(i, j);
        }
    }
}

const JetLayout& JetLayout::get(int num_vars, int order) {
    static std::mutex mtx;
    static std::map<std::pair<int, int>, std::unique_ptr<JetLayout>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto& slot = cache[{num_vars, order}];
    if (!slot) slot.reset(new JetLayout(num_vars, order));
    return *slot;
}

int JetLayout::index_of(std::span<const int> alpha) const {
    int deg = 0;
    for (int a : alpha) deg += a;
    if (deg > order_) return -1;
    // Graded-lex position: walk the table of the right degree.
    for (int i = 0; i < size(); ++i) {
        if (degrees_[i] != deg) continue;
        bool match = true;
        for (int v = 0; v < num_vars_; ++v)
            if (exponents_[i][v] != alpha[v]) { match = false; break; }
        if (match) return i;
    }
    return -1;
}

Jet Jet::constant(double value, int num_vars, int order) {
    Jet j;
    j.num_vars_ = num_vars;
    j.order_ = order;
    j.coeffs_.assign(JetLayout::get(num_vars, order).size(), 0.0);
    j.coeffs_[0] = value;
    return j;
}

Jet Jet::variable(double value, int var_index, int num_vars, int order) {
    if (var_index < 0 || var_index >= num_vars)
        throw InadmissibleParameter("jet variable index out of range");
    Jet j = constant(value, num_vars, order);
    if (order >= 1) j.coeffs_[1 + var_index] = 1.0; // degree-1 block follows the constant
    return j;
}

void Jet::check_shape(const Jet& o) const {
    if (num_vars_ != o.num_vars_ || order_ != o.order_)
        throw ShapeMismatch("jet arithmetic mixes different (num_vars, order)");
}

double Jet::coeff(std::span<const int> alpha) const {
    const int idx = layout().index_of(alpha);
    if (idx < 0) throw InadmissibleParameter("multi-index order exceeds jet order");
    return coeffs_[idx];
}

double Jet::partial(std::span<const int> alpha) const {
    const auto& lay = layout();
    const int idx = lay.index_of(alpha);
    if (idx < 0) throw InadmissibleParameter("multi-index order exceeds jet order");
    return coeffs_[idx] * lay.factorial(idx);
}

Jet Jet::partial_jet(int var) const {
    if (order_ < 1) throw InadmissibleParameter("cannot differentiate an order-0 jet");
    if (var < 0 || var >= num_vars_) throw InadmissibleParameter("partial_jet variable out of range");
    Jet out = constant(0.0, num_vars_, order_ - 1);
    const auto& src = layout();
    const auto& dst = out.layout();
    std::vector<int> alpha(num_vars_);
    for (int i = 0; i < dst.size(); ++i) {
        auto e = dst.exponent(i);
        std::copy(e.begin(), e.end(), alpha.begin());
        alpha[var] += 1;
        const int j = src.index_of(alpha);
        out.coeffs_[i] = coeffs_[j] * alpha[var];
    }
    return out;
}

Jet Jet::truncated(int new_order) const {
    if (new_order > order_) throw InadmissibleParameter("cannot extend a jet's order");
    if (new_order == order_) return *this;
    Jet out = constant(0.0, num_vars_, new_order);
    // Graded layout: leading coefficients are exactly the |alpha| <= new_order block.
    std::copy_n(coeffs_.begin(), out.coeffs_.size(), out.coeffs_.begin());
    return out;
}

Jet Jet::reflected(int var) const {
    Jet out = *this;
    const auto& lay = layout();
    for (int i = 0; i < lay.size(); ++i)
        if (lay.exponent(i)[var] & 1) out.coeffs_[i] = -out.coeffs_[i];
    return out;
}

Jet Jet::operator-() const {
    Jet out = *this;
    for (double& c : out.coeffs_) c = -c;
    return out;
}

Jet& Jet::operator+=(const Jet& o) {
    check_shape(o);
    for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
}

Jet& Jet::operator-=(const Jet& o) {
    check_shape(o);
    for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
}

Jet& Jet::operator+=(double s) {
    coeffs_[0] += s;
    return *this;
}

Jet& Jet::operator-=(double s) {
    coeffs_[0] -= s;
    return *this;
}

Jet& Jet::operator*=(double s) {
    for (double& c : coeffs_) c *= s;
    return *this;
}

Jet& Jet::operator/=(double s) {
    for (double& c : coeffs_) c /= s;
    return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
    a.check_shape(b);
    Jet out = Jet::constant(0.0, a.num_vars_, a.order_);
    const auto& lay = a.layout();
    const int n = lay.size();
    for (int i = 0; i < n; ++i) {
        const double ai = a.coeffs_[i];
        if (ai == 0.0) continue;
        for (int j = 0; j < n; ++j) {
            const int g = lay.product_index(i, j);
            if (g < 0) break; // within fixed i, product indices overflow monotonically in graded order
            out.coeffs_[g] += ai * b.coeffs_[j];
        }
    }
    return out;
}

Jet operator/(const Jet& a, const Jet& b) {
    a.check_shape(b);
    if (b.value() == 0.0)
        throw DomainError("jet division by zero constant term");
    Jet out = Jet::constant(0.0, a.num_vars_, a.order_);
    const auto& lay = a.layout();
    const double b0 = b.coeffs_[0];
    for (int g = 0; g < lay.size(); ++g) {
        double acc = a.coeffs_[g];
        for (const auto& [j, k] : lay.decompositions(g)) {
            if (j == 0) continue; // b's constant term handled by the final division
            acc -= b.coeffs_[j] * out.coeffs_[k];
        }
        out.coeffs_[g] = acc / b0;
    }
    return out;
}

Jet operator/(double s, const Jet& a) {
    return Jet::constant(s, a.num_vars(), a.order()) / a;
}

double Jet::max_abs() const {
    double m = 0.0;
    for (double c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

Jet analytic_compose(const Jet& a, std::span<const double> taylor_coeffs) {
    Jet w = a;
    w -= a.value();
    Jet result = Jet::constant(taylor_coeffs.empty() ? 0.0 : taylor_coeffs.back(), a.num_vars(), a.order());
    for (int k = static_cast<int>(taylor_coeffs.size()) - 2; k >= 0; --k) {
        result = result * w;
        result += taylor_coeffs[k];
    }
    return result;
}

namespace {

std::vector<double> series_pow(double a0, double p, int order) {
    std::vector<double> c(order + 1);
    c[0] = std::pow(a0, p);
    for (int k = 1; k <= order; ++k) c[k] = c[k - 1] * (p - (k - 1)) / (k * a0);
    return c;
}

Jet integer_pow(const Jet& a, long long e) {
    Jet result = Jet::constant(1.0, a.num_vars(), a.order());
    if (e == 0) return result;
    const bool negative = e < 0;
    unsigned long long m = negative ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
    Jet base = a;
    while (m > 0) {
        if (m & 1ull) result = result * base;
        m >>= 1;
        if (m) base = base * base;
    }
    if (negative) return 1.0 / result;
    return result;
}

} // namespace

Jet sqrt(const Jet& a) {
    if (a.value() <= 0.0) throw DomainError("jet sqrt of non-positive constant term");
    return analytic_compose(a, series_pow(a.value(), 0.5, a.order()));
}

Jet exp(const Jet& a) {
    std::vector<double> c(a.order() + 1);
    c[0] = std::exp(a.value());
    for (int k = 1; k <= a.order(); ++k) c[k] = c[k - 1] / k;
    return analytic_compose(a, c);
}

Jet log(const Jet& a) {
    const double a0 = a.value();
    if (a0 <= 0.0) throw DomainError("jet log of non-positive constant term");
    std::vector<double> c(a.order() + 1);
    c[0] = std::log(a0);
    if (a.order() >= 1) c[1] = 1.0 / a0;
    for (int k = 2; k <= a.order(); ++k) c[k] = -c[k - 1] * (k - 1) / (k * a0);
    return analytic_compose(a, c);
}

Jet sin(const Jet& a) {
    const double s = std::sin(a.value()), co = std::cos(a.value());
    const double cycle[4] = {s, co, -s, -co};
    std::vector<double> c(a.order() + 1);
    double fact = 1.0;
    for (int k = 0; k <= a.order(); ++k) {
        if (k > 0) fact *= k;
        c[k] = cycle[k % 4] / fact;
    }
    return analytic_compose(a, c);
}

Jet cos(const Jet& a) {
    const double s = std::sin(a.value()), co = std::cos(a.value());
    const double cycle[4] = {co, -s, -co, s};
    std::vector<double> c(a.order() + 1);
    double fact = 1.0;
    for (int k = 0; k <= a.order(); ++k) {
        if (k > 0) fact *= k;
        c[k] = cycle[k % 4] / fact;
    }
    return analytic_compose(a, c);
}

Jet pow(const Jet& a, double exponent) {
    const double r = std::round(exponent);
    if (r == exponent && std::abs(r) <= 64) {
        if (r < 0 && a.value() == 0.0)
            throw DomainError("jet pow: negative integer exponent with zero constant term");
        return integer_pow(a, static_cast<long long>(r));
    }
    if (a.value() <= 0.0) throw DomainError("jet pow: non-integer exponent needs positive constant term");
    return analytic_compose(a, series_pow(a.value(), exponent, a.order()));
}

Jet substitute(const Jet& f, const std::vector<Jet>& args) {
    if (static_cast<int>(args.size()) != f.num_vars())
        throw ShapeMismatch("substitute: one jet per variable required");
    for (const Jet& a : args)
        if (a.value() != 0.0) throw DomainError("substitute: arguments must have zero constant term");
    const auto& lay = f.layout();
    const int nv = f.num_vars();
    // Powers of each argument up to the order.
    std::vector<std::vector<Jet>> powers(nv);
    for (int v = 0; v < nv; ++v) {
        powers[v].push_back(Jet::constant(1.0, f.num_vars(), f.order()));
        for (int k = 1; k <= f.order(); ++k) powers[v].push_back(powers[v][k - 1] * args[v]);
    }
    Jet out = Jet::constant(0.0, f.num_vars(), f.order());
    for (int i = 0; i < lay.size(); ++i) {
        const double c = f.coeff(i);
        if (c == 0.0) continue;
        auto e = lay.exponent(i);
        Jet term = Jet::constant(c, f.num_vars(), f.order());
        for (int v = 0; v < nv; ++v)
            if (e[v] > 0) term = term * powers[v][e[v]];
        out += term;
    }
    return out;
}

} // namespace affinelab
