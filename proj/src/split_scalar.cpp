#include "bjbi/split_scalar.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bjbi {

RealPoly::RealPoly(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) { canonicalize(); }

RealPoly::RealPoly(std::initializer_list<double> coeffs) : coeffs_(coeffs) { canonicalize(); }

RealPoly RealPoly::monomial(std::size_t degree, double c) {
    std::vector<double> v(degree + 1, 0.0);
    v[degree] = c;
    return RealPoly(std::move(v));
}

void RealPoly::canonicalize() {
    for (double& c : coeffs_)
        if (std::abs(c) < kCoeffDropTol) c = 0.0;
    while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double RealPoly::max_abs_coeff() const {
    double m = 0.0;
    for (double c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

double RealPoly::operator()(double t) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
    return acc;
}

RealPoly RealPoly::derive() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<double> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
    return RealPoly(std::move(d));
}

RealPoly RealPoly::antiderive_from(double t0) const {
    if (coeffs_.empty()) return {};
    std::vector<double> a(coeffs_.size() + 1, 0.0);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) a[k + 1] = coeffs_[k] / static_cast<double>(k + 1);
    RealPoly out;
    out.coeffs_ = std::move(a);
    // Subtract the value at t0 before canonicalizing so tiny leading terms survive.
    out.coeffs_[0] = -out(t0);
    out.canonicalize();
    return out;
}

RealPoly RealPoly::shifted(double delta) const {
    // Horner in the polynomial ring: p(s + delta) = (...(a_n (s+d) + a_{n-1})(s+d) ...).
    std::vector<double> acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        std::vector<double> next(acc.size() + 1, 0.0);
        for (std::size_t k = 0; k < acc.size(); ++k) {
            next[k] += acc[k] * delta;
            next[k + 1] += acc[k];
        }
        next[0] += *it;
        acc = std::move(next);
    }
    return RealPoly(std::move(acc));
}

RealPoly RealPoly::truncated(std::size_t order) const {
    if (coeffs_.size() <= order + 1) return *this;
    return RealPoly(std::vector<double>(coeffs_.begin(), coeffs_.begin() + static_cast<long>(order) + 1));
}

RealPoly operator+(const RealPoly& a, const RealPoly& b) {
    std::vector<double> r(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
    for (std::size_t k = 0; k < a.coeffs_.size(); ++k) r[k] += a.coeffs_[k];
    for (std::size_t k = 0; k < b.coeffs_.size(); ++k) r[k] += b.coeffs_[k];
    return RealPoly(std::move(r));
}

RealPoly operator-(const RealPoly& a, const RealPoly& b) { return a + (-1.0 * b); }

RealPoly operator*(const RealPoly& a, const RealPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<double> r(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return RealPoly(std::move(r));
}

RealPoly operator*(double s, const RealPoly& p) {
    std::vector<double> r(p.coeffs_);
    for (double& c : r) c *= s;
    return RealPoly(std::move(r));
}

TaylorSeries taylor_expand(const RealPoly& p, double center, unsigned order) {
    return {p.shifted(center).truncated(order), center, order};
}

TaylorSeries operator*(const TaylorSeries& a, const TaylorSeries& b) {
    if (a.center != b.center) throw std::invalid_argument("Taylor series centers differ");
    unsigned order = std::min(a.order, b.order);
    return {(a.coeffs * b.coeffs).truncated(order), a.center, order};
}

TaylorSeries series_pow(const TaylorSeries& g, double alpha) {
    const double g0 = g.coeffs.coeff(0);
    if (!(g0 > 0.0)) throw std::domain_error("series_pow needs a positive constant term");
    // Miller recurrence: h_n = 1/(n g0) * sum_{k=1..n} ((alpha+1)k - n) g_k h_{n-k}.
    std::vector<double> h(g.order + 1, 0.0);
    h[0] = std::pow(g0, alpha);
    for (unsigned n = 1; n <= g.order; ++n) {
        double s = 0.0;
        for (unsigned k = 1; k <= n; ++k)
            s += ((alpha + 1.0) * k - n) * g.coeffs.coeff(k) * h[n - k];
        h[n] = s / (n * g0);
    }
    return {RealPoly(std::move(h)), g.center, g.order};
}

}  // namespace bjbi
