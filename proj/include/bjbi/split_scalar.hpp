#pragma once

// Split-complex and complex scalars, plus exact real polynomials that can be
// evaluated at either kind of argument.

#include <concepts>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace bjbi {

/// u + k'v with k'^2 = +1.
struct SplitComplex {
    double re = 0.0;
    double im = 0.0;

    constexpr SplitComplex() = default;
    constexpr SplitComplex(double r, double i = 0.0) : re(r), im(i) {}

    static constexpr SplitComplex unit() { return {0.0, 1.0}; }

    friend constexpr SplitComplex operator+(SplitComplex a, SplitComplex b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend constexpr SplitComplex operator-(SplitComplex a, SplitComplex b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend constexpr SplitComplex operator*(SplitComplex a, SplitComplex b) {
        return {a.re * b.re + a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend constexpr bool operator==(SplitComplex, SplitComplex) = default;
};

/// u + iv with i^2 = -1.
struct ComplexScalar {
    double re = 0.0;
    double im = 0.0;

    constexpr ComplexScalar() = default;
    constexpr ComplexScalar(double r, double i = 0.0) : re(r), im(i) {}

    static constexpr ComplexScalar unit() { return {0.0, 1.0}; }

    friend constexpr ComplexScalar operator+(ComplexScalar a, ComplexScalar b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend constexpr ComplexScalar operator-(ComplexScalar a, ComplexScalar b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend constexpr ComplexScalar operator*(ComplexScalar a, ComplexScalar b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend constexpr bool operator==(ComplexScalar, ComplexScalar) = default;
};

template <class S>
concept ScalarAlgebra = std::same_as<S, SplitComplex> || std::same_as<S, ComplexScalar>;

template <ScalarAlgebra S>
constexpr S conj(S z) { return {z.re, -z.im}; }

/// z * conj(z): u^2 - v^2 for split-complex, u^2 + v^2 for complex.
template <ScalarAlgebra S>
constexpr double modulus_sq(S z) { return (z * conj(z)).re; }

constexpr SplitComplex split_mul(SplitComplex a, SplitComplex b) { return a * b; }

/// Split-complex zero divisors lie on the null lines |u| = |v|.
inline bool is_zero_divisor(SplitComplex z, double tol = 0.0) {
    double m = modulus_sq(z);
    return (m < 0 ? -m : m) <= tol;
}

/// Coefficients dropped to zero after arithmetic.
inline constexpr double kCoeffDropTol = 1e-14;

/// Real polynomial, coefficients in ascending degree. Always canonical: the
/// highest stored coefficient is nonzero (the zero polynomial stores none).
class RealPoly {
public:
    RealPoly() = default;
    explicit RealPoly(std::vector<double> coeffs);
    RealPoly(std::initializer_list<double> coeffs);

    static RealPoly constant(double c) { return RealPoly({c}); }
    static RealPoly monomial(std::size_t degree, double c = 1.0);

    std::span<const double> coeffs() const { return coeffs_; }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return coeffs_.size() <= 1; }
    double coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : 0.0; }
    double max_abs_coeff() const;

    double operator()(double t) const;

    /// Horner evaluation under the algebra of S. With z.im == 0 this is the
    /// real evaluation and the imaginary part is exactly zero.
    template <ScalarAlgebra S>
    S eval_extension(S z) const {
        S acc{0.0, 0.0};
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + S{*it, 0.0};
        return acc;
    }

    RealPoly derive() const;
    /// Antiderivative vanishing at t0.
    RealPoly antiderive_from(double t0) const;
    /// q(s) = p(s + delta).
    RealPoly shifted(double delta) const;
    /// Drops every term of degree above `order`.
    RealPoly truncated(std::size_t order) const;

    friend RealPoly operator+(const RealPoly& a, const RealPoly& b);
    friend RealPoly operator-(const RealPoly& a, const RealPoly& b);
    friend RealPoly operator*(const RealPoly& a, const RealPoly& b);
    friend RealPoly operator*(double s, const RealPoly& p);
    friend RealPoly operator-(const RealPoly& p) { return -1.0 * p; }
    friend bool operator==(const RealPoly&, const RealPoly&) = default;

private:
    void canonicalize();
    std::vector<double> coeffs_;
};

inline RealPoly derive(const RealPoly& p) { return p.derive(); }
inline RealPoly antiderive_from(const RealPoly& p, double t0) { return p.antiderive_from(t0); }

template <ScalarAlgebra S>
S eval_extension(const RealPoly& p, S z) { return p.eval_extension(z); }

/// Truncated Taylor expansion about `center`. Evaluation error is never
/// certified, so everything derived from one is flagged approximate.
struct TaylorSeries {
    RealPoly coeffs;  // powers of (t - center)
    double center = 0.0;
    unsigned order = 16;
    static constexpr bool approx_flag = true;

    double operator()(double t) const { return coeffs(t - center); }
    template <ScalarAlgebra S>
    S eval_extension(S z) const { return coeffs.eval_extension(S{z.re - center, z.im}); }

    TaylorSeries derive() const { return {coeffs.derive(), center, order}; }
    TaylorSeries antiderive_from(double t0) const {
        return {coeffs.antiderive_from(t0 - center).truncated(order), center, order};
    }
};

/// Expansion of an exact polynomial about `center`, truncated to `order`.
TaylorSeries taylor_expand(const RealPoly& p, double center, unsigned order);

/// Product truncated to the smaller order. Centers must match.
TaylorSeries operator*(const TaylorSeries& a, const TaylorSeries& b);

/// g^alpha as a truncated series; needs g(center) > 0.
TaylorSeries series_pow(const TaylorSeries& g, double alpha);

}  // namespace bjbi
