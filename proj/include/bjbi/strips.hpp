#pragma once

// Björling data: a curve c and a unit normal field n along it.

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "bjbi/lorentz.hpp"
#include "bjbi/split_scalar.hpp"

namespace bjbi {

/// Space curve with polynomial components stored in powers of (t - center).
/// Exact curves have center 0 and no truncation order; Taylor-mode curves
/// carry the order their products are truncated to and are approximate.
class CurveL3 {
public:
    CurveL3() = default;

    static CurveL3 polynomial(RealPoly x, RealPoly y, RealPoly z);
    /// All three series must share center and order.
    static CurveL3 taylor(const TaylorSeries& x, const TaylorSeries& y, const TaylorSeries& z);
    static CurveL3 from_local(std::array<RealPoly, 3> local, double center, std::optional<unsigned> order);

    bool approximate() const { return order_.has_value(); }
    double center() const { return center_; }
    std::optional<unsigned> order() const { return order_; }
    const RealPoly& local(int k) const { return local_[static_cast<std::size_t>(k)]; }
    const std::array<RealPoly, 3>& locals() const { return local_; }

    Vec3L operator()(double t) const;

    template <ScalarAlgebra S>
    std::array<S, 3> eval_extension(S z) const {
        const S w{z.re - center_, z.im};
        return {local_[0].eval_extension(w), local_[1].eval_extension(w), local_[2].eval_extension(w)};
    }

    CurveL3 derivative() const;
    /// Componentwise antiderivative vanishing at t0.
    CurveL3 antiderivative_from(double t0) const;
    /// Same curve expanded about a new center. Exact curves stay exact;
    /// Taylor-mode curves cannot be re-expanded and throw.
    CurveL3 recentered(double center) const;
    /// Converts an exact curve to Taylor mode about `center`.
    CurveL3 as_taylor(double center, unsigned order) const;

    CurveL3 scaled(double s) const;
    friend CurveL3 operator+(const CurveL3& a, const CurveL3& b);
    friend bool operator==(const CurveL3&, const CurveL3&) = default;

private:
    std::array<RealPoly, 3> local_;
    double center_ = 0.0;
    std::optional<unsigned> order_;
};

/// Brings two curves onto a common expansion center (and truncation order).
std::pair<CurveL3, CurveL3> align(const CurveL3& a, const CurveL3& b);

/// <a, b> as a polynomial in (t - center) of the aligned pair.
RealPoly lorentz_inner(const CurveL3& a, const CurveL3& b);
/// a x b with the same convention as lorentz_cross on vectors.
CurveL3 lorentz_cross(const CurveL3& a, const CurveL3& b);

enum class SurfaceVariant { timelike_surface, spacelike_surface };

std::string to_string(SurfaceVariant v);

struct Interval {
    double t0 = 0.0;
    double t1 = 1.0;
    double mid() const { return 0.5 * (t0 + t1); }
    friend bool operator==(Interval, Interval) = default;
};

/// Unvalidated strip data.
struct StripData {
    CurveL3 c;
    CurveL3 n;
    Interval interval;
    SurfaceVariant variant = SurfaceVariant::timelike_surface;
};

struct ValidationCheck {
    std::string name;
    bool passed = true;
    double worst = 0.0;     // largest violation measure seen
    double witness_t = 0.0; // where it was seen (coefficient index for identity checks)
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    std::optional<Causal> curve_character;

    bool ok() const;
    std::vector<std::string> failed() const;
};

/// Number of interior samples used by the sign checks.
inline constexpr int kStripSampleCount = 513;

/// Runs every strip check. Identities are checked on coefficients, sign
/// conditions on kStripSampleCount interior points plus both endpoints.
ValidationReport validate_strip(const StripData& s);

/// Björling strip that passed validate_strip. The only way to build one is
/// through the validating constructor.
class Strip {
public:
    /// Throws InvalidStrip listing the failed checks.
    explicit Strip(StripData data);

    const CurveL3& c() const { return data_.c; }
    const CurveL3& n() const { return data_.n; }
    Interval interval() const { return data_.interval; }
    SurfaceVariant variant() const { return data_.variant; }
    Causal curve_character() const { return character_; }
    bool approximate() const { return data_.c.approximate() || data_.n.approximate(); }
    const StripData& data() const { return data_; }

private:
    StripData data_;
    Causal character_ = Causal::timelike;
};

inline constexpr unsigned kGeodesicTaylorOrder = 16;

/// Strip whose normal is the unit principal normal c''/sqrt<c'',c''> of a
/// unit-speed timelike curve, so that c is a geodesic of the solution.
/// Throws NotConstantSpeed or InflectionPoint.
Strip geodesic_strip(const CurveL3& c, Interval interval);

/// Parses strip TOML text; the result is validated. Throws ParseError or InvalidStrip.
Strip parse_strip(const std::string& text);
/// Throws FileNotFound, ParseError or InvalidStrip.
Strip load_strip(const std::filesystem::path& path);
std::string strip_to_toml(const StripData& s);
void save_strip(const Strip& s, const std::filesystem::path& path);

}  // namespace bjbi
