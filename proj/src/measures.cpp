#include "repot/measures.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>

#include <json.hpp>

#include "repot/errors.hpp"
#include "repot/ext_real.hpp"
#include "repot/quadrature.hpp"

namespace repot {

using json = nlohmann::ordered_json;

namespace {

constexpr double kMassTolerance = 1e-12;
constexpr double kRenormalizeTolerance = 1e-9;
constexpr double kNormalizationTolerance = 1e-9;

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

} // namespace

std::string format_real(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

Rational parse_rational(std::string_view text) {
    auto parse_int = [&](std::string_view s) {
        if (s.empty()) throw SchemaError("malformed fraction: '" + std::string(text) + "'");
        std::size_t start = (s.front() == '-' || s.front() == '+') ? 1 : 0;
        if (start == s.size() ||
            !std::all_of(s.begin() + static_cast<std::ptrdiff_t>(start), s.end(),
                         [](char c) { return c >= '0' && c <= '9'; })) {
            throw SchemaError("malformed fraction: '" + std::string(text) + "'");
        }
        return boost::multiprecision::cpp_int(std::string(s));
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text));
    const auto den = parse_int(text.substr(slash + 1));
    if (den == 0) throw SchemaError("fraction with zero denominator: '" + std::string(text) + "'");
    return Rational(parse_int(text.substr(0, slash)), den);
}

std::string rational_to_string(const Rational& r) {
    const auto num = boost::multiprecision::numerator(r);
    const auto den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

// ---------------------------------------------------------------- Point

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) throw ValidationError("point must have at least one coordinate");
    for (double c : coords_) {
        if (!std::isfinite(c)) throw ValidationError("point coordinates must be finite");
    }
}

double squared_distance(const Point& a, const Point& b) {
    if (a.dim() != b.dim()) {
        throw DimensionMismatch("points of dimension " + std::to_string(a.dim()) + " and " +
                                std::to_string(b.dim()));
    }
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

double distance(const Point& a, const Point& b) { return std::sqrt(squared_distance(a, b)); }

// ---------------------------------------------------------------- DiscreteMeasure

DiscreteMeasure::DiscreteMeasure(std::vector<Point> points, std::vector<double> weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
    if (points_.empty()) throw ValidationError("discrete measure needs at least one atom");
    if (points_.size() != weights_.size()) {
        throw ValidationError("number of points and weights differ");
    }
    double total = 0.0;
    for (double w : weights_) {
        if (!std::isfinite(w) || w <= 0.0) throw ValidationError("weights must be positive");
        total += w;
    }
    const double deviation = std::abs(total - 1.0);
    if (deviation > kRenormalizeTolerance) {
        throw ValidationError("total mass " + format_real(total) + " deviates from 1");
    }
    if (deviation > kMassTolerance) {
        for (double& w : weights_) w /= total;
    }
    validate_geometry();
}

DiscreteMeasure::DiscreteMeasure(std::vector<Point> points, std::vector<Rational> weights)
    : points_(std::move(points)) {
    if (points_.empty()) throw ValidationError("discrete measure needs at least one atom");
    if (points_.size() != weights.size()) {
        throw ValidationError("number of points and weights differ");
    }
    Rational total = 0;
    for (const auto& w : weights) {
        if (w <= 0) throw ValidationError("weights must be positive");
        total += w;
    }
    if (total != 1) {
        throw ValidationError("exact weights sum to " + rational_to_string(total) + ", not 1");
    }
    weights_.reserve(weights.size());
    for (const auto& w : weights) weights_.push_back(to_double(w));
    exact_ = std::move(weights);
    validate_geometry();
}

void DiscreteMeasure::validate_geometry() {
    dim_ = points_.front().dim();
    if (dim_ == 0) throw ValidationError("point must have at least one coordinate");
    for (const auto& p : points_) {
        if (p.dim() != dim_) throw ValidationError("atoms have different dimensions");
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
        for (std::size_t j = i + 1; j < points_.size(); ++j) {
            if (points_[i] == points_[j]) throw ValidationError("duplicate atom locations");
        }
    }
}

const std::vector<Rational>& DiscreteMeasure::exact_weights() const {
    if (!exact_) throw std::logic_error("measure has no exact weights");
    return *exact_;
}

double DiscreteMeasure::max_weight() const {
    return *std::max_element(weights_.begin(), weights_.end());
}

double DiscreteMeasure::min_weight() const {
    return *std::min_element(weights_.begin(), weights_.end());
}

double DiscreteMeasure::diameter() const {
    double best = 0.0;
    for (std::size_t i = 0; i < size(); ++i) {
        for (std::size_t j = i + 1; j < size(); ++j) {
            best = std::max(best, distance(points_[i], points_[j]));
        }
    }
    return best;
}

double DiscreteMeasure::min_pairwise_distance() const {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < size(); ++i) {
        for (std::size_t j = i + 1; j < size(); ++j) {
            best = std::min(best, distance(points_[i], points_[j]));
        }
    }
    return best;
}

double ball_mass(const DiscreteMeasure& rho, const Point& center, double radius, bool closed) {
    if (center.dim() != rho.dim()) throw DimensionMismatch("center dimension differs from measure");
    if (!(radius >= 0.0)) throw ValidationError("radius must be nonnegative");
    double mass = 0.0;
    for (std::size_t i = 0; i < rho.size(); ++i) {
        const double d = distance(rho.point(i), center);
        if (closed ? d <= radius : d < radius) mass += rho.weight(i);
    }
    return mass;
}

// ---------------------------------------------------------------- RadialMeasure

double unit_ball_volume(std::size_t d) {
    const double half = 0.5 * static_cast<double>(d);
    return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0);
}

namespace {

double interpolate_g(const ExpGProfile& p, double s) {
    const auto& r = p.grid_r;
    const auto& g = p.grid_g;
    if (s <= r.front()) return g.front();
    auto it = std::upper_bound(r.begin(), r.end(), s);
    if (it == r.end()) return g.back();
    const auto k = static_cast<std::size_t>(it - r.begin());
    const double t = (s - r[k - 1]) / (r[k] - r[k - 1]);
    return g[k - 1] + t * (g[k] - g[k - 1]);
}

void require_dim_one(std::size_t dim, const char* name) {
    if (dim != 1) throw ValidationError(std::string(name) + " profile is defined for dim = 1 only");
}

} // namespace

RadialMeasure::RadialMeasure(std::size_t dim, RadialProfile profile)
    : dim_(dim), profile_(std::move(profile)) {
    if (dim_ == 0) throw ValidationError("dimension must be at least 1");
    std::visit(Overloaded{
                   [&](const GaussianProfile& p) {
                       if (!(p.sigma > 0.0) || !std::isfinite(p.sigma)) {
                           throw ValidationError("gaussian sigma must be positive");
                       }
                       norm_ = std::pow(2.0 * std::numbers::pi * p.sigma * p.sigma,
                                        -0.5 * static_cast<double>(dim_));
                   },
                   [&](const CauchyProfile& p) {
                       require_dim_one(dim_, "cauchy");
                       if (!(p.nu >= 1.0) || !std::isfinite(p.nu)) {
                           throw ValidationError("cauchy nu must be >= 1");
                       }
                       norm_ = std::exp(std::lgamma(0.5 * (p.nu + 1.0)) - std::lgamma(0.5 * p.nu)) /
                               std::sqrt(p.nu * std::numbers::pi);
                   },
                   [&](const UniformProfile& p) {
                       require_dim_one(dim_, "uniform");
                       if (!(p.a > 0.0) || !std::isfinite(p.a)) {
                           throw ValidationError("uniform half-width must be positive");
                       }
                       norm_ = 0.5 / p.a;
                   },
                   [&](const ExpGProfile& p) {
                       if (p.grid_r.size() < 2 || p.grid_r.size() != p.grid_g.size()) {
                           throw ValidationError("expg grids must have equal length >= 2");
                       }
                       if (!(p.grid_r.front() >= 0.0)) {
                           throw ValidationError("expg radial grid must start at r >= 0");
                       }
                       for (std::size_t i = 0; i < p.grid_r.size(); ++i) {
                           if (!std::isfinite(p.grid_r[i]) || !std::isfinite(p.grid_g[i])) {
                               throw ValidationError("expg grids must be finite");
                           }
                           if (i > 0 && !(p.grid_r[i] > p.grid_r[i - 1])) {
                               throw ValidationError("expg radial grid must be strictly increasing");
                           }
                           if (i > 0 && p.grid_g[i] < p.grid_g[i - 1]) unimodal_ = false;
                       }
                       norm_ = 1.0;
                   },
               },
               profile_);

    // Total mass by quadrature in the compactified variable u = s / (s + scale).
    const double L = scale();
    auto integrand = [&](double u) {
        if (u >= 1.0) return 0.0;
        const double s = L * u / (1.0 - u);
        return radial_density(s) * L / ((1.0 - u) * (1.0 - u));
    };
    std::vector<double> cuts{0.0};
    for (double k : knots()) {
        if (k > 0.0 && std::isfinite(k)) cuts.push_back(k / (k + L));
    }
    const double end = std::isfinite(support_radius())
                           ? support_radius() / (support_radius() + L)
                           : 1.0 - 1e-12;
    cuts.push_back(end);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (cuts[i] >= end) break;
        total += adaptive_simpson(integrand, cuts[i], std::min(cuts[i + 1], end), 1e-13);
    }
    if (std::holds_alternative<ExpGProfile>(profile_)) {
        if (!(total > 0.0) || !std::isfinite(total)) {
            throw ValidationError("expg profile is not normalizable");
        }
        norm_ = 1.0 / total;
    } else if (std::abs(total - 1.0) > kNormalizationTolerance) {
        throw ValidationError("radial profile is not normalized: total mass " + format_real(total));
    }
}

double RadialMeasure::unnormalized_density(double s) const {
    return std::visit(
        Overloaded{
            [&](const GaussianProfile& p) { return std::exp(-s * s / (2.0 * p.sigma * p.sigma)); },
            [&](const CauchyProfile& p) { return std::pow(1.0 + s * s / p.nu, -0.5 * (p.nu + 1.0)); },
            [&](const UniformProfile& p) { return s <= p.a ? 1.0 : 0.0; },
            [&](const ExpGProfile& p) {
                return s > p.grid_r.back() ? 0.0 : std::exp(-interpolate_g(p, s));
            },
        },
        profile_);
}

double RadialMeasure::density(double s) const { return norm_ * unnormalized_density(std::abs(s)); }

double RadialMeasure::radial_density(double s) const {
    if (s < 0.0) return 0.0;
    const double d = static_cast<double>(dim_);
    const double jac = dim_ == 1 ? 1.0 : std::pow(s, d - 1.0);
    return d * unit_ball_volume(dim_) * density(s) * jac;
}

double RadialMeasure::support_radius() const {
    return std::visit(Overloaded{
                          [](const UniformProfile& p) { return p.a; },
                          [](const ExpGProfile& p) { return p.grid_r.back(); },
                          [](const auto&) { return std::numeric_limits<double>::infinity(); },
                      },
                      profile_);
}

double RadialMeasure::scale() const {
    return std::visit(Overloaded{
                          [](const GaussianProfile& p) { return p.sigma; },
                          [](const CauchyProfile& p) { return std::sqrt(p.nu); },
                          [](const UniformProfile& p) { return p.a; },
                          [](const ExpGProfile& p) {
                              return std::max(p.grid_r.back() / 16.0,
                                              p.grid_r[1] - p.grid_r[0]);
                          },
                      },
                      profile_);
}

std::vector<double> RadialMeasure::knots() const {
    return std::visit(Overloaded{
                          [](const UniformProfile& p) { return std::vector<double>{p.a}; },
                          [](const ExpGProfile& p) { return p.grid_r; },
                          [](const auto&) { return std::vector<double>{}; },
                      },
                      profile_);
}

std::string RadialMeasure::name() const {
    return std::visit(
        Overloaded{
            [](const GaussianProfile& p) { return "gaussian(" + format_real(p.sigma) + ")"; },
            [](const CauchyProfile& p) { return "cauchy(" + format_real(p.nu) + ")"; },
            [](const UniformProfile& p) { return "uniform(" + format_real(p.a) + ")"; },
            [](const ExpGProfile&) { return std::string("expg"); },
        },
        profile_);
}

// ---------------------------------------------------------------- JSON

namespace {

const json& require(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) {
        throw SchemaError(std::string("missing key '") + key + "'");
    }
    return j.at(key);
}

double require_number(const json& j, const char* key) {
    const auto& v = require(j, key);
    if (!v.is_number()) throw SchemaError(std::string("key '") + key + "' must be a number");
    return v.get<double>();
}

std::vector<double> number_array(const json& j, const char* what) {
    if (!j.is_array()) throw SchemaError(std::string(what) + " must be an array");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number()) throw SchemaError(std::string(what) + " entries must be numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

DiscreteMeasure parse_discrete(const json& j, std::size_t dim) {
    const auto& jp = require(j, "points");
    const auto& jw = require(j, "weights");
    if (!jp.is_array() || !jw.is_array()) throw SchemaError("points and weights must be arrays");
    std::vector<Point> points;
    points.reserve(jp.size());
    for (const auto& p : jp) {
        auto coords = number_array(p, "point");
        if (coords.size() != dim) {
            throw ValidationError("point has " + std::to_string(coords.size()) +
                                  " coordinates, expected " + std::to_string(dim));
        }
        points.emplace_back(std::move(coords));
    }
    const bool exact = !jw.empty() && jw.front().is_string();
    if (exact) {
        std::vector<Rational> weights;
        for (const auto& w : jw) {
            if (!w.is_string()) throw SchemaError("weights must be all numbers or all fractions");
            weights.push_back(parse_rational(w.get<std::string>()));
        }
        return DiscreteMeasure(std::move(points), std::move(weights));
    }
    return DiscreteMeasure(std::move(points), number_array(jw, "weights"));
}

RadialMeasure parse_radial(const json& j, std::size_t dim) {
    const auto& prof = require(j, "profile");
    const auto& jname = require(prof, "name");
    if (!jname.is_string()) throw SchemaError("profile name must be a string");
    const auto name = jname.get<std::string>();
    if (name == "gaussian") return RadialMeasure(dim, GaussianProfile{require_number(prof, "sigma")});
    if (name == "cauchy") return RadialMeasure(dim, CauchyProfile{require_number(prof, "nu")});
    if (name == "uniform") return RadialMeasure(dim, UniformProfile{require_number(prof, "a")});
    if (name == "expg") {
        return RadialMeasure(dim, ExpGProfile{number_array(require(prof, "grid_r"), "grid_r"),
                                              number_array(require(prof, "grid_g"), "grid_g")});
    }
    throw SchemaError("unknown radial profile '" + name + "'");
}

} // namespace

Measure parse_measure(std::string_view json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
    const auto& jtype = require(j, "type");
    const auto& jdim = require(j, "dim");
    if (!jtype.is_string()) throw SchemaError("'type' must be a string");
    if (!jdim.is_number_integer() || jdim.get<long long>() < 1) {
        throw SchemaError("'dim' must be a positive integer");
    }
    const auto dim = jdim.get<std::size_t>();
    const auto type = jtype.get<std::string>();
    if (type == "discrete") return parse_discrete(j, dim);
    if (type == "radial") return parse_radial(j, dim);
    throw SchemaError("unknown measure type '" + type + "'");
}

std::string serialize(const DiscreteMeasure& m) {
    json j;
    j["type"] = "discrete";
    j["dim"] = m.dim();
    json points = json::array();
    for (const auto& p : m.points()) points.push_back(p.coords());
    j["points"] = std::move(points);
    if (m.has_exact_weights()) {
        json weights = json::array();
        for (const auto& w : m.exact_weights()) weights.push_back(rational_to_string(w));
        j["weights"] = std::move(weights);
    } else {
        j["weights"] = m.weights();
    }
    return j.dump();
}

std::string serialize(const RadialMeasure& m) {
    json j;
    j["type"] = "radial";
    j["dim"] = m.dim();
    j["profile"] = std::visit(
        Overloaded{
            [](const GaussianProfile& p) { return json{{"name", "gaussian"}, {"sigma", p.sigma}}; },
            [](const CauchyProfile& p) { return json{{"name", "cauchy"}, {"nu", p.nu}}; },
            [](const UniformProfile& p) { return json{{"name", "uniform"}, {"a", p.a}}; },
            [](const ExpGProfile& p) {
                return json{{"name", "expg"}, {"grid_r", p.grid_r}, {"grid_g", p.grid_g}};
            },
        },
        m.profile());
    return j.dump();
}

} // namespace repot
