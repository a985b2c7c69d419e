#include "repot/cost.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "repot/errors.hpp"

namespace repot {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double parse_double(std::string_view s, std::string_view context) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw SchemaError("cannot parse number '" + std::string(s) + "' in " + std::string(context));
    }
    return v;
}

} // namespace

HFunction HFunction::power(double p) {
    if (!(p > 0.0) || !std::isfinite(p)) throw ValidationError("power exponent must be positive");
    HFunction h;
    h.kind_ = Kind::power;
    h.p_ = p;
    return h;
}

HFunction HFunction::expdecay() {
    HFunction h;
    h.kind_ = Kind::expdecay;
    return h;
}

HFunction HFunction::tabulated(std::vector<double> t, std::vector<double> hv) {
    if (t.size() < 2 || t.size() != hv.size()) {
        throw ValidationError("tabulated h needs at least two (t, h) samples");
    }
    if (t.front() != 0.0) throw ValidationError("tabulated h must start at t = 0");
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!std::isfinite(t[i]) || !std::isfinite(hv[i]) || !(hv[i] > 0.0)) {
            throw ValidationError("tabulated h samples must be finite with h > 0");
        }
        if (i > 0 && !(t[i] > t[i - 1])) throw ValidationError("tabulated t must be strictly increasing");
        if (i > 0 && !(hv[i] < hv[i - 1])) {
            throw ValidationError("tabulated h must be strictly decreasing");
        }
    }
    HFunction h;
    h.kind_ = Kind::tabulated;
    h.t_ = std::move(t);
    h.h_ = std::move(hv);
    return h;
}

HFunction HFunction::parse(std::string_view spec) {
    if (spec == "expdecay") return expdecay();
    if (spec.starts_with("power:")) return power(parse_double(spec.substr(6), "--h power:<p>"));
    if (spec.starts_with("table:")) {
        const std::string path(spec.substr(6));
        std::ifstream in(path);
        if (!in) throw SchemaError("cannot open h table '" + path + "'");
        std::vector<double> t;
        std::vector<double> hv;
        std::string line;
        bool first = true;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            const auto comma = line.find(',');
            if (comma == std::string::npos) throw SchemaError("h table rows must read 't,h'");
            if (first && line.substr(0, comma).find_first_of("0123456789") == std::string::npos) {
                first = false; // header
                continue;
            }
            first = false;
            t.push_back(parse_double(std::string_view(line).substr(0, comma), path));
            hv.push_back(parse_double(std::string_view(line).substr(comma + 1), path));
        }
        HFunction h = tabulated(std::move(t), std::move(hv));
        h.source_ = path;
        return h;
    }
    throw SchemaError("unknown h specification '" + std::string(spec) + "'");
}

ExtReal HFunction::h0() const {
    switch (kind_) {
    case Kind::power: return ExtReal::infinity();
    case Kind::expdecay: return 1.0;
    case Kind::tabulated: return h_.front();
    }
    return ExtReal::infinity();
}

double HFunction::infimum() const { return kind_ == Kind::tabulated ? h_.back() : 0.0; }

std::string HFunction::name() const {
    switch (kind_) {
    case Kind::power: return "power:" + format_real(p_);
    case Kind::expdecay: return "expdecay";
    case Kind::tabulated: return "table:" + source_;
    }
    return {};
}

ExtReal HFunction::eval(double t) const {
    if (!(t >= 0.0)) throw std::domain_error("h is defined on [0, inf)");
    if (std::isinf(t)) return infimum();
    switch (kind_) {
    case Kind::power:
        if (t == 0.0) return ExtReal::infinity();
        return std::pow(t, -p_);
    case Kind::expdecay: return std::exp(-t);
    case Kind::tabulated: {
        if (t >= t_.back()) return h_.back();
        const auto it = std::upper_bound(t_.begin(), t_.end(), t);
        const auto k = static_cast<std::size_t>(it - t_.begin());
        const double w = (t - t_[k - 1]) / (t_[k] - t_[k - 1]);
        return h_[k - 1] + w * (h_[k] - h_[k - 1]);
    }
    }
    return ExtReal::infinity();
}

double HFunction::inverse(ExtReal s) const {
    if (!(s > ExtReal(0.0))) throw std::domain_error("h^{-1} is defined for s > 0");
    if (s >= h0()) return 0.0;
    const double v = s.value();
    switch (kind_) {
    case Kind::power: return std::pow(v, -1.0 / p_);
    case Kind::expdecay: return -std::log(v);
    case Kind::tabulated: {
        if (v < h_.back()) return kInf;
        // First node with h <= v; the segment before it brackets v.
        std::size_t k = 1;
        while (h_[k] > v) ++k;
        const double w = (h_[k - 1] - v) / (h_[k - 1] - h_[k]);
        return t_[k - 1] + w * (t_[k] - t_[k - 1]);
    }
    }
    return kInf;
}

ExtReal psi(const HFunction& h, ExtReal t) { return h.eval(2.0 * h.inverse(t)); }

Configuration::Configuration(std::vector<Point> points) : points_(std::move(points)) {
    if (points_.empty()) throw ValidationError("configuration needs at least one point");
    for (const auto& p : points_) {
        if (p.dim() != points_.front().dim()) throw DimensionMismatch("configuration dimensions differ");
    }
}

double Configuration::min_pairwise_distance() const {
    double best = kInf;
    for (std::size_t i = 0; i < size(); ++i) {
        for (std::size_t j = i + 1; j < size(); ++j) {
            best = std::min(best, distance(points_[i], points_[j]));
        }
    }
    return best;
}

ExtReal config_cost(const HFunction& h, const Configuration& cfg) {
    ExtReal total = 0.0;
    for (std::size_t i = 0; i < cfg.size(); ++i) {
        for (std::size_t j = i + 1; j < cfg.size(); ++j) {
            total = total + h.eval(distance(cfg[i], cfg[j]));
        }
    }
    return total;
}

bool in_B_beta(const Configuration& cfg, double beta) { return cfg.min_pairwise_distance() < beta; }

bool in_B_upper(const HFunction& h, const Configuration& cfg, ExtReal bound) {
    return config_cost(h, cfg) > bound;
}

} // namespace repot
