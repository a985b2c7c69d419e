#include "repot/concentration.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "repot/errors.hpp"
#include "repot/geometry.hpp"

namespace repot {
namespace {

double kappa_line(const DiscreteMeasure& rho, double alpha, BallKind kind) {
    std::vector<std::size_t> order(rho.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return rho.point(a)[0] < rho.point(b)[0]; });
    const double width = 2.0 * alpha;
    auto fits = [&](double span) {
        return kind == BallKind::closed ? span <= width + 2.0 * kBallTolerance
                                        : span < width - 2.0 * kBallTolerance;
    };
    double best = 0.0;
    double window = 0.0;
    std::size_t lo = 0;
    for (std::size_t hi = 0; hi < order.size(); ++hi) {
        window += rho.weight(order[hi]);
        while (lo <= hi && !fits(rho.point(order[hi])[0] - rho.point(order[lo])[0])) {
            window -= rho.weight(order[lo]);
            ++lo;
        }
        if (lo <= hi) best = std::max(best, window);
    }
    return best;
}

class SubsetSearch {
  public:
    SubsetSearch(const DiscreteMeasure& rho, double alpha, BallKind kind)
        : rho_(rho), alpha_(alpha), kind_(kind), order_(rho.size()) {
        std::iota(order_.begin(), order_.end(), 0);
        std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
            return rho.weight(a) > rho.weight(b);
        });
        suffix_.assign(order_.size() + 1, 0.0);
        for (std::size_t i = order_.size(); i-- > 0;) {
            suffix_[i] = suffix_[i + 1] + rho.weight(order_[i]);
        }
    }

    double run() {
        Ball empty{Point(), -1.0};
        search(0, 0.0, empty);
        return best_;
    }

  private:
    bool fits(double radius) const {
        return kind_ == BallKind::closed ? radius <= alpha_ + kBallTolerance
                                         : radius < alpha_ - kBallTolerance;
    }

    void search(std::size_t idx, double weight, const Ball& ball) {
        best_ = std::max(best_, weight);
        if (idx == order_.size() || weight + suffix_[idx] <= best_) return;
        const std::size_t atom = order_[idx];
        const Point& p = rho_.point(atom);

        bool pairwise_ok = true;
        for (std::size_t c : chosen_) {
            if (distance(rho_.point(c), p) > 2.0 * alpha_ + 2.0 * kBallTolerance) {
                pairwise_ok = false;
                break;
            }
        }
        if (pairwise_ok) {
            Ball next;
            if (ball.radius >= 0.0 && distance(ball.center, p) <= ball.radius) {
                next = ball;
            } else {
                chosen_.push_back(atom);
                std::vector<Point> pts;
                pts.reserve(chosen_.size());
                for (std::size_t c : chosen_) pts.push_back(rho_.point(c));
                next = min_enclosing_ball(pts);
                chosen_.pop_back();
            }
            if (fits(next.radius)) {
                chosen_.push_back(atom);
                search(idx + 1, weight + rho_.weight(atom), next);
                chosen_.pop_back();
            }
        }
        search(idx + 1, weight, ball);
    }

    const DiscreteMeasure& rho_;
    double alpha_;
    BallKind kind_;
    std::vector<std::size_t> order_;
    std::vector<double> suffix_;
    std::vector<std::size_t> chosen_;
    double best_ = 0.0;
};

void for_each_subset(std::size_t n, std::size_t max_size,
                     const std::function<void(const std::vector<std::size_t>&)>& visit) {
    std::vector<std::size_t> current;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (!current.empty()) visit(current);
        if (current.size() == max_size) return;
        for (std::size_t i = start; i < n; ++i) {
            current.push_back(i);
            rec(i + 1);
            current.pop_back();
        }
    };
    rec(0);
}

} // namespace

double kappa_discrete(const DiscreteMeasure& rho, double alpha, BallKind kind) {
    if (!(alpha >= 0.0)) throw ValidationError("alpha must be nonnegative");
    if (rho.dim() == 1) return kappa_line(rho, alpha, kind);
    if (rho.size() > kMaxKappaAtoms) {
        throw InstanceTooLarge("exact concentration in d >= 2 is limited to " +
                               std::to_string(kMaxKappaAtoms) + " atoms");
    }
    return SubsetSearch(rho, alpha, kind).run();
}

ConcentrationProfile::ConcentrationProfile(std::vector<double> breakpoints, std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
    if (breakpoints_.empty() || breakpoints_.size() != values_.size()) {
        throw ValidationError("concentration profile needs matching, nonempty breakpoints and values");
    }
}

double ConcentrationProfile::operator()(double alpha) const {
    const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), alpha + kBallTolerance);
    if (it == breakpoints_.begin()) return 0.0;
    return values_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
}

ConcentrationProfile concentration_profile(const DiscreteMeasure& rho) {
    std::vector<double> candidates{0.0};
    if (rho.dim() == 1) {
        for (std::size_t i = 0; i < rho.size(); ++i) {
            for (std::size_t j = i + 1; j < rho.size(); ++j) {
                candidates.push_back(0.5 * std::abs(rho.point(i)[0] - rho.point(j)[0]));
            }
        }
    } else {
        if (rho.size() > kMaxKappaAtoms) {
            throw InstanceTooLarge("concentration profile in d >= 2 is limited to " +
                                   std::to_string(kMaxKappaAtoms) + " atoms");
        }
        for_each_subset(rho.size(), rho.dim() + 1, [&](const std::vector<std::size_t>& s) {
            if (s.size() < 2) return;
            std::vector<Point> pts;
            for (std::size_t i : s) pts.push_back(rho.point(i));
            candidates.push_back(min_enclosing_ball(pts).radius);
        });
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    std::vector<double> breakpoints;
    std::vector<double> values;
    for (double r : candidates) {
        const double v = kappa_discrete(rho, r);
        if (values.empty() || v > values.back()) {
            breakpoints.push_back(r);
            values.push_back(v);
        }
    }
    return {std::move(breakpoints), std::move(values)};
}

double kappa_radial(const RadialCDF& cdf, double t) {
    if (!cdf.measure().unimodal()) {
        throw NotUnimodal("concentration of a non-unimodal radial measure is not centered at the mode");
    }
    if (!(t >= 0.0)) throw ValidationError("radius must be nonnegative");
    return cdf.cdf(t);
}

double kappa_radial(const RadialMeasure& rho, double t) { return kappa_radial(RadialCDF(rho), t); }

double r_rho(const DiscreteMeasure& rho, double level) {
    if (!(level > 0.0 && level < 1.0)) throw ValidationError("level must lie in (0, 1)");
    const auto profile = concentration_profile(rho);
    for (std::size_t i = 0; i < profile.values().size(); ++i) {
        if (profile.values()[i] > level) return profile.breakpoints()[i];
    }
    return std::numeric_limits<double>::infinity(); // unreachable: the last value is 1
}

double r_rho(const RadialCDF& cdf, double level) {
    if (!cdf.measure().unimodal()) {
        throw NotUnimodal("median radius requires a unimodal radial measure");
    }
    if (!(level > 0.0 && level < 1.0)) throw ValidationError("level must lie in (0, 1)");
    return cdf.quantile(level);
}

double r_rho(const RadialMeasure& rho, double level) { return r_rho(RadialCDF(rho), level); }

double kappa(const Measure& rho, double t) {
    return std::visit(
        [&](const auto& m) {
            if constexpr (std::is_same_v<std::decay_t<decltype(m)>, DiscreteMeasure>) {
                return kappa_discrete(m, t);
            } else {
                return kappa_radial(m, t);
            }
        },
        rho);
}

double r_rho(const Measure& rho, double level) {
    return std::visit([&](const auto& m) { return r_rho(m, level); }, rho);
}

} // namespace repot
