#include "repot/quadrature.hpp"

#include <string>

namespace repot {
namespace {

constexpr int kMinDepth = 4;

struct Simpson {
    const std::function<double(double)>& f;
    int max_depth;

    double recurse(double a, double b, double fa, double fm, double fb, double whole, double tol,
                   int depth) const {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m);
        const double rm = 0.5 * (m + b);
        const double flm = f(lm);
        const double frm = f(rm);
        const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        const double delta = left + right - whole;
        if (depth >= kMinDepth && std::abs(delta) <= 15.0 * tol) {
            return left + right + delta / 15.0;
        }
        if (depth >= max_depth || m <= a || m >= b) {
            if (std::abs(delta) <= 15.0 * tol || std::abs(delta) < 1e-300) return left + right;
            throw QuadratureNotConverged("adaptive Simpson did not converge on [" +
                                         std::to_string(a) + ", " + std::to_string(b) + "]");
        }
        return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
               recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
    }
};

} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth) {
    if (b == a) return 0.0;
    if (b < a) return -adaptive_simpson(f, b, a, tol, max_depth);
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return Simpson{f, max_depth}.recurse(a, b, fa, fm, fb, whole, tol, 0);
}

} // namespace repot
