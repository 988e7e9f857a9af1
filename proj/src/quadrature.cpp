#include "shasim/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "shasim/errors.hpp"

namespace shasim {

namespace {

struct SimpsonState {
    const std::function<double(double)>* f;
    int max_depth;
    double h_min;  // width floor: spikes confined to a point cannot stall refinement
};

double simpson(double fa, double fm, double fb, double a, double b) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive(const SimpsonState& st, double a, double b, double fa, double fm, double fb,
                double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m);
    double rm = 0.5 * (m + b);
    double flm = (*st.f)(lm);
    double frm = (*st.f)(rm);
    double left = simpson(fa, flm, fm, a, m);
    double right = simpson(fm, frm, fb, m, b);
    double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol || m == a || m == b) {
        return left + right + delta / 15.0;
    }
    // A jump sitting exactly on an evaluation point makes |delta| shrink only
    // linearly with the width while the tolerance shrinks at the same rate;
    // stop once the interval is narrow enough that the residual is below
    // tolerance-scale anyway.
    if (b - a < st.h_min) {
        return left + right + delta / 15.0;
    }
    if (depth >= st.max_depth) {
        throw QuadratureFailure("adaptive Simpson: depth exhausted before tolerance");
    }
    return adaptive(st, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           adaptive(st, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                 int max_depth) {
    if (!(a < b)) return 0.0;
    if (std::isinf(a) || std::isinf(b)) {
        throw QuadratureFailure("integrate: infinite bound must be truncated by the caller");
    }
    SimpsonState st{&f, max_depth, (b - a) * 0x1.0p-42};
    double fa = f(a);
    double fb = f(b);
    double m = 0.5 * (a + b);
    double fm = f(m);
    double whole = simpson(fa, fm, fb, a, b);
    return adaptive(st, a, b, fa, fm, fb, whole, abs_tol, 0);
}

double integrate_with_breakpoints(const std::function<double(double)>& f, double a, double b,
                                  std::vector<double> breakpoints, double abs_tol,
                                  int max_depth) {
    if (!(a < b)) return 0.0;
    breakpoints.push_back(a);
    breakpoints.push_back(b);
    std::sort(breakpoints.begin(), breakpoints.end());
    std::vector<double> cuts;
    for (double x : breakpoints) {
        if (x < a || x > b || std::isinf(x) || std::isnan(x)) continue;
        if (!cuts.empty() && x <= cuts.back()) continue;
        cuts.push_back(x);
    }
    if (cuts.size() < 2) return integrate(f, a, b, abs_tol, max_depth);
    double tol_per_piece = abs_tol / static_cast<double>(cuts.size() - 1);
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        sum += integrate(f, cuts[i], cuts[i + 1], tol_per_piece, max_depth);
    }
    return sum;
}

double integrate_over(const std::function<double(double)>& f, const TimeIntervalSet& set,
                      double abs_tol, const std::vector<double>& breakpoints) {
    if (set.empty()) return 0.0;
    double tol_per_part = abs_tol / static_cast<double>(set.parts().size());
    double sum = 0.0;
    for (const auto& p : set.parts()) {
        if (std::isinf(p.hi)) {
            throw QuadratureFailure("integrate_over: unbounded part must be truncated");
        }
        sum += integrate_with_breakpoints(f, p.lo, p.hi, breakpoints, tol_per_part);
    }
    return sum;
}

}  // namespace shasim
