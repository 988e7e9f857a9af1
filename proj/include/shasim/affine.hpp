#ifndef SHASIM_AFFINE_HPP_
#define SHASIM_AFFINE_HPP_

#include <cstddef>
#include <vector>

namespace shasim {

// ============================================================================
// AffineExpr — sum(coeff_i * v_i) + constant over the automaton variables.
// The coefficient vector may be shorter than the valuation; missing entries
// are zero. Used for reset rows and state-dependent distribution parameters.
// ============================================================================

struct AffineExpr {
    std::vector<double> coeff;
    double constant = 0.0;

    AffineExpr() = default;
    explicit AffineExpr(double c) : constant(c) {}
    AffineExpr(std::vector<double> coefficients, double c)
        : coeff(std::move(coefficients)), constant(c) {}

    static AffineExpr var(std::size_t index, std::size_t dimension) {
        AffineExpr e;
        e.coeff.assign(dimension, 0.0);
        e.coeff[index] = 1.0;
        return e;
    }

    double eval(const std::vector<double>& v) const {
        double r = constant;
        for (std::size_t i = 0; i < coeff.size() && i < v.size(); ++i) {
            r += coeff[i] * v[i];
        }
        return r;
    }

    bool is_constant() const {
        for (double c : coeff) {
            if (c != 0.0) return false;
        }
        return true;
    }

    // Number of variables with a nonzero coefficient.
    std::size_t nonzero_terms() const {
        std::size_t n = 0;
        for (double c : coeff) {
            if (c != 0.0) ++n;
        }
        return n;
    }

    bool operator==(const AffineExpr& o) const {
        if (constant != o.constant) return false;
        std::size_t n = std::max(coeff.size(), o.coeff.size());
        for (std::size_t i = 0; i < n; ++i) {
            double a = i < coeff.size() ? coeff[i] : 0.0;
            double b = i < o.coeff.size() ? o.coeff[i] : 0.0;
            if (a != b) return false;
        }
        return true;
    }
};

}  // namespace shasim

#endif  // SHASIM_AFFINE_HPP_
