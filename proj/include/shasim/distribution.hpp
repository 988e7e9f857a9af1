#ifndef SHASIM_DISTRIBUTION_HPP_
#define SHASIM_DISTRIBUTION_HPP_

#include <memory>
#include <string>
#include <vector>

#include "shasim/affine.hpp"
#include "shasim/interval.hpp"
#include "shasim/rng.hpp"

namespace shasim {

// ============================================================================
// Distribution — resolved (numeric-parameter) probability distributions with
// CDF/PDF/quantile/sampling, plus the combinators needed by the race
// calculus: minimum of a family and residual-life shift-conditioning.
// ============================================================================

class Distribution;
using DistPtr = std::shared_ptr<const Distribution>;

class Distribution {
  public:
    virtual ~Distribution() = default;

    virtual double cdf(double x) const = 0;
    virtual double pdf(double x) const = 0;
    virtual double quantile(double p) const = 0;
    // Inverse-transform by default; overridden where a direct scheme is
    // cheaper and distributionally identical.
    virtual double sample(Rng& rng) const { return quantile(rng.uniform01()); }

    virtual Interval support() const = 0;
    virtual bool continuous() const { return true; }
    virtual std::string describe() const = 0;

    // Upper truncation point for numeric integration over this distribution:
    // the exact support end when finite, else the 1-1e-10 quantile.
    double truncation_point() const;
};

class UniformDist final : public Distribution {
  public:
    UniformDist(double a, double b);
    double cdf(double x) const override;
    double pdf(double x) const override;
    double quantile(double p) const override;
    Interval support() const override { return Interval::closed(a_, b_); }
    std::string describe() const override;
    double a() const { return a_; }
    double b() const { return b_; }

  private:
    double a_, b_;
};

class ExponentialDist final : public Distribution {
  public:
    explicit ExponentialDist(double rate);
    double cdf(double x) const override;
    double pdf(double x) const override;
    double quantile(double p) const override;
    Interval support() const override { return Interval{0.0, kInf, false, true}; }
    std::string describe() const override;
    double rate() const { return rate_; }

  private:
    double rate_;
};

// Weighted point masses; the discrete member of the family (no density).
class DiracMixtureDist final : public Distribution {
  public:
    DiracMixtureDist(std::vector<double> points, std::vector<double> weights);
    double cdf(double x) const override;
    double pdf(double x) const override;  // throws InvalidParameter
    double quantile(double p) const override;
    Interval support() const override;
    bool continuous() const override { return false; }
    std::string describe() const override;

  private:
    std::vector<double> points_;   // sorted
    std::vector<double> weights_;  // normalized
};

// Residual-life distribution of `base` after `elapsed` time units:
// F'(x) = (F(r+x) - F(r)) / (1 - F(r)). Throws ExhaustedSupport when no
// probability mass remains beyond r.
class ShiftConditionedDist final : public Distribution {
  public:
    ShiftConditionedDist(DistPtr base, double elapsed);
    double cdf(double x) const override;
    double pdf(double x) const override;
    double quantile(double p) const override;
    Interval support() const override;
    std::string describe() const override;

  private:
    DistPtr base_;
    double elapsed_;
    double cdf_at_elapsed_;
};

// Minimum of an independent family: F(m) = 1 - prod(1 - F_i(m)).
class MinOfDist final : public Distribution {
  public:
    explicit MinOfDist(std::vector<DistPtr> parts);
    double cdf(double x) const override;
    double pdf(double x) const override;
    double quantile(double p) const override;
    // Sampling draws every component and keeps the smallest, which is the
    // race itself and avoids numeric CDF inversion.
    double sample(Rng& rng) const override;
    Interval support() const override;
    std::string describe() const override;
    const std::vector<DistPtr>& parts() const { return parts_; }

  private:
    std::vector<DistPtr> parts_;
};

// --- combinators -------------------------------------------------------------

// min_of of a single distribution is that distribution.
DistPtr min_of(std::vector<DistPtr> dists);
DistPtr shift_condition(DistPtr base, double elapsed);

// Probability that dists[index] realizes the smallest value of the family:
// integral of f_i * prod_{j!=i}(1 - F_j) by adaptive quadrature.
double prob_is_min(std::size_t index, const std::vector<DistPtr>& dists,
                   double abs_tol = 1e-8);

struct UniformityReport {
    double max_pdf = 0.0;
    double min_pdf = 0.0;
    double argmax = 0.0;
    double argmin = 0.0;
    // max_pdf / min_pdf over the evaluation grid (inf when min_pdf == 0).
    double ratio = 1.0;
    // pdf at the interval start over pdf at the midpoint; the witness number
    // quoted for uniform pairs.
    double lo_mid_ratio = 1.0;
    double pdf_at_lo = 0.0;
    double pdf_at_mid = 0.0;
};

// Evaluates the density on a grid over `window` and reports its deviation
// from constancy.
UniformityReport uniformity_deviation(const Distribution& dist, const Interval& window,
                                      int grid_points = 401);

// ============================================================================
// DistSpec — distribution with affine state-dependent parameters, resolved
// against a valuation at sampling time.
// ============================================================================

struct DistSpec {
    enum class Family { uniform, exponential };

    Family family = Family::exponential;
    AffineExpr p0;  // uniform: lower bound; exponential: rate
    AffineExpr p1;  // uniform: upper bound

    static DistSpec uniform(AffineExpr a, AffineExpr b) {
        return DistSpec{Family::uniform, std::move(a), std::move(b)};
    }
    static DistSpec exponential(AffineExpr rate) {
        return DistSpec{Family::exponential, std::move(rate), AffineExpr{}};
    }

    // Throws InvalidParameter if the resolved parameters are out of range.
    DistPtr resolve(const std::vector<double>& valuation) const;

    bool state_dependent() const { return !p0.is_constant() || !p1.is_constant(); }

    bool operator==(const DistSpec& o) const = default;
};

}  // namespace shasim

#endif  // SHASIM_DISTRIBUTION_HPP_
