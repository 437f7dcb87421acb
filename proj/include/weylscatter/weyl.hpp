#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "weylscatter/cxlinalg.hpp"

namespace weylscatter {

/// Square root with the cut along [0, ∞): Im √z > 0 off the cut, √z ≥ 0 on it.
Complex branch_sqrt(Complex z);

enum class BoundaryMode { Direct, EpsilonLimit };

struct Interval {
    double lo;
    double hi;
    bool contains(double x) const { return lo < x && x < hi; }
};

/// Real points where boundary values do not exist (band edges, thresholds, poles)
/// and open intervals where the closed form is not trusted on the axis and the
/// ε-limit is used instead.
struct SingularSet {
    std::vector<double> points;
    std::vector<Interval> epsilon_intervals;
};

/// A matrix Nevanlinna function given by a formula that can be evaluated on the
/// closed upper half plane. At real λ, `evaluate` returns the continuation of
/// the formula, which is M(λ+i0) off the singular set.
class WeylFunction {
public:
    virtual ~WeylFunction() = default;

    virtual Eigen::Index dim() const = 0;
    virtual std::string kind() const = 0;
    virtual CMatrix evaluate(Complex lambda) const = 0;
    virtual SingularSet singular_set() const { return {}; }
    virtual BoundaryMode boundary_mode() const { return BoundaryMode::Direct; }
    virtual double epsilon0() const { return 1e-3; }
};

using WeylFunctionPtr = std::shared_ptr<const WeylFunction>;

/// M(λ) for Im λ > 0.
CMatrix eval_upper(const WeylFunction& model, Complex lambda);

struct BoundaryValue {
    CMatrix value;
    double error_estimate = 0.0;
    bool extrapolated = false;
};

/// M(λ+i0). Uses the model's boundary mode unless λ falls in one of its
/// ε-intervals; throws SingularPoint on declared singular points and
/// BoundaryLimitFailed when the extrapolated value is not trustworthy.
BoundaryValue eval_boundary(const WeylFunction& model, double lambda);
BoundaryValue eval_boundary(const WeylFunction& model, double lambda, BoundaryMode mode);

/// Default finite-difference step 1e-5·max(1,|λ|).
double default_derivative_step(Complex lambda);

/// Central difference (M(λ+h) − M(λ−h))/(2h) along the real direction.
CMatrix derivative(const WeylFunction& model, Complex lambda, double h);
CMatrix derivative(const WeylFunction& model, Complex lambda);

struct NevanlinnaViolation {
    Complex lambda;
    double min_eigenvalue;
    std::string message;
};

struct NevanlinnaReport {
    std::size_t points_tested = 0;
    double min_eigenvalue = 0.0;  // smallest eigenvalue of Im M over the grid
    std::vector<NevanlinnaViolation> violations;
    bool ok() const { return violations.empty(); }
};

NevanlinnaReport validate_nevanlinna(const WeylFunction& model, std::span<const Complex> grid);

}  // namespace weylscatter
