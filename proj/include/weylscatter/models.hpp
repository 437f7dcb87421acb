#pragma once

#include <span>
#include <vector>

#include "weylscatter/potential.hpp"
#include "weylscatter/weyl.hpp"

namespace weylscatter {

/// M(λ) = i√λ·I, the Weyl function of −d²/dx² on the half line with
/// Γ₀f = f(0), Γ₁f = f′(0).
CMatrix free_m(Eigen::Index n, Complex lambda);

/// Dirac operator on the line with mass a and the jump boundary triplet:
/// M(λ) = diag(i√(λ+a)/√(λ−a), i√(λ−a)/√(λ+a)). Throws BandEdge at λ = ±a.
CMatrix dirac_m(double a, Complex lambda);

class FreeHalfLineModel final : public WeylFunction {
public:
    explicit FreeHalfLineModel(Eigen::Index n);

    Eigen::Index dim() const override { return n_; }
    std::string kind() const override { return "free_scalar"; }
    CMatrix evaluate(Complex lambda) const override { return free_m(n_, lambda); }
    SingularSet singular_set() const override { return {{0.0}, {}}; }

private:
    Eigen::Index n_;
};

class DiracModel final : public WeylFunction {
public:
    explicit DiracModel(double mass);

    Eigen::Index dim() const override { return 2; }
    std::string kind() const override { return "dirac"; }
    CMatrix evaluate(Complex lambda) const override { return dirac_m(a_, lambda); }
    SingularSet singular_set() const override { return {{-a_, a_}, {}}; }

    double mass() const { return a_; }

private:
    double a_;
};

struct JostSolution {
    CMatrix e0;        // E(0, λ)
    CMatrix e0_prime;  // E′(0, λ)
    std::size_t steps = 0;
};

/// −E″ + QE = λE on the half line; the Jost solution is integrated backwards
/// from the truncation radius where it is set to e^{ix√λ}·I.
class MatrixSchrodingerModel final : public WeylFunction {
public:
    /// x_max ≤ 0 selects the truncation radius automatically from the potential.
    /// Throws TruncationWarning if the tail of the potential beyond x_max is not
    /// below ode_tol, InvalidArgument (NotHermitian) if Q is not Hermitian on a probe grid.
    MatrixSchrodingerModel(PotentialPtr potential, double x_max = 0.0, double ode_tol = 1e-8);

    Eigen::Index dim() const override { return potential_->dim(); }
    std::string kind() const override { return "schrodinger_matrix"; }
    CMatrix evaluate(Complex lambda) const override;
    SingularSet singular_set() const override { return {{0.0}, {}}; }

    const PotentialPtr& potential() const { return potential_; }
    double x_max() const { return x_max_; }
    double ode_tol() const { return ode_tol_; }

    JostSolution jost(Complex lambda) const;

private:
    // Solution data at x = 0 for initial data E = I, E′ = i√λ·I at x_max.
    JostSolution integrate_unscaled(Complex lambda) const;

    PotentialPtr potential_;
    double x_max_;
    double ode_tol_;
};

JostSolution jost_solution(const MatrixSchrodingerModel& model, Complex lambda);

/// E′(0,λ)·E(0,λ)⁻¹; throws SingularJost if cond E(0,λ) > 1e12.
CMatrix schrodinger_m(const MatrixSchrodingerModel& model, Complex lambda);

/// M_H(λ) = I + M_A(λ) for a point interaction in R³ whose radial part is the
/// half-line model M_A.
class PointInteractionModel final : public WeylFunction {
public:
    explicit PointInteractionModel(WeylFunctionPtr inner);

    Eigen::Index dim() const override { return inner_->dim(); }
    std::string kind() const override { return "point_interaction"; }
    CMatrix evaluate(Complex lambda) const override;
    SingularSet singular_set() const override { return inner_->singular_set(); }
    BoundaryMode boundary_mode() const override { return inner_->boundary_mode(); }

    const WeylFunctionPtr& inner() const { return inner_; }

private:
    WeylFunctionPtr inner_;
};

CMatrix point_interaction_m(const WeylFunction& inner, Complex lambda);

/// Returns M(λ)* instead of M(λ). Not a Nevanlinna function; exists to exercise
/// the validation paths.
class ConjugatedModel final : public WeylFunction {
public:
    explicit ConjugatedModel(WeylFunctionPtr inner) : inner_(std::move(inner)) {}

    Eigen::Index dim() const override { return inner_->dim(); }
    std::string kind() const override { return "conjugated"; }
    CMatrix evaluate(Complex lambda) const override { return inner_->evaluate(lambda).adjoint(); }
    SingularSet singular_set() const override { return inner_->singular_set(); }

    const WeylFunctionPtr& inner() const { return inner_; }

private:
    WeylFunctionPtr inner_;
};

/// ‖M(λ) − i√λ·I‖ for each λ. Only half-line Schrödinger models (free or with
/// potential) have this asymptote; anything else throws WrongModelKind.
std::vector<double> asymptotic_check(const WeylFunction& model, std::span<const double> lambdas);

}  // namespace weylscatter
