#pragma once

#include <filesystem>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "weylscatter/cxlinalg.hpp"

namespace weylscatter {

/// Matrix potential x ↦ Q(x) on the half line, Hermitian-valued, with Q and xQ in L¹.
class Potential {
public:
    virtual ~Potential() = default;

    virtual Eigen::Index dim() const = 0;
    virtual std::string kind() const = 0;
    virtual CMatrix at(double x) const = 0;

    /// Points where Q or its derivative jumps; the integrator restarts there.
    virtual std::vector<double> breakpoints() const { return {}; }

    /// Q vanishes identically beyond this radius (infinity if it never does).
    virtual double support_end() const { return std::numeric_limits<double>::infinity(); }

    /// Upper bound for ∫_{x_max}^∞ (1+x)‖Q(x)‖ dx.
    virtual double tail_estimate(double x_max) const = 0;
};

using PotentialPtr = std::shared_ptr<const Potential>;

/// Q(x) = V for 0 ≤ x < R, zero beyond.
class ConstantWellPotential final : public Potential {
public:
    ConstantWellPotential(CMatrix v, double radius);

    Eigen::Index dim() const override { return v_.rows(); }
    std::string kind() const override { return "constant_well"; }
    CMatrix at(double x) const override;
    std::vector<double> breakpoints() const override { return {radius_}; }
    double support_end() const override { return radius_; }
    double tail_estimate(double x_max) const override;

    const CMatrix& strength() const { return v_; }
    double radius() const { return radius_; }

private:
    CMatrix v_;
    double radius_;
};

/// Q(x) = V·exp(−x/ℓ).
class ExponentialPotential final : public Potential {
public:
    ExponentialPotential(CMatrix v, double decay_length);

    Eigen::Index dim() const override { return v_.rows(); }
    std::string kind() const override { return "exponential"; }
    CMatrix at(double x) const override;
    double tail_estimate(double x_max) const override;

    const CMatrix& strength() const { return v_; }
    double decay_length() const { return length_; }

private:
    CMatrix v_;
    double length_;
};

/// Piecewise-linear interpolation of tabulated values, zero beyond the last node.
class TabulatedPotential final : public Potential {
public:
    TabulatedPotential(std::vector<double> nodes, std::vector<CMatrix> values);

    /// Columns: x, then n² entries of Re Q (row-major), then n² entries of Im Q.
    /// Lines starting with '#' and blank lines are skipped.
    static std::shared_ptr<TabulatedPotential> from_csv(const std::filesystem::path& path, Eigen::Index n);

    Eigen::Index dim() const override { return values_.front().rows(); }
    std::string kind() const override { return "tabulated"; }
    CMatrix at(double x) const override;
    std::vector<double> breakpoints() const override { return nodes_; }
    double support_end() const override { return nodes_.back(); }
    double tail_estimate(double x_max) const override;

    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<CMatrix>& values() const { return values_; }

private:
    std::vector<double> nodes_;
    std::vector<CMatrix> values_;
};

}  // namespace weylscatter
