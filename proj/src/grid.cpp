#include "weylscatter/grid.hpp"

#include <algorithm>
#include <cmath>

#include "weylscatter/ssf.hpp"

namespace weylscatter {

std::vector<GridPoint> make_grid(const GridSpec& spec, std::span<const double> avoid) {
    std::vector<GridPoint> out;
    out.reserve(static_cast<std::size_t>(spec.points));
    for (int i = 0; i < spec.points; ++i) {
        const double t = spec.points == 1 ? 0.0 : static_cast<double>(i) / (spec.points - 1);
        double lambda = spec.scale == "log"
                            ? std::exp(std::log(spec.start) + t * (std::log(spec.stop) - std::log(spec.start)))
                            : spec.start + t * (spec.stop - spec.start);
        if (i == spec.points - 1 && spec.points > 1) lambda = spec.stop;
        GridPoint p{lambda, lambda, false};
        for (double a : avoid) {
            if (std::abs(p.lambda - a) < spec.nudge || p.lambda == a) {
                p.lambda = a + (p.requested >= a ? spec.nudge : -spec.nudge);
                p.nudged = true;
            }
        }
        out.push_back(p);
    }
    return out;
}

namespace {

std::vector<double> free_thresholds(const CMatrix& t) {
    std::vector<double> out;
    if (!is_hermitian(t, 1e-12)) return out;
    const RVector w = herm_eig(t).eigenvalues;
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        if (w(i) < 0.0) out.push_back(-w(i) * w(i));
    }
    return out;
}

bool is_diagonal(const CMatrix& t) {
    return (t - CMatrix(t.diagonal().asDiagonal())).norm() == 0.0 && t.diagonal().imag().norm() == 0.0;
}

}  // namespace

std::vector<double> threshold_points(const WeylFunction& model, const BoundaryParameter& theta) {
    std::vector<double> out = model.singular_set().points;
    std::vector<double> extra;
    if (theta.is_operator()) {
        const CMatrix t = theta.operator_matrix();
        if (dynamic_cast<const FreeHalfLineModel*>(&model) != nullptr) {
            extra = free_thresholds(t);
        } else if (const auto* pi = dynamic_cast<const PointInteractionModel*>(&model)) {
            if (dynamic_cast<const FreeHalfLineModel*>(pi->inner().get()) != nullptr) {
                extra = free_thresholds(t - identity(t.rows()));
            }
        } else if (const auto* d = dynamic_cast<const DiracModel*>(&model)) {
            if (is_diagonal(t)) {
                const auto th = dirac_thresholds(d->mass(), t(0, 0).real(), t(1, 1).real());
                extra.assign(th.begin() + 2, th.end());
            }
        }
    }
    out.insert(out.end(), extra.begin(), extra.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace weylscatter
