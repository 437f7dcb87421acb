#include "weylscatter/potential.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "weylscatter/error.hpp"

namespace weylscatter {

namespace {

void require_square(const CMatrix& v, const char* what) {
    if (v.rows() == 0 || v.rows() != v.cols()) {
        throw Error(ErrorKind::InvalidArgument, std::string(what) + ": potential strength must be square");
    }
}

}  // namespace

ConstantWellPotential::ConstantWellPotential(CMatrix v, double radius) : v_(std::move(v)), radius_(radius) {
    require_square(v_, "constant_well");
    if (!(radius_ > 0.0)) throw Error(ErrorKind::InvalidArgument, "constant_well: radius must be positive");
}

CMatrix ConstantWellPotential::at(double x) const {
    return x < radius_ ? v_ : CMatrix::Zero(v_.rows(), v_.cols());
}

double ConstantWellPotential::tail_estimate(double x_max) const {
    if (x_max >= radius_) return 0.0;
    const double a = std::max(0.0, x_max);
    return v_.norm() * ((radius_ - a) + 0.5 * (radius_ * radius_ - a * a));
}

ExponentialPotential::ExponentialPotential(CMatrix v, double decay_length)
    : v_(std::move(v)), length_(decay_length) {
    require_square(v_, "exponential");
    if (!(length_ > 0.0)) throw Error(ErrorKind::InvalidArgument, "exponential: decay length must be positive");
}

CMatrix ExponentialPotential::at(double x) const { return v_ * std::exp(-x / length_); }

double ExponentialPotential::tail_estimate(double x_max) const {
    // ∫_X^∞ (1+x) e^{−x/ℓ} dx = ℓ e^{−X/ℓ} (1 + X + ℓ)
    return v_.norm() * length_ * std::exp(-x_max / length_) * (1.0 + x_max + length_);
}

TabulatedPotential::TabulatedPotential(std::vector<double> nodes, std::vector<CMatrix> values)
    : nodes_(std::move(nodes)), values_(std::move(values)) {
    if (nodes_.empty() || nodes_.size() != values_.size()) {
        throw Error(ErrorKind::InvalidArgument, "tabulated: need one value per node and at least one node");
    }
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        require_square(values_[i], "tabulated");
        if (values_[i].rows() != values_.front().rows()) {
            throw Error(ErrorKind::InvalidArgument, "tabulated: inconsistent matrix size");
        }
        if (nodes_[i] < 0.0 || (i > 0 && !(nodes_[i] > nodes_[i - 1]))) {
            throw Error(ErrorKind::InvalidArgument, "tabulated: nodes must be non-negative and strictly ascending");
        }
    }
}

CMatrix TabulatedPotential::at(double x) const {
    const Eigen::Index n = dim();
    if (x > nodes_.back() || nodes_.size() == 1) {
        return x <= nodes_.back() ? values_.front() : CMatrix::Zero(n, n);
    }
    if (x <= nodes_.front()) return values_.front();
    const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
    const std::size_t hi = static_cast<std::size_t>(it - nodes_.begin());
    if (hi >= nodes_.size()) return values_.back();
    const std::size_t lo = hi - 1;
    const double w = (x - nodes_[lo]) / (nodes_[hi] - nodes_[lo]);
    return (1.0 - w) * values_[lo] + w * values_[hi];
}

double TabulatedPotential::tail_estimate(double x_max) const {
    if (x_max >= nodes_.back()) return 0.0;
    // Trapezoid rule on the node grid refined by x_max; the integrand is piecewise linear in x
    // times a piecewise-convex norm, so a fine subdivision of each cell is used.
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
        const double a = std::max(nodes_[i], x_max);
        const double b = nodes_[i + 1];
        if (b <= a) continue;
        constexpr int kSub = 16;
        for (int k = 0; k < kSub; ++k) {
            const double x0 = a + (b - a) * k / kSub;
            const double x1 = a + (b - a) * (k + 1) / kSub;
            total += 0.5 * (x1 - x0) * ((1.0 + x0) * at(x0).norm() + (1.0 + x1) * at(x1).norm());
        }
    }
    return total;
}

std::shared_ptr<TabulatedPotential> TabulatedPotential::from_csv(const std::filesystem::path& path, Eigen::Index n) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Config, "cannot open potential table " + path.string());
    std::vector<double> nodes;
    std::vector<CMatrix> values;
    const std::size_t expected = 1 + 2 * static_cast<std::size_t>(n * n);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::vector<double> fields;
        std::stringstream ss(line);
        ss.imbue(std::locale::classic());
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            std::istringstream cs(cell);
            cs.imbue(std::locale::classic());
            double v = 0.0;
            if (!(cs >> v)) {
                throw Error(ErrorKind::Config, path.string() + ":" + std::to_string(line_no) + ": not a number");
            }
            fields.push_back(v);
        }
        if (fields.size() != expected) {
            throw Error(ErrorKind::Config, path.string() + ":" + std::to_string(line_no) + ": expected " +
                                               std::to_string(expected) + " columns");
        }
        CMatrix q(n, n);
        const std::size_t nn = static_cast<std::size_t>(n * n);
        for (Eigen::Index r = 0; r < n; ++r) {
            for (Eigen::Index c = 0; c < n; ++c) {
                const std::size_t k = static_cast<std::size_t>(r * n + c);
                q(r, c) = Complex(fields[1 + k], fields[1 + nn + k]);
            }
        }
        nodes.push_back(fields[0]);
        values.push_back(std::move(q));
    }
    return std::make_shared<TabulatedPotential>(std::move(nodes), std::move(values));
}

}  // namespace weylscatter
