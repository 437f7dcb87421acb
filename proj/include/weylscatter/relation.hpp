#pragma once

#include <string>
#include <variant>
#include <vector>

#include "weylscatter/cxlinalg.hpp"

namespace weylscatter {

/// A relation Θ in Cⁿ, either the graph of a matrix T or the kernel pair
/// {(u, v) : A u = B v}. The pair (I, 0) is the purely multivalued relation
/// whose extension is A₀ itself.
class BoundaryParameter {
public:
    struct MatrixForm {
        CMatrix t;
    };
    struct KernelPairForm {
        CMatrix a;
        CMatrix b;
    };

    static BoundaryParameter matrix(CMatrix t);
    static BoundaryParameter kernel_pair(CMatrix a, CMatrix b);

    Eigen::Index dim() const;
    bool is_matrix() const { return std::holds_alternative<MatrixForm>(form_); }
    const MatrixForm* as_matrix_form() const { return std::get_if<MatrixForm>(&form_); }
    const KernelPairForm* as_kernel_pair() const { return std::get_if<KernelPairForm>(&form_); }

    /// Single-valued relation: always for the matrix form, ker B = {0} for a kernel pair.
    bool is_operator() const;

    /// The operator T with Θ = graph(T); B⁻¹A for an operator-valued kernel pair.
    /// Throws NotOperator otherwise.
    CMatrix operator_matrix() const;

    /// The same relation as a kernel pair; (T, I) for the matrix form.
    KernelPairForm to_kernel_pair() const;

    bool operator==(const BoundaryParameter& other) const;

private:
    explicit BoundaryParameter(std::variant<MatrixForm, KernelPairForm> form) : form_(std::move(form)) {}

    std::variant<MatrixForm, KernelPairForm> form_;
};

struct ResolventValue {
    CMatrix value;
    double cond = 1.0;  // condition number of T − M, resp. A − BM
};

/// (Θ − M)⁻¹: (T − M)⁻¹ for the matrix form, (A − BM)⁻¹B for a kernel pair.
/// Throws SpectralPoint (value = condition number) if the matrix to invert
/// has condition number above cond_cap.
ResolventValue relation_resolvent(const BoundaryParameter& theta, const CMatrix& m, double cond_cap = 1e12);

struct SelfadjointReport {
    double hermitian_defect = 0.0;  // ‖T − T*‖ or ‖AB* − BA*‖
    Eigen::Index rank = 0;          // rank of (A | B); n for the matrix form
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

SelfadjointReport check_selfadjoint(const BoundaryParameter& theta, double tol = 1e-12);

}  // namespace weylscatter
