#include "pca/core.hpp"

#include <unsupported/Eigen/KroneckerProduct>

namespace pca {

double max_abs(const SpMat& a) {
    double m = 0;
    for (int k = 0; k < a.outerSize(); ++k)
        for (SpMat::InnerIterator it(a, k); it; ++it) m = std::max(m, std::abs(it.value()));
    return m;
}

double max_abs(const CMat& a) { return a.size() ? a.cwiseAbs().maxCoeff() : 0.0; }

double max_abs_diff(const SpMat& a, const SpMat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("operator dimensions differ");
    SpMat d = a - b;
    return max_abs(d);
}

SpMat identity(std::size_t dim) {
    SpMat i(dim, dim);
    i.setIdentity();
    return i;
}

SpMat adjoint(const SpMat& a) { return SpMat(a.adjoint()); }

SpMat commutator(const SpMat& a, const SpMat& b) { return SpMat(a * b - b * a); }

SpMat anticommutator(const SpMat& a, const SpMat& b) { return SpMat(a * b + b * a); }

SpMat kron(const SpMat& a, const SpMat& b) {
    SpMat out = Eigen::kroneckerProduct(a, b).eval();
    return out;
}

SpMat to_sparse(const CMat& a, double drop) {
    std::vector<Triplet> t;
    for (int j = 0; j < a.cols(); ++j)
        for (int i = 0; i < a.rows(); ++i)
            if (std::abs(a(i, j)) > drop) t.emplace_back(i, j, a(i, j));
    SpMat s(a.rows(), a.cols());
    s.setFromTriplets(t.begin(), t.end());
    return s;
}

}  // namespace pca
