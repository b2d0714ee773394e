#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace pca {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using RMat = Eigen::MatrixXd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using SpMat = Eigen::SparseMatrix<cplx>;
using Triplet = Eigen::Triplet<cplx>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

// dense work above this dimension is refused
inline constexpr std::size_t kDefaultDenseCap = 4096;

struct DimensionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidRuleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct StructureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PictureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnsupportedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline int parity(std::uint64_t x) { return __builtin_popcountll(x) & 1; }
inline double sgn_of(int odd) { return odd ? -1.0 : 1.0; }

double max_abs(const SpMat& a);
double max_abs(const CMat& a);
double max_abs_diff(const SpMat& a, const SpMat& b);

SpMat identity(std::size_t dim);
SpMat adjoint(const SpMat& a);
SpMat commutator(const SpMat& a, const SpMat& b);
SpMat anticommutator(const SpMat& a, const SpMat& b);
SpMat kron(const SpMat& a, const SpMat& b);
SpMat to_sparse(const CMat& a, double drop = 0.0);

}  // namespace pca
