#pragma once

#include <Eigen/Dense>
#include <string>

#include "ctl/errors.hpp"

namespace ctl {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Dense problems in this library stay at desk scale.
inline constexpr int kMaxOrder = 32;

inline void require_finite(const Matrix& m, const char* name)
{
    if (!m.allFinite())
        fail(errc::non_finite, std::string(name) + " contains NaN or Inf entries");
}

inline void require_square(const Matrix& m, const char* name)
{
    if (m.rows() != m.cols())
        fail(errc::dimension_mismatch,
             std::string(name) + " must be square, got " + std::to_string(m.rows()) + "x"
                 + std::to_string(m.cols()));
}

inline double det(const Matrix& a)
{
    require_square(a, "matrix");
    return a.determinant();
}

/// Inverse with an explicit singularity check.
inline Matrix inverse(const Matrix& a)
{
    require_square(a, "matrix");
    require_finite(a, "matrix");
    Eigen::FullPivLU<Matrix> lu(a);
    if (!lu.isInvertible())
        fail(errc::singular, "matrix is not invertible");
    return lu.inverse();
}

/// Nonnegative integer matrix power by repeated multiplication.
inline Matrix mat_power(const Matrix& a, int k)
{
    require_square(a, "matrix");
    if (k < 0)
        fail(errc::dimension_mismatch, "mat_power expects k >= 0");
    Matrix r = Matrix::Identity(a.rows(), a.cols());
    for (int i = 0; i < k; ++i)
        r = r * a;
    return r;
}

} // namespace ctl
