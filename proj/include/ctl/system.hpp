#pragma once

#include <utility>

#include "ctl/matrix.hpp"

namespace ctl {

/// Linear discrete-time pair (A, B): state update x' = A x + B u with
/// componentwise-bounded inputs. The library never simulates trajectories;
/// the pair only seeds generator matrices and spectral analysis.
class LdtSystem {
public:
    LdtSystem(Matrix state, Matrix input) : A_(std::move(state)), B_(std::move(input))
    {
        require_square(A_, "A");
        require_finite(A_, "A");
        require_finite(B_, "B");
        if (A_.rows() > kMaxOrder)
            fail(errc::dimension_unsupported,
                 "system order " + std::to_string(A_.rows()) + " exceeds supported maximum "
                     + std::to_string(kMaxOrder));
        if (B_.rows() != A_.rows())
            fail(errc::dimension_mismatch,
                 "B has " + std::to_string(B_.rows()) + " rows, expected " + std::to_string(A_.rows()));
        if (B_.cols() < 1)
            fail(errc::dimension_mismatch, "B must have at least one column");
    }

    const Matrix& A() const noexcept { return A_; }
    const Matrix& B() const noexcept { return B_; }

    int order() const noexcept { return static_cast<int>(A_.rows()); }
    int inputs() const noexcept { return static_cast<int>(B_.cols()); }

    /// Single-input column. The closed-form volume and factor formulas are
    /// stated for vector inputs only.
    Vector input_vector() const
    {
        if (inputs() != 1)
            fail(errc::multi_input_unsupported, "operation requires a single-input system (r = 1)");
        return B_.col(0);
    }

private:
    Matrix A_;
    Matrix B_;
};

} // namespace ctl
