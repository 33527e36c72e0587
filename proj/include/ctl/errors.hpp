#pragma once

#include <stdexcept>
#include <string>

namespace ctl {

/// Machine-readable failure categories surfaced by the library and the CLI.
enum class errc {
    non_finite,
    dimension_mismatch,
    dimension_unsupported,
    singular,
    complex_spectrum,
    ill_conditioned,
    eigenvalue_out_of_range,
    repeated_eigenvalues,
    shared_block_eigenvalue,
    not_anti_stable,
    multi_input_unsupported,
    degenerate,
};

inline const char* errc_name(errc c) noexcept
{
    switch (c) {
    case errc::non_finite: return "NonFinite";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::dimension_unsupported: return "DimensionUnsupported";
    case errc::singular: return "Singular";
    case errc::complex_spectrum: return "ComplexSpectrum";
    case errc::ill_conditioned: return "IllConditioned";
    case errc::eigenvalue_out_of_range: return "EigenvalueOutOfRange";
    case errc::repeated_eigenvalues: return "RepeatedEigenvalues";
    case errc::shared_block_eigenvalue: return "SharedBlockEigenvalue";
    case errc::not_anti_stable: return "NotAntiStable";
    case errc::multi_input_unsupported: return "MultiInputUnsupported";
    case errc::degenerate: return "Degenerate";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code)
    {
    }

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& message)
{
    throw Error(code, message);
}

/// Malformed input documents (bad JSON, ragged rows, missing keys).
/// Kept separate from Error so the CLI can distinguish parse failures
/// from structural analysis failures.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace ctl
