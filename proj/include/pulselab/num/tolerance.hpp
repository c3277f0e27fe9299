#pragma once

#include <stdexcept>

namespace pulselab::num {

/// Mixed relative/absolute tolerance used by the integrator and quadrature
/// kernels.  Both members must be strictly positive.
struct Tolerance {
    double rel = 1e-10;
    double abs = 1e-14;

    void validate() const {
        if (!(rel > 0.0) || !(abs > 0.0))
            throw std::invalid_argument("Tolerance: rel and abs must both be > 0");
    }
};

}  // namespace pulselab::num
