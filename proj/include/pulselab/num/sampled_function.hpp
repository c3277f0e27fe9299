#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <type_traits>
#include <utility>

namespace pulselab::num {

/// Cubic-spline interpolant over strictly increasing abscissae.
///
/// Carrier for sampled profiles such as n(tau), m(tau), Omega^2(T) and
/// delta-Omega(T).  Natural end conditions; interpolation is exact at the
/// knots.  Outside the sampled span the end values are held constant, which
/// matches the asymptotically flat profiles this project deals with.
template <typename Value>
class SampledFunction {
  public:
    using ValueArray = Eigen::Array<Value, Eigen::Dynamic, 1>;

    SampledFunction() = default;

    SampledFunction(Eigen::ArrayXd abscissae, ValueArray values)
        : x_(std::move(abscissae)), y_(std::move(values)) {
        if (x_.size() != y_.size())
            throw std::invalid_argument("SampledFunction: size mismatch");
        if (x_.size() < 4)
            throw std::invalid_argument("SampledFunction: need at least 4 points");
        for (Eigen::Index i = 0; i < x_.size(); ++i) {
            if (!std::isfinite(x_[i]) || !finite_value(y_[i]))
                throw std::invalid_argument("SampledFunction: non-finite sample");
            if (i > 0 && !(x_[i] > x_[i - 1]))
                throw std::invalid_argument("SampledFunction: abscissae must be strictly increasing");
        }
        build_spline();
    }

    Eigen::Index size() const { return x_.size(); }
    double front() const { return x_[0]; }
    double back() const { return x_[x_.size() - 1]; }
    const Eigen::ArrayXd& abscissae() const { return x_; }
    const ValueArray& values() const { return y_; }

    Value operator()(double x) const {
        if (x <= front()) return y_[0];
        if (x >= back()) return y_[y_.size() - 1];
        const Eigen::Index i = segment(x);
        const double h = x_[i + 1] - x_[i];
        const double a = (x_[i + 1] - x) / h;
        const double b = (x - x_[i]) / h;
        return a * y_[i] + b * y_[i + 1]
             + ((a * a * a - a) * m2_[i] + (b * b * b - b) * m2_[i + 1]) * (h * h) / 6.0;
    }

    /// First derivative of the interpolant (zero outside the span).
    Value derivative(double x) const {
        if (x <= front() || x >= back()) return Value{};
        const Eigen::Index i = segment(x);
        const double h = x_[i + 1] - x_[i];
        const double a = (x_[i + 1] - x) / h;
        const double b = (x - x_[i]) / h;
        return (y_[i + 1] - y_[i]) / h
             + ((3.0 * b * b - 1.0) * m2_[i + 1] - (3.0 * a * a - 1.0) * m2_[i]) * h / 6.0;
    }

    /// Smallest spacing between adjacent abscissae.
    double min_spacing() const {
        double h = x_[1] - x_[0];
        for (Eigen::Index i = 1; i + 1 < x_.size(); ++i) h = std::min(h, x_[i + 1] - x_[i]);
        return h;
    }

  private:
    static bool finite_value(double v) { return std::isfinite(v); }
    static bool finite_value(const std::complex<double>& v) {
        return std::isfinite(v.real()) && std::isfinite(v.imag());
    }

    Eigen::Index segment(double x) const {
        // binary search for the knot interval containing x
        Eigen::Index lo = 0, hi = x_.size() - 1;
        while (hi - lo > 1) {
            const Eigen::Index mid = (lo + hi) / 2;
            if (x_[mid] <= x) lo = mid; else hi = mid;
        }
        return lo;
    }

    void build_spline() {
        // natural cubic spline: tridiagonal Thomas solve for second derivatives
        const Eigen::Index n = x_.size();
        m2_ = ValueArray::Zero(n);
        Eigen::ArrayXd diag(n), sub(n), sup(n);
        ValueArray rhs = ValueArray::Zero(n);
        diag[0] = diag[n - 1] = 1.0;
        sub[0] = sup[0] = sub[n - 1] = sup[n - 1] = 0.0;
        for (Eigen::Index i = 1; i + 1 < n; ++i) {
            const double h0 = x_[i] - x_[i - 1];
            const double h1 = x_[i + 1] - x_[i];
            sub[i] = h0;
            diag[i] = 2.0 * (h0 + h1);
            sup[i] = h1;
            rhs[i] = 6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
        }
        // forward elimination
        Eigen::ArrayXd d = diag;
        ValueArray r = rhs;
        for (Eigen::Index i = 1; i < n; ++i) {
            const double w = sub[i] / d[i - 1];
            d[i] -= w * sup[i - 1];
            r[i] -= w * r[i - 1];
        }
        m2_[n - 1] = r[n - 1] / d[n - 1];
        for (Eigen::Index i = n - 2; i >= 0; --i)
            m2_[i] = (r[i] - sup[i] * m2_[i + 1]) / d[i];
    }

    Eigen::ArrayXd x_;
    ValueArray y_;
    ValueArray m2_;  // second derivatives at knots
};

using SampledFunctionD = SampledFunction<double>;
using SampledFunctionC = SampledFunction<std::complex<double>>;

}  // namespace pulselab::num
