#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <stdexcept>

#include "pulselab/num/sampled_function.hpp"

namespace pulselab::frames {

/// Time profile of a medium parameter along the comoving time tau:
/// an asymptotically flat perturbation on a constant base value.
/// Gaussian and tanh-step shapes carry analytic derivatives; sampled
/// profiles differentiate their cubic interpolant.
class Profile {
  public:
    static Profile constant(double value) {
        Profile p;
        p.base_ = value;
        p.shape_ = Shape::Constant;
        return p;
    }

    /// base + amplitude * exp(-(tau - center)^2 / (2 sigma^2))
    static Profile gaussian(double base, double amplitude, double sigma, double center = 0.0) {
        if (!(sigma > 0.0)) throw std::invalid_argument("Profile::gaussian: sigma must be > 0");
        Profile p;
        p.base_ = base;
        p.amp_ = amplitude;
        p.sigma_ = sigma;
        p.center_ = center;
        p.shape_ = Shape::Gaussian;
        return p;
    }

    /// Smooth step from level1 (tau << center) to level2 (tau >> center)
    /// with 10-90 width set by `width`.
    static Profile tanh_step(double level1, double level2, double center, double width) {
        if (!(width > 0.0)) throw std::invalid_argument("Profile::tanh_step: width must be > 0");
        Profile p;
        p.base_ = level1;
        p.amp_ = level2 - level1;
        p.sigma_ = width;
        p.center_ = center;
        p.shape_ = Shape::TanhStep;
        return p;
    }

    static Profile sampled(num::SampledFunctionD f, double asymptote) {
        Profile p;
        p.base_ = asymptote;
        p.samples_ = std::make_shared<num::SampledFunctionD>(std::move(f));
        p.shape_ = Shape::Sampled;
        return p;
    }

    double operator()(double tau) const {
        switch (shape_) {
            case Shape::Constant: return base_;
            case Shape::Gaussian: {
                const double u = (tau - center_) / sigma_;
                return base_ + amp_ * std::exp(-0.5 * u * u);
            }
            case Shape::TanhStep:
                return base_ + amp_ * 0.5 * (1.0 + std::tanh((tau - center_) / sigma_));
            case Shape::Sampled: return (*samples_)(tau);
        }
        return base_;
    }

    double derivative(double tau) const {
        switch (shape_) {
            case Shape::Constant: return 0.0;
            case Shape::Gaussian: {
                const double u = (tau - center_) / sigma_;
                return -amp_ * u / sigma_ * std::exp(-0.5 * u * u);
            }
            case Shape::TanhStep: {
                const double c = std::cosh((tau - center_) / sigma_);
                return amp_ * 0.5 / (sigma_ * c * c);
            }
            case Shape::Sampled: return samples_->derivative(tau);
        }
        return 0.0;
    }

    /// Constant value attained before the perturbation arrives.
    double asymptote_start() const {
        if (shape_ == Shape::Sampled) return samples_->values()[0];
        return base_;
    }
    /// Constant value after the perturbation has passed.
    double asymptote_end() const {
        switch (shape_) {
            case Shape::Constant:
            case Shape::Gaussian: return base_;
            case Shape::TanhStep: return base_ + amp_;
            case Shape::Sampled: return samples_->values()[samples_->size() - 1];
        }
        return base_;
    }

    /// Half-width of the support: |profile - asymptote| < cutoff * |amp|
    /// outside [center - hw, center + hw].
    double support_halfwidth(double cutoff = 1e-16) const {
        switch (shape_) {
            case Shape::Constant: return 1.0;
            case Shape::Gaussian: return sigma_ * std::sqrt(-2.0 * std::log(cutoff));
            case Shape::TanhStep: return sigma_ * 0.5 * (-std::log(cutoff / 2.0) + 2.0);
            case Shape::Sampled:
                return 0.5 * (samples_->back() - samples_->front());
        }
        return 1.0;
    }

    double center() const { return center_; }
    bool is_constant() const { return shape_ == Shape::Constant; }

  private:
    enum class Shape { Constant, Gaussian, TanhStep, Sampled };
    Shape shape_ = Shape::Constant;
    double base_ = 0.0, amp_ = 0.0, sigma_ = 1.0, center_ = 0.0;
    std::shared_ptr<num::SampledFunctionD> samples_;
};

}  // namespace pulselab::frames
