#pragma once

#include <memory>
#include <string>
#include <vector>

#include "psbound/errors.hpp"

namespace psbound {

/// alpha, beta and finitely many atoms (lambda_i, w_i) realizing the integral
/// representations of matrix monotone / matrix monotone decreasing functions
/// with a discrete measure.
struct DiscreteMeasureSpec {
    double alpha = 0.0;
    double beta = 0.0;
    std::vector<std::pair<double, double>> atoms;  // (lambda > 0, weight > 0)
};

enum class MeasureKind { Monotone, Decreasing };

/// Real interval with endpoint openness flags. An infinite endpoint is
/// +-infinity with the open flag set.
struct Domain {
    double lo = 0.0;
    bool lo_open = false;
    double hi = 0.0;
    bool hi_open = true;
};

/// A member of the scalar function catalog: powers, the principal Lambert W
/// branch, the algebraic example f(x) = (sqrt(x(x+8)) - x)/2, discrete-measure
/// built monotone/decreasing functions, and the derived companion g(x) =
/// x/f(x), composite h = f o g^{-1} and transpose x f(1/x) forms.
///
/// Values are immutable and eval is pure; safe for concurrent use.
class ScalarFunction {
public:
    enum class Kind {
        Power,
        LambertW,
        AlgebraicExample,
        Identity,
        Constant,
        Log,
        NegLog1p,
        Reciprocal,
        Sqrt,
        MonotoneMeasure,
        DecreasingMeasure,
        Companion,
        CompositeH,
        Transpose,
    };

    static ScalarFunction power(double s);
    static ScalarFunction lambert_w();
    static ScalarFunction algebraic_example();
    static ScalarFunction identity();
    static ScalarFunction constant(double c);
    static ScalarFunction log();
    static ScalarFunction neg_log1p();
    static ScalarFunction reciprocal();
    static ScalarFunction sqrt();

    double eval(double x) const;
    double operator()(double x) const { return eval(x); }

    Kind kind() const;
    Domain domain() const;
    std::string name() const;

    /// Endpoint-convention value at 0 for Companion kind (the analytic limit
    /// of x/f(x)); meaningful only for Companion.
    double companion_limit_at_zero() const;

    /// The defining measure for the measure-built kinds, nullptr otherwise.
    const DiscreteMeasureSpec* measure() const;

    struct Impl;
    explicit ScalarFunction(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    const Impl& impl() const { return *impl_; }
    std::shared_ptr<const Impl> impl_ptr() const { return impl_; }

private:
    std::shared_ptr<const Impl> impl_;
};

/// Principal branch of the Lambert W function on [0, infinity): the unique
/// w >= 0 with w e^w = x. Initial guess log(1+x), then Halley iteration.
double lambert_w0(double x);

/// g(x) = x / f(x) on (0, infinity) with g(0) defined by the analytic limit.
/// Power-like inner functions simplify to the exact power form; otherwise the
/// limit at 0 is computed once by Richardson extrapolation on x = 1e-4, 1e-5,
/// 1e-6. Throws SingularityError if f is not strictly positive on the probe
/// grid.
ScalarFunction companion_g(const ScalarFunction& f);

/// h = f o g^{-1} where g is the companion of f. The companion is probed on
/// 4096 log-spaced nodes over [1e-8, 1e8] (plus the 0 endpoint); it must be
/// strictly increasing there, else NotInvertibleError. Evaluation inverts g
/// by bracketed bisection to 1e-13 relative; arguments outside the probed
/// image raise RangeError.
ScalarFunction compose_with_g_inverse(const ScalarFunction& f);

/// Transpose function f~(x) = x f(1/x) on (0, infinity).
ScalarFunction transpose_function(const ScalarFunction& f);

/// Discrete-measure constructors.
///   decreasing: f(x) = alpha + sum_i w_i (lambda_i + 1) / (lambda_i + x)   (beta must be 0)
///   monotone:   f(x) = alpha + beta x + sum_i w_i x / (x + lambda_i)
ScalarFunction from_discrete_measure(MeasureKind kind, const DiscreteMeasureSpec& spec);

} // namespace psbound
