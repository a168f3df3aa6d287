#include "psbound/scalar_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace psbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Inversion table parameters for h = f o g^{-1}.
constexpr int kInversionNodes = 4096;
constexpr double kInversionLo = 1e-8;
constexpr double kInversionHi = 1e8;

[[noreturn]] void domain_fail(const std::string& fname, double x) {
    std::ostringstream msg;
    msg << fname << ": argument " << x << " outside domain";
    throw DomainError(msg.str());
}

} // namespace

struct ScalarFunction::Impl {
    Kind kind = Kind::Identity;
    double param = 0.0;  // exponent s, or the constant c
    DiscreteMeasureSpec measure;
    std::shared_ptr<const Impl> inner;

    // Companion: the analytic limit of x/f(x) at 0.
    double limit0 = 0.0;

    // CompositeH: inversion table, x ascending (x[0] = 0), y = g(x) ascending.
    std::vector<double> inv_x, inv_y;
    std::shared_ptr<const Impl> companion;  // g, for CompositeH

    double eval(double x) const;
    Domain domain() const;
    std::string name() const;
};

namespace {

ScalarFunction make(std::shared_ptr<ScalarFunction::Impl> impl) {
    return ScalarFunction(std::shared_ptr<const ScalarFunction::Impl>(std::move(impl)));
}

ScalarFunction make_simple(ScalarFunction::Kind kind, double param = 0.0) {
    auto impl = std::make_shared<ScalarFunction::Impl>();
    impl->kind = kind;
    impl->param = param;
    return make(std::move(impl));
}

double eval_measure_monotone(const DiscreteMeasureSpec& m, double x) {
    double v = m.alpha + m.beta * x;
    for (const auto& [lam, w] : m.atoms) v += w * x / (x + lam);
    return v;
}

double eval_measure_decreasing(const DiscreteMeasureSpec& m, double x) {
    double v = m.alpha;
    for (const auto& [lam, w] : m.atoms) v += w * (lam + 1.0) / (lam + x);
    return v;
}

} // namespace

double ScalarFunction::Impl::eval(double x) const {
    using K = ScalarFunction::Kind;
    switch (kind) {
        case K::Power:
            if (x < 0.0) domain_fail(name(), x);
            if (x == 0.0) {
                if (param > 0.0) return 0.0;
                if (param == 0.0) return 1.0;
                domain_fail(name(), x);
            }
            return std::pow(x, param);
        case K::LambertW:
            return lambert_w0(x);
        case K::AlgebraicExample:
            if (x < 0.0) domain_fail(name(), x);
            if (x == 0.0) return 0.0;
            return 0.5 * (std::sqrt(x * (x + 8.0)) - x);
        case K::Identity:
            return x;
        case K::Constant:
            return param;
        case K::Log:
            if (x <= 0.0) domain_fail(name(), x);
            return std::log(x);
        case K::NegLog1p:
            if (x <= -1.0) domain_fail(name(), x);
            return -std::log1p(x);
        case K::Reciprocal:
            if (x <= 0.0) domain_fail(name(), x);
            return 1.0 / x;
        case K::Sqrt:
            if (x < 0.0) domain_fail(name(), x);
            return std::sqrt(x);
        case K::MonotoneMeasure:
            if (x < 0.0) domain_fail(name(), x);
            return eval_measure_monotone(measure, x);
        case K::DecreasingMeasure:
            if (x < 0.0) domain_fail(name(), x);
            return eval_measure_decreasing(measure, x);
        case K::Companion: {
            if (x < 0.0) domain_fail(name(), x);
            if (x == 0.0) return limit0;
            const double fx = inner->eval(x);
            if (fx <= 0.0) {
                std::ostringstream msg;
                msg << "companion of " << inner->name() << ": inner function vanishes at x = " << x;
                throw SingularityError(msg.str());
            }
            return x / fx;
        }
        case K::CompositeH: {
            // invert g by bracketed bisection, then apply f
            const double slack = 1e-12 * (1.0 + std::abs(x));
            double y = x;
            if (y < inv_y.front() - slack || y > inv_y.back() + slack) {
                std::ostringstream msg;
                msg << name() << ": value " << y << " outside the probed image ["
                    << inv_y.front() << ", " << inv_y.back() << "]";
                throw RangeError(msg.str());
            }
            y = std::clamp(y, inv_y.front(), inv_y.back());
            const auto it = std::lower_bound(inv_y.begin(), inv_y.end(), y);
            size_t k = static_cast<size_t>(it - inv_y.begin());
            if (k > 0) --k;  // bracket [inv_x[k], inv_x[k+1]]
            double a = inv_x[k];
            double b = inv_x[std::min(k + 1, inv_x.size() - 1)];
            if (a == b) return inner->eval(a);
            for (int it2 = 0; it2 < 200 && (b - a) > 1e-13 * std::max(1.0, std::abs(b)); ++it2) {
                const double mid = 0.5 * (a + b);
                const double gm = companion->eval(mid);
                if (gm < y)
                    a = mid;
                else
                    b = mid;
            }
            return inner->eval(0.5 * (a + b));
        }
        case K::Transpose:
            if (x <= 0.0) domain_fail(name(), x);
            return x * inner->eval(1.0 / x);
    }
    throw Error("ScalarFunction: unknown kind");
}

Domain ScalarFunction::Impl::domain() const {
    using K = ScalarFunction::Kind;
    switch (kind) {
        case K::Power:
            if (param < 0.0) return {0.0, true, kInf, true};
            return {0.0, false, kInf, true};
        case K::LambertW:
        case K::AlgebraicExample:
        case K::Sqrt:
        case K::MonotoneMeasure:
        case K::DecreasingMeasure:
        case K::Companion:
            return {0.0, false, kInf, true};
        case K::Identity:
        case K::Constant:
            return {-kInf, true, kInf, true};
        case K::Log:
        case K::Reciprocal:
        case K::Transpose:
            return {0.0, true, kInf, true};
        case K::NegLog1p:
            return {-1.0, true, kInf, true};
        case K::CompositeH:
            return {inv_y.front(), false, inv_y.back(), false};
    }
    return {0.0, false, kInf, true};
}

std::string ScalarFunction::Impl::name() const {
    using K = ScalarFunction::Kind;
    std::ostringstream s;
    switch (kind) {
        case K::Power: s << "power(" << param << ")"; break;
        case K::LambertW: s << "lambert_w"; break;
        case K::AlgebraicExample: s << "algebraic_example"; break;
        case K::Identity: s << "identity"; break;
        case K::Constant: s << "constant(" << param << ")"; break;
        case K::Log: s << "log"; break;
        case K::NegLog1p: s << "neg_log1p"; break;
        case K::Reciprocal: s << "reciprocal"; break;
        case K::Sqrt: s << "sqrt"; break;
        case K::MonotoneMeasure: s << "measure_mon(a=" << measure.alpha << ",b=" << measure.beta
                                   << ",atoms=" << measure.atoms.size() << ")"; break;
        case K::DecreasingMeasure: s << "measure_dec(a=" << measure.alpha
                                     << ",atoms=" << measure.atoms.size() << ")"; break;
        case K::Companion: s << "companion(" << inner->name() << ")"; break;
        case K::CompositeH: s << "h(" << inner->name() << ")"; break;
        case K::Transpose: s << "transpose(" << inner->name() << ")"; break;
    }
    return s.str();
}

ScalarFunction ScalarFunction::power(double s) { return make_simple(Kind::Power, s); }
ScalarFunction ScalarFunction::lambert_w() { return make_simple(Kind::LambertW); }
ScalarFunction ScalarFunction::algebraic_example() { return make_simple(Kind::AlgebraicExample); }
ScalarFunction ScalarFunction::identity() { return make_simple(Kind::Identity); }
ScalarFunction ScalarFunction::constant(double c) { return make_simple(Kind::Constant, c); }
ScalarFunction ScalarFunction::log() { return make_simple(Kind::Log); }
ScalarFunction ScalarFunction::neg_log1p() { return make_simple(Kind::NegLog1p); }
ScalarFunction ScalarFunction::reciprocal() { return make_simple(Kind::Reciprocal); }
ScalarFunction ScalarFunction::sqrt() { return make_simple(Kind::Sqrt); }

double ScalarFunction::eval(double x) const { return impl_->eval(x); }
ScalarFunction::Kind ScalarFunction::kind() const { return impl_->kind; }
Domain ScalarFunction::domain() const { return impl_->domain(); }
std::string ScalarFunction::name() const { return impl_->name(); }
double ScalarFunction::companion_limit_at_zero() const { return impl_->limit0; }

const DiscreteMeasureSpec* ScalarFunction::measure() const {
    if (impl_->kind == Kind::MonotoneMeasure || impl_->kind == Kind::DecreasingMeasure)
        return &impl_->measure;
    return nullptr;
}

double lambert_w0(double x) {
    if (x < 0.0) throw DomainError("lambert_w0: negative argument (W_{-1} branch out of scope)");
    if (x == 0.0) return 0.0;

    double w = std::log1p(x);
    for (int i = 0; i < 50; ++i) {
        const double e = std::exp(w);
        const double r = w * e - x;
        if (std::abs(r) <= 1e-15 * (1.0 + x)) break;
        const double d1 = e * (w + 1.0);
        const double d2 = e * (w + 2.0);
        w -= r / (d1 - r * d2 / (2.0 * d1));
    }
    return w;
}

ScalarFunction companion_g(const ScalarFunction& f) {
    using K = ScalarFunction::Kind;
    // power-like inner functions have an exact power companion
    switch (f.kind()) {
        case K::Power: return ScalarFunction::power(1.0 - f.impl().param);
        case K::Sqrt: return ScalarFunction::power(0.5);
        case K::Reciprocal: return ScalarFunction::power(2.0);
        case K::Identity: return ScalarFunction::power(0.0);
        default: break;
    }

    // probe strict positivity of f on (0, infinity)
    const Domain dom = f.domain();
    for (int k = 0; k <= 64; ++k) {
        const double x = std::pow(10.0, -8.0 + 16.0 * k / 64.0);
        if (dom.hi < kInf && x > dom.hi) break;
        const double fx = f.eval(x);
        if (!(fx > 0.0)) {
            std::ostringstream msg;
            msg << "companion_g: " << f.name() << " is not strictly positive at x = " << x;
            throw SingularityError(msg.str());
        }
    }

    auto impl = std::make_shared<ScalarFunction::Impl>();
    impl->kind = K::Companion;
    impl->inner = f.impl_ptr();

    // analytic limit of x/f(x) at 0 by Richardson extrapolation (ratio 10)
    const double v1 = 1e-4 / f.eval(1e-4);
    const double v2 = 1e-5 / f.eval(1e-5);
    const double v3 = 1e-6 / f.eval(1e-6);
    const double w1 = (10.0 * v2 - v1) / 9.0;
    const double w2 = (10.0 * v3 - v2) / 9.0;
    impl->limit0 = (100.0 * w2 - w1) / 99.0;
    return make(std::move(impl));
}

ScalarFunction compose_with_g_inverse(const ScalarFunction& f) {
    const ScalarFunction g = companion_g(f);

    auto impl = std::make_shared<ScalarFunction::Impl>();
    impl->kind = ScalarFunction::Kind::CompositeH;
    impl->inner = f.impl_ptr();
    impl->companion = g.impl_ptr();

    // strict-increase check on the positive grid; the 0 endpoint is an
    // optional anchor added afterwards when its convention value fits
    impl->inv_x.reserve(kInversionNodes + 1);
    impl->inv_y.reserve(kInversionNodes + 1);
    const double llo = std::log(kInversionLo), lhi = std::log(kInversionHi);
    for (int k = 0; k < kInversionNodes; ++k) {
        const double x = std::exp(llo + (lhi - llo) * k / (kInversionNodes - 1));
        const double y = g.eval(x);
        if (!impl->inv_y.empty() && !(y > impl->inv_y.back())) {
            std::ostringstream msg;
            msg << "compose_with_g_inverse: companion of " << f.name()
                << " is not strictly increasing near x = " << x;
            throw NotInvertibleError(msg.str());
        }
        impl->inv_x.push_back(x);
        impl->inv_y.push_back(y);
    }
    const Domain gdom = g.domain();
    if (gdom.lo <= 0.0 && !gdom.lo_open) {
        const double g0 = g.eval(0.0);
        if (g0 < impl->inv_y.front()) {
            impl->inv_x.insert(impl->inv_x.begin(), 0.0);
            impl->inv_y.insert(impl->inv_y.begin(), g0);
        }
    }
    return make(std::move(impl));
}

ScalarFunction transpose_function(const ScalarFunction& f) {
    auto impl = std::make_shared<ScalarFunction::Impl>();
    impl->kind = ScalarFunction::Kind::Transpose;
    impl->inner = f.impl_ptr();
    return make(std::move(impl));
}

ScalarFunction from_discrete_measure(MeasureKind kind, const DiscreteMeasureSpec& spec) {
    if (spec.alpha < 0.0 || spec.beta < 0.0)
        throw SpecError("from_discrete_measure: alpha and beta must be nonnegative");
    for (const auto& [lam, w] : spec.atoms)
        if (!(lam > 0.0) || !(w > 0.0))
            throw SpecError("from_discrete_measure: atom locations and weights must be positive");
    if (kind == MeasureKind::Decreasing && spec.beta != 0.0)
        throw SpecError("from_discrete_measure: decreasing kind requires beta = 0");

    auto impl = std::make_shared<ScalarFunction::Impl>();
    impl->kind = kind == MeasureKind::Monotone ? ScalarFunction::Kind::MonotoneMeasure
                                               : ScalarFunction::Kind::DecreasingMeasure;
    impl->measure = spec;
    return make(std::move(impl));
}

} // namespace psbound
