#include "dtc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace dtc {

namespace {

constexpr double kUnitTolerance = 1e-12;
// Below this the component of y orthogonal to x carries no usable direction
// and the rotation plane falls back to the complex line through x.
constexpr double kDegenerateResidual = 1e-12;

}  // namespace

SpherePoint::SpherePoint(Point coords) : coords_(std::move(coords)) {
    if (coords_.empty() || coords_.size() % 2 != 0)
        throw InvalidArgument("sphere points need an even, positive real dimension");
    if (std::abs(norm(coords_) - 1.0) > kUnitTolerance) throw InvalidArgument("point is not a unit vector");
}

SpherePoint SpherePoint::normalized(Point coords) {
    const double r = norm(coords);
    if (!(r > 0.0) || !std::isfinite(r)) throw InvalidArgument("cannot normalize a zero vector");
    for (double& c : coords) c /= r;
    return SpherePoint(std::move(coords));
}

double dot(std::span<const double> x, std::span<const double> y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

double norm(std::span<const double> x) { return std::sqrt(dot(x, x)); }

double euclidean_distance(std::span<const double> x, std::span<const double> y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        s += d * d;
    }
    return std::sqrt(s);
}

Point rotate_complex(std::span<const double> x, double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    Point out(x.size());
    for (std::size_t i = 0; i + 1 < x.size(); i += 2) {
        out[i] = c * x[i] - s * x[i + 1];
        out[i + 1] = s * x[i] + c * x[i + 1];
    }
    return out;
}

double angle(const SpherePoint& x, const SpherePoint& y) {
    if (x.real_dim() != y.real_dim()) throw InvalidArgument("points of different dimension");
    // 2 atan2(|x-y|, |x+y|) equals arccos<x,y> on unit vectors and stays
    // accurate near 0 and pi.
    double diff = 0.0, sum = 0.0;
    for (std::size_t i = 0; i < x.real_dim(); ++i) {
        const double d = x[i] - y[i];
        const double s = x[i] + y[i];
        diff += d * d;
        sum += s * s;
    }
    return std::clamp(2.0 * std::atan2(std::sqrt(diff), std::sqrt(sum)), 0.0, std::numbers::pi);
}

Point RotationPath::at(double t) const {
    const double c = std::cos(angle * t);
    const double s = std::sin(angle * t);
    Point out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = c * u[i] + s * v[i];
    return out;
}

std::pair<RotationPath, RotationPath> rotation_paths(const SpherePoint& x, const SpherePoint& y) {
    if (x.real_dim() != y.real_dim()) throw InvalidArgument("points of different dimension");
    const double alpha = angle(x, y);
    const double beta = 2.0 * std::numbers::pi - alpha;

    const double c = dot(x.coords(), y.coords());
    Point w(x.real_dim());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = y[i] - c * x[i];
    const double r = norm(w);

    Point v;
    if (r < kDegenerateResidual) {
        v = rotate_complex(x.coords(), std::numbers::pi / 2);  // i x
    } else {
        v = std::move(w);
        for (double& e : v) e /= r;
    }
    Point minus_v(v.size());
    std::transform(v.begin(), v.end(), minus_v.begin(), [](double e) { return -e; });

    RotationPath forward{x.coords(), std::move(v), alpha};
    RotationPath backward{x.coords(), std::move(minus_v), beta};
    return {std::move(forward), std::move(backward)};
}

LensAction::LensAction(int p, int n) : p_(p), n_(n) {
    if (p < 2) throw InvalidArgument("lens action needs p >= 2");
    if (n < 1) throw InvalidArgument("lens action needs complex dimension n >= 1");
    cos_.resize(p);
    sin_.resize(p);
    for (int j = 0; j < p; ++j) {
        cos_[j] = std::cos(2.0 * std::numbers::pi * j / p);
        sin_[j] = std::sin(2.0 * std::numbers::pi * j / p);
    }
    // Exact values where they exist, so that e.g. the p = 2 action is exactly -x.
    cos_[0] = 1.0;
    sin_[0] = 0.0;
    if (p % 2 == 0) {
        cos_[p / 2] = -1.0;
        sin_[p / 2] = 0.0;
    }
    if (p % 4 == 0) {
        cos_[p / 4] = 0.0;
        sin_[p / 4] = 1.0;
        cos_[3 * p / 4] = 0.0;
        sin_[3 * p / 4] = -1.0;
    }
}

void LensAction::check_dim(std::size_t real_dim) const {
    if (real_dim != static_cast<std::size_t>(2 * n_))
        throw InvalidArgument("point dimension does not match the lens action");
}

Point LensAction::act(int j, std::span<const double> x) const {
    check_dim(x.size());
    const int r = ((j % p_) + p_) % p_;
    const double c = cos_[r];
    const double s = sin_[r];
    Point out(x.size());
    for (std::size_t i = 0; i + 1 < x.size(); i += 2) {
        out[i] = c * x[i] - s * x[i + 1];
        out[i + 1] = s * x[i] + c * x[i + 1];
    }
    return out;
}

SpherePoint LensAction::act(int j, const SpherePoint& x) const {
    return SpherePoint(act(j, std::span<const double>(x.coords())));
}

std::vector<SpherePoint> LensAction::orbit(const SpherePoint& x) const {
    std::vector<SpherePoint> out;
    out.reserve(p_);
    for (int j = 0; j < p_; ++j) out.push_back(act(j, x));
    return out;
}

double LensAction::quotient_dist(std::span<const double> x, std::span<const double> y) const {
    check_dim(x.size());
    check_dim(y.size());
    double best2 = std::numeric_limits<double>::infinity();
    for (int j = 0; j < p_; ++j) {
        const double c = cos_[j];
        const double s = sin_[j];
        double d2 = 0.0;
        for (std::size_t i = 0; i + 1 < x.size(); i += 2) {
            const double re = x[i] - (c * y[i] - s * y[i + 1]);
            const double im = x[i + 1] - (s * y[i] + c * y[i + 1]);
            d2 += re * re + im * im;
        }
        best2 = std::min(best2, d2);
    }
    return std::sqrt(best2);
}

}  // namespace dtc
