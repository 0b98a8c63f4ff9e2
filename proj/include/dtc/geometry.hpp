#pragma once

#include <span>
#include <utility>
#include <vector>

#include "dtc/measure.hpp"

namespace dtc {

/// Unit vector in C^n = R^{2n}; complex coordinate i is (coords[2i], coords[2i+1]).
class SpherePoint {
public:
    /// Throws InvalidArgument unless the dimension is even and positive and
    /// the norm is 1 within 1e-12.
    explicit SpherePoint(Point coords);

    /// Rescales nonzero coords onto the sphere.
    static SpherePoint normalized(Point coords);

    const Point& coords() const { return coords_; }
    std::size_t real_dim() const { return coords_.size(); }
    std::size_t complex_dim() const { return coords_.size() / 2; }
    double operator[](std::size_t i) const { return coords_[i]; }

private:
    Point coords_;
};

double dot(std::span<const double> x, std::span<const double> y);
double norm(std::span<const double> x);
double euclidean_distance(std::span<const double> x, std::span<const double> y);

/// Multiplies every complex coordinate by e^{i theta}.
Point rotate_complex(std::span<const double> x, double theta);

/// Angle between unit vectors, in [0, pi]. The complementary angle of the
/// opposite rotation is 2 pi - angle.
double angle(const SpherePoint& x, const SpherePoint& y);

/// Great-circle rotation t -> cos(angle t) u + sin(angle t) v, t in [0, 1].
struct RotationPath {
    Point u;
    Point v;
    double angle = 0.0;

    Point at(double t) const;
};

/**
 * The two rotations in the plane through x and y that carry x to y: the first
 * sweeps alpha = angle(x, y), the second sweeps 2 pi - alpha the other way.
 * When x and y are (anti)parallel the plane is the complex line through x,
 * spanned by x and i x.
 */
std::pair<RotationPath, RotationPath> rotation_paths(const SpherePoint& x, const SpherePoint& y);

/// Free Z_p action on S^{2n-1} multiplying each complex coordinate by e^{2 pi i j / p}.
class LensAction {
public:
    LensAction(int p, int n);

    int order() const { return p_; }
    int complex_dim() const { return n_; }
    int sphere_dim() const { return 2 * n_ - 1; }

    SpherePoint act(int j, const SpherePoint& x) const;
    /// Same action on arbitrary vectors of R^{2n} (the action is linear).
    Point act(int j, std::span<const double> x) const;

    std::vector<SpherePoint> orbit(const SpherePoint& x) const;

    /// Quotient metric min_g |x - g y|.
    double quotient_dist(std::span<const double> x, std::span<const double> y) const;

    Ambient ambient() const { return Ambient::lens(p_, n_); }

private:
    void check_dim(std::size_t real_dim) const;

    int p_;
    int n_;
    std::vector<double> cos_;
    std::vector<double> sin_;
};

}  // namespace dtc
