#include "dtc/planner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace dtc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::mt19937_64 stream(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
}

Point gaussian_vector(std::size_t dim, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Point v(dim);
    for (double& e : v) e = normal(rng);
    return v;
}

Point negated(std::span<const double> x) {
    Point out(x.size());
    std::transform(x.begin(), x.end(), out.begin(), [](double e) { return -e; });
    return out;
}

void add_entry(std::vector<PathEntry>& entries, double weight, RotationPath path) {
    if (weight > 0.0) entries.push_back({weight, std::move(path)});
}

/// Moves x by a step of length eps along a random tangent direction.
SpherePoint perturb(const SpherePoint& x, double eps, std::mt19937_64& rng) {
    Point d = gaussian_vector(x.real_dim(), rng);
    const double c = dot(d, x.coords());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] -= c * x[i];
    const double r = norm(d);
    Point out = x.coords();
    for (std::size_t i = 0; i < d.size(); ++i) out[i] += eps * d[i] / r;
    return SpherePoint::normalized(std::move(out));
}

/// True when some alpha(x, gy) is within margin of 0 or pi.
bool near_degenerate(const LensAction& action, const SpherePoint& x, const SpherePoint& y, double margin) {
    for (int g = 0; g < action.order(); ++g) {
        const double a = angle(x, action.act(g, y));
        if (a < margin || a > std::numbers::pi - margin) return true;
    }
    return false;
}

double max_w1_over_time(const MultiPath& a, const MultiPath& b, int time_samples) {
    double worst = 0.0;
    for (int i = 0; i < time_samples; ++i) {
        const double t = time_samples == 1 ? 0.0 : static_cast<double>(i) / (time_samples - 1);
        worst = std::max(worst, wasserstein1(a.evaluate(t), b.evaluate(t)));
    }
    return worst;
}

struct SampleRecord {
    double endpoint_error = 0.0;
    double mass_error = 0.0;
    std::size_t support = 0;
    double independence_error = 0.0;
    double equivariance_error = 0.0;
    std::vector<std::size_t> continuity_pairs;
    std::vector<double> continuity_ratio;
};

SampleRecord verify_sample(const VerifyOptions& opt, const LensAction& action, std::size_t i) {
    SampleRecord rec;
    const std::uint64_t base = 16 * static_cast<std::uint64_t>(i);
    const SpherePoint x = random_sphere_point(opt.n, opt.seed, base);
    const SpherePoint y = random_sphere_point(opt.n, opt.seed, base + 1);
    const Ambient lens = action.ambient();

    const MultiPath nav = lens_navigation(action, x, y);
    rec.support = nav.entries().size();
    rec.mass_error = std::abs(nav.total_weight() - 1.0);
    for (int s = 0; s < opt.time_samples; ++s) {
        const double t = opt.time_samples == 1 ? 0.0 : static_cast<double>(s) / (opt.time_samples - 1);
        const FiniteMeasure mu = nav.evaluate(t);
        rec.mass_error = std::max(rec.mass_error, std::abs(mu.mass() - 1.0));
        rec.support = std::max(rec.support, mu.support_size());
    }
    rec.endpoint_error = std::max(wasserstein1(nav.evaluate(0.0), FiniteMeasure::dirac(x.coords(), lens)),
                                  wasserstein1(nav.evaluate(1.0), FiniteMeasure::dirac(y.coords(), lens)));

    if (opt.check_independence) {
        const bool odd = action.order() % 2 == 1;
        const MultiPath sphere = odd ? sphere_multipath(action, x, y) : line_multipath(action, x, y);
        for (int g = 1; g < action.order(); ++g) {
            const SpherePoint gx = action.act(g, x);
            const SpherePoint gy = action.act(g, y);
            rec.independence_error =
                std::max({rec.independence_error, max_w1_over_time(nav, lens_navigation(action, gx, y), opt.time_samples),
                          max_w1_over_time(nav, lens_navigation(action, x, gy), opt.time_samples)});

            const MultiPath moved = odd ? sphere_multipath(action, gx, gy) : line_multipath(action, gx, gy);
            for (int s = 0; s < opt.time_samples; ++s) {
                const double t = opt.time_samples == 1 ? 0.0 : static_cast<double>(s) / (opt.time_samples - 1);
                const FiniteMeasure translated =
                    push_forward([&](const Point& z) { return action.act(g, z); }, sphere.evaluate(t));
                rec.equivariance_error = std::max(rec.equivariance_error, wasserstein1(moved.evaluate(t), translated));
            }
        }
    }

    if (opt.check_continuity) {
        const FiniteMeasure here = nav.as_path_measure(opt.time_samples);
        for (std::size_t s = 0; s < opt.perturbations.size(); ++s) {
            const double eps = opt.perturbations[s];
            auto rng = stream(opt.seed, base + 2 + s);
            const SpherePoint x2 = perturb(x, eps, rng);
            const SpherePoint y2 = perturb(y, eps, rng);
            if (near_degenerate(action, x, y, opt.margin) || near_degenerate(action, x2, y2, opt.margin)) {
                rec.continuity_pairs.push_back(0);
                rec.continuity_ratio.push_back(0.0);
                continue;
            }
            const FiniteMeasure there = lens_navigation(action, x2, y2).as_path_measure(opt.time_samples);
            const double moved = euclidean_distance(x.coords(), x2.coords()) + euclidean_distance(y.coords(), y2.coords());
            rec.continuity_pairs.push_back(1);
            rec.continuity_ratio.push_back(wasserstein1(here, there) / moved);
        }
    }
    return rec;
}

/// Pairs with some gy at distance `offset` from -x.
double probe_sample(const VerifyOptions& opt, const LensAction& action, double offset, std::size_t i) {
    auto rng = stream(opt.seed ^ 0x9e3779b97f4a7c15ULL, 1000003ULL * static_cast<std::uint64_t>(offset * 1e12) + i);
    const SpherePoint x = random_sphere_point(opt.n, opt.seed ^ 0x5bd1e995ULL, 2 * i);
    const int g = static_cast<int>(rng() % static_cast<std::uint64_t>(action.order()));
    const SpherePoint target = perturb(SpherePoint::normalized(negated(x.coords())), offset, rng);
    const SpherePoint y = action.act(-g, target);

    const double eps = std::min(1e-3, offset / 10.0);
    const SpherePoint x2 = perturb(x, eps, rng);
    const SpherePoint y2 = perturb(y, eps, rng);
    const FiniteMeasure a = lens_navigation(action, x, y).as_path_measure(opt.time_samples);
    const FiniteMeasure b = lens_navigation(action, x2, y2).as_path_measure(opt.time_samples);
    const double moved = euclidean_distance(x.coords(), x2.coords()) + euclidean_distance(y.coords(), y2.coords());
    return wasserstein1(a, b) / moved;
}

constexpr std::size_t kProbeSamples = 16;

}  // namespace

MultiPath::MultiPath(LensAction action, MultiPathKind kind, bool projected, std::vector<PathEntry> entries)
    : action_(std::move(action)), kind_(kind), projected_(projected), entries_(std::move(entries)) {
    if (kind_ == MultiPathKind::EvenLine && action_.order() % 2 != 0)
        throw EvenParityRequired("line multipaths need an even group order");
}

double MultiPath::total_weight() const {
    double total = 0.0;
    for (const PathEntry& e : entries_) total += e.weight;
    return total;
}

MultiPath MultiPath::project() const { return MultiPath(action_, kind_, true, entries_); }

FiniteMeasure MultiPath::evaluate(double t) const {
    std::vector<Atom> atoms;
    atoms.reserve(2 * entries_.size());
    for (const PathEntry& e : entries_) {
        Point z = e.path.at(t);
        if (kind_ == MultiPathKind::EvenLine && !projected_) {
            atoms.push_back({negated(z), e.weight / 2});
            atoms.push_back({std::move(z), e.weight / 2});
        } else {
            atoms.push_back({std::move(z), e.weight});
        }
    }
    return FiniteMeasure::normalize(std::move(atoms), projected_ ? action_.ambient() : Ambient::euclidean());
}

FiniteMeasure MultiPath::as_path_measure(int samples) const {
    if (samples < 1) throw InvalidArgument("need at least one time sample");
    std::vector<Atom> atoms;
    atoms.reserve(2 * entries_.size());
    for (const PathEntry& e : entries_) {
        Point flat;
        flat.reserve(static_cast<std::size_t>(samples) * e.path.u.size());
        for (int s = 0; s < samples; ++s) {
            const double t = samples == 1 ? 0.0 : static_cast<double>(s) / (samples - 1);
            const Point z = e.path.at(t);
            flat.insert(flat.end(), z.begin(), z.end());
        }
        if (kind_ == MultiPathKind::EvenLine && !projected_) {
            atoms.push_back({negated(flat), e.weight / 2});
            atoms.push_back({std::move(flat), e.weight / 2});
        } else {
            atoms.push_back({std::move(flat), e.weight});
        }
    }
    const Ambient base = projected_ ? action_.ambient() : Ambient::euclidean();
    return FiniteMeasure::normalize(std::move(atoms), Ambient::path_space(base, samples));
}

MultiPath sphere_multipath(const LensAction& action, const SpherePoint& x, const SpherePoint& y) {
    const int p = action.order();
    if (p % 2 == 0) throw OddParityRequired("sphere multipath needs odd p, got " + std::to_string(p));
    std::vector<PathEntry> entries;
    entries.reserve(2 * static_cast<std::size_t>(p));
    for (int g = 0; g < p; ++g) {
        const SpherePoint gy = action.act(g, y);
        const double alpha = angle(x, gy);
        const double beta = kTwoPi - alpha;
        auto [forward, backward] = rotation_paths(x, gy);
        add_entry(entries, beta / (kTwoPi * p), std::move(forward));
        add_entry(entries, alpha / (kTwoPi * p), std::move(backward));
    }
    return MultiPath(action, MultiPathKind::OddSphere, false, std::move(entries));
}

MultiPath line_multipath(const LensAction& action, const SpherePoint& x, const SpherePoint& y) {
    const int p = action.order();
    if (p % 2 != 0) throw EvenParityRequired("line multipath needs even p, got " + std::to_string(p));
    const int k = p / 2;
    std::vector<PathEntry> entries;
    entries.reserve(static_cast<std::size_t>(p));
    // g and g + k give the same line, so j = 0..k-1 runs over the distinct lines.
    for (int j = 0; j < k; ++j) {
        const SpherePoint gy = action.act(j, y);
        const SpherePoint z = dot(x.coords(), gy.coords()) >= 0.0 ? gy : SpherePoint(negated(gy.coords()));
        const double a = std::min(angle(x, z), std::numbers::pi / 2);
        RotationPath near = rotation_paths(x, z).first;
        RotationPath far = rotation_paths(x, SpherePoint(negated(z.coords()))).first;
        add_entry(entries, (std::numbers::pi - a) / (std::numbers::pi * k), std::move(near));
        add_entry(entries, a / (std::numbers::pi * k), std::move(far));
    }
    return MultiPath(action, MultiPathKind::EvenLine, false, std::move(entries));
}

MultiPath lens_navigation(const LensAction& action, const SpherePoint& x, const SpherePoint& y) {
    const MultiPath lifted =
        action.order() % 2 == 1 ? sphere_multipath(action, x, y) : line_multipath(action, x, y);
    return lifted.project();
}

SpherePoint random_sphere_point(int n, std::uint64_t seed, std::uint64_t index) {
    auto rng = stream(seed, index);
    for (;;) {
        Point v = gaussian_vector(2 * static_cast<std::size_t>(n), rng);
        if (norm(v) > 1e-6) return SpherePoint::normalized(std::move(v));
    }
}

bool VerificationReport::passed(double tol) const {
    return max_endpoint_error <= tol && max_mass_error <= tol && max_support <= support_bound &&
           max_independence_error <= tol && max_equivariance_error <= tol;
}

VerificationReport verify_planner(const VerifyOptions& opt, Execution exec) {
    if (opt.samples < 0) throw InvalidArgument("sample count must be nonnegative");
    if (opt.time_samples < 2) throw InvalidArgument("need at least two time samples");
    const LensAction action(opt.p, opt.n);

    const auto count = static_cast<std::size_t>(opt.samples);
    std::vector<SampleRecord> records(count);
    if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::size_t i = 0; i < count; ++i) records[i] = verify_sample(opt, action, i);
    } else {
        for (std::size_t i = 0; i < count; ++i) records[i] = verify_sample(opt, action, i);
    }

    const std::size_t probe_count = opt.probe_offsets.size() * kProbeSamples;
    std::vector<double> probes(opt.check_continuity ? probe_count : 0);
    if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::size_t i = 0; i < probes.size(); ++i)
            probes[i] = probe_sample(opt, action, opt.probe_offsets[i / kProbeSamples], i % kProbeSamples);
    } else {
        for (std::size_t i = 0; i < probes.size(); ++i)
            probes[i] = probe_sample(opt, action, opt.probe_offsets[i / kProbeSamples], i % kProbeSamples);
    }

    VerificationReport report;
    report.p = opt.p;
    report.n = opt.n;
    report.samples = opt.samples;
    report.seed = opt.seed;
    report.margin = opt.margin;
    report.support_bound = opt.p % 2 == 1 ? 2 * static_cast<std::size_t>(opt.p) : static_cast<std::size_t>(opt.p);
    if (opt.check_continuity)
        for (double eps : opt.perturbations) report.continuity.push_back({eps, 0, 0.0});

    for (const SampleRecord& r : records) {
        report.max_endpoint_error = std::max(report.max_endpoint_error, r.endpoint_error);
        report.max_mass_error = std::max(report.max_mass_error, r.mass_error);
        report.max_support = std::max(report.max_support, r.support);
        report.max_independence_error = std::max(report.max_independence_error, r.independence_error);
        report.max_equivariance_error = std::max(report.max_equivariance_error, r.equivariance_error);
        for (std::size_t s = 0; s < r.continuity_pairs.size(); ++s) {
            report.continuity[s].pairs += r.continuity_pairs[s];
            report.continuity[s].max_ratio = std::max(report.continuity[s].max_ratio, r.continuity_ratio[s]);
        }
    }
    if (opt.check_continuity) {
        for (std::size_t o = 0; o < opt.probe_offsets.size(); ++o) {
            ProbePoint pp{opt.probe_offsets[o], 0.0};
            for (std::size_t i = 0; i < kProbeSamples; ++i)
                pp.max_ratio = std::max(pp.max_ratio, probes[o * kProbeSamples + i]);
            report.degeneracy_probe.push_back(pp);
        }
    }
    return report;
}

}  // namespace dtc
