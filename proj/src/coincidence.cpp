#include "dtc/coincidence.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <set>

#include "dtc/lp.hpp"

namespace dtc {

namespace {

constexpr double kTieTolerance = 1e-12;

std::mt19937_64 restart_stream(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), 0xb0u};
    return std::mt19937_64(seq);
}

/// rows[g - 1][pos] = f(g v_pos) - f(v_pos) for the vertices v_pos of a facet.
std::vector<std::vector<double>> orbit_differences(const FreeSphereComplex& x, const PLFunction& f,
                                                   const Simplex& sigma) {
    std::vector<std::vector<double>> rows(x.p - 1, std::vector<double>(sigma.size()));
    for (int g = 1; g < x.p; ++g)
        for (std::size_t pos = 0; pos < sigma.size(); ++pos)
            rows[g - 1][pos] = f.values[x.act(g, sigma[pos])] - f.values[sigma[pos]];
    return rows;
}

std::optional<std::vector<Rational>> exact_coincidence(const FreeSphereComplex& x, const PLFunction& f,
                                                       const Simplex& sigma) {
    const std::size_t n = sigma.size();
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
    for (int g = 1; g < x.p; ++g) {
        std::vector<Rational> row(n);
        for (std::size_t pos = 0; pos < n; ++pos)
            row[pos] = Rational(f.values[x.act(g, sigma[pos])]) - Rational(f.values[sigma[pos]]);
        a.push_back(std::move(row));
        b.emplace_back(0);
    }
    a.emplace_back(n, Rational(1));
    b.emplace_back(1);
    const auto sol = solve_lp(a, b, std::vector<Rational>(n, Rational(0)));
    if (sol.status != LpStatus::Optimal) return std::nullopt;
    return sol.x;
}

long long lcm_upto(int d) {
    long long l = 1;
    for (int i = 2; i <= d; ++i) l = std::lcm(l, static_cast<long long>(i));
    return l;
}

/// Calls visit(parts) for every composition of `total` into `slots` nonnegative parts.
template <class F>
void for_each_composition(int total, std::size_t slots, F&& visit) {
    std::vector<int> parts(slots, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
        if (i + 1 == slots) {
            parts[i] = left;
            visit(parts);
            return;
        }
        for (int v = left; v >= 0; --v) {
            parts[i] = v;
            rec(i + 1, left - v);
        }
    };
    rec(0, total);
}

using PointKey = std::vector<std::pair<int, int>>;  // (vertex, numerator > 0), sorted

PointKey key_of(const Simplex& sigma, const std::vector<int>& parts) {
    PointKey key;
    for (std::size_t i = 0; i < sigma.size(); ++i)
        if (parts[i] > 0) key.emplace_back(sigma[i], parts[i]);
    std::sort(key.begin(), key.end());
    return key;
}

PointKey translate(const FreeSphereComplex& x, int g, const PointKey& key) {
    PointKey out;
    for (auto [v, num] : key) out.emplace_back(x.act(g, v), num);
    std::sort(out.begin(), out.end());
    return out;
}

double min_distance(std::span<const double> z, const std::vector<Point>& targets) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& t : targets) best = std::min(best, euclidean_distance(z, t));
    return best;
}

}  // namespace

Simplex FreeSphereComplex::act(int g, const Simplex& sigma) const {
    Simplex out;
    for (int v : sigma) out.push_back(act(g, v));
    std::sort(out.begin(), out.end());
    return out;
}

Point FreeSphereComplex::realize(const Simplex& sigma, std::span<const double> barycentric) const {
    Point out(2 * static_cast<std::size_t>(k), 0.0);
    for (std::size_t i = 0; i < sigma.size(); ++i)
        for (std::size_t c = 0; c < out.size(); ++c) out[c] += barycentric[i] * coords[sigma[i]][c];
    return out;
}

FreeSphereComplex build_sphere(int k, int p, int steps) {
    if (k < 1 || p < 2 || steps < 1 || steps * p < 3)
        throw InvalidArgument("build_sphere needs k >= 1, p >= 2, N >= 1 and N p >= 3");
    FreeSphereComplex x;
    x.k = k;
    x.p = p;
    x.steps = steps;
    const int m = steps * p;

    x.coords.assign(static_cast<std::size_t>(k * m), Point(2 * static_cast<std::size_t>(k), 0.0));
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < m; ++i) {
            const double theta = 2.0 * std::numbers::pi * i / m;
            x.coords[j * m + i][2 * j] = std::cos(theta);
            x.coords[j * m + i][2 * j + 1] = std::sin(theta);
        }

    x.permutations.assign(p, std::vector<int>(static_cast<std::size_t>(k * m)));
    for (int g = 0; g < p; ++g)
        for (int j = 0; j < k; ++j)
            for (int i = 0; i < m; ++i) x.permutations[g][j * m + i] = j * m + (i + g * steps) % m;

    // One edge from every polygon.
    std::vector<Simplex> facets{Simplex{}};
    for (int j = 0; j < k; ++j) {
        std::vector<Simplex> next;
        for (const auto& partial : facets)
            for (int i = 0; i < m; ++i) {
                Simplex s = partial;
                s.push_back(j * m + i);
                s.push_back(j * m + (i + 1) % m);
                std::sort(s.begin(), s.end());
                next.push_back(std::move(s));
            }
        facets = std::move(next);
    }
    x.facets = facets;
    x.complex = SimplicialComplex::from_facets(facets);
    return x;
}

double PLFunction::at(const Simplex& sigma, std::span<const double> barycentric) const {
    double v = 0.0;
    for (std::size_t i = 0; i < sigma.size(); ++i) v += barycentric[i] * values[sigma[i]];
    return v;
}

PLFunction PLFunction::translated(const FreeSphereComplex& x, int g) const {
    PLFunction out;
    out.values.resize(values.size());
    for (std::size_t v = 0; v < values.size(); ++v) out.values[v] = values[x.act(g, static_cast<int>(v))];
    return out;
}

CoincidenceCertificate coincidence_set(const FreeSphereComplex& x, const PLFunction& f, Execution exec) {
    if (f.values.size() != x.coords.size()) throw InvalidArgument("one function value per vertex expected");
    const std::size_t count = x.facets.size();
    std::vector<std::optional<std::vector<Rational>>> solutions(count);
    if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::size_t i = 0; i < count; ++i) solutions[i] = exact_coincidence(x, f, x.facets[i]);
    } else {
        for (std::size_t i = 0; i < count; ++i) solutions[i] = exact_coincidence(x, f, x.facets[i]);
    }

    CoincidenceCertificate cert;
    cert.feasible.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        cert.feasible[i] = solutions[i].has_value();
        if (!solutions[i] || cert.witness) continue;
        CoincidenceWitness w;
        w.simplex = x.facets[i];
        for (const auto& l : *solutions[i]) w.barycentric.push_back(static_cast<double>(l));
        w.value = f.at(w.simplex, w.barycentric);
        cert.witness = std::move(w);
    }
    cert.empty = !cert.witness.has_value();
    return cert;
}

double facet_spread(const FreeSphereComplex& x, const PLFunction& f, std::size_t facet) {
    const Simplex& sigma = x.facets[facet];
    const auto diff = orbit_differences(x, f, sigma);
    const std::size_t n = sigma.size();
    const std::size_t q = diff.size();
    // Variables: lambda (n), t, slack+ (q), slack- (q). Minimize t.
    const std::size_t cols = n + 1 + 2 * q;
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    for (std::size_t g = 0; g < q; ++g) {
        std::vector<double> plus(cols, 0.0), minus(cols, 0.0);
        for (std::size_t pos = 0; pos < n; ++pos) {
            plus[pos] = diff[g][pos];
            minus[pos] = -diff[g][pos];
        }
        plus[n] = -1.0;
        minus[n] = -1.0;
        plus[n + 1 + g] = 1.0;
        minus[n + 1 + q + g] = 1.0;
        a.push_back(std::move(plus));
        a.push_back(std::move(minus));
        b.push_back(0.0);
        b.push_back(0.0);
    }
    std::vector<double> simplex_row(cols, 0.0);
    std::fill(simplex_row.begin(), simplex_row.begin() + static_cast<long>(n), 1.0);
    a.push_back(std::move(simplex_row));
    b.push_back(1.0);
    std::vector<double> cost(cols, 0.0);
    cost[n] = 1.0;
    const auto sol = solve_lp(a, b, cost);
    return sol.status == LpStatus::Optimal ? std::max(sol.objective, 0.0) : 0.0;
}

double orbit_spread(const FreeSphereComplex& x, const PLFunction& f, Execution exec) {
    const std::size_t count = x.facets.size();
    std::vector<double> spread(count);
    if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(static)
        for (std::size_t i = 0; i < count; ++i) spread[i] = facet_spread(x, f, i);
    } else {
        for (std::size_t i = 0; i < count; ++i) spread[i] = facet_spread(x, f, i);
    }
    return count == 0 ? 0.0 : *std::min_element(spread.begin(), spread.end());
}

namespace {

struct RestartOutcome {
    PLFunction best;
    double spread = 0.0;
    bool certified = false;
};

RestartOutcome anneal(const FreeSphereComplex& x, const SearchOptions& opt,
                      const std::vector<std::vector<std::size_t>>& affected, std::size_t restart) {
    auto rng = restart_stream(opt.seed, restart);
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> pick(0, x.coords.size() - 1);

    PLFunction f;
    f.values.resize(x.coords.size());
    for (double& v : f.values) v = uniform(rng);

    std::vector<double> spread(x.facets.size());
    for (std::size_t i = 0; i < spread.size(); ++i) spread[i] = facet_spread(x, f, i);
    // The minimum is flat on plateaus; a small mean term orders them.
    auto score = [&](const std::vector<double>& s) {
        const double lo = *std::min_element(s.begin(), s.end());
        const double mean = std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(s.size());
        return lo + 0.05 * mean;
    };
    double current = score(spread);
    RestartOutcome out{f, *std::min_element(spread.begin(), spread.end()), false};

    std::vector<double> saved;
    for (int it = 0; it < opt.iterations; ++it) {
        const double temperature = opt.initial_temperature * (1.0 - static_cast<double>(it) / opt.iterations) + 1e-6;
        const std::size_t v = pick(rng);
        const double old_value = f.values[v];
        f.values[v] = std::clamp(old_value + opt.step * normal(rng), -1.0, 1.0);

        saved.clear();
        for (std::size_t facet : affected[v]) {
            saved.push_back(spread[facet]);
            spread[facet] = facet_spread(x, f, facet);
        }
        const double proposed = score(spread);
        if (proposed >= current || unit(rng) < std::exp((proposed - current) / temperature)) {
            current = proposed;
            const double lo = *std::min_element(spread.begin(), spread.end());
            if (lo > out.spread) {
                out.spread = lo;
                out.best = f;
            }
        } else {
            f.values[v] = old_value;
            for (std::size_t i = 0; i < affected[v].size(); ++i) spread[affected[v][i]] = saved[i];
        }
    }
    out.certified = coincidence_set(x, out.best, Execution::Serial).empty;
    return out;
}

}  // namespace

SearchResult search_coincidence_free(const FreeSphereComplex& x, const SearchOptions& opt, Execution exec) {
    if (opt.restarts < 1 || opt.iterations < 0) throw InvalidArgument("search needs restarts >= 1 and iterations >= 0");
    // Facets whose orbit-difference rows involve vertex v: those containing some g v.
    std::vector<std::vector<std::size_t>> affected(x.coords.size());
    for (std::size_t i = 0; i < x.facets.size(); ++i) {
        std::set<int> touched;
        for (int v : x.facets[i])
            for (int g = 0; g < x.p; ++g) touched.insert(x.act(g, v));
        for (int v : touched) affected[v].push_back(i);
    }

    std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(opt.restarts));
    if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int r = 0; r < opt.restarts; ++r) outcomes[r] = anneal(x, opt, affected, static_cast<std::size_t>(r));
    } else {
        for (int r = 0; r < opt.restarts; ++r) outcomes[r] = anneal(x, opt, affected, static_cast<std::size_t>(r));
    }

    SearchResult result;
    result.best = outcomes.front().best;
    result.best_spread = outcomes.front().spread;
    for (const auto& o : outcomes) {
        result.restarts.push_back({o.spread, o.certified});
        if (o.certified) {
            ++result.certified_restarts;
            if (!result.certified) result.certified = o.best;
        }
        if (o.spread > result.best_spread) {
            result.best_spread = o.spread;
            result.best = o.best;
        }
    }
    return result;
}

PLFunction sine_function(const FreeSphereComplex& x) {
    PLFunction f;
    f.values.assign(x.coords.size(), 0.0);
    const int m = x.vertices_per_polygon();
    for (int i = 0; i < m; ++i) f.values[i] = std::sin(2.0 * std::numbers::pi * i / m);
    return f;
}

// ---------------------------------------------------------------------------

FiniteMeasure SectionData::measure(std::size_t i) const {
    std::vector<Atom> atoms;
    const auto& fib = fibers.at(i);
    for (std::size_t g = 0; g < fib.fiber.size(); ++g) atoms.push_back({fib.fiber[g].coords, fib.weights[g]});
    return FiniteMeasure::normalize(std::move(atoms));
}

SectionData build_mesh(const FreeSphereComplex& x, int level) {
    if (level < 0 || level > 8) throw InvalidArgument("mesh level must be in [0, 8]");
    const std::size_t slots = x.facets.front().size();
    const long long denominator = lcm_upto(static_cast<int>(slots)) << level;

    SectionData mesh;
    mesh.group_order = x.p;
    mesh.mesh_level = level;
    std::map<PointKey, std::pair<std::size_t, int>> located;  // key -> (fiber, g)

    auto locate = [&](const Simplex& sigma, const std::vector<int>& parts) -> std::pair<std::size_t, int> {
        const PointKey key = key_of(sigma, parts);
        if (auto it = located.find(key); it != located.end()) return it->second;
        std::vector<PointKey> orbit;
        for (int g = 0; g < x.p; ++g) orbit.push_back(translate(x, g, key));
        const int lowest = static_cast<int>(std::min_element(orbit.begin(), orbit.end()) - orbit.begin());

        SectionFiber fiber;
        const std::size_t index = mesh.fibers.size();
        for (int g = 0; g < x.p; ++g) {
            // fiber[g] = g * (lowest-key translate) = translate by g + lowest.
            MeshPoint mp;
            mp.carrier = x.act(g + lowest, sigma);
            // Carrier is sorted; carry the barycentric weights along the vertex map.
            mp.barycentric.assign(sigma.size(), 0.0);
            for (std::size_t i = 0; i < sigma.size(); ++i) {
                const int image = x.act(g + lowest, sigma[i]);
                const auto pos = std::lower_bound(mp.carrier.begin(), mp.carrier.end(), image) - mp.carrier.begin();
                mp.barycentric[pos] = static_cast<double>(parts[i]) / static_cast<double>(denominator);
            }
            mp.coords = x.realize(mp.carrier, mp.barycentric);
            fiber.fiber.push_back(std::move(mp));
            located.emplace(orbit[(g + lowest) % x.p], std::make_pair(index, g));
        }
        fiber.weights.assign(x.p, 0.0);
        mesh.fibers.push_back(std::move(fiber));
        return located.at(key);
    };

    std::set<std::tuple<std::size_t, int, std::size_t, int>> seen_edges;
    for (const auto& sigma : x.facets) {
        for_each_composition(static_cast<int>(denominator), slots, [&](const std::vector<int>& parts) {
            const auto here = locate(sigma, parts);
            for (std::size_t i = 0; i < slots; ++i) {
                if (parts[i] == 0) continue;
                for (std::size_t j = 0; j < slots; ++j) {
                    if (j == i) continue;
                    std::vector<int> next = parts;
                    --next[i];
                    ++next[j];
                    const auto there = locate(sigma, next);
                    auto edge = std::make_tuple(here.first, here.second, there.first, there.second);
                    auto reverse = std::make_tuple(there.first, there.second, here.first, here.second);
                    if (seen_edges.contains(edge) || seen_edges.contains(reverse)) continue;
                    seen_edges.insert(edge);
                    mesh.edges.push_back({here.first, here.second, there.first, there.second});
                }
            }
        });
    }
    return mesh;
}

SectionData section_from_function(const FreeSphereComplex& x, const PLFunction& f, int mesh_level) {
    if (f.values.size() != x.coords.size()) throw InvalidArgument("one function value per vertex expected");
    SectionData s = build_mesh(x, mesh_level);
    const std::size_t p = static_cast<std::size_t>(x.p);

    std::vector<std::vector<bool>> top(s.fibers.size(), std::vector<bool>(p, false));
    for (std::size_t i = 0; i < s.fibers.size(); ++i) {
        const auto& fib = s.fibers[i].fiber;
        std::vector<double> values(p);
        for (std::size_t g = 0; g < p; ++g) values[g] = f.at(fib[g].carrier, fib[g].barycentric);
        const double hi = *std::max_element(values.begin(), values.end());
        std::size_t count = 0;
        for (std::size_t g = 0; g < p; ++g)
            if (values[g] >= hi - kTieTolerance) {
                top[i][g] = true;
                ++count;
            }
        if (count == p)
            throw EmptinessViolated("f is constant on the fiber of mesh point " + std::to_string(i));
    }

    // Y: mesh points outside every argmax set, plus midpoints where the argmax changes.
    std::vector<Point> y;
    for (std::size_t i = 0; i < s.fibers.size(); ++i)
        for (std::size_t g = 0; g < p; ++g)
            if (!top[i][g]) y.push_back(s.fibers[i].fiber[g].coords);
    for (const auto& e : s.edges) {
        if (top[e.a][e.ga] == top[e.b][e.gb]) continue;
        const Point& u = s.fibers[e.a].fiber[e.ga].coords;
        const Point& v = s.fibers[e.b].fiber[e.gb].coords;
        Point mid(u.size());
        for (std::size_t c = 0; c < u.size(); ++c) mid[c] = 0.5 * (u[c] + v[c]);
        y.push_back(std::move(mid));
    }

    for (std::size_t i = 0; i < s.fibers.size(); ++i) {
        auto& fib = s.fibers[i];
        double total = 0.0;
        for (std::size_t g = 0; g < p; ++g)
            if (top[i][g]) {
                fib.weights[g] = min_distance(fib.fiber[g].coords, y);
                total += fib.weights[g];
            }
        for (double& w : fib.weights) w /= total;
    }
    return s;
}

SectionCheck check_section(const FreeSphereComplex& x, const SectionData& s) {
    SectionCheck c;
    const LensAction lens = x.lens();
    const Ambient quotient = lens.ambient();
    std::vector<FiniteMeasure> measures;
    measures.reserve(s.fibers.size());
    for (std::size_t i = 0; i < s.fibers.size(); ++i) {
        const auto& fib = s.fibers[i];
        std::size_t support = 0;
        double mass = 0.0;
        for (double w : fib.weights) {
            support += w > 0.0 ? 1 : 0;
            mass += w;
        }
        c.max_support = std::max(c.max_support, support);
        c.max_mass_error = std::max(c.max_mass_error, std::abs(mass - 1.0));

        measures.push_back(s.measure(i));
        const FiniteMeasure pushed = push_forward([](const Point& z) { return z; }, measures.back(), quotient);
        c.max_pushforward_support = std::max(c.max_pushforward_support, pushed.support_size());
        c.max_pushforward_error = std::max(
            c.max_pushforward_error, wasserstein1(pushed, FiniteMeasure::dirac(fib.fiber[0].coords, quotient)));
    }
    std::set<std::pair<std::size_t, std::size_t>> pairs;
    for (const auto& e : s.edges)
        if (e.a != e.b) pairs.emplace(std::min(e.a, e.b), std::max(e.a, e.b));
    for (auto [a, b] : pairs) {
        const double w = wasserstein1(measures[a], measures[b]);
        const double d = lens.quotient_dist(s.fibers[a].fiber[0].coords, s.fibers[b].fiber[0].coords);
        c.max_jump = std::max(c.max_jump, w);
        if (d > 0.0) c.max_continuity_ratio = std::max(c.max_continuity_ratio, w / d);
    }
    return c;
}

FunctionFromSection function_from_section(const FreeSphereComplex& x, const SectionData& s) {
    const std::size_t p = static_cast<std::size_t>(x.p);
    std::vector<Point> anchors;
    for (std::size_t i = 0; i < s.fibers.size(); ++i) {
        const auto& fib = s.fibers[i];
        if (fib.fiber.size() != p || fib.weights.size() != p)
            throw SectionPropertyViolated("fiber " + std::to_string(i) + " does not list one weight per orbit point");
        double mass = 0.0;
        std::size_t support = 0;
        for (double w : fib.weights) {
            if (!(w >= 0.0)) throw SectionPropertyViolated("negative weight in fiber " + std::to_string(i));
            mass += w;
            support += w > 0.0 ? 1 : 0;
        }
        if (std::abs(mass - 1.0) > 1e-9)
            throw SectionPropertyViolated("fiber " + std::to_string(i) + " carries mass " + std::to_string(mass));
        for (std::size_t g = 1; g < p; ++g)
            if (euclidean_distance(fib.fiber[g].coords, x.lens().act(static_cast<int>(g), fib.fiber[0].coords)) > 1e-9)
                throw SectionPropertyViolated("fiber " + std::to_string(i) + " is not an orbit");
        if (support > p - 1)
            throw SupportBoundViolated("fiber " + std::to_string(i) + " has " + std::to_string(support) +
                                       " atoms; at most |G| - 1 = " + std::to_string(p - 1) + " allowed");
        const double hi = *std::max_element(fib.weights.begin(), fib.weights.end());
        for (std::size_t g = 0; g < p; ++g)
            if (fib.weights[g] >= hi - kTieTolerance) anchors.push_back(fib.fiber[g].coords);
    }

    FunctionFromSection out;
    out.anchor_points = anchors.size();
    out.interpolant.values.resize(x.coords.size());
    for (std::size_t v = 0; v < x.coords.size(); ++v) out.interpolant.values[v] = min_distance(x.coords[v], anchors);

    out.min_fiber_spread = std::numeric_limits<double>::infinity();
    std::vector<double> per_fiber(p);
    for (std::size_t g = 0; g < p; ++g)
        for (const auto& fib : s.fibers) out.mesh_values.push_back(min_distance(fib.fiber[g].coords, anchors));
    for (std::size_t i = 0; i < s.fibers.size(); ++i) {
        for (std::size_t g = 0; g < p; ++g) per_fiber[g] = out.mesh_values[g * s.fibers.size() + i];
        const auto [lo, hi] = std::minmax_element(per_fiber.begin(), per_fiber.end());
        out.min_fiber_spread = std::min(out.min_fiber_spread, *hi - *lo);
    }
    if (s.fibers.empty()) out.min_fiber_spread = 0.0;
    out.mesh_coincidence_free = !s.fibers.empty() && out.min_fiber_spread > 0.0;
    return out;
}

}  // namespace dtc
