#include "dtc/measure.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>

#include "dtc/geometry.hpp"

namespace dtc {

namespace {

int parse_int(std::string_view s) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw InvalidArgument("bad integer in ambient tag: '" + std::string(s) + "'");
    return value;
}

double base_distance(const Ambient& base, std::span<const double> x, std::span<const double> y) {
    switch (base.kind) {
        case AmbientKind::Euclidean:
            return euclidean_distance(x, y);
        case AmbientKind::Lens:
            return LensAction(base.lens_order, base.lens_dim).quotient_dist(x, y);
        case AmbientKind::FiniteSet:
            return x[0] == y[0] ? 0.0 : 1.0;
        case AmbientKind::PathSpace:
            break;
    }
    throw InvalidArgument("nested path spaces are not supported");
}

}  // namespace

Ambient Ambient::lens(int p, int n) {
    if (p < 2 || n < 1) throw InvalidArgument("lens space needs p >= 2 and n >= 1");
    Ambient a;
    a.kind = AmbientKind::Lens;
    a.lens_order = p;
    a.lens_dim = n;
    return a;
}

Ambient Ambient::finite_set() {
    Ambient a;
    a.kind = AmbientKind::FiniteSet;
    return a;
}

Ambient Ambient::path_space(const Ambient& base, int samples) {
    if (base.kind == AmbientKind::PathSpace) throw InvalidArgument("nested path spaces are not supported");
    if (samples < 1) throw InvalidArgument("path space needs at least one sample");
    Ambient a = base;
    a.kind = AmbientKind::PathSpace;
    a.path_base = base.kind;
    a.path_samples = samples;
    return a;
}

Ambient Ambient::base() const {
    if (kind != AmbientKind::PathSpace) return *this;
    Ambient b = *this;
    b.kind = path_base;
    b.path_base = AmbientKind::Euclidean;
    b.path_samples = 0;
    return b;
}

double Ambient::distance(std::span<const double> x, std::span<const double> y) const {
    if (x.size() != y.size()) throw InvalidArgument("points of different dimension");
    if (kind != AmbientKind::PathSpace) return base_distance(*this, x, y);

    const std::size_t samples = static_cast<std::size_t>(path_samples);
    if (x.size() % samples != 0) throw InvalidArgument("path length is not a multiple of the sample count");
    const std::size_t dim = x.size() / samples;
    const Ambient b = base();
    double sup = 0.0;
    for (std::size_t s = 0; s < samples; ++s)
        sup = std::max(sup, base_distance(b, x.subspan(s * dim, dim), y.subspan(s * dim, dim)));
    return sup;
}

std::string Ambient::tag() const {
    switch (kind) {
        case AmbientKind::Euclidean:
            return "euclidean";
        case AmbientKind::Lens:
            return "lens:" + std::to_string(lens_order) + "," + std::to_string(lens_dim);
        case AmbientKind::FiniteSet:
            return "finite";
        case AmbientKind::PathSpace:
            return "paths:" + std::to_string(path_samples) + ":" + base().tag();
    }
    return {};
}

Ambient Ambient::from_tag(std::string_view tag) {
    if (tag == "euclidean") return euclidean();
    if (tag == "finite") return finite_set();
    if (tag.starts_with("lens:")) {
        auto body = tag.substr(5);
        auto comma = body.find(',');
        if (comma == std::string_view::npos) throw InvalidArgument("bad lens tag");
        return lens(parse_int(body.substr(0, comma)), parse_int(body.substr(comma + 1)));
    }
    if (tag.starts_with("paths:")) {
        auto body = tag.substr(6);
        auto colon = body.find(':');
        if (colon == std::string_view::npos) throw InvalidArgument("bad path-space tag");
        return path_space(from_tag(body.substr(colon + 1)), parse_int(body.substr(0, colon)));
    }
    throw InvalidArgument("unknown ambient tag '" + std::string(tag) + "'");
}

FiniteMeasure FiniteMeasure::dirac(Point x, const Ambient& ambient) {
    std::vector<Atom> atoms;
    atoms.push_back({std::move(x), 1.0});
    return FiniteMeasure(ambient, std::move(atoms));
}

FiniteMeasure FiniteMeasure::normalize(std::vector<Atom> raw, const Ambient& ambient, double merge_tol,
                                       std::optional<std::size_t> support_bound) {
    std::vector<Atom> merged;
    merged.reserve(raw.size());
    for (Atom& a : raw) {
        if (!std::isfinite(a.weight) || a.weight < 0.0)
            throw InvalidArgument("atom weights must be finite and nonnegative");
        if (a.weight == 0.0) continue;  // 0x = 0y
        auto hit = std::find_if(merged.begin(), merged.end(), [&](const Atom& m) {
            return m.point.size() == a.point.size() && ambient.distance(m.point, a.point) < merge_tol;
        });
        if (hit != merged.end())
            hit->weight += a.weight;
        else
            merged.push_back(std::move(a));
    }
    double total = 0.0;
    for (const Atom& a : merged) total += a.weight;
    if (merged.empty() || total <= 0.0) throw TotalMassZero("all atom weights are zero");
    if (total != 1.0)
        for (Atom& a : merged) a.weight /= total;
    if (support_bound && merged.size() > *support_bound)
        throw SupportBoundViolated(std::to_string(merged.size()) + " atoms exceed the bound " +
                                   std::to_string(*support_bound));
    return FiniteMeasure(ambient, std::move(merged));
}

double FiniteMeasure::mass() const {
    double total = 0.0;
    for (const Atom& a : atoms_) total += a.weight;
    return total;
}

double FiniteMeasure::mass_at(std::span<const double> x, double tol) const {
    double total = 0.0;
    for (const Atom& a : atoms_)
        if (a.point.size() == x.size() && ambient_.distance(a.point, x) < tol) total += a.weight;
    return total;
}

double optimal_transport_cost(std::span<const double> supply, std::span<const double> demand,
                              const std::vector<std::vector<double>>& cost) {
    // Min-cost flow on source -> rows -> columns -> sink. Row/column arcs are
    // uncapacitated; each augmentation along a cheapest residual path either
    // exhausts a supply, a demand or a reverse arc.
    const std::size_t m = supply.size();
    const std::size_t n = demand.size();
    if (cost.size() != m) throw InvalidArgument("cost matrix has the wrong number of rows");
    for (const auto& row : cost)
        if (row.size() != n) throw InvalidArgument("cost matrix has the wrong number of columns");

    constexpr double kFlowEps = 1e-15;
    std::vector<double> supply_left(supply.begin(), supply.end());
    std::vector<double> demand_left(demand.begin(), demand.end());
    std::vector<std::vector<double>> flow(m, std::vector<double>(n, 0.0));

    const double total = std::min(std::accumulate(supply.begin(), supply.end(), 0.0),
                                  std::accumulate(demand.begin(), demand.end(), 0.0));
    double shipped = 0.0;
    const double inf = std::numeric_limits<double>::infinity();

    // Node layout: rows 0..m-1, columns m..m+n-1.
    const std::size_t guard = 4 * (m + n) * (m + n) + 16;
    for (std::size_t iter = 0; iter < guard && total - shipped > 1e-14; ++iter) {
        std::vector<double> dist(m + n, inf);
        std::vector<long> pred(m + n, -1);
        for (std::size_t i = 0; i < m; ++i)
            if (supply_left[i] > kFlowEps) dist[i] = 0.0;

        // Bellman-Ford; forward arcs row->col, reverse arcs col->row where flow > 0.
        for (std::size_t round = 0; round + 1 < m + n + 1; ++round) {
            bool changed = false;
            for (std::size_t i = 0; i < m; ++i) {
                if (dist[i] == inf) continue;
                for (std::size_t j = 0; j < n; ++j) {
                    const double d = dist[i] + cost[i][j];
                    if (d < dist[m + j] - 1e-15) {
                        dist[m + j] = d;
                        pred[m + j] = static_cast<long>(i);
                        changed = true;
                    }
                }
            }
            for (std::size_t j = 0; j < n; ++j) {
                if (dist[m + j] == inf) continue;
                for (std::size_t i = 0; i < m; ++i) {
                    if (flow[i][j] <= kFlowEps) continue;
                    const double d = dist[m + j] - cost[i][j];
                    if (d < dist[i] - 1e-15) {
                        dist[i] = d;
                        pred[i] = static_cast<long>(m + j);
                        changed = true;
                    }
                }
            }
            if (!changed) break;
        }

        std::size_t sink = m + n;
        double best = inf;
        for (std::size_t j = 0; j < n; ++j)
            if (demand_left[j] > kFlowEps && dist[m + j] < best) {
                best = dist[m + j];
                sink = m + j;
            }
        if (sink == m + n) break;

        // Trace back to a source row and find the bottleneck.
        double amount = demand_left[sink - m];
        std::size_t node = sink;
        std::size_t steps = 0;
        while (pred[node] != -1 && steps++ <= m + n) {
            const auto prev = static_cast<std::size_t>(pred[node]);
            if (node >= m) {
                // prev is a row, arc prev -> node is forward and uncapacitated.
            } else {
                amount = std::min(amount, flow[node][prev - m]);
            }
            node = prev;
        }
        amount = std::min(amount, supply_left[node]);
        if (amount <= kFlowEps) break;

        supply_left[node] -= amount;
        demand_left[sink - m] -= amount;
        node = sink;
        steps = 0;
        while (pred[node] != -1 && steps++ <= m + n) {
            const auto prev = static_cast<std::size_t>(pred[node]);
            if (node >= m)
                flow[prev][node - m] += amount;
            else
                flow[node][prev - m] -= amount;
            node = prev;
        }
        shipped += amount;
    }

    double value = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) value += flow[i][j] * cost[i][j];
    return std::max(value, 0.0);
}

double wasserstein1(const FiniteMeasure& mu, const FiniteMeasure& nu) {
    if (!(mu.ambient() == nu.ambient()))
        throw AmbientMismatch(mu.ambient().tag() + " vs " + nu.ambient().tag());
    if (mu.support_size() > kMaxTransportAtoms || nu.support_size() > kMaxTransportAtoms)
        throw InvalidArgument("wasserstein1 supports at most 64 atoms per measure");

    std::vector<double> supply, demand;
    for (const Atom& a : mu.atoms()) supply.push_back(a.weight);
    for (const Atom& b : nu.atoms()) demand.push_back(b.weight);
    std::vector<std::vector<double>> cost(supply.size(), std::vector<double>(demand.size()));
    for (std::size_t i = 0; i < supply.size(); ++i)
        for (std::size_t j = 0; j < demand.size(); ++j)
            cost[i][j] = mu.ambient().distance(mu.atoms()[i].point, nu.atoms()[j].point);
    return optimal_transport_cost(supply, demand, cost);
}

}  // namespace dtc
