#include "dtc/bounds.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "dtc/errors.hpp"

namespace dtc {

namespace {

const std::map<std::string, std::string>& citations() {
    static const std::map<std::string, std::string> table{
        {"dcat-lens-upper", "dcat(L^m_p) <= p-1 for every m (upper bound via the free Z_p action)"},
        {"dcat-lens-equality", "dcat(L^m_p) = p-1 for prime p and m >= p-1 (Borsuk-Ulam type lower bound)"},
        {"dtc-lens-upper", "dTC(L^m_p) <= 2p-1 for odd p and <= p-1 for even p (explicit rotation planner)"},
        {"dtc-lens-upper-cases",
         "dTC(L^m_p) <= p-1 if m <= p-1, <= m if m <= 2p-1, <= 2p-1 if m >= 2p-1 for odd p"},
        {"dtc-lens-lower", "dTC(L^m_p) >= dcat(L^m_p) >= p-1 for prime p and m >= p-1"},
        {"dcat-power-lower", "dcat((L^m_p)^k) >= p^k-1 for prime p and m >= p^k"},
        {"dcat-product-counterexample",
         "dcat(L^m_p x L^m_p) >= p^2-1 > 2(p-1) = dcat(L^m_p) + dcat(L^m_p) for prime p, m >= p^2"},
        {"dtc-product-counterexample",
         "dTC(L^m_p x L^m_p) >= p^2-1 > 4p-2 >= dTC(L^m_p) + dTC(L^m_p) for prime p >= 5, m >= p^2"},
    };
    return table;
}

std::string lens_name(int p, int m) { return "L^" + std::to_string(m) + "_" + std::to_string(p); }

long long ipow(long long b, int e) {
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

BoundsEntry make(std::string space, std::string invariant, std::optional<long long> lower,
                 std::optional<long long> upper, BoundStatus status, std::string citation, std::string note = {}) {
    if (lower && upper && *lower > *upper) throw InvalidArgument("bounds entry with lower > upper: " + citation);
    if (status == BoundStatus::Equality && !(lower && upper && *lower == *upper))
        throw InvalidArgument("equality entry without matching bounds: " + citation);
    citation_statement(citation);
    return {std::move(space), std::move(invariant), lower, upper, status, std::move(citation), std::move(note)};
}

}  // namespace

std::string to_string(BoundStatus s) {
    switch (s) {
        case BoundStatus::Equality: return "equality";
        case BoundStatus::Bounds: return "bounds";
        case BoundStatus::Counterexample: return "counterexample";
    }
    return "bounds";
}

bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

const std::string& citation_statement(const std::string& tag) {
    const auto it = citations().find(tag);
    if (it == citations().end()) throw InvalidArgument("unknown citation tag " + tag);
    return it->second;
}

std::vector<std::string> citation_tags() {
    std::vector<std::string> out;
    for (const auto& [tag, _] : citations()) out.push_back(tag);
    return out;
}

std::vector<BoundsEntry> bounds_table(int p, int m, int k) {
    if (p < 2) throw InvalidArgument("p must be at least 2");
    if (k < 1) throw InvalidArgument("k must be at least 1");
    if (m < 1 || m % 2 == 0) throw InvalidDimension("lens space dimension m must be odd and positive, got " + std::to_string(m));
    if (k > 1 && static_cast<double>(k) * std::log2(static_cast<double>(p)) > 60.0)
        throw InvalidArgument("p^k does not fit in 64 bits");

    const bool prime = is_prime(p);
    const std::string lens = lens_name(p, m);
    std::vector<BoundsEntry> out;

    const long long cat_upper = p - 1;
    if (prime && m >= p - 1)
        out.push_back(make(lens, "dcat", cat_upper, cat_upper, BoundStatus::Equality, "dcat-lens-equality"));
    else
        out.push_back(make(lens, "dcat", std::nullopt, cat_upper, BoundStatus::Bounds, "dcat-lens-upper"));

    std::optional<long long> tc_lower;
    if (prime && m >= p - 1) tc_lower = p - 1;
    if (p % 2 == 1) {
        long long upper = 2LL * p - 1;
        std::string cite = "dtc-lens-upper";
        if (m <= p - 1) {
            upper = p - 1;
            cite = "dtc-lens-upper-cases";
        } else if (m <= 2 * p - 1) {
            upper = m;
            cite = "dtc-lens-upper-cases";
        }
        const auto status = (tc_lower && *tc_lower == upper) ? BoundStatus::Equality : BoundStatus::Bounds;
        out.push_back(make(lens, "dTC", tc_lower, upper, status, cite,
                           tc_lower ? "lower bound: dtc-lens-lower" : ""));
    } else {
        const long long upper = p - 1;
        const auto status = (tc_lower && *tc_lower == upper) ? BoundStatus::Equality : BoundStatus::Bounds;
        out.push_back(make(lens, "dTC", tc_lower, upper, status, "dtc-lens-upper",
                           tc_lower ? "lower bound: dtc-lens-lower" : ""));
    }

    if (k >= 2 && prime && m >= ipow(p, k)) {
        const std::string power = "(" + lens + ")^" + std::to_string(k);
        out.push_back(make(power, "dcat", ipow(p, k) - 1, std::nullopt, BoundStatus::Bounds, "dcat-power-lower"));
    }

    if (prime && m >= static_cast<long long>(p) * p) {
        const long long square = static_cast<long long>(p) * p - 1;
        const std::string product = lens + " x " + lens;
        if (square > 2LL * (p - 1))
            out.push_back(make(product, "dcat", square, std::nullopt, BoundStatus::Counterexample,
                               "dcat-product-counterexample",
                               std::to_string(square) + " > " + std::to_string(2 * (p - 1)) + " = 2(p-1)"));
        if (p >= 5 && square > 4LL * p - 2)
            out.push_back(make(product, "dTC", square, std::nullopt, BoundStatus::Counterexample,
                               "dtc-product-counterexample",
                               std::to_string(square) + " > " + std::to_string(4 * p - 2) + " = 4p-2"));
    }
    return out;
}

std::string bounds_csv(const std::vector<BoundsEntry>& entries) {
    std::ostringstream os;
    os << "space,invariant,lower,upper,status,citation,note\n";
    for (const auto& e : entries) {
        os << e.space << ',' << e.invariant << ',' << (e.lower ? std::to_string(*e.lower) : "") << ','
           << (e.upper ? std::to_string(*e.upper) : "") << ',' << to_string(e.status) << ',' << e.citation << ','
           << e.note << '\n';
    }
    return os.str();
}

}  // namespace dtc
