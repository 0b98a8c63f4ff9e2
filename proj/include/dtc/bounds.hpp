#pragma once

#include <optional>
#include <string>
#include <vector>

namespace dtc {

enum class BoundStatus { Equality, Bounds, Counterexample };

std::string to_string(BoundStatus s);

/// One transcribed statement about dcat or dTC of a lens space or a power of it.
struct BoundsEntry {
    std::string space;      // "L^9_3", "(L^25_5)^2", "L^25_5 x L^25_5"
    std::string invariant;  // "dcat" | "dTC"
    std::optional<long long> lower;
    std::optional<long long> upper;
    BoundStatus status = BoundStatus::Bounds;
    std::string citation;
    std::string note;
};

bool is_prime(long long n);

/// Entries for L^m_p (and its k-th power when k >= 2), with every hypothesis checked.
std::vector<BoundsEntry> bounds_table(int p, int m, int k = 1);

/// Statement behind a citation tag; throws InvalidArgument for an unknown tag.
const std::string& citation_statement(const std::string& tag);
std::vector<std::string> citation_tags();

std::string bounds_csv(const std::vector<BoundsEntry>& entries);

}  // namespace dtc
