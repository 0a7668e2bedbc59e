#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "bignat.hpp"

namespace mge {

// Closed-form lower bound on the number of distinct maximum-genus
// embeddings of K_{n,n} produced by the staged construction:
//   2^((n-1)/2) * ((n-2)!!)^n * ((n-1)!)^n,  n odd.
inline BigNat f1(int n) {
    if (n < 1 || n % 2 == 0)
        throw InvalidArgument("f1 is defined for odd n >= 1 (got n=" + std::to_string(n) + ")");
    BigNat r = BigNat(1) << ((n - 1) / 2);
    r *= boost::multiprecision::pow(double_factorial(n - 2), static_cast<unsigned>(n));
    r *= boost::multiprecision::pow(factorial(n - 1), static_cast<unsigned>(n));
    return r;
}

// Ren-style bound ((n-1)!)^(2n) / 4^((n-1)^2/2), evaluated as an exact
// reduced rational; the division by a power of 4 is not guaranteed to give
// an integer, so no rounding is ever applied.
inline Rational f2(int n) {
    if (n < 3 || n % 2 == 0)
        throw InvalidArgument("f2 is defined for odd n >= 3 (got n=" + std::to_string(n) + ")");
    BigNat num = boost::multiprecision::pow(factorial(n - 1), static_cast<unsigned>(2 * n));
    BigNat den = boost::multiprecision::pow(BigNat(4),
                                            static_cast<unsigned>((n - 1) * (n - 1) / 2));
    return Rational(num, den);
}

// Stahl-style bound from a degree sequence, applied in the caller's order:
// the first four entries take (d-5)!, the rest (d-2)!, all with the
// convention m! = 1 for m <= 0. Sequences shorter than four entries put the
// (d-5)! factor on every entry.
inline BigNat stahl_bound(const std::vector<long long>& degrees) {
    if (degrees.empty()) throw InvalidArgument("stahl_bound: empty degree sequence");
    BigNat r = 1;
    for (std::size_t t = 0; t < degrees.size(); ++t) {
        if (degrees[t] < 1)
            throw InvalidArgument("stahl_bound: degree " + std::to_string(degrees[t]) +
                                  " is below 1");
        r *= stahl_factorial(degrees[t] - (t < 4 ? 5 : 2));
    }
    return r;
}

// For non-constant sequences the bound depends on which four entries absorb
// the (d-5)! penalty; ascending order puts it on the smallest degrees,
// which maximizes the bound.
inline std::vector<long long> sorted_ascending(std::vector<long long> degrees) {
    std::sort(degrees.begin(), degrees.end());
    return degrees;
}

inline BigNat stahl_bound_knn(int n) {
    if (n < 1) throw InvalidArgument("stahl_bound_knn: n must be >= 1");
    return stahl_bound(std::vector<long long>(2 * n, n));
}

// Differences quoted in the source literature for comparison; the n=3
// figure does not match direct evaluation of the formulas and is flagged,
// never adopted.
inline std::optional<BigNat> quoted_f1_minus_f2(int n) {
    if (n == 3) return BigNat(16);
    if (n == 5) return BigNat("6772211712");
    return std::nullopt;
}

struct BoundReport {
    int n = 0;
    BigNat f1_value;
    Rational f2_value;
    BigNat stahl_value;
    Rational f1_minus_f2;
    BigNat f1_minus_stahl;
    bool f1_gt_stahl = false;
    bool f1_gt_f2 = false;
    std::optional<BigNat> quoted_difference;
    bool matches_quoted = true;
};

inline std::vector<BoundReport> compare_table(const std::vector<int>& ns) {
    std::vector<BoundReport> out;
    for (int n : ns) {
        BoundReport r;
        r.n = n;
        r.f1_value = f1(n);
        r.f2_value = f2(n);
        r.stahl_value = stahl_bound_knn(n);
        r.f1_minus_f2 = Rational(r.f1_value) - r.f2_value;
        r.f1_minus_stahl = r.f1_value - r.stahl_value;
        r.f1_gt_stahl = r.f1_value > r.stahl_value;
        r.f1_gt_f2 = Rational(r.f1_value) > r.f2_value;
        r.quoted_difference = quoted_f1_minus_f2(n);
        if (r.quoted_difference)
            r.matches_quoted = r.f1_minus_f2 == Rational(*r.quoted_difference);
        out.push_back(std::move(r));
    }
    return out;
}

namespace detail {

inline std::string rational_str(const Rational& r) {
    if (boost::multiprecision::denominator(r) == 1)
        return boost::multiprecision::numerator(r).str();
    return r.str();
}

}  // namespace detail

inline std::string render_bounds_table(const std::vector<BoundReport>& rows) {
    std::vector<std::vector<std::string>> cells;
    cells.push_back({"n", "f1", "f2", "stahl", "f1-f2", "f1>stahl", "f1>f2", "note"});
    for (const auto& r : rows) {
        std::string note;
        if (r.quoted_difference) {
            note = r.matches_quoted
                       ? "matches quoted difference " + r.quoted_difference->str()
                       : "DISCREPANT: quoted difference " + r.quoted_difference->str() +
                             ", formulas give " + detail::rational_str(r.f1_minus_f2);
        }
        cells.push_back({std::to_string(r.n), r.f1_value.str(),
                         detail::rational_str(r.f2_value), r.stahl_value.str(),
                         detail::rational_str(r.f1_minus_f2), r.f1_gt_stahl ? "yes" : "no",
                         r.f1_gt_f2 ? "yes" : "no", note});
    }
    std::vector<std::size_t> width(cells[0].size(), 0);
    for (const auto& row : cells)
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    std::string out;
    for (const auto& row : cells) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out += row[c];
            if (c + 1 < row.size()) out += std::string(width[c] - row[c].size() + 2, ' ');
        }
        while (!out.empty() && out.back() == ' ') out.pop_back();
        out += "\n";
    }
    for (const auto& r : rows)
        out += "n=" + std::to_string(r.n) + ": f1~" + approx_notation(r.f1_value) + ", stahl~" +
               approx_notation(r.stahl_value) + "\n";
    return out;
}

inline std::string render_bounds_records(const std::vector<BoundReport>& rows) {
    std::string out;
    for (const auto& r : rows) {
        out += "n=" + std::to_string(r.n) + " f1=" + r.f1_value.str() +
               " f2=" + detail::rational_str(r.f2_value) + " stahl=" + r.stahl_value.str() +
               " f1_minus_f2=" + detail::rational_str(r.f1_minus_f2) +
               " f1_gt_stahl=" + (r.f1_gt_stahl ? "1" : "0") +
               " f1_gt_f2=" + (r.f1_gt_f2 ? "1" : "0");
        if (r.quoted_difference)
            out += " quoted_f1_minus_f2=" + r.quoted_difference->str() +
                   " quoted_match=" + (r.matches_quoted ? std::string("1") : std::string("0"));
        out += "\n";
    }
    return out;
}

}  // namespace mge
