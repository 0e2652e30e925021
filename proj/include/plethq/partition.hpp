#ifndef PLETHQ_PARTITION_HPP
#define PLETHQ_PARTITION_HPP

// Partitions, weights and the signed Weyl-group orbit of type A.

#include "plethq/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace plethq {

// Row lengths and dimensions index dynamic-programming tables, so they are
// machine integers. Anything that counts is an Integer.
using Index = std::int64_t;

class Partition {
public:
    Partition() = default;

    explicit Partition(std::vector<Index> parts) : parts_(std::move(parts))
    {
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] < 0)
                throw std::invalid_argument("partition parts must be nonnegative");
            if (i > 0 && parts_[i - 1] < parts_[i])
                throw std::invalid_argument("partition parts must be weakly decreasing");
        }
    }

    Partition(std::initializer_list<Index> parts) : Partition(std::vector<Index>(parts)) {}

    const std::vector<Index>& parts() const noexcept { return parts_; }

    // Declared length, trailing zeros included.
    std::size_t length() const noexcept { return parts_.size(); }

    std::size_t nonzero_length() const noexcept
    {
        return static_cast<std::size_t>(
            std::count_if(parts_.begin(), parts_.end(), [](Index p) { return p > 0; }));
    }

    Index size() const noexcept { return std::accumulate(parts_.begin(), parts_.end(), Index{0}); }

    Index operator[](std::size_t i) const noexcept { return i < parts_.size() ? parts_[i] : 0; }

    // Copy with exactly n entries; throws if that would drop a nonzero part.
    Partition padded(std::size_t n) const
    {
        if (nonzero_length() > n)
            throw std::invalid_argument("partition has more than " + std::to_string(n) + " nonzero parts");
        std::vector<Index> out(n, 0);
        for (std::size_t i = 0; i < std::min(n, parts_.size()); ++i)
            out[i] = parts_[i];
        return Partition(std::move(out));
    }

    Partition stripped() const { return padded(nonzero_length()); }

    friend bool operator==(const Partition& a, const Partition& b)
    {
        std::size_t n = std::max(a.length(), b.length());
        for (std::size_t i = 0; i < n; ++i)
            if (a[i] != b[i])
                return false;
        return true;
    }

    // Lexicographic on the zero-stripped parts; used for canonical report order.
    friend bool operator<(const Partition& a, const Partition& b)
    {
        std::size_t n = std::max(a.length(), b.length());
        for (std::size_t i = 0; i < n; ++i)
            if (a[i] != b[i])
                return a[i] < b[i];
        return false;
    }

private:
    std::vector<Index> parts_;
};

inline std::string to_string(const Partition& lambda)
{
    std::string out;
    for (std::size_t i = 0; i < lambda.length(); ++i) {
        if (i)
            out += ',';
        out += std::to_string(lambda.parts()[i]);
    }
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const Partition& lambda) { return os << to_string(lambda); }

// "7,5,0" -> (7,5,0). Rejects empty fields, signs and increasing sequences.
inline Partition parse_partition(std::string_view text)
{
    std::vector<Index> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = text.find(',', start);
        std::string_view field = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
        if (field.empty() || field.size() > 18)
            throw std::invalid_argument("malformed partition '" + std::string(text) + "'");
        Index v = 0;
        for (char ch : field) {
            if (ch < '0' || ch > '9')
                throw std::invalid_argument("malformed partition '" + std::string(text) + "'");
            v = v * 10 + (ch - '0');
        }
        parts.push_back(v);
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return Partition(std::move(parts));
}

inline Partition scale(const Partition& lambda, Index s)
{
    if (s < 0)
        throw std::invalid_argument("scale factor must be nonnegative");
    std::vector<Index> parts = lambda.parts();
    for (auto& p : parts)
        p *= s;
    return Partition(std::move(parts));
}

struct WeightVector {
    std::vector<Index> entries;

    std::size_t size() const noexcept { return entries.size(); }
    Index operator[](std::size_t i) const { return entries[i]; }
    friend bool operator==(const WeightVector&, const WeightVector&) = default;
};

struct SignedWeight {
    int sign = 1;
    WeightVector weight;
    friend bool operator==(const SignedWeight&, const SignedWeight&) = default;
};

inline WeightVector rho(std::size_t n)
{
    if (n == 0)
        throw std::invalid_argument("rho requires n >= 1");
    WeightVector out;
    out.entries.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        out.entries[i] = static_cast<Index>(n - 1 - i);
    return out;
}

namespace detail {
inline std::vector<Index> shifted_parts(const Partition& lambda, std::size_t n)
{
    auto padded = lambda.padded(n);
    auto r = rho(n);
    std::vector<Index> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = padded.parts()[i] + r.entries[i];
    return out;
}
} // namespace detail

// All n! terms (sgn w, w(lambda+rho) - rho), permutations in lexicographic order.
inline std::vector<SignedWeight> signed_weights(const Partition& lambda, std::size_t n)
{
    auto shifted = detail::shifted_parts(lambda, n);
    auto r = rho(n);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<SignedWeight> out;
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j])
                    ++inversions;
        SignedWeight sw;
        sw.sign = (inversions % 2 == 0) ? 1 : -1;
        sw.weight.entries.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            sw.weight.entries[i] = shifted[perm[i]] - r.entries[i];
        out.push_back(std::move(sw));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

// Visits exactly the terms of signed_weights() whose weight has no negative
// entry, in the same order. Terms with a negative entry contribute nothing to
// a weight-space sum, so whole subtrees of permutations are skipped.
inline void for_each_nonnegative_signed_weight(const Partition& lambda, std::size_t n,
                                               const std::function<void(const SignedWeight&)>& visit)
{
    auto shifted = detail::shifted_parts(lambda, n);
    auto r = rho(n);
    std::vector<bool> used(n, false);
    SignedWeight current;
    current.weight.entries.assign(n, 0);

    std::function<void(std::size_t, int)> recurse = [&](std::size_t pos, int parity) {
        if (pos == n) {
            current.sign = parity ? -1 : 1;
            visit(current);
            return;
        }
        // Number of unused indices smaller than j gives the inversions added.
        int smaller_unused = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (used[j])
                continue;
            Index entry = shifted[j] - r.entries[pos];
            if (entry >= 0) {
                used[j] = true;
                current.weight.entries[pos] = entry;
                recurse(pos + 1, parity ^ (smaller_unused & 1));
                used[j] = false;
            }
            ++smaller_unused;
        }
    };
    recurse(0, 0);
}

// Dimension of the irreducible GL(n) module with highest weight lambda; zero
// when lambda has more than n nonzero rows.
inline Integer weyl_dimension(const Partition& lambda, std::size_t n)
{
    if (n == 0)
        throw std::invalid_argument("weyl_dimension requires n >= 1");
    if (lambda.nonzero_length() > n)
        return 0;
    auto p = lambda.padded(n);
    Integer num = 1, den = 1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            num *= Integer(p.parts()[i] - p.parts()[j] + static_cast<Index>(j - i));
            den *= Integer(static_cast<Index>(j - i));
        }
    return num / den;
}

// All partitions of `total` with at most `max_rows` nonzero rows, each padded
// to exactly `max_rows` entries, in lexicographically decreasing order.
inline std::vector<Partition> partitions_of(Index total, std::size_t max_rows)
{
    std::vector<Partition> out;
    if (max_rows == 0) {
        if (total == 0)
            out.emplace_back();
        return out;
    }
    std::vector<Index> parts(max_rows, 0);
    std::function<void(std::size_t, Index, Index)> recurse = [&](std::size_t pos, Index remaining, Index cap) {
        if (pos == max_rows) {
            if (remaining == 0)
                out.emplace_back(parts);
            return;
        }
        for (Index v = std::min(cap, remaining); v >= 0; --v) {
            if (v * static_cast<Index>(max_rows - pos) < remaining)
                break;
            parts[pos] = v;
            recurse(pos + 1, remaining - v, v);
        }
        parts[pos] = 0;
    };
    recurse(0, total, total);
    return out;
}

} // namespace plethq

#endif // PLETHQ_PARTITION_HPP
