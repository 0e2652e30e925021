#ifndef PLETHQ_PLETHYSM_HPP
#define PLETHQ_PLETHYSM_HPP

// Plethysm multiplicities m^{d,k}_lambda of S^lambda in S^d(S^k), computed as
// the alternating sum over the Weyl group of weight-space dimensions of
// S^d(S^k C^n).

#include "plethq/partition.hpp"
#include "plethq/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <vector>

namespace plethq {

struct PlethysmQuery {
    Index d = 1; // outer power
    Index k = 0; // inner power
    Partition lambda;
};

// Weight vectors of S^k C^n: nonnegative length-n vectors summing to k, in
// lexicographically decreasing order.
inline std::vector<WeightVector> inner_monomial_contents(Index k, std::size_t n)
{
    if (n == 0)
        throw std::invalid_argument("inner_monomial_contents requires n >= 1");
    if (k < 0)
        throw std::invalid_argument("inner_monomial_contents requires k >= 0");
    std::vector<WeightVector> out;
    WeightVector current;
    current.entries.assign(n, 0);
    auto recurse = [&](auto&& self, std::size_t pos, Index remaining) -> void {
        if (pos + 1 == n) {
            current.entries[pos] = remaining;
            out.push_back(current);
            return;
        }
        for (Index v = remaining; v >= 0; --v) {
            current.entries[pos] = v;
            self(self, pos + 1, remaining - v);
        }
    };
    recurse(recurse, 0, k);
    return out;
}

namespace detail {

// Multisets of size d of degree-k monomials whose content is `target`.
// `target` is strictly positive in every coordinate and sorted ascending, so
// the last (largest) coordinate is the implied one in the table layout.
// Returns nullopt if the counts overflow Count.
template <class Count>
std::optional<Count> weight_count_dp(Index d, Index k, const std::vector<Index>& target)
{
    const std::size_t n = target.size();
    const std::size_t explicit_dims = n - 1;

    std::vector<std::size_t> stride(explicit_dims);
    std::size_t layer = 1;
    for (std::size_t i = 0; i < explicit_dims; ++i) {
        stride[i] = layer;
        layer *= static_cast<std::size_t>(target[i] + 1);
    }

    // Monomials that fit under the target, split into explicit offset and
    // implied-coordinate increment.
    struct Step {
        std::vector<Index> coords;
        std::size_t offset;
        Index last;
    };
    std::vector<Step> steps;
    {
        std::vector<Index> v(n, 0);
        auto recurse = [&](auto&& self, std::size_t pos, Index remaining) -> void {
            if (pos + 1 == n) {
                if (remaining > target[pos])
                    return;
                v[pos] = remaining;
                Step st{std::vector<Index>(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(explicit_dims)), 0,
                        remaining};
                for (std::size_t i = 0; i < explicit_dims; ++i)
                    st.offset += static_cast<std::size_t>(v[i]) * stride[i];
                steps.push_back(std::move(st));
                return;
            }
            for (Index x = std::min(remaining, target[pos]); x >= 0; --x) {
                v[pos] = x;
                self(self, pos + 1, remaining - x);
            }
        };
        recurse(recurse, 0, k);
    }

    // coordinates of every explicit index, precomputed once
    std::vector<Index> coords(layer * explicit_dims);
    std::vector<Index> explicit_sum(layer, 0);
    for (std::size_t e = 0; e < layer; ++e) {
        std::size_t rem = e;
        for (std::size_t i = 0; i < explicit_dims; ++i) {
            Index c = static_cast<Index>(rem % static_cast<std::size_t>(target[i] + 1));
            rem /= static_cast<std::size_t>(target[i] + 1);
            coords[e * explicit_dims + i] = c;
            explicit_sum[e] += c;
        }
    }

    const std::size_t layers = static_cast<std::size_t>(d) + 1;
    std::vector<Count> table(layers * layer, Count(0));
    table[0] = Count(1);
    bool overflow = false;

    for (const auto& st : steps) {
        for (std::size_t t = 0; t + 1 < layers; ++t) {
            const Count* src = &table[t * layer];
            Count* dst = &table[(t + 1) * layer];
            const Index base = static_cast<Index>(t) * k;
            for (std::size_t e = 0; e < layer; ++e) {
                if (src[e] == 0)
                    continue;
                const Index last = base - explicit_sum[e] + st.last;
                if (last < 0 || last > target[n - 1])
                    continue;
                bool fits = true;
                for (std::size_t i = 0; i < explicit_dims; ++i)
                    if (coords[e * explicit_dims + i] + st.coords[i] > target[i]) {
                        fits = false;
                        break;
                    }
                if (!fits)
                    continue;
                if constexpr (std::is_same_v<Count, std::uint64_t>) {
                    if (__builtin_add_overflow(dst[e + st.offset], src[e], &dst[e + st.offset]))
                        overflow = true;
                } else {
                    dst[e + st.offset] += src[e];
                }
            }
            if (overflow)
                return std::nullopt;
        }
    }

    std::size_t final_index = 0;
    for (std::size_t i = 0; i < explicit_dims; ++i)
        final_index += static_cast<std::size_t>(target[i]) * stride[i];
    return table[static_cast<std::size_t>(d) * layer + final_index];
}

} // namespace detail

// Memo table for weight_count keyed on (d, k, sorted nonzero content).
// Weight-space dimensions are invariant under permuting coordinates, so one
// entry serves a whole Weyl orbit. Safe to share between threads.
class WeightCountCache {
public:
    std::optional<Integer> find(Index d, Index k, const std::vector<Index>& key) const
    {
        std::lock_guard lock(mutex_);
        auto it = table_.find({d, k, key});
        if (it == table_.end())
            return std::nullopt;
        return it->second;
    }

    void insert(Index d, Index k, std::vector<Index> key, Integer value)
    {
        std::lock_guard lock(mutex_);
        table_.emplace(Key{d, k, std::move(key)}, std::move(value));
    }

    std::size_t size() const
    {
        std::lock_guard lock(mutex_);
        return table_.size();
    }

private:
    struct Key {
        Index d, k;
        std::vector<Index> content;
        friend bool operator<(const Key& a, const Key& b)
        {
            if (a.d != b.d)
                return a.d < b.d;
            if (a.k != b.k)
                return a.k < b.k;
            return a.content < b.content;
        }
    };
    mutable std::mutex mutex_;
    std::map<Key, Integer> table_;
};

// Dimension of the mu-weight space of S^d(S^k C^n). Zero for weights with a
// negative entry or the wrong total.
inline Integer weight_count(Index d, Index k, std::size_t n, const WeightVector& mu,
                            WeightCountCache* cache = nullptr)
{
    if (mu.size() != n)
        throw std::invalid_argument("weight vector length does not match n");
    if (d < 0 || k < 0)
        throw std::invalid_argument("weight_count requires d, k >= 0");
    Index total = 0;
    for (Index e : mu.entries) {
        if (e < 0)
            return 0;
        total += e;
    }
    if (total != d * k)
        return 0;

    std::vector<Index> key;
    for (Index e : mu.entries)
        if (e > 0)
            key.push_back(e);
    std::sort(key.begin(), key.end());
    if (key.empty())
        return 1; // d*k == 0: the empty product, or d copies of the constant monomial

    if (cache)
        if (auto hit = cache->find(d, k, key))
            return *hit;

    Integer value;
    if (auto fast = detail::weight_count_dp<std::uint64_t>(d, k, key))
        value = Integer(*fast);
    else
        value = *detail::weight_count_dp<Integer>(d, k, key);

    if (cache)
        cache->insert(d, k, key, value);
    return value;
}

inline Integer plethysm_multiplicity(const PlethysmQuery& q, WeightCountCache* cache = nullptr)
{
    if (q.d < 1)
        throw std::invalid_argument("outer power d must be positive");
    if (q.k < 0)
        throw std::invalid_argument("inner power k must be nonnegative");
    if (q.lambda.size() != q.d * q.k)
        return 0;
    const std::size_t n = std::max<std::size_t>(1, q.lambda.length());

    WeightCountCache local;
    WeightCountCache* table = cache ? cache : &local;
    Integer total = 0;
    for_each_nonnegative_signed_weight(q.lambda, n, [&](const SignedWeight& sw) {
        Integer w = weight_count(q.d, q.k, n, sw.weight, table);
        if (sw.sign > 0)
            total += w;
        else
            total -= w;
    });
    if (total < 0)
        throw std::logic_error("negative plethysm multiplicity: signed weight sum is inconsistent");
    return total;
}

inline Integer plethysm_multiplicity(Index d, Index k, const Partition& lambda, WeightCountCache* cache = nullptr)
{
    return plethysm_multiplicity(PlethysmQuery{d, k, lambda}, cache);
}

// m^{d,k}_lambda == m^{k,d}_lambda, both evaluated with lambda padded to
// max(d, k, len(lambda)) rows.
inline bool hermite_check(Index d, Index k, const Partition& lambda, WeightCountCache* cache = nullptr)
{
    if (d < 1 || k < 1)
        throw std::invalid_argument("hermite_check requires d, k >= 1");
    if (lambda.size() != d * k)
        throw std::invalid_argument("hermite_check requires |lambda| = d*k");
    std::size_t n = std::max({static_cast<std::size_t>(d), static_cast<std::size_t>(k), lambda.length()});
    auto padded = lambda.padded(n);
    // The cache key carries (d, k), so sharing one table across both sides is sound.
    return plethysm_multiplicity(d, k, padded, cache) == plethysm_multiplicity(k, d, padded, cache);
}

} // namespace plethq

#endif // PLETHQ_PLETHYSM_HPP
