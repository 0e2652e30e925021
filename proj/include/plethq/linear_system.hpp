#ifndef PLETHQ_LINEAR_SYSTEM_HPP
#define PLETHQ_LINEAR_SYSTEM_HPP

// Systems of strict and non-strict rational linear inequalities, decided by
// Fourier-Motzkin elimination. Constraints are normalized so the first
// nonzero coefficient is +-1 and only the tightest bound per direction is
// kept; for the low-dimensional systems built by the decider this keeps
// elimination quadratic instead of doubly exponential.

#include "plethq/rational.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace plethq {

// sum_i coeffs[i] * x_i  (<  or <=)  rhs
struct LinearConstraint {
    std::vector<Rational> coeffs;
    Rational rhs;
    bool strict = false;
};

// A possibly unbounded, possibly open interval of rationals.
struct RationalInterval {
    std::optional<Rational> lo, hi;
    bool lo_open = false, hi_open = false;
    bool empty = false;

    bool contains(const Rational& x) const
    {
        if (empty)
            return false;
        if (lo && (lo_open ? x <= *lo : x < *lo))
            return false;
        if (hi && (hi_open ? x >= *hi : x > *hi))
            return false;
        return true;
    }
};

inline std::string to_string(const RationalInterval& iv)
{
    if (iv.empty)
        return "{}";
    std::string out = iv.lo ? (iv.lo_open ? "(" : "[") + to_string(*iv.lo) : "(-inf";
    out += ", ";
    out += iv.hi ? to_string(*iv.hi) + (iv.hi_open ? ")" : "]") : "inf)";
    return out;
}

// The rational of smallest denominator in a nonempty interval (smallest
// absolute value among integers).
inline Rational simplest_in(const RationalInterval& iv)
{
    if (iv.empty)
        throw std::invalid_argument("simplest_in: empty interval");
    if (!iv.lo && !iv.hi)
        return Rational(0);
    if (!iv.lo) {
        Integer z = floor(*iv.hi);
        if (iv.hi_open && Rational(z) == *iv.hi)
            z -= 1;
        return Rational(z >= 0 ? Integer(std::min(z, Integer(0))) : z);
    }
    if (!iv.hi) {
        Integer z = ceil(*iv.lo);
        if (iv.lo_open && Rational(z) == *iv.lo)
            z += 1;
        return Rational(z <= 0 ? Integer(std::max(z, Integer(0))) : z);
    }
    for (Integer den = 1;; den += 1) {
        // candidates num/den with num in [ceil(lo*den), floor(hi*den)]
        Integer first = ceil(*iv.lo * Rational(den));
        Integer last = floor(*iv.hi * Rational(den));
        Integer best_num;
        bool found = false;
        for (Integer num = first; num <= last; num += 1) {
            Rational x = make_rational(num, den);
            if (!iv.contains(x))
                continue;
            if (!found || abs(num) < abs(best_num)) {
                best_num = num;
                found = true;
            }
        }
        if (found)
            return make_rational(best_num, den);
    }
}

class LinearSystem {
public:
    explicit LinearSystem(std::size_t variables) : n_(variables) {}

    std::size_t variables() const noexcept { return n_; }

    // True once some added or derived constraint reads 0 < r with r <= 0
    // (or 0 <= r with r < 0).
    bool contradictory() const noexcept { return contradiction_; }

    // Substitutes x_v = value into every present and future constraint.
    void pin(std::size_t v, const Rational& value)
    {
        if (v >= n_)
            throw std::out_of_range("pin: no such variable");
        if (pinned_.empty())
            pinned_.assign(n_, std::nullopt);
        pinned_[v] = value;
        auto old = constraints();
        rows_.clear();
        for (auto& c : old)
            add(std::move(c));
    }

    std::optional<Rational> pinned(std::size_t v) const
    {
        return pinned_.empty() ? std::nullopt : pinned_[v];
    }

    void add(LinearConstraint con)
    {
        if (con.coeffs.size() != n_)
            throw std::invalid_argument("constraint has the wrong number of coefficients");
        for (std::size_t i = 0; i < pinned_.size(); ++i)
            if (pinned_[i] && con.coeffs[i] != 0) {
                con.rhs -= con.coeffs[i] * *pinned_[i];
                con.coeffs[i] = 0;
            }
        std::size_t lead = 0;
        while (lead < n_ && con.coeffs[lead] == 0)
            ++lead;
        if (lead == n_) {
            if (con.strict ? !(0 < con.rhs) : !(0 <= con.rhs))
                contradiction_ = true;
            return;
        }
        Rational scale = abs(con.coeffs[lead]);
        for (auto& a : con.coeffs)
            a /= scale;
        con.rhs /= scale;
        auto [it, inserted] = rows_.try_emplace(std::move(con.coeffs), Tail{con.rhs, con.strict});
        if (!inserted) {
            Tail& t = it->second;
            if (con.rhs < t.rhs || (con.rhs == t.rhs && con.strict))
                t = Tail{con.rhs, con.strict};
        }
    }

    void add(std::vector<Rational> coeffs, Rational rhs, bool strict)
    {
        add(LinearConstraint{std::move(coeffs), std::move(rhs), strict});
    }

    void add_all(const LinearSystem& other)
    {
        if (other.n_ != n_)
            throw std::invalid_argument("cannot merge systems over different variables");
        if (other.contradiction_)
            contradiction_ = true;
        for (const auto& c : other.constraints())
            add(c);
    }

    std::vector<LinearConstraint> constraints() const
    {
        std::vector<LinearConstraint> out;
        out.reserve(rows_.size());
        for (const auto& [coeffs, tail] : rows_)
            out.push_back({coeffs, tail.rhs, tail.strict});
        return out;
    }

    std::size_t size() const noexcept { return rows_.size(); }

    // Projection that removes variable v (its coefficient becomes zero everywhere).
    LinearSystem eliminate(std::size_t v) const
    {
        LinearSystem out(n_);
        out.contradiction_ = contradiction_;
        out.pinned_ = pinned_;
        std::vector<const std::pair<const std::vector<Rational>, Tail>*> pos, neg;
        for (const auto& row : rows_) {
            const Rational& a = row.first[v];
            if (a > 0)
                pos.push_back(&row);
            else if (a < 0)
                neg.push_back(&row);
            else
                out.add({row.first, row.second.rhs, row.second.strict});
        }
        for (const auto* p : pos)
            for (const auto* q : neg) {
                const Rational wp = -q->first[v];
                const Rational wq = p->first[v];
                std::vector<Rational> coeffs(n_);
                for (std::size_t i = 0; i < n_; ++i)
                    coeffs[i] = (i == v) ? Rational(0) : wp * p->first[i] + wq * q->first[i];
                out.add({std::move(coeffs), wp * p->second.rhs + wq * q->second.rhs,
                         p->second.strict || q->second.strict});
            }
        return out;
    }

    bool feasible() const
    {
        LinearSystem cur = *this;
        std::vector<bool> done(n_, false);
        for (std::size_t step = 0; step < n_; ++step) {
            if (cur.contradiction_)
                return false;
            std::size_t v = cur.cheapest_elimination(done, n_);
            done[v] = true;
            cur = cur.eliminate(v);
        }
        return !cur.contradiction_;
    }

    // Range of variable v over the feasible set.
    RationalInterval range_of(std::size_t v) const
    {
        if (auto p = pinned(v)) {
            RationalInterval iv;
            iv.lo = iv.hi = *p;
            iv.empty = !feasible();
            return iv;
        }
        LinearSystem cur = *this;
        std::vector<bool> done(n_, false);
        for (std::size_t step = 0; step + 1 < n_; ++step) {
            std::size_t u = cur.cheapest_elimination(done, v);
            done[u] = true;
            cur = cur.eliminate(u);
        }
        return cur.single_variable_interval(v);
    }

    // Range of sum_i coeffs[i] * x_i over the feasible set.
    RationalInterval range_of(const std::vector<Rational>& coeffs) const
    {
        if (coeffs.size() != n_)
            throw std::invalid_argument("expression has the wrong number of coefficients");
        LinearSystem ext(n_ + 1);
        ext.contradiction_ = contradiction_;
        if (!pinned_.empty()) {
            ext.pinned_ = pinned_;
            ext.pinned_.push_back(std::nullopt);
        }
        for (const auto& [c, tail] : rows_) {
            auto row = c;
            row.push_back(Rational(0));
            ext.add({std::move(row), tail.rhs, tail.strict});
        }
        // t = expr as two inequalities
        std::vector<Rational> up(coeffs), down(n_ + 1);
        up.push_back(Rational(-1));
        for (std::size_t i = 0; i <= n_; ++i)
            down[i] = -up[i];
        ext.add({std::move(up), Rational(0), false});
        ext.add({std::move(down), Rational(0), false});
        return ext.range_of(n_);
    }

    // Some rational point of the feasible set, coordinates chosen with small
    // denominators; nullopt when the system is infeasible.
    std::optional<std::vector<Rational>> sample_point() const
    {
        // chain[i] has variables 0..i-1 eliminated
        std::vector<LinearSystem> chain{*this};
        for (std::size_t v = 0; v + 1 < n_; ++v)
            chain.push_back(chain.back().eliminate(v));
        if (!chain.back().feasible())
            return std::nullopt;
        std::vector<Rational> point(n_, Rational(0));
        std::vector<bool> fixed(n_, false);
        for (std::size_t step = n_; step-- > 0;) {
            const std::size_t v = step; // chain[step] only involves variables step..n-1
            if (auto p = pinned(v)) {
                point[v] = *p;
                fixed[v] = true;
                continue;
            }
            LinearSystem sub = chain[step].substitute(point, fixed);
            RationalInterval iv = sub.single_variable_interval(v);
            if (iv.empty)
                return std::nullopt; // cannot happen for an exact projection
            point[v] = simplest_in(iv);
            fixed[v] = true;
        }
        return point;
    }

private:
    struct Tail {
        Rational rhs;
        bool strict;
    };

    // Unfinished variable (other than `keep`) with the fewest generated
    // constraints, pos * neg, under elimination.
    std::size_t cheapest_elimination(const std::vector<bool>& done, std::size_t keep) const
    {
        std::size_t best = n_;
        std::size_t best_cost = 0;
        for (std::size_t v = 0; v < n_; ++v) {
            if (done[v] || v == keep)
                continue;
            std::size_t pos = 0, neg = 0;
            for (const auto& row : rows_) {
                if (row.first[v] > 0)
                    ++pos;
                else if (row.first[v] < 0)
                    ++neg;
            }
            std::size_t cost = pos * neg;
            if (best == n_ || cost < best_cost) {
                best = v;
                best_cost = cost;
            }
        }
        return best;
    }

    LinearSystem substitute(const std::vector<Rational>& point, const std::vector<bool>& fixed) const
    {
        LinearSystem out(n_);
        out.contradiction_ = contradiction_;
        for (const auto& [c, tail] : rows_) {
            std::vector<Rational> row = c;
            Rational rhs = tail.rhs;
            for (std::size_t i = 0; i < n_; ++i)
                if (fixed[i]) {
                    rhs -= row[i] * point[i];
                    row[i] = 0;
                }
            out.add({std::move(row), rhs, tail.strict});
        }
        return out;
    }

    // Assumes every remaining constraint involves only variable v.
    RationalInterval single_variable_interval(std::size_t v) const
    {
        RationalInterval iv;
        if (contradiction_) {
            iv.empty = true;
            return iv;
        }
        for (const auto& [c, tail] : rows_) {
            for (std::size_t i = 0; i < n_; ++i)
                if (i != v && c[i] != 0)
                    throw std::logic_error("single_variable_interval: constraint involves other variables");
            // normalized: coefficient is +1 (upper bound) or -1 (lower bound)
            if (c[v] > 0) {
                if (!iv.hi || tail.rhs < *iv.hi || (tail.rhs == *iv.hi && tail.strict)) {
                    iv.hi = tail.rhs;
                    iv.hi_open = tail.strict;
                }
            } else {
                Rational bound = -tail.rhs;
                if (!iv.lo || bound > *iv.lo || (bound == *iv.lo && tail.strict)) {
                    iv.lo = bound;
                    iv.lo_open = tail.strict;
                }
            }
        }
        if (iv.lo && iv.hi && (*iv.lo > *iv.hi || (*iv.lo == *iv.hi && (iv.lo_open || iv.hi_open))))
            iv.empty = true;
        return iv;
    }

    std::size_t n_;
    bool contradiction_ = false;
    std::vector<std::optional<Rational>> pinned_; // empty when nothing is pinned
    std::map<std::vector<Rational>, Tail> rows_;
};

} // namespace plethq

#endif // PLETHQ_LINEAR_SYSTEM_HPP
