#pragma once
// Helpers and independent reference computations shared by the unit tests
// and the acceptance binary.  The oracles here deliberately avoid the
// library's linear algebra, LP and cone code.

#include "chamberforge/numeric.hpp"

#include <algorithm>
#include <cstdlib>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace testsupport {

using chamberforge::Integer;
using chamberforge::IntMatrix;
using chamberforge::IntVector;
using chamberforge::Rational;
using chamberforge::RatMatrix;
using chamberforge::RatVector;

inline std::string data_path(const std::string& file)
{
    const char* dir = std::getenv("CHAMBERFORGE_DATA");
    return std::string(dir ? dir : "data") + "/" + file;
}

inline IntVector iv(std::initializer_list<long> xs)
{
    IntVector v;
    for (long x : xs) v.push_back(x);
    return v;
}

inline RatVector rv(std::initializer_list<long> xs)
{
    RatVector v;
    for (long x : xs) v.push_back(x);
    return v;
}

struct Rng {
    std::mt19937 gen;
    explicit Rng(unsigned seed) : gen(seed) {}

    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen); }
    bool coin() { return integer(0, 1) == 1; }
    Rational rational(long bound, long max_den)
    {
        return Rational(integer(-bound, bound)) / integer(1, max_den);
    }
    IntVector int_vec(std::size_t n, long bound)
    {
        IntVector v(n);
        for (auto& x : v) x = integer(-bound, bound);
        return v;
    }
    IntVector nonzero_int_vec(std::size_t n, long bound)
    {
        while (true) {
            IntVector v = int_vec(n, bound);
            if (std::any_of(v.begin(), v.end(), [](const Integer& z) { return z != 0; })) return v;
        }
    }
    RatVector rat_vec(std::size_t n, long bound, long max_den)
    {
        RatVector v(n);
        for (auto& x : v) x = rational(bound, max_den);
        return v;
    }
};

namespace oracle {

inline Rational dot(const RatVector& a, const RatVector& b)
{
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// Basis of {x : M x = 0} by plain Gauss-Jordan.
inline std::vector<RatVector> kernel(RatMatrix m, std::size_t dim)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < dim && row < m.size(); ++col) {
        std::size_t p = row;
        while (p < m.size() && m[p][col] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[row]);
        Rational inv = 1 / m[row][col];
        for (auto& x : m[row]) x *= inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][col] == 0) continue;
            Rational f = m[r][col];
            for (std::size_t c = 0; c < dim; ++c) m[r][c] -= f * m[row][c];
        }
        pivots.push_back(col);
        ++row;
    }
    std::vector<RatVector> out;
    for (std::size_t free = 0; free < dim; ++free) {
        if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
        RatVector v(dim, Rational(0));
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
        out.push_back(v);
    }
    return out;
}

inline std::size_t rank_of(const RatMatrix& m, std::size_t dim) { return dim - kernel(m, dim).size(); }

/// Scales to a primitive integer vector with the same direction.
inline IntVector primitive(const RatVector& v)
{
    Integer l = 1;
    for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    IntVector out;
    Integer g = 0;
    for (const auto& x : v) {
        Integer z = x.get_num() * (l / x.get_den());
        out.push_back(z);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
    }
    if (g != 0)
        for (auto& z : out) z /= g;
    return out;
}

/// Extreme rays of the pointed cone {y : a.y >= 0 (a in ineqs), e.y = 0 (e in eqs)}
/// by trying every set of dim-1 independent tight constraints.
inline std::set<IntVector> extreme_rays(const std::vector<RatVector>& ineqs, const std::vector<RatVector>& eqs,
                                        std::size_t dim)
{
    std::set<IntVector> rays;
    const std::size_t m = ineqs.size();
    const std::size_t need = dim - 1;
    std::vector<std::size_t> pick;
    // enumerate subsets of ineqs of every size <= need
    std::vector<bool> mask;
    for (std::size_t k = 0; k <= std::min(need, m); ++k) {
        mask.assign(m, false);
        std::fill(mask.begin(), mask.begin() + static_cast<long>(k), true);
        do {
            RatMatrix rows = eqs;
            for (std::size_t i = 0; i < m; ++i)
                if (mask[i]) rows.push_back(ineqs[i]);
            auto ker = kernel(rows, dim);
            if (ker.size() != 1) continue;
            for (int sign : {1, -1}) {
                RatVector y = ker[0];
                for (auto& x : y) x *= sign;
                bool ok = true;
                for (const auto& a : ineqs)
                    if (dot(a, y) < 0) ok = false;
                if (ok) rays.insert(primitive(y));
            }
        } while (std::prev_permutation(mask.begin(), mask.end()));
    }
    return rays;
}

/// Membership in a cone of R^2 by Caratheodory: x is a nonnegative
/// combination of at most two generators, solved with Cramer's rule.
inline bool in_cone_2d(const std::vector<RatVector>& gens, const RatVector& x)
{
    if (x[0] == 0 && x[1] == 0) return true;
    for (const auto& g : gens) {
        // x = t g, t >= 0
        Rational cross = g[0] * x[1] - g[1] * x[0];
        if (cross == 0 && g[0] * x[0] + g[1] * x[1] > 0) return true;
    }
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j) {
            const auto &a = gens[i], &b = gens[j];
            Rational det = a[0] * b[1] - a[1] * b[0];
            if (det == 0) continue;
            Rational s = (x[0] * b[1] - x[1] * b[0]) / det;
            Rational t = (a[0] * x[1] - a[1] * x[0]) / det;
            if (s >= 0 && t >= 0) return true;
        }
    return false;
}

/// Invariant sections of O(b_0|...|b_{n+1}) by gluing component sections.
/// Component k joins weights b_k and b_{k+1}; it carries an invariant
/// section iff b_k >= 0 >= b_{k+1}, nonzero at an end iff that weight is 0.
inline std::size_t h0_gluing(const std::vector<long>& b)
{
    const std::size_t comps = b.size() - 1;
    std::vector<long> var(comps, -1);
    std::size_t nv = 0;
    for (std::size_t k = 0; k < comps; ++k)
        if (b[k] >= 0 && b[k + 1] <= 0) var[k] = static_cast<long>(nv++);
    if (nv == 0) return 0;
    RatMatrix eqs;
    for (std::size_t node = 1; node + 1 < b.size(); ++node) {
        if (b[node] != 0) continue;
        long left = var[node - 1], right = var[node];
        RatVector row(nv, Rational(0));
        if (left >= 0) row[static_cast<std::size_t>(left)] += 1;
        if (right >= 0) row[static_cast<std::size_t>(right)] -= 1;
        eqs.push_back(row);
    }
    return kernel(eqs, nv).size();
}

/// From the normalization sequence:
/// h1 = sum_k h1_k + #(nodes of weight 0) - sum_k h0_k + h0.
inline std::size_t h1_gluing(const std::vector<long>& b)
{
    const std::size_t comps = b.size() - 1;
    long sum_h0 = 0, sum_h1 = 0, zero_nodes = 0;
    for (std::size_t k = 0; k < comps; ++k) {
        if (b[k] >= 0 && b[k + 1] <= 0) ++sum_h0;
        if (b[k] < 0 && b[k + 1] > 0) ++sum_h1;
    }
    for (std::size_t node = 1; node + 1 < b.size(); ++node)
        if (b[node] == 0) ++zero_nodes;
    long h1 = sum_h1 + zero_nodes - sum_h0 + static_cast<long>(h0_gluing(b));
    return static_cast<std::size_t>(h1);
}

/// Closure of a set of integer matrices under multiplication.
inline std::set<IntMatrix> group_closure(const std::vector<IntMatrix>& gens, std::size_t dim)
{
    IntMatrix id(dim, IntVector(dim, Integer(0)));
    for (std::size_t i = 0; i < dim; ++i) id[i][i] = 1;
    std::set<IntMatrix> seen{id};
    std::vector<IntMatrix> frontier{id};
    while (!frontier.empty()) {
        std::vector<IntMatrix> next;
        for (const auto& a : frontier)
            for (const auto& g : gens) {
                IntMatrix p(dim, IntVector(dim, Integer(0)));
                for (std::size_t i = 0; i < dim; ++i)
                    for (std::size_t k = 0; k < dim; ++k)
                        for (std::size_t j = 0; j < dim; ++j) p[i][j] += a[i][k] * g[k][j];
                if (seen.insert(p).second) next.push_back(p);
            }
        frontier = std::move(next);
    }
    return seen;
}

}  // namespace oracle

}  // namespace testsupport
