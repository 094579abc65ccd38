#include "chamberforge/chains.hpp"

#include "chamberforge/latcone.hpp"

namespace chamberforge {

EquivariantLineBundle::EquivariantLineBundle(IntVector w) : weights(std::move(w))
{
    if (weights.size() < 2)
        throw DomainError("invalid_line_bundle", "a line bundle on C_n needs at least two weights");
}

IntVector multidegree(const EquivariantLineBundle& L)
{
    IntVector d(L.weights.size() - 1);
    for (std::size_t k = 0; k + 1 < L.weights.size(); ++k) d[k] = L.weights[k] - L.weights[k + 1];
    return d;
}

EquivariantLineBundle dualizing_sheaf(std::size_t n)
{
    IntVector w(n + 2, Integer(0));
    w.front() = -1;
    w.back() = 1;
    return EquivariantLineBundle(std::move(w));
}

EquivariantLineBundle serre_dual(const EquivariantLineBundle& L)
{
    IntVector w = negate(L.weights);
    w.front() -= 1;
    w.back() += 1;
    return EquivariantLineBundle(std::move(w));
}

// Sections supported on components i..j-1 (0-based, half-open): positive
// weight where the support starts, zero weights at interior nodes, negative
// weight where it ends.  The outer ends p_+ and p_- also accept weight 0.
std::size_t invariant_h0(const EquivariantLineBundle& L)
{
    const auto& b = L.weights;
    const std::size_t last = b.size() - 1;  // index of p_-
    std::size_t count = 0;
    for (std::size_t i = 0; i < last; ++i) {
        bool start = i == 0 ? b[0] >= 0 : b[i] > 0;
        if (!start) continue;
        for (std::size_t j = i + 1; j <= last; ++j) {
            bool stop = j == last ? b[j] <= 0 : b[j] < 0;
            if (stop) ++count;
            if (b[j] != 0) break;
        }
    }
    return count;
}

std::size_t invariant_h1(const EquivariantLineBundle& L) { return invariant_h0(serre_dual(L)); }

EquivariantLineBundle ad_summand(const SplittingType& beta, const IntVector& alpha)
{
    IntVector w(beta.size() + 2, Integer(0));
    for (std::size_t k = 0; k < beta.size(); ++k) w[k + 1] = dot(alpha, beta[k]);
    return EquivariantLineBundle(std::move(w));
}

namespace {

void check_type(const RootDatum& rd, const SplittingType& beta)
{
    for (const auto& b : beta) require_dim(rd.rank, b.size());
}

}  // namespace

std::size_t t0_dim(const RootDatum& rd, const SplittingType& beta)
{
    check_type(rd, beta);
    std::size_t total = 0;
    for (const auto& a : rd.roots()) {
        EquivariantLineBundle L = ad_summand(beta, a);
        L.weights.front() -= 1;
        L.weights.back() += 1;
        total += invariant_h0(L);
    }
    return total;
}

std::size_t h0_ad_dim(const RootDatum& rd, const SplittingType& beta)
{
    check_type(rd, beta);
    std::size_t total = rd.rank;
    for (const auto& a : rd.roots()) total += invariant_h0(ad_summand(beta, a));
    return total;
}

std::size_t h1_ad_dim(const RootDatum& rd, const SplittingType& beta)
{
    check_type(rd, beta);
    std::size_t total = 0;
    for (const auto& a : rd.roots()) total += invariant_h1(ad_summand(beta, a));
    return total;
}

std::size_t t1_dim(const RootDatum& rd, const SplittingType& beta)
{
    const std::size_t dim_g = rd.group_dimension();
    return 2 * dim_g - h0_ad_dim(rd, beta) + t0_dim(rd, beta) + h1_ad_dim(rd, beta);
}

AutGroupShape aut_group_shape(const RootDatum& rd, const SplittingType& beta)
{
    check_type(rd, beta);
    if (!common_chamber(rd, beta))
        throw DomainError("no_common_chamber",
                          "splitting type has no common Weyl chamber; its automorphism group is trivial");
    AutGroupShape out;
    for (const auto& a : rd.roots()) {
        bool pos = false, neg = false;
        for (const auto& b : beta) {
            Integer v = dot(a, b);
            if (v > 0) pos = true;
            if (v < 0) neg = true;
        }
        if (neg) out.uplus_roots.push_back(a);
        if (pos) out.uminus_roots.push_back(a);
        if (!pos && !neg) out.levi_roots.push_back(a);
    }
    out.dimension = rd.rank + out.levi_roots.size() + out.uplus_roots.size() + out.uminus_roots.size();
    return out;
}

std::optional<Integer> stabilizer_order(const SplittingType& beta, std::size_t rank)
{
    for (const auto& b : beta) require_dim(rank, b.size());
    if (beta.empty()) return Integer(1);
    auto snf = smith_normal_form(beta, rank);
    if (snf.rank < beta.size()) return std::nullopt;
    Integer order = 1;
    for (const auto& d : snf.invariant_factors) order *= d;
    return order;
}

}  // namespace chamberforge
