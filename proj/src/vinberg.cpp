#include "chamberforge/vinberg.hpp"

#include <algorithm>

namespace chamberforge {

namespace {

bool contains(const NodeSet& s, std::size_t i) { return std::binary_search(s.begin(), s.end(), i); }

RatVector concat(const RatVector& a, const RatVector& b)
{
    RatVector out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

void check_nodes(const RootDatum& rd, const NodeSet& s)
{
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (s[k] >= rd.num_nodes())
            throw DomainError("invalid_node", "node index " + std::to_string(s[k]) + " out of range");
        if (k > 0 && s[k] <= s[k - 1])
            throw DomainError("invalid_node", "node sets must be strictly increasing");
    }
}

}  // namespace

bool is_essential(const RootDatum& rd, const NodeSet& I, const NodeSet& J)
{
    check_nodes(rd, I);
    check_nodes(rd, J);
    const std::size_t n = rd.num_nodes();
    std::vector<bool> seen(n, false);
    for (std::size_t start = 0; start < n; ++start) {
        if (seen[start] || contains(J, start)) continue;
        // flood the component of start inside Omega \ J
        std::vector<std::size_t> stack{start};
        seen[start] = true;
        bool inside_I = true;
        while (!stack.empty()) {
            std::size_t v = stack.back();
            stack.pop_back();
            if (!contains(I, v)) inside_I = false;
            for (auto [a, b] : rd.dynkin_edges) {
                std::size_t u = a == v ? b : b == v ? a : n;
                if (u == n || seen[u] || contains(J, u)) continue;
                seen[u] = true;
                stack.push_back(u);
            }
        }
        if (inside_I) return false;
    }
    return true;
}

std::vector<NodeSet> all_node_subsets(std::size_t n)
{
    std::vector<NodeSet> out;
    for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
        NodeSet s;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1UL << i)) s.push_back(i);
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<EssentialPair> essential_pairs(const RootDatum& rd)
{
    auto subsets = all_node_subsets(rd.num_nodes());
    std::vector<EssentialPair> out;
    for (const auto& I : subsets)
        for (const auto& J : subsets) out.push_back({I, J, is_essential(rd, I, J)});
    return out;
}

RationalCone VinbergFace::full_cone() const
{
    RationalCone c;
    c.ambient_dim = first_factor_cone.ambient_dim * 2;
    c.generators = generators_DI;
    c.generators.insert(c.generators.end(), generators_CJ.begin(), generators_CJ.end());
    c.lineality = lineality;
    return c;
}

VinbergFace vinberg_face(const RootDatum& rd, const NodeSet& I, const NodeSet& J)
{
    VinbergFace f;
    f.pair = {I, J, is_essential(rd, I, J)};
    const RatVector zero(rd.rank, Rational(0));
    f.first_factor_cone.ambient_dim = rd.rank;
    for (auto i : I) {
        RatVector a = to_rational(rd.simple_roots[i]);
        f.generators_DI.push_back(concat(a, zero));
        f.first_factor_cone.generators.push_back(a);
    }
    for (auto j : J) {
        const RatVector& w = rd.fundamental_weights[j];
        f.generators_CJ.push_back(concat(w, w));
        f.first_factor_cone.generators.push_back(w);
    }
    for (const auto& z : rd.weyl_invariant_characters) {
        f.lineality.push_back(concat(z, z));
        f.first_factor_cone.lineality.push_back(z);
    }
    return f;
}

RationalCone vinberg_cone_K(const RootDatum& rd)
{
    RationalCone k;
    k.ambient_dim = 2 * rd.rank;
    const RatVector zero(rd.rank, Rational(0));
    for (const auto& a : rd.simple_roots) k.generators.push_back(concat(to_rational(a), zero));
    for (std::size_t c = 0; c < rd.rank; ++c) {
        RatVector e(rd.rank, Rational(0));
        e[c] = 1;
        k.lineality.push_back(concat(e, e));
    }
    return k;
}

RationalCone vinberg_cone_Kplus(const RootDatum& rd)
{
    NodeSet all(rd.num_nodes());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return vinberg_face(rd, all, all).full_cone();
}

RationalCone vinberg_cone_K_cap_chamber(const RootDatum& rd)
{
    RationalCone dual = dual_cone(vinberg_cone_K(rd));
    const RatVector zero(rd.rank, Rational(0));
    for (const auto& c : rd.simple_coroots) dual.generators.push_back(concat(zero, to_rational(c)));
    return dual_cone(dual);
}

const char* to_string(GitStatus s)
{
    switch (s) {
    case GitStatus::stable: return "stable";
    case GitStatus::strictly_semistable: return "strictly_semistable";
    case GitStatus::unstable: return "unstable";
    }
    return "?";
}

bool limit_exists(const VinbergFace& face, const RatVector& lambda)
{
    const auto& c = face.first_factor_cone;
    require_dim(c.ambient_dim, lambda.size());
    for (const auto& g : c.generators)
        if (dot(g, lambda) < 0) return false;
    for (const auto& l : c.lineality)
        if (dot(l, lambda) != 0) return false;
    return true;
}

namespace {

GitVerdict classify_dual(const RationalCone& weight_cone, const RatVector& rho)
{
    RationalCone q = dual_cone(weight_cone);
    auto pos = strict_positive_on_cone(q, rho);
    GitVerdict v;
    switch (pos.verdict) {
    case Positivity::strict: v.status = GitStatus::stable; break;
    case Positivity::nonneg_only: v.status = GitStatus::strictly_semistable; break;
    case Positivity::fails: v.status = GitStatus::unstable; break;
    }
    if (!pos.witness.empty()) {
        v.witness = pos.witness;
        v.witness_kind = "dual_ray";
    }
    return v;
}

}  // namespace

GitVerdict orbit_git_status(const RootDatum& rd, const EssentialPair& pair, const RatVector& rho)
{
    require_dim(rd.rank, rho.size());
    if (!is_essential(rd, pair.I, pair.J))
        throw DomainError("non_essential_pair", "orbit_git_status needs an essential pair");
    VinbergFace face = vinberg_face(rd, pair.I, pair.J);
    GitVerdict v = classify_dual(face.first_factor_cone, rho);
    if (v.status != GitStatus::unstable) return v;

    // prefer the coroot destabilizer -alpha_i^vee for the least free node
    for (std::size_t i = 0; i < rd.num_nodes(); ++i) {
        if (contains(pair.I, i) || contains(pair.J, i)) continue;
        RatVector lambda = to_rational(negate(rd.simple_coroots[i]));
        if (limit_exists(face, lambda) && dot(rho, lambda) < 0) {
            v.witness = lambda;
            v.witness_kind = "neg_coroot";
            v.witness_node = i;
            break;
        }
    }
    return v;
}

GitVerdict torus_git(const std::vector<RatVector>& weights, const RatVector& rho, std::size_t ambient_dim)
{
    require_dim(ambient_dim, rho.size());
    RationalCone c;
    c.ambient_dim = ambient_dim;
    for (const auto& w : weights) {
        require_dim(ambient_dim, w.size());
        if (!is_zero(w)) c.generators.push_back(w);
    }
    return classify_dual(c, rho);
}

}  // namespace chamberforge
