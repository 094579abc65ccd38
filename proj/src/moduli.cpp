#include "chamberforge/moduli.hpp"

#include <algorithm>
#include <sstream>

namespace chamberforge {

const char* to_string(StabilityReason r)
{
    switch (r) {
    case StabilityReason::ok: return "ok";
    case StabilityReason::wrong_order: return "wrong_order";
    case StabilityReason::not_a_cone: return "not_a_cone";
    case StabilityReason::mixed_chambers: return "mixed_chambers";
    case StabilityReason::too_long: return "too_long";
    case StabilityReason::ray_mismatch: return "ray_mismatch";
    }
    return "?";
}

StabilityVerdict sigma_stable(const RootDatum& rd, const StackyFan& fan, const SplittingType& beta)
{
    if (fan.rank != rd.rank) throw DimensionMismatch(rd.rank, fan.rank);
    for (const auto& b : beta) require_dim(rd.rank, b.size());
    if (!chamber_supported(rd, fan))
        throw DomainError("not_chamber_supported", "sigma_stable needs a fan in the positive chamber");

    StabilityVerdict v;
    if (beta.size() > fan.dimension()) {
        v.reason = StabilityReason::too_long;
        return v;
    }
    auto w = common_chamber(rd, beta);
    if (!w) {
        v.reason = StabilityReason::mixed_chambers;
        return v;
    }
    // the dominant representative is unique, so the ray indices do not depend on w
    for (const auto& b : beta) {
        IntVector d = w->apply(b);
        auto it = std::find(fan.rays.begin(), fan.rays.end(), d);
        if (it == fan.rays.end()) {
            v.reason = StabilityReason::ray_mismatch;
            v.index_map.clear();
            return v;
        }
        v.index_map.push_back(static_cast<std::size_t>(it - fan.rays.begin()));
    }
    ConeIndex sorted = v.index_map;
    std::sort(sorted.begin(), sorted.end());
    bool repeats = std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
    if (repeats || !fan.has_cone(sorted)) {
        v.reason = StabilityReason::not_a_cone;
        return v;
    }
    v.cone = sorted;
    if (sorted != v.index_map) {
        v.reason = StabilityReason::wrong_order;
        return v;
    }
    v.stable = true;
    v.witness = *w;
    return v;
}

std::vector<std::size_t> OrbitPoset::codim_histogram() const
{
    std::vector<std::size_t> h;
    for (const auto& n : nodes) {
        if (h.size() <= n.codim) h.resize(n.codim + 1, 0);
        ++h[n.codim];
    }
    return h;
}

OrbitPoset orbit_poset(const RootDatum& rd, const StackyFan& fan)
{
    require_valid(fan);
    if (fan.rank != rd.rank) throw DimensionMismatch(rd.rank, fan.rank);
    const bool labels = has_label_scheme(rd);
    OrbitPoset p;
    for (const auto& c : fan.cones) {
        OrbitNode n;
        n.cone = c;
        n.codim = c.size();
        auto order = stabilizer_order(fan.generators(c), fan.rank);
        if (!order) throw std::logic_error("simplicial cone with dependent generators");
        n.stabilizer_order = *order;
        if (labels) n.label = bundle_label(rd, fan, c);
        p.nodes.push_back(std::move(n));
    }
    for (std::size_t s = 0; s < fan.cones.size(); ++s) {
        const auto& sigma = fan.cones[s];
        for (std::size_t t = 0; t < fan.cones.size(); ++t) {
            const auto& tau = fan.cones[t];
            if (tau.size() + 1 != sigma.size()) continue;
            if (std::includes(sigma.begin(), sigma.end(), tau.begin(), tau.end())) p.edges.emplace_back(t, s);
        }
    }
    std::sort(p.edges.begin(), p.edges.end());
    return p;
}

std::string node_id(const ConeIndex& cone)
{
    std::string id = "c";
    for (auto i : cone) id += "_" + std::to_string(i);
    return id;
}

std::string to_dot(const OrbitPoset& poset)
{
    std::ostringstream out;
    out << "digraph orbits {\n";
    for (const auto& n : poset.nodes)
        out << "  " << node_id(n.cone) << " [label=\"" << n.codim << ":" << n.label.value_or("") << ":"
            << n.stabilizer_order.get_str() << "\"];\n";
    for (auto [t, s] : poset.edges)
        out << "  " << node_id(poset.nodes[t].cone) << " -> " << node_id(poset.nodes[s].cone) << ";\n";
    out << "}\n";
    return out.str();
}

StackyFan canonical_fan(const RootDatum& rd)
{
    if (!rd.semisimple()) throw DomainError("not_semisimple", "the canonical fan needs a semisimple root datum");
    std::vector<IntVector> rays;
    for (const auto& w : rd.fundamental_coweights) rays.push_back(primitive(w));
    return StackyFan::single_cone(rd.rank, std::move(rays));
}

StackyFan kgl_fan(std::size_t r)
{
    if (r == 0) throw DomainError("invalid_rank", "kgl_fan needs r >= 1");
    std::vector<IntVector> rays;
    for (std::size_t m = r; m >= 1; --m) {
        IntVector pos(r, Integer(0)), neg(r, Integer(0));
        for (std::size_t i = 0; i < m; ++i) pos[i] = 1;
        for (std::size_t i = m - 1; i < r; ++i) neg[i] = -1;
        rays.push_back(std::move(pos));
        rays.push_back(std::move(neg));
    }
    auto pos_index = [r](std::size_t m) { return 2 * (r - m); };
    auto neg_index = [r](std::size_t m) { return 2 * (r - m) + 1; };
    std::vector<ConeIndex> cones;
    for (std::size_t k = 0; k <= r; ++k) {
        ConeIndex c;
        for (std::size_t m = 1; m <= k; ++m) c.push_back(pos_index(m));
        for (std::size_t m = k + 1; m <= r; ++m) c.push_back(neg_index(m));
        std::sort(c.begin(), c.end());
        cones.push_back(std::move(c));
    }
    return StackyFan::from_cones(r, std::move(rays), cones);
}

namespace {

IntVector unit_difference(std::size_t dim, std::size_t i)
{
    IntVector v(dim, Integer(0));
    v[i] = 1;
    v[i + 1] = -1;
    return v;
}

bool is_gl(const RootDatum& rd)
{
    if (rd.rank != rd.num_nodes() + 1) return false;
    for (std::size_t i = 0; i < rd.num_nodes(); ++i) {
        IntVector d = unit_difference(rd.rank, i);
        if (rd.simple_roots[i] != d || rd.simple_coroots[i] != d) return false;
    }
    return true;
}

bool is_pgl(const RootDatum& rd)
{
    const std::size_t r = rd.rank;
    if (r == 0 || rd.num_nodes() != r) return false;
    if (rd.cartan_matrix() != cartan_matrix_of_type('A', r)) return false;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            if (rd.simple_roots[i][j] != (i == j ? 1 : 0)) return false;
    return true;
}

std::string render(const IntVector& d)
{
    if (d.empty()) return "O";
    std::string s = "O(";
    for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + d[i].get_str();
    return s + ")";
}

std::vector<std::string> summands_of(const std::vector<IntVector>& coords, std::size_t width)
{
    std::vector<IntVector> degs;
    for (std::size_t k = 0; k < width; ++k) {
        IntVector w{Integer(0)};
        for (const auto& x : coords) w.push_back(x[k]);
        w.push_back(0);
        degs.push_back(multidegree(EquivariantLineBundle(w)));
    }
    std::sort(degs.begin(), degs.end());
    std::vector<std::string> out;
    for (const auto& d : degs) out.push_back(render(d));
    return out;
}

}  // namespace

bool has_label_scheme(const RootDatum& rd) { return is_gl(rd) || is_pgl(rd); }

std::vector<std::string> bundle_summands(const RootDatum& rd, const SplittingType& beta)
{
    for (const auto& b : beta) require_dim(rd.rank, b.size());
    if (is_gl(rd)) return summands_of(beta, rd.rank);
    if (is_pgl(rd)) {
        // coweight coordinates -> a representative in Z^{r+1}
        std::vector<IntVector> lifted;
        for (const auto& c : beta) {
            IntVector x(rd.rank + 1, Integer(0));
            for (std::size_t i = rd.rank; i-- > 0;) x[i] = x[i + 1] + c[i];
            lifted.push_back(std::move(x));
        }
        return summands_of(lifted, rd.rank + 1);
    }
    throw DomainError("no_label_scheme", "bundle labels are defined for GL_r and PGL_r only");
}

std::string bundle_label(const RootDatum& rd, const SplittingType& beta)
{
    auto parts = bundle_summands(rd, beta);
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? " ⊕ " : "") + parts[i];
    return is_pgl(rd) ? "P(" + s + ")" : s;
}

std::string bundle_label(const RootDatum& rd, const StackyFan& fan, const ConeIndex& cone)
{
    return bundle_label(rd, fan.generators(cone));
}

SplittingType losev_manin_type(std::size_t r, const LabelDistribution& blocks)
{
    if (blocks.empty()) throw DomainError("invalid_distribution", "a chain has at least one component");
    std::vector<int> component(r + 1, -1);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (blocks[b].empty()) throw DomainError("empty_component", "every component needs a marked point");
        for (auto a : blocks[b]) {
            if (a > r) throw DomainError("invalid_distribution", "label a_" + std::to_string(a) + " out of range");
            if (component[a] != -1) throw DomainError("invalid_distribution", "label used twice");
            component[a] = static_cast<int>(b);
        }
    }
    if (std::find(component.begin(), component.end(), -1) != component.end())
        throw DomainError("invalid_distribution", "every label must be placed");

    // node m separates components m-1 and m; mod the center, the weight is the
    // indicator of the labels on the p_- side
    SplittingType out;
    for (std::size_t m = blocks.size() - 1; m >= 1; --m) {
        IntVector c(r, Integer(0));
        for (std::size_t i = 0; i < r; ++i) {
            int xi = component[i] >= static_cast<int>(m), xj = component[i + 1] >= static_cast<int>(m);
            c[i] = xi - xj;
        }
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<LabelDistribution> ordered_set_partitions(std::size_t n, std::size_t k)
{
    std::vector<LabelDistribution> out;
    if (k == 0 || k > n) return out;
    std::vector<std::size_t> f(n, 0);
    while (true) {
        LabelDistribution blocks(k);
        for (std::size_t a = 0; a < n; ++a) blocks[f[a]].push_back(a);
        if (std::none_of(blocks.begin(), blocks.end(), [](const auto& b) { return b.empty(); }))
            out.push_back(std::move(blocks));
        std::size_t pos = n;
        while (pos > 0 && f[pos - 1] == k - 1) f[--pos] = 0;
        if (pos == 0) break;
        ++f[pos - 1];
    }
    return out;
}

}  // namespace chamberforge
