#include "doctest.h"
#include "fan_generators.hpp"
#include "support.hpp"

#include "chamberforge/moduli.hpp"
#include "chamberforge/serialize.hpp"

#include <map>

using namespace chamberforge;
using namespace testsupport;

namespace {

StackyFan figure_fan() { return fan_from_json(read_json_file(data_path("figure4.json"))); }

std::multiset<std::string> summand_set(const RootDatum& rd, const SplittingType& beta)
{
    auto parts = bundle_summands(rd, beta);
    return {parts.begin(), parts.end()};
}

// Maximal regions of {a_i = a_j} and {a_i = 0} inside a_1 >= ... >= a_r,
// each given by its primitive extreme rays.
std::set<std::set<IntVector>> kgl_regions(std::size_t r)
{
    std::vector<RatVector> chamber;
    for (std::size_t i = 0; i + 1 < r; ++i) {
        RatVector h(r, Rational(0));
        h[i] = 1;
        h[i + 1] = -1;
        chamber.push_back(h);
    }
    std::set<std::set<IntVector>> regions;
    for (unsigned long signs = 0; signs < (1UL << r); ++signs) {
        std::vector<RatVector> ineqs = chamber;
        for (std::size_t i = 0; i < r; ++i) {
            RatVector h(r, Rational(0));
            h[i] = (signs >> i) & 1 ? 1 : -1;
            ineqs.push_back(h);
        }
        // the pulled-back hyperplanes a_i = a_j never cut the GL chamber's interior
        auto rays = oracle::extreme_rays(ineqs, {}, r);
        RatMatrix span;
        for (const auto& v : rays) span.push_back(to_rational(v));
        if (oracle::rank_of(span, r) == r) regions.insert(rays);
    }
    return regions;
}

}  // namespace

TEST_CASE("sigma stability on the figure fan")
{
    RootDatum pgl3 = make_preset("PGL3");
    StackyFan fan = figure_fan();
    const IntVector b1 = fan.rays[0], b2 = fan.rays[1], b3 = fan.rays[2];
    const WeylElement* w = nullptr;
    for (const auto& e : pgl3.weyl_group())
        if (e.word == std::vector<std::size_t>{0, 1, 0}) w = &e;
    REQUIRE(w);
    CHECK(w->apply(b1) == iv({-2, 0}));
    CHECK(w->apply(b2) == iv({-2, -1}));
    CHECK(w->apply(b3) == iv({0, -1}));

    for (const SplittingType& s : {SplittingType{}, SplittingType{b1}, SplittingType{w->apply(b3)},
                                   SplittingType{b2, b3}, SplittingType{w->apply(b1), w->apply(b2)}}) {
        auto v = sigma_stable(pgl3, fan, s);
        CHECK(v.stable);
        CHECK(v.reason == StabilityReason::ok);
        REQUIRE(v.witness);
        for (std::size_t k = 0; k < s.size(); ++k) CHECK(v.witness->apply(s[k]) == fan.rays[v.index_map[k]]);
    }
    CHECK(sigma_stable(pgl3, fan, {}).cone.empty());

    CHECK(sigma_stable(pgl3, fan, {b2, b1}).reason == StabilityReason::wrong_order);
    CHECK(sigma_stable(pgl3, fan, {b1, b3}).reason == StabilityReason::not_a_cone);
    CHECK(sigma_stable(pgl3, fan, {b2, w->apply(b3)}).reason == StabilityReason::mixed_chambers);
    CHECK(sigma_stable(pgl3, fan, {b1, b2, b3}).reason == StabilityReason::too_long);
    CHECK(sigma_stable(pgl3, fan, {scale(Integer(2), b3)}).reason == StabilityReason::ray_mismatch);
    CHECK(sigma_stable(pgl3, fan, {b1, b1}).reason == StabilityReason::not_a_cone);
}

TEST_CASE("exactly one ordering of each cone is stable")
{
    Rng rng(3);
    std::vector<std::pair<RootDatum, StackyFan>> cases;
    cases.emplace_back(make_preset("PGL3"), figure_fan());
    for (const char* name : {"A2-sc", "B2-adjoint", "G2", "A3-adjoint"}) {
        RootDatum rd = make_preset(name);
        cases.emplace_back(rd, random_chamber_fan(rd, rng, 3));
    }
    cases.emplace_back(make_gl(3), kgl_fan(3));
    for (const auto& [rd, fan] : cases) {
        for (const auto& c : fan.cones) {
            if (c.empty()) continue;
            ConeIndex perm = c;
            std::size_t stable = 0;
            do {
                SplittingType beta;
                for (auto i : perm) beta.push_back(fan.rays[i]);
                auto v = sigma_stable(rd, fan, beta);
                if (v.stable) {
                    ++stable;
                    CHECK(perm == c);
                } else {
                    CHECK(v.reason == StabilityReason::wrong_order);
                }
            } while (std::next_permutation(perm.begin(), perm.end()));
            CHECK(stable == 1);
        }
    }
}

TEST_CASE("sigma stability is Weyl invariant")
{
    Rng rng(19);
    RootDatum rd = make_preset("PGL3");
    StackyFan fan = figure_fan();
    const auto& ws = rd.weyl_group();
    for (int t = 0; t < 300; ++t) {
        SplittingType beta;
        std::size_t n = static_cast<std::size_t>(rng.integer(0, 3));
        for (std::size_t k = 0; k < n; ++k) {
            if (rng.coin())
                beta.push_back(ws[static_cast<std::size_t>(rng.integer(0, 5))].apply(
                    fan.rays[static_cast<std::size_t>(rng.integer(0, 2))]));
            else
                beta.push_back(rng.int_vec(2, 2));
        }
        const auto& w = ws[static_cast<std::size_t>(rng.integer(0, 5))];
        SplittingType moved;
        for (const auto& b : beta) moved.push_back(w.apply(b));
        auto a = sigma_stable(rd, fan, beta), b = sigma_stable(rd, fan, moved);
        CHECK(a.stable == b.stable);
        CHECK(a.reason == b.reason);
        if (a.stable) {
            CHECK(a.cone == b.cone);
            for (std::size_t k = 0; k < beta.size(); ++k)
                CHECK(b.witness->apply(moved[k]) == a.witness->apply(beta[k]));
        }
    }
}

TEST_CASE("canonical fans")
{
    RootDatum pgl3 = make_preset("PGL3");
    CHECK(canonical_fan(pgl3).rays == std::vector<IntVector>{iv({1, 0}), iv({0, 1})});
    RootDatum sl3 = make_preset("SL3");
    CHECK(canonical_fan(sl3).rays == std::vector<IntVector>{iv({2, 1}), iv({1, 2})});
    RootDatum sl2 = make_preset("SL2");
    auto f = canonical_fan(sl2);
    CHECK(f.rays == std::vector<IntVector>{sl2.simple_coroots[0]});
    CHECK(orbit_poset(sl2, f).nodes.back().stabilizer_order == 1);
    CHECK(orbit_poset(sl3, canonical_fan(sl3)).nodes.back().stabilizer_order == 3);
    CHECK_THROWS_AS(canonical_fan(make_gl(2)), DomainError);
}

TEST_CASE("orbit posets")
{
    auto ray = StackyFan::single_cone(1, {iv({1})});
    auto p = orbit_poset(make_preset("A1-adjoint"), ray);
    CHECK(p.nodes.size() == 2);
    CHECK(p.codim_histogram() == std::vector<std::size_t>{1, 1});

    for (const char* name : {"A1-adjoint", "A2-adjoint", "A3-adjoint", "B2-adjoint", "G2", "B3-adjoint"}) {
        RootDatum rd = make_preset(name);
        auto q = orbit_poset(rd, canonical_fan(rd));
        CHECK(q.nodes.size() == (std::size_t{1} << rd.rank));
        for (const auto& n : q.nodes) CHECK(n.stabilizer_order == 1);
    }

    Rng rng(4);
    for (const char* name : {"A2-sc", "B2-adjoint", "A3-sc"}) {
        RootDatum rd = make_preset(name);
        auto fan = random_chamber_fan(rd, rng, 3);
        auto q = orbit_poset(rd, fan);
        CHECK(q.nodes.size() == fan.cones.size());
        CHECK(q.codim_histogram() == fan.cone_count_by_dimension());
        std::size_t facets = 0;
        for (const auto& c : fan.cones) facets += c.size();
        CHECK(q.edges.size() == facets);
        std::size_t open = 0;
        for (const auto& n : q.nodes) {
            CHECK(n.codim == n.cone.size());
            if (n.codim == 0) ++open;
        }
        CHECK(open == 1);
    }
}

TEST_CASE("KGL fans")
{
    auto k1 = kgl_fan(1);
    CHECK(k1.rays == std::vector<IntVector>{iv({1}), iv({-1})});
    CHECK(orbit_poset(make_gl(1), k1).nodes.size() == 3);

    auto k2 = kgl_fan(2);
    std::set<IntVector> rays(k2.rays.begin(), k2.rays.end());
    CHECK(rays == std::set<IntVector>{iv({1, 1}), iv({1, 0}), iv({0, -1}), iv({-1, -1})});
    CHECK(k2.maximal_cones().size() == 3);
    auto p = orbit_poset(make_gl(2), k2);
    CHECK(p.nodes.size() == 8);
    CHECK(p.codim_histogram() == std::vector<std::size_t>{1, 4, 3});

    for (std::size_t r = 1; r <= 4; ++r) {
        RootDatum gl = make_gl(r);
        auto fan = kgl_fan(r);
        CHECK(validate(fan, gl).valid);
        CHECK(support_equals_chamber(gl, fan));
        std::set<std::set<IntVector>> got;
        for (const auto& c : fan.maximal_cones()) {
            std::set<IntVector> s;
            for (auto i : c) s.insert(fan.rays[i]);
            got.insert(s);
        }
        CHECK(got == kgl_regions(r));
    }
}

TEST_CASE("bundle labels on KGL2")
{
    RootDatum gl2 = make_gl(2);
    auto fan = kgl_fan(2);
    std::map<IntVector, std::multiset<std::string>> want_rays = {
        {iv({1, 1}), {"O(-1,1)", "O(-1,1)"}},
        {iv({1, 0}), {"O(-1,1)", "O(0,0)"}},
        {iv({0, -1}), {"O(1,-1)", "O(0,0)"}},
        {iv({-1, -1}), {"O(1,-1)", "O(1,-1)"}}};
    for (const auto& [ray, want] : want_rays) CHECK(summand_set(gl2, {ray}) == want);

    CHECK(bundle_label(gl2, {iv({1, 1})}) == "O(-1,1) ⊕ O(-1,1)");
    CHECK(summand_set(gl2, {iv({0, -1})}) == std::multiset<std::string>{"O(1,-1)", "O(0,0)"});

    std::map<std::set<IntVector>, std::multiset<std::string>> want_cones = {
        {{iv({1, 1}), iv({1, 0})}, {"O(-1,1,0)", "O(-1,0,1)"}},
        {{iv({1, 0}), iv({0, -1})}, {"O(1,-1,0)", "O(0,-1,1)"}},
        {{iv({0, -1}), iv({-1, -1})}, {"O(1,0,-1)", "O(0,1,-1)"}}};
    std::size_t matched = 0;
    for (const auto& c : fan.maximal_cones()) {
        std::set<IntVector> key;
        for (auto i : c) key.insert(fan.rays[i]);
        REQUIRE(want_cones.count(key) == 1);
        CHECK(summand_set(gl2, fan.generators(c)) == want_cones[key]);
        ++matched;
    }
    CHECK(matched == 3);

    RootDatum pgl3 = make_preset("PGL3");
    CHECK(bundle_label(pgl3, {iv({1, 0})}) == "P(O(-1,1) ⊕ O(0,0) ⊕ O(0,0))");
    CHECK_THROWS_AS(bundle_label(make_preset("B2-adjoint"), {iv({1, 0})}), DomainError);
}

TEST_CASE("ordered set partitions")
{
    CHECK(ordered_set_partitions(3, 1).size() == 1);
    CHECK(ordered_set_partitions(3, 2).size() == 6);
    CHECK(ordered_set_partitions(3, 3).size() == 6);
    CHECK(ordered_set_partitions(4, 2).size() == 14);
    CHECK(ordered_set_partitions(4, 3).size() == 36);
    CHECK(ordered_set_partitions(4, 4).size() == 24);
    CHECK(ordered_set_partitions(2, 3).empty());
}

TEST_CASE("marked chains")
{
    CHECK(losev_manin_type(2, {{0, 1, 2}}).empty());
    RootDatum pgl3 = make_preset("PGL3");
    auto one = losev_manin_type(2, {{0}, {1, 2}});
    REQUIRE(one.size() == 1);
    auto rep = dominant_representative(pgl3, to_rational(one[0])).second;
    CHECK((rep == pgl3.fundamental_coweights[0] || rep == pgl3.fundamental_coweights[1]));
    CHECK_THROWS_AS(losev_manin_type(2, {{0, 1, 2}, {}}), DomainError);
    CHECK_THROWS_AS(losev_manin_type(2, {{0, 1}}), DomainError);

    for (std::size_t r = 1; r <= 3; ++r) {
        RootDatum rd = make_preset("PGL" + std::to_string(r + 1));
        auto fan = canonical_fan(rd);
        StackyFan full = weyl_fan(rd, fan);
        for (std::size_t k = 0; k <= r; ++k) {
            std::set<std::set<IntVector>> images;
            auto parts = ordered_set_partitions(r + 1, k + 1);
            for (const auto& blocks : parts) {
                auto beta = losev_manin_type(r, blocks);
                CHECK(beta.size() == k);
                auto v = sigma_stable(rd, fan, beta);
                REQUIRE(v.stable);
                images.insert(std::set<IntVector>(beta.begin(), beta.end()));
            }
            std::size_t cones_of_dim = full.cone_count_by_dimension().at(k);
            CHECK(images.size() == parts.size());
            CHECK(images.size() == cones_of_dim);
            for (const auto& img : images) {
                ConeIndex c;
                for (const auto& v : img)
                    c.push_back(static_cast<std::size_t>(std::find(full.rays.begin(), full.rays.end(), v) -
                                                         full.rays.begin()));
                std::sort(c.begin(), c.end());
                CHECK(full.has_cone(c));
            }
        }
    }
}

TEST_CASE("DOT emission")
{
    auto p = orbit_poset(make_gl(1), kgl_fan(1));
    std::string dot = to_dot(p);
    CHECK(dot.find("c [label=\"0:O(0):1\"]") != std::string::npos);
    CHECK(dot.find("c -> c_0;") != std::string::npos);
    CHECK(node_id({0, 2}) == "c_0_2");
    CHECK(to_dot(p) == dot);
}
