#include "doctest.h"
#include "fan_generators.hpp"
#include "support.hpp"

#include "chamberforge/coxvinberg.hpp"
#include "chamberforge/moduli.hpp"
#include "chamberforge/serialize.hpp"

using namespace chamberforge;
using namespace testsupport;

namespace {

StackyFan figure_fan() { return fan_from_json(read_json_file(data_path("figure4.json"))); }

bool is_subset(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b)
{
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

const std::vector<std::string> kSemisimple = {"A1-adjoint", "A1-sc", "A2-adjoint", "A2-sc", "B2-adjoint", "C2-sc",
                                              "G2",         "A3-adjoint", "B3-sc", "C3-adjoint"};

}  // namespace

TEST_CASE("Cox data")
{
    RootDatum pgl3 = make_preset("PGL3");
    auto c = cox_data(pgl3, canonical_fan(pgl3));
    CHECK(c.kernel_rank == 0);
    CHECK(c.kernel_invariant_factors.empty());

    RootDatum sl3 = make_preset("SL3");
    auto s = cox_data(sl3, canonical_fan(sl3));
    CHECK(s.kernel_rank == 0);
    CHECK(s.kernel_invariant_factors == iv({3}));

    auto f = cox_data(pgl3, figure_fan());
    CHECK(f.kernel_rank == 1);
    CHECK(f.admissible({0, 1, 2}));
    CHECK(f.admissible({2}));
    CHECK_FALSE(f.admissible({1}));
    CHECK_FALSE(f.admissible({}));
}

TEST_CASE("base map")
{
    RootDatum sl2 = make_preset("SL2");
    CHECK(base_map_matrix(sl2, canonical_fan(sl2)) == IntMatrix{iv({2})});
    RootDatum pgl2 = make_preset("PGL2");
    CHECK(base_map_matrix(pgl2, canonical_fan(pgl2)) == IntMatrix{iv({1})});
    RootDatum sl3 = make_preset("SL3");
    CHECK(base_map_matrix(sl3, canonical_fan(sl3)) == IntMatrix{iv({3, 0}), iv({0, 3})});
}

TEST_CASE("stratum images")
{
    RootDatum pgl3 = make_preset("PGL3");
    auto fan = canonical_fan(pgl3);
    CHECK(stratum_image(pgl3, fan, {}).empty());
    CHECK(stratum_image(pgl3, fan, {0, 1}) == NodeSet{0, 1});
    RootDatum pgl2 = make_preset("PGL2");
    CHECK(stratum_image(pgl2, canonical_fan(pgl2), {}).empty());

    auto fig = figure_fan();
    auto sets = all_ray_subsets(3);
    for (const auto& H : sets)
        for (const auto& H2 : sets)
            if (is_subset(H, H2)) CHECK(is_subset(stratum_image(pgl3, fig, H), stratum_image(pgl3, fig, H2)));
}

TEST_CASE("destabilizers: examples")
{
    RootDatum sl2 = make_preset("SL2");
    auto d = destabilizer(sl2, canonical_fan(sl2), 0, {});
    REQUIRE(d.found);
    CHECK(d.ell == rv({-1}));

    RootDatum pgl3 = make_preset("PGL3");
    auto e = destabilizer(pgl3, canonical_fan(pgl3), 1, {0});
    REQUIRE(e.found);
    CHECK(e.ell == rv({1, -2}));
    CHECK(verify_destabilizer(pgl3, canonical_fan(pgl3), 1, {0}, e.ell));
    CHECK_FALSE(verify_destabilizer(pgl3, canonical_fan(pgl3), 1, {0}, rv({-1, -2})));
    CHECK_THROWS_AS(destabilizer(pgl3, canonical_fan(pgl3), 0, {0}), DomainError);
}

TEST_CASE("destabilizers exist off the stratum image")
{
    Rng rng(5);
    for (const auto& name : kSemisimple) {
        RootDatum rd = make_preset(name);
        std::vector<StackyFan> fans{canonical_fan(rd), random_chamber_fan(rd, rng, 3)};
        if (name == "A2-adjoint") fans.push_back(figure_fan());
        for (const auto& fan : fans) {
            for (const auto& H : all_ray_subsets(fan.rays.size())) {
                NodeSet I = stratum_image(rd, fan, H);
                for (std::size_t i = 0; i < rd.num_nodes(); ++i) {
                    if (std::binary_search(I.begin(), I.end(), i)) continue;
                    auto d = destabilizer(rd, fan, i, H);
                    REQUIRE(d.found);
                    CHECK(verify_destabilizer(rd, fan, i, H, d.ell));
                }
            }
        }
    }
}

TEST_CASE("kernel order matches the stabilizer order on one cone")
{
    for (const auto& name : kSemisimple) {
        RootDatum rd = make_preset(name);
        StackyFan fan = canonical_fan(rd);
        auto c = cox_data(rd, fan);
        REQUIRE(c.kernel_rank == 0);
        Integer order = 1;
        for (const auto& d : c.kernel_invariant_factors) order *= d;
        CHECK(order == *stabilizer_order(fan.rays, rd.rank));
    }
}

TEST_CASE("classification of strata")
{
    Rng rng(13);
    std::vector<std::pair<std::string, StackyFan>> cases;
    for (const char* name : {"A1-adjoint", "A1-sc", "A2-adjoint", "A2-sc", "B2-adjoint", "C2-sc", "G2"}) {
        RootDatum rd = make_preset(name);
        cases.emplace_back(name, canonical_fan(rd));
        cases.emplace_back(name, random_chamber_fan(rd, rng, 2));
    }
    cases.emplace_back("A2-adjoint", figure_fan());

    for (const auto& [name, fan] : cases) {
        RootDatum rd = make_preset(name);
        auto model = prepare_cox_vinberg(rd, fan);
        NodeSet all(rd.num_nodes());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        for (int t = 0; t < 2; ++t) {
            RatVector rho(rd.rank, Rational(0));
            for (const auto& w : rd.fundamental_weights) rho = add(rho, scale(Rational(rng.integer(1, 4)), w));
            for (const auto& v : classify_all_strata(model, rho)) {
                if (!v.stratum.valid) continue;
                bool expect = model.cox.admissible(v.stratum.H) && v.stratum.J == all;
                CHECK((v.status == GitStatus::stable) == expect);
                CHECK(verify_stratum_witness(model, v, rho));
                if (v.stratum.J != all) {
                    CHECK(v.status == GitStatus::unstable);
                    CHECK(v.witness_kind == "eq_y");
                }
                if (v.stratum.J == all && !expect) CHECK(v.witness_kind == "toric");
            }
        }
    }
}

TEST_CASE("classification hypotheses")
{
    RootDatum pgl3 = make_preset("PGL3");
    auto model = prepare_cox_vinberg(pgl3, canonical_fan(pgl3));
    Stratum s = make_stratum(pgl3, model.cox.fan, {}, {0, 1});
    CHECK_THROWS_AS(sgbeta_git_classify(model, s, rv({1, 0})), DomainError);
    Stratum bad = make_stratum(pgl3, model.cox.fan, {0, 1}, {});
    CHECK_FALSE(bad.valid);
    CHECK_THROWS_AS(sgbeta_git_classify(model, bad, rv({1, 1})), DomainError);

    auto twisted = fan_from_json(read_json_file(data_path("twisted_triangulation.json")));
    RootDatum a3 = make_preset("A3-adjoint");
    CHECK_THROWS_AS(prepare_cox_vinberg(a3, twisted), DomainError);
}
