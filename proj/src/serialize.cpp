#include "chamberforge/serialize.hpp"

#include "chamberforge/latcone.hpp"

#include <fstream>

namespace chamberforge {

namespace {

[[noreturn]] void bad(const std::string& what) { throw DomainError("malformed_json", what); }

const Json& field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
    return j.at(key);
}

std::vector<IntVector> int_rows(const Json& j)
{
    if (!j.is_array()) bad("expected an array of vectors");
    std::vector<IntVector> out;
    for (const auto& row : j) out.push_back(int_vector_from_json(row));
    return out;
}

std::vector<RatVector> rat_rows(const Json& j)
{
    if (!j.is_array()) bad("expected an array of vectors");
    std::vector<RatVector> out;
    for (const auto& row : j) out.push_back(rat_vector_from_json(row));
    return out;
}

template <class Rows>
Json rows_to_json(const Rows& rows)
{
    Json out = Json::array();
    for (const auto& r : rows) out.push_back(to_json(r));
    return out;
}

}  // namespace

Json to_json(const Integer& z)
{
    if (z.fits_slong_p()) return Json(z.get_si());
    return Json(z.get_str());
}

Json to_json(const Rational& q) { return Json(to_string(q)); }

Json to_json(const IntVector& v)
{
    Json out = Json::array();
    for (const auto& z : v) out.push_back(to_json(z));
    return out;
}

Json to_json(const RatVector& v)
{
    Json out = Json::array();
    for (const auto& q : v) out.push_back(to_json(q));
    return out;
}

Rational rational_from_json(const Json& j)
{
    if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
    if (j.is_string()) return parse_rational(j.get<std::string>());
    bad("expected an integer or a rational string, got " + j.dump());
}

Integer integer_from_json(const Json& j)
{
    Rational q = rational_from_json(j);
    if (q.get_den() != 1) bad("expected an integer, got " + j.dump());
    return q.get_num();
}

IntVector int_vector_from_json(const Json& j)
{
    if (!j.is_array()) bad("expected an array, got " + j.dump());
    IntVector v;
    for (const auto& x : j) v.push_back(integer_from_json(x));
    return v;
}

RatVector rat_vector_from_json(const Json& j)
{
    if (!j.is_array()) bad("expected an array, got " + j.dump());
    RatVector v;
    for (const auto& x : j) v.push_back(rational_from_json(x));
    return v;
}

Json fan_to_json(const StackyFan& fan)
{
    Json cones = Json::array();
    for (const auto& c : fan.cones) cones.push_back(c);
    return {{"rank", fan.rank}, {"rays", rows_to_json(fan.rays)}, {"cones", cones}, {"ordered", true}};
}

StackyFan fan_from_json(const Json& j, bool close_faces)
{
    auto rays = int_rows(field(j, "rays"));
    std::size_t rank = 0;
    if (j.contains("rank")) {
        if (!j.at("rank").is_number_unsigned()) bad("rank must be a nonnegative integer");
        rank = j.at("rank").get<std::size_t>();
    } else if (!rays.empty()) {
        rank = rays.front().size();
    } else {
        bad("a fan without rays needs an explicit rank");
    }
    std::vector<ConeIndex> cones;
    const Json& jc = field(j, "cones");
    if (!jc.is_array()) bad("cones must be an array");
    for (const auto& c : jc) {
        if (!c.is_array()) bad("each cone must be an array of ray indices");
        ConeIndex idx;
        for (const auto& i : c) {
            if (!i.is_number_unsigned()) bad("ray indices must be nonnegative integers");
            idx.push_back(i.get<std::size_t>());
        }
        cones.push_back(std::move(idx));
    }
    if (close_faces) return StackyFan::from_cones(rank, std::move(rays), cones);
    StackyFan f;
    f.rank = rank;
    f.rays = std::move(rays);
    f.cones = std::move(cones);
    sort_cones(f.cones);
    return f;
}

Json rootdata_to_json(const RootDatum& rd)
{
    Json edges = Json::array();
    for (auto [a, b] : rd.dynkin_edges) edges.push_back({a, b});
    Json out = {{"name", rd.name},
                {"rank", rd.rank},
                {"simple_roots", rows_to_json(rd.simple_roots)},
                {"simple_coroots", rows_to_json(rd.simple_coroots)},
                {"fundamental_weights", rows_to_json(rd.fundamental_weights)},
                {"fundamental_coweights", rows_to_json(rd.fundamental_coweights)},
                {"edges", edges},
                {"invariants", rows_to_json(rd.weyl_invariant_characters)}};
    if (!rd.character_basis_labels.empty()) out["character_basis_labels"] = rd.character_basis_labels;
    return out;
}

RootDatum rootdata_from_json(const Json& j)
{
    RootDatum rd;
    rd.name = j.value("name", std::string("custom"));
    const Json& jr = field(j, "rank");
    if (!jr.is_number_unsigned()) bad("rank must be a nonnegative integer");
    rd.rank = jr.get<std::size_t>();
    rd.simple_roots = int_rows(field(j, "simple_roots"));
    rd.simple_coroots = int_rows(field(j, "simple_coroots"));
    if (j.contains("character_basis_labels"))
        rd.character_basis_labels = j.at("character_basis_labels").get<std::vector<std::string>>();
    for (const auto& v : rd.simple_roots) require_dim(rd.rank, v.size());
    for (const auto& v : rd.simple_coroots) require_dim(rd.rank, v.size());

    const std::size_t n = rd.simple_roots.size();
    const bool square = n == rd.rank && rd.simple_coroots.size() == n;
    if (j.contains("fundamental_weights")) {
        rd.fundamental_weights = rat_rows(j.at("fundamental_weights"));
    } else if (square) {
        // rows w_i with w_i . coroot_j = delta_ij
        RatMatrix k = to_rational(rd.simple_coroots);
        rd.fundamental_weights = inverse(transpose(k, rd.rank));
    } else {
        throw DomainError("invalid_root_datum", "fundamental_weights are required for non-semisimple data");
    }
    if (j.contains("fundamental_coweights")) {
        rd.fundamental_coweights = rat_rows(j.at("fundamental_coweights"));
    } else if (square) {
        RatMatrix r = to_rational(rd.simple_roots);
        rd.fundamental_coweights = transpose(inverse(r), rd.rank);
    } else {
        throw DomainError("invalid_root_datum", "fundamental_coweights are required for non-semisimple data");
    }
    rd.derive_secondary_data();
    rd.validate();
    return rd;
}

SplittingType splitting_type_from_json(const Json& j) { return int_rows(j); }

Json splitting_type_to_json(const SplittingType& beta) { return rows_to_json(beta); }

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw DomainError("file_not_found", "cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw DomainError("malformed_json", path + ": " + e.what());
    }
}

}  // namespace chamberforge
