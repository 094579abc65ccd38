// chamberforge: command-line front end.
//
// Exit codes: 0 success, 1 domain error (JSON on stderr), 2 usage error.

#include "chamberforge/chains.hpp"
#include "chamberforge/coxvinberg.hpp"
#include "chamberforge/fans.hpp"
#include "chamberforge/moduli.hpp"
#include "chamberforge/rootdata.hpp"
#include "chamberforge/serialize.hpp"
#include "chamberforge/vinberg.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>

using namespace chamberforge;

namespace {

struct Options {
    std::string preset;
    std::string rootdata_file;
    std::string fan_file;
    std::string format = "json";
    std::string rho;
    std::string type;
    std::string weights;
    std::string H = "[]";
    std::string I;
    std::string J;
    std::string blocks;
    std::string dot_file;
    std::size_t node = 0;
    std::size_t kgl = 0;
    std::size_t r = 0;
    std::size_t weyl_cap = 0;
    bool canonical = false;
    bool enumerate = false;
    bool raw_cones = false;
};

RootDatum load_rootdata(const Options& o, const std::string& fallback = "")
{
    if (!o.rootdata_file.empty()) return rootdata_from_json(read_json_file(o.rootdata_file));
    if (!o.preset.empty()) return make_preset(o.preset);
    if (!fallback.empty()) return make_preset(fallback);
    throw DomainError("missing_rootdata", "pass --preset or --rootdata");
}

StackyFan load_fan(const Options& o, const RootDatum* rd)
{
    if (o.kgl) return kgl_fan(o.kgl);
    if (o.canonical) {
        if (!rd) throw DomainError("missing_rootdata", "--canonical needs a root datum");
        return canonical_fan(*rd);
    }
    if (o.fan_file.empty()) throw DomainError("missing_fan", "pass --fan, --canonical or --kgl");
    return fan_from_json(read_json_file(o.fan_file), !o.raw_cones);
}

Json parse_json_arg(const std::string& text, const char* what)
{
    try {
        return Json::parse(text);
    } catch (const Json::parse_error&) {
        throw DomainError("malformed_json", std::string("cannot parse ") + what + ": " + text);
    }
}

std::vector<std::size_t> index_list(const std::string& text, const char* what)
{
    Json j = parse_json_arg(text, what);
    if (!j.is_array()) throw DomainError("malformed_json", std::string(what) + " must be an array");
    std::vector<std::size_t> out;
    for (const auto& x : j) {
        if (!x.is_number_unsigned()) throw DomainError("malformed_json", std::string(what) + " entries must be indices");
        out.push_back(x.get<std::size_t>());
    }
    std::sort(out.begin(), out.end());
    return out;
}

RatVector rho_for(const Options& o, const RootDatum& rd)
{
    if (!o.rho.empty()) return parse_rational_vector(o.rho);
    // default: the sum of the fundamental weights
    RatVector rho(rd.rank, Rational(0));
    for (const auto& w : rd.fundamental_weights) rho = add(rho, w);
    return rho;
}

void print_text(const Json& j, const std::string& indent = "")
{
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) {
            if (v.is_object() || (v.is_array() && !v.empty() && v.front().is_object())) {
                std::cout << indent << k << ":\n";
                print_text(v, indent + "  ");
            } else {
                std::cout << indent << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
            }
        }
    } else if (j.is_array()) {
        for (const auto& v : j) {
            if (v.is_object()) {
                std::cout << indent << "-\n";
                print_text(v, indent + "  ");
            } else {
                std::cout << indent << "- " << v.dump() << "\n";
            }
        }
    } else {
        std::cout << indent << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
    }
}

void emit(const Options& o, const Json& j)
{
    if (o.format == "text")
        print_text(j);
    else
        std::cout << j.dump(2) << "\n";
}

Json weyl_json(const WeylElement& w)
{
    return {{"word", w.word}, {"name", w.word_string()}};
}

Json cmd_rootdata_show(const Options& o)
{
    RootDatum rd = load_rootdata(o);
    Json j = rootdata_to_json(rd);
    Json cartan = Json::array();
    for (const auto& row : rd.cartan_matrix()) cartan.push_back(to_json(row));
    j["cartan_matrix"] = cartan;
    j["num_roots"] = rd.roots().size();
    j["weyl_order"] = rd.weyl_group().size();
    j["group_dimension"] = rd.group_dimension();
    return j;
}

Json violations_json(const ValidationReport& rep)
{
    Json vs = Json::array();
    for (const auto& v : rep.violations) {
        Json cones = Json::array();
        for (const auto& c : v.cones) cones.push_back(c);
        Json item = {{"kind", v.kind}, {"detail", v.detail}, {"cones", cones}};
        if (!v.witness.empty()) item["witness"] = to_json(v.witness);
        vs.push_back(item);
    }
    return vs;
}

Json cmd_fan_validate(const Options& o)
{
    StackyFan fan = load_fan(o, nullptr);
    Json j;
    if (!o.preset.empty() || !o.rootdata_file.empty()) {
        RootDatum rd = load_rootdata(o);
        auto rep = validate(fan, rd);
        j = {{"valid", rep.valid}, {"chamber_supported", rep.chamber_supported}, {"violations", violations_json(rep)}};
        if (rep.valid && rep.chamber_supported) j["support_equals_chamber"] = support_equals_chamber(rd, fan);
    } else {
        auto rep = validate(fan);
        j = {{"valid", rep.valid}, {"violations", violations_json(rep)}};
    }
    j["cone_counts"] = fan.cone_count_by_dimension();
    return j;
}

Json cmd_fan_weyl(const Options& o)
{
    RootDatum rd = load_rootdata(o);
    StackyFan fan = load_fan(o, &rd);
    StackyFan wf = weyl_fan(rd, fan);
    Json j = fan_to_json(wf);
    j["cone_counts"] = wf.cone_count_by_dimension();
    auto conv = support_convexity(wf);
    j["support_convex"] = conv.convex;
    return j;
}

Json cmd_fan_normal(const Options& o)
{
    RootDatum rd;
    bool have_rd = !o.preset.empty() || !o.rootdata_file.empty();
    if (have_rd) rd = load_rootdata(o);
    StackyFan fan = load_fan(o, have_rd ? &rd : nullptr);
    auto rep = is_normal_fan(fan);
    Json j = {{"status", to_string(rep.status)}, {"detail", rep.detail}};
    if (rep.status == NormalFanStatus::certified) {
        Json certs = Json::array();
        for (std::size_t k = 0; k < rep.maximal_cones.size(); ++k)
            certs.push_back({{"cone", rep.maximal_cones[k]}, {"functional", to_json(rep.functionals[k])}});
        j["certificate"] = certs;
        j["verified"] = verify_normal_certificate(fan, rep);
    }
    return j;
}

Json cmd_stability(const Options& o)
{
    RootDatum rd = load_rootdata(o);
    StackyFan fan = load_fan(o, &rd);
    SplittingType beta = splitting_type_from_json(parse_json_arg(o.type, "--type"));
    auto v = sigma_stable(rd, fan, beta);
    Json j = {{"stable", v.stable}, {"reason", to_string(v.reason)}};
    if (v.witness) {
        j["witness"] = weyl_json(*v.witness);
        j["cone"] = v.cone;
        j["index_map"] = v.index_map;
    }
    return j;
}

Json cmd_cohomology(const Options& o)
{
    if (!o.weights.empty()) {
        EquivariantLineBundle L(int_vector_from_json(parse_json_arg(o.weights, "--weights")));
        return {{"weights", to_json(L.weights)},
                {"multidegree", to_json(multidegree(L))},
                {"serre_dual", to_json(serre_dual(L).weights)},
                {"h0", invariant_h0(L)},
                {"h1", invariant_h1(L)}};
    }
    RootDatum rd = load_rootdata(o);
    SplittingType beta = splitting_type_from_json(parse_json_arg(o.type, "--type"));
    return {{"t0", t0_dim(rd, beta)},
            {"h0_ad", h0_ad_dim(rd, beta)},
            {"h1_ad", h1_ad_dim(rd, beta)},
            {"t1", t1_dim(rd, beta)},
            {"common_chamber", common_chamber(rd, beta).has_value()}};
}

Json cmd_aut(const Options& o)
{
    RootDatum rd = load_rootdata(o);
    SplittingType beta = splitting_type_from_json(parse_json_arg(o.type, "--type"));
    auto s = aut_group_shape(rd, beta);
    auto roots = [](const std::vector<IntVector>& rs) {
        Json a = Json::array();
        for (const auto& r : rs) a.push_back(to_json(r));
        return a;
    };
    Json j = {{"levi_roots", roots(s.levi_roots)},
              {"uplus_roots", roots(s.uplus_roots)},
              {"uminus_roots", roots(s.uminus_roots)},
              {"dimension", s.dimension}};
    if (auto st = stabilizer_order(beta, rd.rank)) j["stabilizer_order"] = to_json(*st);
    return j;
}

Json cmd_vinberg_faces(const Options& o)
{
    RootDatum rd = load_rootdata(o);
    Json out = Json::array();
    for (const auto& p : essential_pairs(rd)) {
        if (!p.essential) continue;
        VinbergFace f = vinberg_face(rd, p.I, p.J);
        Json gens = Json::array();
        for (const auto& g : f.full_cone().generators) gens.push_back(to_json(g));
        Json lin = Json::array();
        for (const auto& l : f.lineality) lin.push_back(to_json(l));
        out.push_back({{"I", p.I}, {"J", p.J}, {"generators", gens}, {"lineality", lin}});
    }
    return {{"rootdata", rd.name}, {"essential_pairs", out.size()}, {"faces", out}};
}

Json git_json(const GitVerdict& v)
{
    Json j = {{"status", to_string(v.status)}};
    if (!v.witness.empty()) {
        j["witness"] = to_json(v.witness);
        j["witness_kind"] = v.witness_kind;
        if (v.witness_kind == "neg_coroot") j["witness_node"] = v.witness_node;
    }
    return j;
}

Json cmd_vinberg_git(const Options& o)
{
    RootDatum rd = load_rootdata(o);
    RatVector rho = rho_for(o, rd);
    Json out = Json::array();
    if (!o.I.empty() || !o.J.empty()) {
        EssentialPair p{index_list(o.I.empty() ? "[]" : o.I, "--I"), index_list(o.J.empty() ? "[]" : o.J, "--J"),
                        false};
        Json j = git_json(orbit_git_status(rd, p, rho));
        j["I"] = p.I;
        j["J"] = p.J;
        out.push_back(j);
    } else {
        for (const auto& p : essential_pairs(rd)) {
            if (!p.essential) continue;
            Json j = git_json(orbit_git_status(rd, p, rho));
            j["I"] = p.I;
            j["J"] = p.J;
            out.push_back(j);
        }
    }
    return {{"rho", to_json(rho)}, {"orbits", out}};
}

Json cmd_cox_classify(const Options& o)
{
    RootDatum rd = load_rootdata(o);
    StackyFan fan = load_fan(o, &rd);
    RatVector rho = rho_for(o, rd);
    auto model = prepare_cox_vinberg(rd, fan);
    Json strata = Json::array();
    for (const auto& v : classify_all_strata(model, rho)) {
        Json j = {{"H", v.stratum.H}, {"I", v.stratum.I}, {"J", v.stratum.J}, {"valid", v.stratum.valid}};
        if (v.stratum.valid) {
            j["status"] = to_string(v.status);
            j["admissible"] = model.cox.admissible(v.stratum.H);
            if (!v.witness.empty()) {
                j["witness"] = to_json(v.witness);
                j["witness_kind"] = v.witness_kind;
                if (v.witness_kind == "eq_y") j["witness_node"] = v.witness_node;
            }
        }
        strata.push_back(j);
    }
    return {{"rho", to_json(rho)},
            {"xi", to_json(model.xi)},
            {"kernel_rank", model.cox.kernel_rank},
            {"kernel_invariant_factors", to_json(model.cox.kernel_invariant_factors)},
            {"strata", strata}};
}

Json cmd_cox_destabilize(const Options& o)
{
    RootDatum rd = load_rootdata(o);
    StackyFan fan = load_fan(o, &rd);
    RaySet H = index_list(o.H, "--H");
    auto d = destabilizer(rd, fan, o.node, H);
    Json j = {{"found", d.found}, {"node", o.node}, {"H", H}, {"I", stratum_image(rd, fan, H)}};
    if (d.found) {
        j["ell"] = to_json(d.ell);
        j["method"] = d.method;
        j["verified"] = verify_destabilizer(rd, fan, o.node, H, d.ell);
    } else {
        j["separator"] = to_json(d.separator);
    }
    return j;
}

int cmd_moduli_orbits(const Options& o)
{
    RootDatum rd = load_rootdata(o, o.kgl ? "GL" + std::to_string(o.kgl) : "");
    StackyFan fan = load_fan(o, &rd);
    OrbitPoset p = orbit_poset(rd, fan);
    if (!o.dot_file.empty()) {
        std::ofstream out(o.dot_file);
        if (!out) throw DomainError("file_not_writable", "cannot write " + o.dot_file);
        out << to_dot(p);
    }
    if (o.format == "dot") {
        std::cout << to_dot(p);
        return 0;
    }
    Json nodes = Json::array();
    for (const auto& n : p.nodes) {
        Json j = {{"id", node_id(n.cone)},
                  {"cone", n.cone},
                  {"codim", n.codim},
                  {"stabilizer_order", to_json(n.stabilizer_order)}};
        if (n.label) j["label"] = *n.label;
        nodes.push_back(j);
    }
    Json edges = Json::array();
    for (auto [t, s] : p.edges) edges.push_back({node_id(p.nodes[t].cone), node_id(p.nodes[s].cone)});
    emit(o, {{"orbits", nodes}, {"edges", edges}, {"codim_histogram", p.codim_histogram()}});
    return 0;
}

Json cmd_moduli_kgl(const Options& o)
{
    if (o.r == 0) throw DomainError("invalid_rank", "--r must be positive");
    StackyFan fan = kgl_fan(o.r);
    RootDatum rd = make_gl(o.r);
    Json j = fan_to_json(fan);
    j["support_equals_chamber"] = support_equals_chamber(rd, fan);
    Json labels = Json::array();
    for (const auto& c : fan.cones) labels.push_back({{"cone", c}, {"label", bundle_label(rd, fan, c)}});
    j["labels"] = labels;
    return j;
}

Json lm_record(std::size_t r, const LabelDistribution& blocks, const RootDatum& rd, const StackyFan& fan)
{
    SplittingType beta = losev_manin_type(r, blocks);
    auto v = sigma_stable(rd, fan, beta);
    Json j = {{"blocks", blocks}, {"splitting_type", splitting_type_to_json(beta)}, {"stable", v.stable}};
    if (v.witness) j["witness"] = weyl_json(*v.witness);
    return j;
}

Json cmd_moduli_losev_manin(const Options& o)
{
    if (o.r == 0) throw DomainError("invalid_rank", "--r must be positive");
    RootDatum rd = make_preset("PGL" + std::to_string(o.r + 1));
    StackyFan fan = canonical_fan(rd);
    Json out = Json::array();
    if (!o.blocks.empty()) {
        Json jb = parse_json_arg(o.blocks, "--blocks");
        LabelDistribution blocks;
        try {
            blocks = jb.get<LabelDistribution>();
        } catch (const Json::exception&) {
            throw DomainError("malformed_json", "--blocks must be a list of label lists");
        }
        out.push_back(lm_record(o.r, blocks, rd, fan));
    } else if (o.enumerate) {
        for (std::size_t k = 1; k <= o.r + 1; ++k)
            for (const auto& blocks : ordered_set_partitions(o.r + 1, k)) out.push_back(lm_record(o.r, blocks, rd, fan));
    } else {
        throw DomainError("missing_argument", "pass --blocks or --enumerate");
    }
    return {{"r", o.r}, {"rootdata", rd.name}, {"chains", out}};
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"chamberforge: exact combinatorics of framed bundle chains"};
    app.require_subcommand(1);
    Options o;

    auto add_rd = [&](CLI::App* c) {
        c->add_option("--preset", o.preset, "Root datum preset (e.g. A2-adjoint, SL3, GL2, G2)");
        c->add_option("--rootdata", o.rootdata_file, "Root datum JSON file");
    };
    auto add_fan = [&](CLI::App* c) {
        c->add_option("--fan", o.fan_file, "Fan JSON file");
        c->add_flag("--canonical", o.canonical, "Use the canonical fan of the root datum");
        c->add_option("--kgl", o.kgl, "Use the KGL_r fan");
        c->add_flag("--raw-cones", o.raw_cones, "Do not close the fan's cones under faces");
    };
    auto add_common = [&](CLI::App* c) {
        c->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text", "dot"}));
        c->add_option("--weyl-cap", o.weyl_cap, "Weyl enumeration cap");
    };

    std::function<Json()> run;
    std::function<int()> run_raw;
    auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& desc, auto fn) {
        CLI::App* c = parent->add_subcommand(name, desc);
        add_common(c);
        c->callback([&run, fn] { run = [fn] { return fn(); }; });
        return c;
    };
    auto bind = [&o](Json (*f)(const Options&)) { return [f, &o] { return f(o); }; };

    auto* rootdata = app.add_subcommand("rootdata", "Root data")->require_subcommand(1);
    add_rd(leaf(rootdata, "show", "Print a root datum and derived data", bind(cmd_rootdata_show)));

    auto* fan = app.add_subcommand("fan", "Stacky fans")->require_subcommand(1);
    auto* fv = leaf(fan, "validate", "Validate a fan", bind(cmd_fan_validate));
    add_rd(fv);
    add_fan(fv);
    auto* fw = leaf(fan, "weyl", "Weyl translates of a chamber-supported fan", bind(cmd_fan_weyl));
    add_rd(fw);
    add_fan(fw);
    auto* fnorm = leaf(fan, "normal", "Normal-fan certificate", bind(cmd_fan_normal));
    add_rd(fnorm);
    add_fan(fnorm);

    auto add_classify = [&](CLI::App* parent) {
        auto* c = leaf(parent, "classify", "Sigma-stability of a splitting type", bind(cmd_stability));
        add_rd(c);
        add_fan(c);
        c->add_option("--type", o.type, "Splitting type as JSON, e.g. [[1,0],[1,1]]")->required();
    };
    add_classify(app.add_subcommand("stability", "Sigma-stability")->require_subcommand(1));

    auto* coh = leaf(&app, "cohomology", "Invariant cohomology on chains", bind(cmd_cohomology));
    add_rd(coh);
    coh->add_option("--weights", o.weights, "Line bundle weights as JSON, e.g. [0,1,1,0]");
    coh->add_option("--type", o.type, "Splitting type for the adjoint bundle");

    auto* aut = leaf(&app, "aut", "Automorphism group shape", bind(cmd_aut));
    add_rd(aut);
    aut->add_option("--type", o.type, "Splitting type as JSON")->required();

    auto* vin = app.add_subcommand("vinberg", "Vinberg monoid faces and orbits")->require_subcommand(1);
    add_rd(leaf(vin, "faces", "Essential faces", bind(cmd_vinberg_faces)));
    auto* vg = leaf(vin, "git", "GIT status of orbits", bind(cmd_vinberg_git));
    add_rd(vg);
    vg->add_option("--rho", o.rho, "Interior dominant character, e.g. [1,1]");
    vg->add_option("--I", o.I, "Node set I as JSON (0-based)");
    vg->add_option("--J", o.J, "Node set J as JSON (0-based)");

    auto* cox = app.add_subcommand("cox", "Cox construction")->require_subcommand(1);
    auto* cc = leaf(cox, "classify", "Classify all strata", bind(cmd_cox_classify));
    add_rd(cc);
    add_fan(cc);
    cc->add_option("--rho", o.rho, "Interior dominant character");
    auto* cd = leaf(cox, "destabilize", "Destabilizing cocharacter for a node", bind(cmd_cox_destabilize));
    add_rd(cd);
    add_fan(cd);
    cd->add_option("--node", o.node, "Node index (0-based)")->required();
    cd->add_option("--H", o.H, "Ray set H as JSON (0-based)");

    auto* mod = app.add_subcommand("moduli", "Moduli presets")->require_subcommand(1);
    add_classify(mod);
    auto* mo = mod->add_subcommand("orbits", "Orbit poset");
    add_common(mo);
    add_rd(mo);
    add_fan(mo);
    mo->add_option("--dot", o.dot_file, "Also write DOT to this file");
    mo->callback([&] { run_raw = [&o] { return cmd_moduli_orbits(o); }; });
    auto* mk = leaf(mod, "kgl", "The KGL_r fan with bundle labels", bind(cmd_moduli_kgl));
    mk->add_option("--r", o.r, "Rank")->required();
    auto* ml = leaf(mod, "losev-manin", "Marked chains to splitting types", bind(cmd_moduli_losev_manin));
    ml->add_option("--r", o.r, "PGL_{r+1}")->required();
    ml->add_flag("--enumerate", o.enumerate, "All ordered partitions of the labels");
    ml->add_option("--blocks", o.blocks, "Labels per component from p_+, e.g. [[0],[1,2]]");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (o.weyl_cap) setenv("CHAMBERFORGE_WEYL_CAP", std::to_string(o.weyl_cap).c_str(), 1);
        if (run_raw) return run_raw();
        if (o.format == "dot") throw DomainError("unsupported_format", "dot output is only available for moduli orbits");
        emit(o, run());
        return 0;
    } catch (const DomainError& e) {
        std::cerr << Json{{"error", e.code()}, {"message", e.what()}}.dump() << "\n";
        return 1;
    }
}
