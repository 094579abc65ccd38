#include "chamberforge/rootdata.hpp"

#include "chamberforge/latcone.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <mutex>
#include <set>

namespace chamberforge {

struct RootDatum::Cache {
    std::once_flag roots_once;
    std::vector<IntVector> roots;
    std::once_flag weyl_once;
    std::vector<WeylElement> weyl;
};

RootDatum::RootDatum() : cache_(std::make_shared<Cache>()) {}

// ---------------------------------------------------------------------------
// WeylElement

RatVector WeylElement::apply(const RatVector& lambda) const
{
    RatVector out(matrix.size(), Rational(0));
    for (std::size_t a = 0; a < matrix.size(); ++a) {
        require_dim(matrix[a].size(), lambda.size());
        for (std::size_t b = 0; b < lambda.size(); ++b) out[a] += matrix[a][b] * lambda[b];
    }
    return out;
}

IntVector WeylElement::apply(const IntVector& lambda) const
{
    IntVector out(matrix.size(), Integer(0));
    for (std::size_t a = 0; a < matrix.size(); ++a) {
        require_dim(matrix[a].size(), lambda.size());
        for (std::size_t b = 0; b < lambda.size(); ++b) out[a] += matrix[a][b] * lambda[b];
    }
    return out;
}

bool WeylElement::is_identity() const
{
    for (std::size_t a = 0; a < matrix.size(); ++a)
        for (std::size_t b = 0; b < matrix[a].size(); ++b)
            if (matrix[a][b] != (a == b ? 1 : 0)) return false;
    return true;
}

std::string WeylElement::word_string() const
{
    if (word.empty()) return "e";
    std::string s;
    for (std::size_t k = 0; k < word.size(); ++k) {
        if (k) s += " ";
        s += "s" + std::to_string(word[k] + 1);
    }
    return s;
}

// ---------------------------------------------------------------------------
// Pairings

Rational pairing(const RatVector& chi, const RatVector& lambda) { return dot(chi, lambda); }
Rational pairing(const IntVector& chi, const RatVector& lambda) { return dot(chi, lambda); }
Integer pairing(const IntVector& chi, const IntVector& lambda) { return dot(chi, lambda); }

std::size_t default_weyl_cap()
{
    if (const char* env = std::getenv("CHAMBERFORGE_WEYL_CAP")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return 2000;
}

// ---------------------------------------------------------------------------
// RootDatum

IntMatrix RootDatum::cartan_matrix() const
{
    const std::size_t n = num_nodes();
    IntMatrix a(n, IntVector(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = dot(simple_roots[i], simple_coroots[j]);
    return a;
}

void RootDatum::derive_secondary_data()
{
    cache_ = std::make_shared<Cache>();
    const std::size_t n = num_nodes();
    IntMatrix a = cartan_matrix();
    dynkin_edges.clear();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (a[i][j] != 0 || a[j][i] != 0) dynkin_edges.emplace_back(i, j);
    weyl_invariant_characters.clear();
    for (auto& v : nullspace(to_rational(simple_coroots), rank))
        weyl_invariant_characters.push_back(to_rational(primitive(v)));
}

void RootDatum::validate() const
{
    auto fail = [this](const std::string& what) {
        throw DomainError("invalid_root_datum", "root datum '" + name + "': " + what);
    };
    if (rank == 0) fail("rank must be positive");
    const std::size_t n = num_nodes();
    if (simple_coroots.size() != n || fundamental_weights.size() != n ||
        fundamental_coweights.size() != n)
        fail("simple roots, coroots and fundamental (co)weights must have one entry per node");
    for (std::size_t i = 0; i < n; ++i) {
        if (simple_roots[i].size() != rank || simple_coroots[i].size() != rank ||
            fundamental_weights[i].size() != rank || fundamental_coweights[i].size() != rank)
            fail("vector of wrong length");
    }
    IntMatrix a = cartan_matrix();
    std::set<std::pair<std::size_t, std::size_t>> edges;
    for (auto [i, j] : dynkin_edges) edges.insert({std::min(i, j), std::max(i, j)});
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i][i] != 2) fail("<alpha_i, alpha_i^vee> != 2");
        for (std::size_t j = 0; j < n; ++j) {
            if (pairing(fundamental_weights[i], to_rational(simple_coroots[j])) != (i == j ? 1 : 0))
                fail("fundamental weights are not dual to the coroots");
            if (pairing(simple_roots[i], fundamental_coweights[j]) != (i == j ? 1 : 0))
                fail("fundamental coweights are not dual to the roots");
            if (i == j) continue;
            if (a[i][j] > 0) fail("positive off-diagonal Cartan entry");
            if ((a[i][j] == 0) != (a[j][i] == 0)) fail("Cartan zero pattern is not symmetric");
            bool edge = edges.count({std::min(i, j), std::max(i, j)}) > 0;
            if (edge != (a[i][j] != 0)) fail("dynkin_edges do not match the Cartan matrix");
        }
    }
    if (!independent(to_rational(simple_roots), rank)) fail("simple roots are dependent");
    for (const auto& z : weyl_invariant_characters) {
        if (z.size() != rank) fail("invariant character of wrong length");
        for (std::size_t i = 0; i < n; ++i)
            if (dot(z, simple_coroots[i]) != 0) fail("invariant character moved by a reflection");
    }
    if (weyl_invariant_characters.size() != rank - n)
        fail("invariant characters must span the W-fixed subspace");
}

IntMatrix RootDatum::reflection_matrix(std::size_t i) const
{
    IntMatrix s(rank, IntVector(rank, Integer(0)));
    for (std::size_t a = 0; a < rank; ++a)
        for (std::size_t b = 0; b < rank; ++b)
            s[a][b] = (a == b ? 1 : 0) - simple_coroots[i][a] * simple_roots[i][b];
    return s;
}

RatVector RootDatum::reflect_cocharacter(std::size_t i, const RatVector& lambda) const
{
    Rational c = dot(simple_roots[i], lambda);
    return sub(lambda, scale(c, to_rational(simple_coroots[i])));
}

IntVector RootDatum::reflect_character(std::size_t i, const IntVector& chi) const
{
    Integer c = dot(chi, simple_coroots[i]);
    return sub(chi, scale(c, simple_roots[i]));
}

const std::vector<IntVector>& RootDatum::roots() const
{
    std::call_once(cache_->roots_once, [this] {
        std::set<IntVector> seen;
        std::deque<IntVector> queue;
        for (const auto& a : simple_roots)
            if (seen.insert(a).second) queue.push_back(a);
        while (!queue.empty()) {
            IntVector v = queue.front();
            queue.pop_front();
            for (std::size_t i = 0; i < num_nodes(); ++i) {
                IntVector u = reflect_character(i, v);
                if (seen.insert(u).second) queue.push_back(u);
            }
        }
        // height in the simple-root basis decides the sign
        RatMatrix cols = transpose(to_rational(simple_roots), rank);
        std::vector<std::pair<Rational, IntVector>> keyed;
        for (const auto& v : seen) {
            auto c = solve(cols, num_nodes(), to_rational(v));
            Rational h = 0;
            for (const auto& x : *c) h += x;
            keyed.emplace_back(h, v);
        }
        std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) {
            bool xn = x.first < 0, yn = y.first < 0;
            if (xn != yn) return !xn;
            Rational ax = abs(x.first), ay = abs(y.first);
            if (ax != ay) return ax < ay;
            return x.second < y.second;
        });
        for (auto& [h, v] : keyed) cache_->roots.push_back(v);
    });
    return cache_->roots;
}

const std::vector<WeylElement>& RootDatum::weyl_group() const
{
    std::call_once(cache_->weyl_once,
                   [this] { cache_->weyl = weyl_group_elements(*this, default_weyl_cap()); });
    return cache_->weyl;
}

bool RootDatum::is_dominant(const RatVector& lambda) const
{
    for (const auto& a : simple_roots)
        if (dot(a, lambda) < 0) return false;
    return true;
}

bool RootDatum::is_dominant(const IntVector& lambda) const
{
    for (const auto& a : simple_roots)
        if (dot(a, lambda) < 0) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Weyl group

std::vector<WeylElement> weyl_group_elements(const RootDatum& rd, std::size_t cap)
{
    std::vector<IntMatrix> gens;
    for (std::size_t i = 0; i < rd.num_nodes(); ++i) gens.push_back(rd.reflection_matrix(i));

    WeylElement id;
    id.matrix.assign(rd.rank, IntVector(rd.rank, Integer(0)));
    for (std::size_t a = 0; a < rd.rank; ++a) id.matrix[a][a] = 1;

    std::vector<WeylElement> out{id};
    std::set<IntMatrix> seen{id.matrix};
    for (std::size_t head = 0; head < out.size(); ++head) {
        for (std::size_t i = 0; i < gens.size(); ++i) {
            IntMatrix m = mat_mul(out[head].matrix, gens[i], rd.rank);
            if (!seen.insert(m).second) continue;
            if (out.size() >= cap) throw WeylCapExceeded(cap, out.size());
            WeylElement w;
            w.word = out[head].word;
            w.word.push_back(i);
            w.matrix = std::move(m);
            out.push_back(std::move(w));
        }
    }
    return out;
}

std::pair<WeylElement, RatVector> dominant_representative(const RootDatum& rd, const RatVector& lambda)
{
    require_dim(rd.rank, lambda.size());
    WeylElement w;
    w.matrix.assign(rd.rank, IntVector(rd.rank, Integer(0)));
    for (std::size_t a = 0; a < rd.rank; ++a) w.matrix[a][a] = 1;
    RatVector cur = lambda;
    while (true) {
        std::size_t i = 0;
        while (i < rd.num_nodes() && dot(rd.simple_roots[i], cur) >= 0) ++i;
        if (i == rd.num_nodes()) break;
        cur = rd.reflect_cocharacter(i, cur);
        w.matrix = mat_mul(rd.reflection_matrix(i), w.matrix, rd.rank);
        w.word.insert(w.word.begin(), i);
    }
    return {std::move(w), std::move(cur)};
}

std::optional<WeylElement> common_chamber(const RootDatum& rd, const std::vector<RatVector>& beta)
{
    for (const auto& b : beta) require_dim(rd.rank, b.size());
    for (const auto& w : rd.weyl_group()) {
        bool ok = true;
        for (const auto& b : beta)
            if (!rd.is_dominant(w.apply(b))) {
                ok = false;
                break;
            }
        if (ok) return w;
    }
    return std::nullopt;
}

std::optional<WeylElement> common_chamber(const RootDatum& rd, const std::vector<IntVector>& beta)
{
    return common_chamber(rd, to_rational(beta));
}

bool has_common_chamber_by_roots(const RootDatum& rd, const std::vector<RatVector>& beta)
{
    for (const auto& a : rd.roots()) {
        bool pos = false, neg = false;
        for (const auto& b : beta) {
            Rational v = dot(a, b);
            if (v > 0) pos = true;
            if (v < 0) neg = true;
        }
        if (pos && neg) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Presets

IntMatrix cartan_matrix_of_type(char type, std::size_t r)
{
    IntMatrix a(r, IntVector(r, Integer(0)));
    for (std::size_t i = 0; i < r; ++i) a[i][i] = 2;
    for (std::size_t i = 0; i + 1 < r; ++i) a[i][i + 1] = a[i + 1][i] = -1;
    switch (type) {
    case 'A':
        break;
    case 'B':
        if (r < 2) throw DomainError("unknown_preset", "type B needs rank >= 2");
        a[r - 2][r - 1] = -2;
        break;
    case 'C':
        if (r < 2) throw DomainError("unknown_preset", "type C needs rank >= 2");
        a[r - 1][r - 2] = -2;
        break;
    case 'G':
        if (r != 2) throw DomainError("unknown_preset", "type G exists only in rank 2");
        a[1][0] = -3;
        break;
    default:
        throw DomainError("unknown_preset", std::string("unsupported Cartan type ") + type);
    }
    return a;
}

RootDatum from_cartan(const std::string& name, const IntMatrix& cartan, bool adjoint)
{
    const std::size_t r = cartan.size();
    RatMatrix inv = inverse(to_rational(cartan));
    RootDatum rd;
    rd.name = name;
    rd.rank = r;
    for (std::size_t i = 0; i < r; ++i) {
        IntVector e(r, Integer(0));
        e[i] = 1;
        IntVector col(r), row = cartan[i];
        RatVector inv_row = inv[i], inv_col(r);
        for (std::size_t k = 0; k < r; ++k) {
            col[k] = cartan[k][i];
            inv_col[k] = inv[k][i];
        }
        if (adjoint) {
            rd.character_basis_labels.push_back("alpha" + std::to_string(i + 1));
            rd.simple_roots.push_back(e);
            rd.simple_coroots.push_back(col);
            rd.fundamental_weights.push_back(inv_row);
            rd.fundamental_coweights.push_back(to_rational(e));
        } else {
            rd.character_basis_labels.push_back("varpi" + std::to_string(i + 1));
            rd.simple_roots.push_back(row);
            rd.simple_coroots.push_back(e);
            rd.fundamental_weights.push_back(to_rational(e));
            rd.fundamental_coweights.push_back(inv_col);
        }
    }
    rd.derive_secondary_data();
    rd.validate();
    return rd;
}

RootDatum make_gl(std::size_t r)
{
    if (r == 0) throw DomainError("unknown_preset", "GL_r needs r >= 1");
    RootDatum rd;
    rd.name = "GL" + std::to_string(r);
    rd.rank = r;
    for (std::size_t k = 0; k < r; ++k) rd.character_basis_labels.push_back("e" + std::to_string(k + 1));
    for (std::size_t i = 0; i + 1 < r; ++i) {
        IntVector a(r, Integer(0));
        a[i] = 1;
        a[i + 1] = -1;
        RatVector w(r, Rational(0));
        for (std::size_t k = 0; k <= i; ++k) w[k] = 1;
        rd.simple_roots.push_back(a);
        rd.simple_coroots.push_back(a);
        rd.fundamental_weights.push_back(w);
        rd.fundamental_coweights.push_back(w);
    }
    rd.derive_secondary_data();
    rd.validate();
    return rd;
}

namespace {

struct PresetSpec {
    char type;
    std::size_t r;
    bool adjoint;
};

const std::map<std::string, PresetSpec>& cartan_presets()
{
    static const std::map<std::string, PresetSpec> table = {
        {"A1-adjoint", {'A', 1, true}}, {"A1-sc", {'A', 1, false}},
        {"A2-adjoint", {'A', 2, true}}, {"A2-sc", {'A', 2, false}},
        {"A3-adjoint", {'A', 3, true}}, {"A3-sc", {'A', 3, false}},
        {"B2-adjoint", {'B', 2, true}}, {"B2-sc", {'B', 2, false}},
        {"B3-adjoint", {'B', 3, true}}, {"B3-sc", {'B', 3, false}},
        {"C2-adjoint", {'C', 2, true}}, {"C2-sc", {'C', 2, false}},
        {"C3-adjoint", {'C', 3, true}}, {"C3-sc", {'C', 3, false}},
        {"G2", {'G', 2, true}},
    };
    return table;
}

const std::map<std::string, std::string>& aliases()
{
    static const std::map<std::string, std::string> table = {
        {"PGL2", "A1-adjoint"}, {"PGL3", "A2-adjoint"}, {"PGL4", "A3-adjoint"},
        {"SL2", "A1-sc"},       {"SL3", "A2-sc"},       {"SL4", "A3-sc"},
        {"G2-adjoint", "G2"},   {"G2-sc", "G2"},
    };
    return table;
}

}  // namespace

RootDatum make_preset(const std::string& name)
{
    std::string key = name;
    if (auto it = aliases().find(key); it != aliases().end()) key = it->second;
    if (auto it = cartan_presets().find(key); it != cartan_presets().end()) {
        const auto& s = it->second;
        RootDatum rd = from_cartan(key, cartan_matrix_of_type(s.type, s.r), s.adjoint);
        rd.name = name;
        return rd;
    }
    if (key.size() == 3 && key.rfind("GL", 0) == 0 && key[2] >= '1' && key[2] <= '4')
        return make_gl(static_cast<std::size_t>(key[2] - '0'));
    throw DomainError("unknown_preset", "unknown preset '" + name + "'");
}

std::vector<std::string> preset_names()
{
    std::vector<std::string> out;
    for (const auto& [k, v] : cartan_presets()) out.push_back(k);
    for (const auto& [k, v] : aliases()) out.push_back(k);
    for (int r = 1; r <= 4; ++r) out.push_back("GL" + std::to_string(r));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace chamberforge
