#include "chamberforge/fans.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

namespace chamberforge {

// ---------------------------------------------------------------------------
// StackyFan

void sort_cones(std::vector<ConeIndex>& cones)
{
    for (auto& c : cones) std::sort(c.begin(), c.end());
    std::sort(cones.begin(), cones.end(), [](const ConeIndex& a, const ConeIndex& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    cones.erase(std::unique(cones.begin(), cones.end()), cones.end());
}

StackyFan StackyFan::from_cones(std::size_t rank, std::vector<IntVector> rays,
                                const std::vector<ConeIndex>& cones)
{
    StackyFan f;
    f.rank = rank;
    f.rays = std::move(rays);
    std::set<ConeIndex> all;
    for (auto c : cones) {
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
        const std::size_t k = c.size();
        if (k >= 8 * sizeof(unsigned long))
            throw DomainError("invalid_fan", "cone with too many rays");
        for (unsigned long mask = 0; mask < (1UL << k); ++mask) {
            ConeIndex face;
            for (std::size_t b = 0; b < k; ++b)
                if (mask & (1UL << b)) face.push_back(c[b]);
            all.insert(face);
        }
    }
    all.insert(ConeIndex{});
    f.cones.assign(all.begin(), all.end());
    sort_cones(f.cones);
    return f;
}

StackyFan StackyFan::single_cone(std::size_t rank, std::vector<IntVector> rays)
{
    ConeIndex c(rays.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = i;
    return from_cones(rank, std::move(rays), {c});
}

namespace {

bool is_subset(const ConeIndex& a, const ConeIndex& b)
{
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

ConeIndex without(const ConeIndex& c, std::size_t pos)
{
    ConeIndex out;
    for (std::size_t k = 0; k < c.size(); ++k)
        if (k != pos) out.push_back(c[k]);
    return out;
}

}  // namespace

std::vector<ConeIndex> StackyFan::maximal_cones() const
{
    std::vector<ConeIndex> out;
    for (const auto& c : cones) {
        bool maximal = true;
        for (const auto& d : cones)
            if (d.size() > c.size() && is_subset(c, d)) {
                maximal = false;
                break;
            }
        if (maximal) out.push_back(c);
    }
    return out;
}

bool StackyFan::has_cone(const ConeIndex& c) const
{
    ConeIndex s = c;
    std::sort(s.begin(), s.end());
    return std::find(cones.begin(), cones.end(), s) != cones.end();
}

std::size_t StackyFan::dimension() const
{
    std::size_t d = 0;
    for (const auto& c : cones) d = std::max(d, c.size());
    return d;
}

std::vector<IntVector> StackyFan::generators(const ConeIndex& c) const
{
    std::vector<IntVector> out;
    for (auto i : c) out.push_back(rays.at(i));
    return out;
}

RationalCone StackyFan::as_cone(const ConeIndex& c) const
{
    RationalCone out;
    out.ambient_dim = rank;
    for (auto i : c) out.generators.push_back(to_rational(rays.at(i)));
    return out;
}

std::vector<std::size_t> StackyFan::cone_count_by_dimension() const
{
    std::vector<std::size_t> hist(dimension() + 1, 0);
    for (const auto& c : cones) ++hist[c.size()];
    return hist;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

std::string cone_str(const ConeIndex& c)
{
    std::string s = "{";
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (k) s += ",";
        s += std::to_string(c[k]);
    }
    return s + "}";
}

// A point of sigma and tau whose sigma-coordinates leave the common face.
std::optional<RatVector> bad_intersection(const StackyFan& fan, const ConeIndex& s, const ConeIndex& t)
{
    for (int side = 0; side < 2; ++side) {
        const ConeIndex& a = side == 0 ? s : t;
        const ConeIndex& b = side == 0 ? t : s;
        const std::size_t na = a.size(), nb = b.size();
        FeasibilityProblem lp;
        lp.num_vars = na + nb;
        lp.nonneg.assign(na + nb, true);
        for (std::size_t c = 0; c < fan.rank; ++c) {
            RatVector row(na + nb, Rational(0));
            for (std::size_t k = 0; k < na; ++k) row[k] = fan.rays[a[k]][c];
            for (std::size_t k = 0; k < nb; ++k) row[na + k] = -fan.rays[b[k]][c];
            lp.add(std::move(row), Sense::eq, 0);
        }
        RatVector outside(na + nb, Rational(0));
        bool any = false;
        for (std::size_t k = 0; k < na; ++k)
            if (!std::binary_search(b.begin(), b.end(), a[k])) {
                outside[k] = 1;
                any = true;
            }
        if (!any) continue;
        lp.add(std::move(outside), Sense::ge, 1);
        auto res = solve_feasibility(lp);
        if (res.feasible) {
            RatVector x(fan.rank, Rational(0));
            for (std::size_t k = 0; k < na; ++k)
                x = add(x, scale(res.point[k], to_rational(fan.rays[a[k]])));
            return x;
        }
    }
    return std::nullopt;
}

}  // namespace

bool chamber_supported(const RootDatum& rd, const StackyFan& fan)
{
    if (fan.rank != rd.rank) return false;
    for (const auto& r : fan.rays)
        if (r.size() != rd.rank || !rd.is_dominant(r)) return false;
    return true;
}

ValidationReport validate(const StackyFan& fan)
{
    ValidationReport rep;
    auto flag = [&rep](std::string kind, std::string detail, std::vector<ConeIndex> cones = {},
                       RatVector witness = {}) {
        rep.valid = false;
        rep.violations.push_back({std::move(kind), std::move(detail), std::move(cones), std::move(witness)});
    };

    if (fan.rank == 0) flag("dimension_mismatch", "fan rank must be positive");
    for (std::size_t i = 0; i < fan.rays.size(); ++i) {
        if (fan.rays[i].size() != fan.rank) {
            flag("dimension_mismatch", "ray " + std::to_string(i) + " has length " +
                                           std::to_string(fan.rays[i].size()));
        } else if (is_zero(fan.rays[i])) {
            flag("zero_ray", "ray " + std::to_string(i) + " is zero");
        }
    }
    for (const auto& c : fan.cones) {
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (c[k] >= fan.rays.size())
                flag("index_out_of_range", "cone " + cone_str(c) + " refers to a missing ray", {c});
            else if (k > 0 && c[k] <= c[k - 1])
                flag("unsorted_cone", "cone " + cone_str(c) + " is not a strictly increasing index set", {c});
        }
    }
    if (!rep.valid) return rep;

    for (std::size_t i = 0; i < fan.rays.size(); ++i)
        for (std::size_t j = i + 1; j < fan.rays.size(); ++j) {
            RatMatrix m{to_rational(fan.rays[i]), to_rational(fan.rays[j])};
            if (rank(m, fan.rank) == 1 && dot(fan.rays[i], fan.rays[j]) > 0)
                flag("duplicate_ray", "rays " + std::to_string(i) + " and " + std::to_string(j) +
                                          " span the same ray",
                     {ConeIndex{i}, ConeIndex{j}}, to_rational(fan.rays[j]));
        }

    std::vector<bool> used(fan.rays.size(), false);
    for (const auto& c : fan.cones)
        for (auto i : c) used[i] = true;
    for (std::size_t i = 0; i < fan.rays.size(); ++i)
        if (!used[i]) flag("unused_ray", "ray " + std::to_string(i) + " belongs to no cone");

    bool simplicial = true;
    for (const auto& c : fan.cones)
        if (!independent(to_rational(fan.generators(c)), fan.rank)) {
            simplicial = false;
            flag("not_simplicial", "cone " + cone_str(c) + " has dependent generators", {c});
        }

    if (!fan.has_cone({})) flag("not_face_closed", "the zero cone is missing");
    for (const auto& c : fan.cones)
        for (std::size_t k = 0; k < c.size(); ++k) {
            ConeIndex f = without(c, k);
            if (!fan.has_cone(f))
                flag("not_face_closed", "face " + cone_str(f) + " of cone " + cone_str(c) + " is missing",
                     {c, f});
        }

    if (simplicial) {
        auto maxc = fan.maximal_cones();
        for (std::size_t a = 0; a < maxc.size(); ++a)
            for (std::size_t b = a + 1; b < maxc.size(); ++b)
                if (auto x = bad_intersection(fan, maxc[a], maxc[b]))
                    flag("bad_intersection",
                         "cones " + cone_str(maxc[a]) + " and " + cone_str(maxc[b]) +
                             " meet outside a common face",
                         {maxc[a], maxc[b]}, *x);
    }
    return rep;
}

ValidationReport validate(const StackyFan& fan, const RootDatum& rd)
{
    ValidationReport rep = validate(fan);
    if (fan.rank != rd.rank) {
        rep.valid = false;
        rep.violations.push_back({"dimension_mismatch", "fan rank differs from root datum rank", {}, {}});
        return rep;
    }
    rep.chamber_supported = rep.valid && chamber_supported(rd, fan);
    return rep;
}

void require_valid(const StackyFan& fan)
{
    auto rep = validate(fan);
    if (!rep.valid) throw DomainError("invalid_fan", "invalid fan: " + rep.violations.front().detail);
}

// ---------------------------------------------------------------------------
// Weyl fan

StackyFan weyl_fan(const RootDatum& rd, const StackyFan& fan)
{
    require_valid(fan);
    if (!chamber_supported(rd, fan))
        throw DomainError("not_chamber_supported", "weyl_fan needs a fan inside the positive chamber");

    std::vector<const WeylElement*> order;
    for (const auto& w : rd.weyl_group()) order.push_back(&w);
    std::sort(order.begin(), order.end(),
              [](const WeylElement* a, const WeylElement* b) { return a->matrix < b->matrix; });

    std::vector<IntVector> rays = fan.rays;
    std::map<IntVector, std::size_t> index;
    for (std::size_t i = 0; i < rays.size(); ++i) index.emplace(rays[i], i);
    // image[w][i] = index of w beta_i
    std::vector<std::vector<std::size_t>> image(order.size(), std::vector<std::size_t>(fan.rays.size()));
    for (std::size_t i = 0; i < fan.rays.size(); ++i)
        for (std::size_t a = 0; a < order.size(); ++a) {
            IntVector v = order[a]->apply(fan.rays[i]);
            auto [it, fresh] = index.emplace(v, rays.size());
            if (fresh) rays.push_back(v);
            image[a][i] = it->second;
        }

    std::vector<ConeIndex> cones;
    for (std::size_t a = 0; a < order.size(); ++a)
        for (const auto& c : fan.cones) {
            ConeIndex wc;
            for (auto i : c) wc.push_back(image[a][i]);
            cones.push_back(std::move(wc));
        }
    sort_cones(cones);
    StackyFan out;
    out.rank = fan.rank;
    out.rays = std::move(rays);
    out.cones = std::move(cones);
    return out;
}

// ---------------------------------------------------------------------------
// Support predicates

bool support_equals_chamber(const RootDatum& rd, const StackyFan& fan)
{
    if (!chamber_supported(rd, fan)) return false;
    auto maxc = fan.maximal_cones();
    for (const auto& c : maxc)
        if (c.size() != fan.rank) return false;
    if (maxc.empty()) return false;

    std::map<ConeIndex, int> facets;
    for (const auto& c : maxc)
        for (std::size_t k = 0; k < c.size(); ++k) ++facets[without(c, k)];
    for (const auto& [f, count] : facets) {
        if (count == 2) continue;
        if (count > 2) return false;
        bool in_wall = false;
        for (const auto& a : rd.simple_roots) {
            bool all_zero = true;
            for (auto j : f)
                if (dot(a, fan.rays[j]) != 0) {
                    all_zero = false;
                    break;
                }
            if (all_zero) {
                in_wall = true;
                break;
            }
        }
        if (!in_wall) return false;
    }
    return true;
}

bool in_support(const StackyFan& fan, const RatVector& x)
{
    require_dim(fan.rank, x.size());
    if (is_zero(x)) return true;
    for (const auto& c : fan.maximal_cones())
        if (!c.empty() && cone_member(fan.as_cone(c), x)) return true;
    return false;
}

ConvexityReport support_convexity(const StackyFan& fan)
{
    ConvexityReport rep;
    auto maxc = fan.maximal_cones();
    const std::size_t d = fan.dimension();
    for (const auto& c : maxc)
        if (c.size() != d) {
            rep.reason = "fan is not pure";
            return rep;
        }
    if (d == 0) {
        rep.convex = true;
        return rep;
    }

    std::map<ConeIndex, int> facets;
    for (const auto& c : maxc)
        for (std::size_t k = 0; k < c.size(); ++k) ++facets[without(c, k)];

    for (const auto& c : maxc) {
        RatMatrix cols = transpose(to_rational(fan.generators(c)), fan.rank);
        std::vector<RatVector> coeffs;
        for (const auto& r : fan.rays) {
            auto x = solve(cols, c.size(), to_rational(r));
            if (!x) {
                rep.reason = "rays span more than the dimension of the fan";
                rep.witness = to_rational(r);
                return rep;
            }
            coeffs.push_back(std::move(*x));
        }
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (facets[without(c, k)] != 1) continue;
            for (std::size_t j = 0; j < fan.rays.size(); ++j)
                if (coeffs[j][k] < 0) {
                    rep.reason = "ray " + std::to_string(j) + " lies beyond a boundary facet of cone " +
                                 cone_str(c);
                    rep.witness = to_rational(fan.rays[j]);
                    return rep;
                }
        }
    }
    rep.convex = true;
    return rep;
}

// ---------------------------------------------------------------------------
// Normal fans

const char* to_string(NormalFanStatus s)
{
    switch (s) {
    case NormalFanStatus::certified: return "certified";
    case NormalFanStatus::not_normal: return "not_normal";
    case NormalFanStatus::non_convex_support: return "non_convex_support";
    }
    return "?";
}

Rational NormalFanReport::value_at_ray(const StackyFan& fan, std::size_t j) const
{
    for (std::size_t a = 0; a < maximal_cones.size(); ++a)
        if (std::binary_search(maximal_cones[a].begin(), maximal_cones[a].end(), j))
            return dot(functionals[a], fan.rays[j]);
    throw DomainError("invalid_fan", "ray " + std::to_string(j) + " is in no maximal cone");
}

NormalFanReport is_normal_fan(const StackyFan& fan)
{
    require_valid(fan);
    NormalFanReport rep;
    rep.maximal_cones = fan.maximal_cones();
    auto conv = support_convexity(fan);
    if (!conv.convex) {
        rep.status = NormalFanStatus::non_convex_support;
        rep.detail = conv.reason;
        return rep;
    }

    const auto& M = rep.maximal_cones;
    const std::size_t r = fan.rank, m = M.size();
    std::vector<std::size_t> home(fan.rays.size(), m);
    for (std::size_t a = 0; a < m; ++a)
        for (auto j : M[a])
            if (home[j] == m) home[j] = a;

    FeasibilityProblem lp;
    lp.num_vars = m * r;
    auto row_for = [&](std::size_t plus, std::size_t minus, std::size_t j) {
        RatVector row(m * r, Rational(0));
        for (std::size_t c = 0; c < r; ++c) {
            row[plus * r + c] += fan.rays[j][c];
            row[minus * r + c] -= fan.rays[j][c];
        }
        return row;
    };
    for (std::size_t a = 0; a < m; ++a)
        for (auto j : M[a])
            if (home[j] != a) lp.add(row_for(home[j], a, j), Sense::eq, 0);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t j = 0; j < fan.rays.size(); ++j)
            if (!std::binary_search(M[a].begin(), M[a].end(), j))
                lp.add(row_for(home[j], a, j), Sense::ge, 1);

    auto res = solve_feasibility(lp);
    if (!res.feasible) {
        rep.status = NormalFanStatus::not_normal;
        rep.detail = "no strictly convex piecewise-linear function exists";
        return rep;
    }
    rep.status = NormalFanStatus::certified;
    for (std::size_t a = 0; a < m; ++a)
        rep.functionals.emplace_back(res.point.begin() + static_cast<long>(a * r),
                                     res.point.begin() + static_cast<long>((a + 1) * r));
    if (!verify_normal_certificate(fan, rep))
        throw std::logic_error("normal-fan certificate failed re-verification");
    return rep;
}

bool verify_normal_certificate(const StackyFan& fan, const NormalFanReport& rep)
{
    if (rep.status != NormalFanStatus::certified) return false;
    const auto& M = rep.maximal_cones;
    if (rep.functionals.size() != M.size()) return false;
    for (std::size_t a = 0; a < M.size(); ++a)
        for (std::size_t b = a + 1; b < M.size(); ++b)
            for (auto j : M[a])
                if (std::binary_search(M[b].begin(), M[b].end(), j) &&
                    dot(rep.functionals[a], fan.rays[j]) != dot(rep.functionals[b], fan.rays[j]))
                    return false;
    for (std::size_t a = 0; a < M.size(); ++a)
        for (std::size_t j = 0; j < fan.rays.size(); ++j)
            if (!std::binary_search(M[a].begin(), M[a].end(), j) &&
                !(rep.value_at_ray(fan, j) > dot(rep.functionals[a], fan.rays[j])))
                return false;
    return true;
}

// ---------------------------------------------------------------------------
// Wall projections

RatVector wall_projection(const RootDatum& rd, std::size_t i, const RatVector& x)
{
    Rational c = dot(rd.simple_roots.at(i), x) / 2;
    return sub(x, scale(c, to_rational(rd.simple_coroots[i])));
}

ProjectionReport projection_closure_check(const RootDatum& rd, const StackyFan& fan, std::size_t samples,
                                          unsigned seed)
{
    ProjectionReport rep;
    rep.weyl_support_convex = support_convexity(weyl_fan(rd, fan)).convex;

    std::vector<RatVector> points;
    for (const auto& r : fan.rays) points.push_back(to_rational(r));
    auto maxc = fan.maximal_cones();
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> num(0, 6), den(1, 4);
    for (std::size_t s = 0; s < samples && !maxc.empty(); ++s) {
        const auto& c = maxc[rng() % maxc.size()];
        RatVector x(fan.rank, Rational(0));
        for (auto j : c) x = add(x, scale(Rational(num(rng)) / den(rng), to_rational(fan.rays[j])));
        points.push_back(std::move(x));
    }

    for (const auto& x : points) {
        ++rep.points_checked;
        for (std::size_t i = 0; i < rd.num_nodes(); ++i) {
            RatVector p = wall_projection(rd, i, x);
            if (!in_support(fan, p)) rep.violations.push_back({i, x, p});
        }
    }
    return rep;
}

}  // namespace chamberforge
