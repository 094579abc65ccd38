#include "chamberforge/coxvinberg.hpp"

#include <algorithm>

namespace chamberforge {

namespace {

bool contains(const std::vector<std::size_t>& s, std::size_t i)
{
    return std::binary_search(s.begin(), s.end(), i);
}

RaySet complement(const RaySet& H, std::size_t n)
{
    RaySet out;
    for (std::size_t j = 0; j < n; ++j)
        if (!contains(H, j)) out.push_back(j);
    return out;
}

void check_rays(const StackyFan& fan, const RaySet& H)
{
    for (std::size_t k = 0; k < H.size(); ++k) {
        if (H[k] >= fan.rays.size())
            throw DomainError("invalid_ray_set", "ray index " + std::to_string(H[k]) + " out of range");
        if (k > 0 && H[k] <= H[k - 1])
            throw DomainError("invalid_ray_set", "ray sets must be strictly increasing");
    }
}

// sum_j ell_j beta_j
RatVector combine(const StackyFan& fan, const RatVector& ell)
{
    RatVector x(fan.rank, Rational(0));
    for (std::size_t j = 0; j < fan.rays.size(); ++j)
        if (ell[j] != 0) x = add(x, scale(ell[j], to_rational(fan.rays[j])));
    return x;
}

// functional f on Lambda pulled back to Q^N: ell -> f . (B^T ell)
RatVector pullback(const StackyFan& fan, const RatVector& f)
{
    RatVector row(fan.rays.size());
    for (std::size_t j = 0; j < fan.rays.size(); ++j) row[j] = dot(f, fan.rays[j]);
    return row;
}

}  // namespace

std::vector<RaySet> all_ray_subsets(std::size_t n) { return all_node_subsets(n); }

bool CoxData::admissible(const RaySet& H) const
{
    return fan.has_cone(complement(H, fan.rays.size()));
}

CoxData cox_data(const RootDatum& rd, const StackyFan& fan)
{
    require_valid(fan);
    if (fan.rank != rd.rank) throw DimensionMismatch(rd.rank, fan.rank);
    CoxData c;
    c.fan = fan;
    c.beta_matrix = fan.rays;
    auto snf = smith_normal_form(c.beta_matrix, fan.rank);
    c.kernel_rank = fan.rays.size() - snf.rank;
    for (const auto& d : snf.invariant_factors)
        if (d > 1) c.kernel_invariant_factors.push_back(d);
    c.admissible_sets = fan.cones;
    return c;
}

IntMatrix base_map_matrix(const RootDatum& rd, const StackyFan& fan)
{
    if (!chamber_supported(rd, fan))
        throw DomainError("not_chamber_supported", "the base map needs dominant ray generators");
    IntMatrix m(rd.num_nodes(), IntVector(fan.rays.size()));
    for (std::size_t i = 0; i < rd.num_nodes(); ++i)
        for (std::size_t j = 0; j < fan.rays.size(); ++j) m[i][j] = dot(rd.simple_roots[i], fan.rays[j]);
    return m;
}

NodeSet stratum_image(const RootDatum& rd, const StackyFan& fan, const RaySet& H)
{
    check_rays(fan, H);
    NodeSet I;
    for (std::size_t i = 0; i < rd.num_nodes(); ++i) {
        bool zero = true;
        for (std::size_t j = 0; j < fan.rays.size() && zero; ++j)
            if (!contains(H, j) && dot(rd.simple_roots[i], fan.rays[j]) != 0) zero = false;
        if (zero) I.push_back(i);
    }
    return I;
}

Stratum make_stratum(const RootDatum& rd, const StackyFan& fan, const RaySet& H, const NodeSet& J)
{
    Stratum s;
    s.H = H;
    s.I = stratum_image(rd, fan, H);
    s.J = J;
    s.valid = is_essential(rd, s.I, s.J);
    return s;
}

bool verify_destabilizer(const RootDatum& rd, const StackyFan& fan, std::size_t i, const RaySet& H,
                         const RatVector& ell)
{
    if (ell.size() != fan.rays.size()) return false;
    for (auto j : H)
        if (ell[j] < 0) return false;
    return combine(fan, ell) == to_rational(negate(rd.simple_coroots.at(i)));
}

DestabilizerResult destabilizer(const RootDatum& rd, const StackyFan& fan, std::size_t i, const RaySet& H)
{
    check_rays(fan, H);
    if (i >= rd.num_nodes()) throw DomainError("invalid_node", "node index out of range");
    if (contains(stratum_image(rd, fan, H), i))
        throw DomainError("precondition", "node " + std::to_string(i) + " lies in I(H)");

    const std::size_t N = fan.rays.size();
    DestabilizerResult out;

    std::size_t j = N;
    Integer a;
    for (std::size_t k = 0; k < N; ++k) {
        if (contains(H, k)) continue;
        a = dot(rd.simple_roots[i], fan.rays[k]);
        if (a > 0) {
            j = k;
            break;
        }
    }
    if (j != N) {
        RatVector p = wall_projection(rd, i, to_rational(fan.rays[j]));
        Rational f = Rational(2) / Rational(a);
        for (const auto& c : fan.maximal_cones()) {
            auto m = cone_member(fan.as_cone(c), p);
            if (!m) continue;
            RatVector ell(N, Rational(0));
            for (std::size_t k = 0; k < c.size(); ++k) ell[c[k]] += f * m.generator_coeffs[k];
            ell[j] -= f;
            if (verify_destabilizer(rd, fan, i, H, ell)) {
                out.found = true;
                out.ell = std::move(ell);
                out.method = "projection";
                out.pivot_ray = j;
                return out;
            }
        }
    }

    FeasibilityProblem lp;
    lp.num_vars = N;
    lp.nonneg.assign(N, false);
    for (auto h : H) lp.nonneg[h] = true;
    for (std::size_t c = 0; c < fan.rank; ++c) {
        RatVector row(N);
        for (std::size_t k = 0; k < N; ++k) row[k] = fan.rays[k][c];
        lp.add(std::move(row), Sense::eq, Rational(-rd.simple_coroots[i][c]));
    }
    auto res = solve_feasibility(lp);
    if (!res.feasible) {
        out.separator = res.farkas;
        return out;
    }
    if (!verify_destabilizer(rd, fan, i, H, res.point))
        throw std::logic_error("destabilizer failed re-verification");
    out.found = true;
    out.ell = res.point;
    out.method = "lp";
    out.pivot_ray = j;
    return out;
}

CoxVinbergModel prepare_cox_vinberg(const RootDatum& rd, const StackyFan& fan)
{
    auto fail = [](const std::string& what) { throw DomainError("hypothesis_failed", what); };
    CoxVinbergModel m;
    m.rd = rd;
    m.cox = cox_data(rd, fan);
    if (!chamber_supported(rd, fan)) fail("the fan is not supported in the positive chamber");
    m.normal = is_normal_fan(fan);
    if (m.normal.status != NormalFanStatus::certified)
        fail(std::string("the fan is not a normal fan (") + to_string(m.normal.status) + ")");
    if (!support_convexity(weyl_fan(rd, fan)).convex) fail("the Weyl-translated fan has non-convex support");
    m.xi.resize(fan.rays.size());
    for (std::size_t j = 0; j < fan.rays.size(); ++j) m.xi[j] = m.normal.value_at_ray(fan, j);
    return m;
}

namespace {

// ell with ell_H >= 0 and B^T ell in the dual of the first-factor cone
FeasibilityProblem limit_cone(const CoxVinbergModel& m, const Stratum& s)
{
    const StackyFan& fan = m.cox.fan;
    const std::size_t N = fan.rays.size();
    VinbergFace face = vinberg_face(m.rd, s.I, s.J);
    FeasibilityProblem lp;
    lp.num_vars = N;
    lp.nonneg.assign(N, false);
    for (auto h : s.H) lp.nonneg[h] = true;
    for (const auto& g : face.first_factor_cone.generators) lp.add(pullback(fan, g), Sense::ge, 0);
    for (const auto& z : face.first_factor_cone.lineality) lp.add(pullback(fan, z), Sense::eq, 0);
    return lp;
}

bool interior_dominant(const RootDatum& rd, const RatVector& rho)
{
    for (const auto& c : rd.simple_coroots)
        if (dot(rho, c) <= 0) return false;
    return true;
}

}  // namespace

StratumVerdict sgbeta_git_classify(const CoxVinbergModel& m, const Stratum& s, const RatVector& rho)
{
    const RootDatum& rd = m.rd;
    const StackyFan& fan = m.cox.fan;
    require_dim(rd.rank, rho.size());
    check_rays(fan, s.H);
    if (!interior_dominant(rd, rho))
        throw DomainError("hypothesis_failed", "rho must lie in the interior of the positive chamber");
    if (stratum_image(rd, fan, s.H) != s.I) throw DomainError("invalid_stratum", "I does not equal I(H)");
    if (!is_essential(rd, s.I, s.J)) throw DomainError("non_essential_pair", "stratum (I(H), J) is not essential");

    const std::size_t N = fan.rays.size();
    const RatVector rho_row = pullback(fan, rho);
    StratumVerdict v;
    v.stratum = s;

    FeasibilityProblem base = limit_cone(m, s);

    FeasibilityProblem step1 = base;
    step1.add(rho_row, Sense::le, -1);
    auto r1 = solve_feasibility(step1);
    if (r1.feasible) {
        v.status = GitStatus::unstable;
        v.witness = r1.point;
        v.witness_kind = "lp";
        // the proof's destabilizer, lifted through the splitting beta
        for (std::size_t i = 0; i < rd.num_nodes(); ++i) {
            if (contains(s.I, i) || contains(s.J, i)) continue;
            auto d = destabilizer(rd, fan, i, s.H);
            if (!d.found) continue;
            v.witness = d.ell;
            v.witness_kind = "eq_y";
            v.witness_node = i;
            break;
        }
        return v;
    }

    FeasibilityProblem neutral = base;
    neutral.add(rho_row, Sense::eq, 0);
    FeasibilityProblem step2 = neutral;
    step2.add(m.xi, Sense::le, -1);
    auto r2 = solve_feasibility(step2);
    if (r2.feasible) {
        v.status = GitStatus::unstable;
        v.witness = r2.point;
        bool in_kernel = is_zero(combine(fan, r2.point));
        v.witness_kind = in_kernel ? "toric" : "lp";
        return v;
    }

    FeasibilityProblem flat = neutral;
    flat.add(m.xi, Sense::eq, 0);
    for (std::size_t k = 0; k < N; ++k)
        for (int sign : {1, -1}) {
            FeasibilityProblem probe = flat;
            RatVector e(N, Rational(0));
            e[k] = sign;
            probe.add(std::move(e), Sense::ge, 1);
            auto r3 = solve_feasibility(probe);
            if (r3.feasible) {
                v.status = GitStatus::strictly_semistable;
                v.witness = r3.point;
                v.witness_kind = "lp";
                return v;
            }
        }
    v.status = GitStatus::stable;
    return v;
}

std::vector<StratumVerdict> classify_all_strata(const CoxVinbergModel& m, const RatVector& rho)
{
    std::vector<StratumVerdict> out;
    auto Hs = all_ray_subsets(m.cox.fan.rays.size());
    auto Js = all_node_subsets(m.rd.num_nodes());
    for (const auto& H : Hs)
        for (const auto& J : Js) {
            Stratum s = make_stratum(m.rd, m.cox.fan, H, J);
            if (!s.valid) {
                StratumVerdict v;
                v.stratum = s;
                out.push_back(std::move(v));
                continue;
            }
            out.push_back(sgbeta_git_classify(m, s, rho));
        }
    return out;
}

bool verify_stratum_witness(const CoxVinbergModel& m, const StratumVerdict& v, const RatVector& rho)
{
    const StackyFan& fan = m.cox.fan;
    const Stratum& s = v.stratum;
    if (v.status == GitStatus::stable) return v.witness.empty();
    if (v.witness.size() != fan.rays.size() || is_zero(v.witness)) return false;
    for (auto h : s.H)
        if (v.witness[h] < 0) return false;
    RatVector lambda = combine(fan, v.witness);
    VinbergFace face = vinberg_face(m.rd, s.I, s.J);
    if (!limit_exists(face, lambda)) return false;
    Rational rl = dot(rho, lambda), xl = dot(m.xi, v.witness);

    if (v.witness_kind == "eq_y") {
        std::size_t i = v.witness_node;
        if (contains(s.I, i) || contains(s.J, i)) return false;
        if (!verify_destabilizer(m.rd, fan, i, s.H, v.witness)) return false;
    }
    if (v.witness_kind == "toric" && !is_zero(lambda)) return false;
    if (v.status == GitStatus::unstable) return rl < 0 || (rl == 0 && xl < 0);
    return rl == 0 && xl == 0;
}

}  // namespace chamberforge
