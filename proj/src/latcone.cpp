#include "chamberforge/latcone.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace chamberforge {

// ---------------------------------------------------------------------------
// Dense linear algebra

std::vector<std::size_t> rref(RatMatrix& m, std::size_t cols)
{
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t p = r;
        while (p < m.size() && m[p][c] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[r], m[p]);
        Rational inv = 1 / m[r][c];
        for (auto& x : m[r]) x *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rational f = m[i][c];
            for (std::size_t j = 0; j < m[i].size(); ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::size_t rank(const RatMatrix& m, std::size_t cols)
{
    RatMatrix copy = m;
    for (const auto& row : copy) require_dim(cols, row.size());
    return rref(copy, cols).size();
}

std::size_t rank(const IntMatrix& m, std::size_t cols) { return rank(to_rational(m), cols); }

std::vector<RatVector> nullspace(const RatMatrix& m, std::size_t cols)
{
    RatMatrix copy = m;
    for (const auto& row : copy) require_dim(cols, row.size());
    auto pivots = rref(copy, cols);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<RatVector> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        RatVector v(cols, Rational(0));
        v[f] = 1;
        for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -copy[k][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<RatVector> solve(const RatMatrix& m, std::size_t cols, const RatVector& b)
{
    require_dim(m.size(), b.size());
    RatMatrix aug = m;
    for (std::size_t i = 0; i < aug.size(); ++i) {
        require_dim(cols, aug[i].size());
        aug[i].push_back(b[i]);
    }
    auto pivots = rref(aug, cols + 1);
    if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
    RatVector x(cols, Rational(0));
    for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = aug[k][cols];
    return x;
}

RatMatrix inverse(const RatMatrix& m)
{
    std::size_t n = m.size();
    RatMatrix aug(n);
    for (std::size_t i = 0; i < n; ++i) {
        require_dim(n, m[i].size());
        aug[i] = m[i];
        aug[i].resize(2 * n, Rational(0));
        aug[i][n + i] = 1;
    }
    auto pivots = rref(aug, n);
    if (pivots.size() != n) throw DomainError("singular_matrix", "matrix is singular");
    RatMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = RatVector(aug[i].begin() + n, aug[i].end());
    return out;
}

RatMatrix transpose(const RatMatrix& m, std::size_t cols)
{
    RatMatrix t(cols, RatVector(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) t[j][i] = m[i][j];
    return t;
}

RatVector mat_vec(const RatMatrix& m, const RatVector& x)
{
    RatVector out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) out[i] = dot(m[i], x);
    return out;
}

bool independent(const std::vector<RatVector>& vs, std::size_t dim)
{
    return rank(vs, dim) == vs.size();
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

IntMatrix identity(std::size_t n)
{
    IntMatrix id(n, IntVector(n, Integer(0)));
    for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
    return id;
}

void swap_cols(IntMatrix& a, std::size_t i, std::size_t j)
{
    for (auto& row : a) std::swap(row[i], row[j]);
}

// row_i += q * row_j
void add_row(IntMatrix& a, std::size_t i, std::size_t j, const Integer& q)
{
    for (std::size_t c = 0; c < a[i].size(); ++c) a[i][c] += q * a[j][c];
}

void add_col(IntMatrix& a, std::size_t i, std::size_t j, const Integer& q)
{
    for (auto& row : a) row[i] += q * row[j];
}

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& m, std::size_t cols)
{
    const std::size_t rows = m.size();
    for (const auto& row : m) require_dim(cols, row.size());
    IntMatrix a = m;
    IntMatrix left = identity(rows);
    IntMatrix right = identity(cols);

    std::size_t t = 0;
    for (; t < rows && t < cols; ++t) {
        while (true) {
            // smallest nonzero entry of the trailing block goes to (t, t)
            std::size_t bi = rows, bj = cols;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (a[i][j] != 0 && (bi == rows || abs(a[i][j]) < abs(a[bi][bj]))) {
                        bi = i;
                        bj = j;
                    }
            if (bi == rows) break;
            std::swap(a[t], a[bi]);
            std::swap(left[t], left[bi]);
            swap_cols(a, t, bj);
            swap_cols(right, t, bj);

            bool dirty = false;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0) continue;
                Integer q = a[i][t] / a[t][t];
                add_row(a, i, t, -q);
                add_row(left, i, t, -q);
                if (a[i][t] != 0) dirty = true;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a[t][j] == 0) continue;
                Integer q = a[t][j] / a[t][t];
                add_col(a, j, t, -q);
                add_col(right, j, t, -q);
                if (a[t][j] != 0) dirty = true;
            }
            if (dirty) continue;

            std::size_t bad = rows;
            for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (a[i][j] % a[t][t] != 0) {
                        bad = i;
                        break;
                    }
            if (bad == rows) break;
            add_row(a, t, bad, Integer(1));
            add_row(left, t, bad, Integer(1));
        }
        if (a[t][t] == 0) break;
        if (a[t][t] < 0) {
            for (auto& x : a[t]) x = -x;
            for (auto& x : left[t]) x = -x;
        }
    }

    SmithDecomposition out;
    for (std::size_t i = 0; i < rows && i < cols; ++i)
        if (a[i][i] != 0) out.invariant_factors.push_back(a[i][i]);
    out.rank = out.invariant_factors.size();
    out.left = std::move(left);
    out.right = std::move(right);
    out.diagonal = std::move(a);
    return out;
}

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b, std::size_t b_cols)
{
    IntMatrix out(a.size(), IntVector(b_cols, Integer(0)));
    for (std::size_t i = 0; i < a.size(); ++i) {
        require_dim(b.size(), a[i].size());
        for (std::size_t k = 0; k < b.size(); ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < b_cols; ++j) out[i][j] += a[i][k] * b[k][j];
        }
    }
    return out;
}

Integer determinant(const IntMatrix& m)
{
    RatMatrix a = to_rational(m);
    const std::size_t n = a.size();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        require_dim(n, a[c].size());
        std::size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a[i][c] == 0) continue;
            Rational f = a[i][c] / a[c][c];
            for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    return det.get_num();
}

// ---------------------------------------------------------------------------
// Phase-one simplex with Bland's rule

namespace {

bool verify_point(const FeasibilityProblem& p, const RatVector& x)
{
    for (std::size_t j = 0; j < p.num_vars; ++j)
        if (j < p.nonneg.size() && p.nonneg[j] && x[j] < 0) return false;
    for (const auto& row : p.rows) {
        Rational v = dot(row.coeffs, x);
        switch (row.sense) {
        case Sense::le:
            if (v > row.rhs) return false;
            break;
        case Sense::eq:
            if (v != row.rhs) return false;
            break;
        case Sense::ge:
            if (v < row.rhs) return false;
            break;
        }
    }
    return true;
}

bool verify_farkas(const FeasibilityProblem& p, const RatVector& y)
{
    if (y.size() != p.rows.size()) return false;
    Rational yb = 0;
    RatVector ya(p.num_vars, Rational(0));
    for (std::size_t i = 0; i < p.rows.size(); ++i) {
        const auto& row = p.rows[i];
        if (row.sense == Sense::le && y[i] > 0) return false;
        if (row.sense == Sense::ge && y[i] < 0) return false;
        yb += y[i] * row.rhs;
        for (std::size_t j = 0; j < p.num_vars; ++j) ya[j] += y[i] * row.coeffs[j];
    }
    for (std::size_t j = 0; j < p.num_vars; ++j) {
        bool nn = j < p.nonneg.size() && p.nonneg[j];
        if (nn ? ya[j] > 0 : ya[j] != 0) return false;
    }
    return yb > 0;
}

}  // namespace

FeasibilityResult solve_feasibility(const FeasibilityProblem& p)
{
    const std::size_t n = p.num_vars;
    const std::size_t m = p.rows.size();
    for (const auto& row : p.rows) require_dim(n, row.coeffs.size());

    // structural columns: x_j^+ and, for free variables, x_j^-
    std::vector<std::size_t> pos_col(n), neg_col(n, SIZE_MAX);
    std::size_t nz = 0;
    for (std::size_t j = 0; j < n; ++j) {
        pos_col[j] = nz++;
        bool nn = j < p.nonneg.size() && p.nonneg[j];
        if (!nn) neg_col[j] = nz++;
    }
    std::vector<std::size_t> slack_col(m, SIZE_MAX);
    for (std::size_t i = 0; i < m; ++i)
        if (p.rows[i].sense != Sense::eq) slack_col[i] = nz++;

    const std::size_t art0 = nz;
    const std::size_t ncols = nz + m;
    const std::size_t rhs = ncols;
    RatMatrix T(m, RatVector(ncols + 1, Rational(0)));
    std::vector<int> sign(m, 1);
    for (std::size_t i = 0; i < m; ++i) {
        const auto& row = p.rows[i];
        sign[i] = row.rhs < 0 ? -1 : 1;
        for (std::size_t j = 0; j < n; ++j) {
            T[i][pos_col[j]] = sign[i] * row.coeffs[j];
            if (neg_col[j] != SIZE_MAX) T[i][neg_col[j]] = -sign[i] * row.coeffs[j];
        }
        if (row.sense == Sense::le) T[i][slack_col[i]] = sign[i];
        if (row.sense == Sense::ge) T[i][slack_col[i]] = -sign[i];
        T[i][art0 + i] = 1;
        T[i][rhs] = sign[i] * row.rhs;
    }

    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = art0 + i;

    // reduced costs of the phase-one objective (sum of artificials)
    RatVector d(ncols, Rational(0));
    for (std::size_t j = 0; j < art0; ++j)
        for (std::size_t i = 0; i < m; ++i) d[j] -= T[i][j];

    while (true) {
        std::size_t enter = ncols;
        for (std::size_t j = 0; j < ncols; ++j)
            if (d[j] < 0) {
                enter = j;
                break;
            }
        if (enter == ncols) break;

        std::size_t leave = m;
        Rational best;
        for (std::size_t i = 0; i < m; ++i) {
            if (T[i][enter] <= 0) continue;
            Rational ratio = T[i][rhs] / T[i][enter];
            if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == m) throw std::logic_error("phase-one objective unbounded");

        Rational inv = 1 / T[leave][enter];
        for (auto& x : T[leave]) x *= inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || T[i][enter] == 0) continue;
            Rational f = T[i][enter];
            for (std::size_t j = 0; j <= ncols; ++j) T[i][j] -= f * T[leave][j];
        }
        Rational f = d[enter];
        for (std::size_t j = 0; j < ncols; ++j) d[j] -= f * T[leave][j];
        basis[leave] = enter;
    }

    Rational infeasibility = 0;
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] >= art0) infeasibility += T[i][rhs];

    FeasibilityResult out;
    if (infeasibility == 0) {
        RatVector z(ncols, Rational(0));
        for (std::size_t i = 0; i < m; ++i) z[basis[i]] = T[i][rhs];
        out.feasible = true;
        out.point.assign(n, Rational(0));
        for (std::size_t j = 0; j < n; ++j) {
            out.point[j] = z[pos_col[j]];
            if (neg_col[j] != SIZE_MAX) out.point[j] -= z[neg_col[j]];
        }
        if (!verify_point(p, out.point)) throw std::logic_error("simplex returned an infeasible point");
        return out;
    }

    // duals of the optimal phase-one basis: d_art_i = 1 - pi_i
    out.feasible = false;
    out.farkas.resize(m);
    for (std::size_t i = 0; i < m; ++i) out.farkas[i] = sign[i] * (1 - d[art0 + i]);
    if (!verify_farkas(p, out.farkas)) throw std::logic_error("simplex produced an invalid Farkas certificate");
    return out;
}

// ---------------------------------------------------------------------------
// Cones

void RationalCone::check() const
{
    for (const auto& g : generators) {
        require_dim(ambient_dim, g.size());
        if (is_zero(g)) throw DomainError("zero_generator", "cone generators must be nonzero");
    }
    for (const auto& l : lineality) require_dim(ambient_dim, l.size());
}

ConeMembership cone_member(const RationalCone& cone, const RatVector& x)
{
    cone.check();
    require_dim(cone.ambient_dim, x.size());
    const std::size_t k = cone.generators.size();
    const std::size_t t = cone.lineality.size();

    FeasibilityProblem lp;
    lp.num_vars = k + t;
    lp.nonneg.assign(k + t, false);
    for (std::size_t j = 0; j < k; ++j) lp.nonneg[j] = true;
    for (std::size_t c = 0; c < cone.ambient_dim; ++c) {
        RatVector row(k + t);
        for (std::size_t j = 0; j < k; ++j) row[j] = cone.generators[j][c];
        for (std::size_t j = 0; j < t; ++j) row[k + j] = cone.lineality[j][c];
        lp.add(std::move(row), Sense::eq, x[c]);
    }
    auto res = solve_feasibility(lp);

    ConeMembership out;
    out.member = res.feasible;
    if (res.feasible) {
        out.generator_coeffs.assign(res.point.begin(), res.point.begin() + static_cast<long>(k));
        out.lineality_coeffs.assign(res.point.begin() + static_cast<long>(k), res.point.end());
    } else {
        out.separator.resize(cone.ambient_dim);
        for (std::size_t c = 0; c < cone.ambient_dim; ++c) out.separator[c] = -res.farkas[c];
    }
    return out;
}

namespace {

struct DDRay {
    RatVector v;
    std::vector<char> tight;
};

// tight(p) & tight(n) contained in tight(r)
bool covers(const DDRay& r, const DDRay& p, const DDRay& n, std::size_t upto)
{
    for (std::size_t i = 0; i < upto; ++i)
        if (p.tight[i] && n.tight[i] && !r.tight[i]) return false;
    return true;
}

bool lex_less(const IntVector& a, const IntVector& b)
{
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

RationalCone dual_cone(const RationalCone& cone)
{
    cone.check();
    const std::size_t d = cone.ambient_dim;
    if (d > kDualConeMaxDim)
        throw DomainError("dimension_bound", "dual_cone supports ambient dimension at most " +
                                                 std::to_string(kDualConeMaxDim) + ", got " +
                                                 std::to_string(d));

    // coordinates on {y : l.y = 0}
    std::vector<RatVector> basis = nullspace(cone.lineality, d);
    const std::size_t k = basis.size();
    std::vector<RatVector> ineq;
    for (const auto& g : cone.generators) {
        RatVector h(k);
        for (std::size_t a = 0; a < k; ++a) h[a] = dot(g, basis[a]);
        if (!is_zero(h)) ineq.push_back(std::move(h));
    }
    const std::size_t m = ineq.size();

    std::vector<RatVector> lin;
    for (std::size_t a = 0; a < k; ++a) {
        RatVector e(k, Rational(0));
        e[a] = 1;
        lin.push_back(std::move(e));
    }
    std::vector<DDRay> rays;

    for (std::size_t h = 0; h < m; ++h) {
        const RatVector& hv = ineq[h];
        std::size_t piv = lin.size();
        for (std::size_t a = 0; a < lin.size(); ++a)
            if (dot(hv, lin[a]) != 0) {
                piv = a;
                break;
            }
        if (piv != lin.size()) {
            RatVector v = lin[piv];
            Rational hvv = dot(hv, v);
            if (hvv < 0) {
                v = scale(Rational(-1), v);
                hvv = -hvv;
            }
            std::vector<RatVector> next_lin;
            for (std::size_t a = 0; a < lin.size(); ++a) {
                if (a == piv) continue;
                Rational c = dot(hv, lin[a]) / hvv;
                next_lin.push_back(normalize_direction(sub(lin[a], scale(c, v))));
            }
            for (auto& r : rays) {
                Rational c = dot(hv, r.v) / hvv;
                if (c != 0) r.v = normalize_direction(sub(r.v, scale(c, v)));
                r.tight[h] = 1;
            }
            DDRay nr{normalize_direction(v), std::vector<char>(m, 0)};
            for (std::size_t i = 0; i < h; ++i) nr.tight[i] = 1;
            rays.push_back(std::move(nr));
            lin = std::move(next_lin);
            continue;
        }

        std::vector<std::size_t> pos, neg;
        std::vector<Rational> val(rays.size());
        std::vector<DDRay> next;
        for (std::size_t a = 0; a < rays.size(); ++a) {
            val[a] = dot(hv, rays[a].v);
            if (val[a] > 0) pos.push_back(a);
            else if (val[a] < 0) neg.push_back(a);
        }
        for (std::size_t a = 0; a < rays.size(); ++a) {
            if (val[a] < 0) continue;
            DDRay r = rays[a];
            if (val[a] == 0) r.tight[h] = 1;
            next.push_back(std::move(r));
        }
        for (auto p : pos)
            for (auto q : neg) {
                bool adjacent = true;
                for (std::size_t c = 0; c < rays.size() && adjacent; ++c) {
                    if (c == p || c == q) continue;
                    if (covers(rays[c], rays[p], rays[q], h)) adjacent = false;
                }
                if (!adjacent) continue;
                RatVector v = sub(scale(val[p], rays[q].v), scale(val[q], rays[p].v));
                DDRay r{normalize_direction(v), std::vector<char>(m, 0)};
                for (std::size_t i = 0; i < h; ++i) r.tight[i] = rays[p].tight[i] && rays[q].tight[i];
                r.tight[h] = 1;
                next.push_back(std::move(r));
            }
        rays = std::move(next);
    }

    auto lift = [&](const RatVector& y) {
        RatVector x(d, Rational(0));
        for (std::size_t a = 0; a < k; ++a)
            if (y[a] != 0) x = add(x, scale(y[a], basis[a]));
        return x;
    };

    RationalCone out;
    out.ambient_dim = d;
    RatMatrix L;
    for (const auto& l : lin) L.push_back(lift(l));
    auto pivots = rref(L, d);
    L.resize(pivots.size());
    for (auto& row : L) out.lineality.push_back(to_rational(primitive(row)));

    // Gram system for orthogonal projection away from the lineality space
    RatMatrix gram_inv;
    if (!L.empty()) {
        RatMatrix gram(L.size(), RatVector(L.size()));
        for (std::size_t a = 0; a < L.size(); ++a)
            for (std::size_t b = 0; b < L.size(); ++b) gram[a][b] = dot(L[a], L[b]);
        gram_inv = inverse(gram);
    }

    std::vector<IntVector> prim;
    for (const auto& r : rays) {
        RatVector x = lift(r.v);
        if (!L.empty()) {
            RatVector lx(L.size());
            for (std::size_t a = 0; a < L.size(); ++a) lx[a] = dot(L[a], x);
            RatVector c = mat_vec(gram_inv, lx);
            for (std::size_t a = 0; a < L.size(); ++a) x = sub(x, scale(c[a], L[a]));
        }
        if (is_zero(x)) continue;
        prim.push_back(primitive(x));
    }
    std::sort(prim.begin(), prim.end(), lex_less);
    prim.erase(std::unique(prim.begin(), prim.end()), prim.end());
    for (const auto& v : prim) out.generators.push_back(to_rational(v));
    return out;
}

PositivityReport strict_positive_on_cone(const RationalCone& cone, const RatVector& rho)
{
    cone.check();
    require_dim(cone.ambient_dim, rho.size());
    PositivityReport out;
    for (const auto& l : cone.lineality) {
        Rational v = dot(rho, l);
        if (v != 0) {
            out.verdict = Positivity::fails;
            out.witness = v > 0 ? scale(Rational(-1), l) : l;
            return out;
        }
    }
    for (const auto& g : cone.generators)
        if (dot(rho, g) < 0) {
            out.verdict = Positivity::fails;
            out.witness = g;
            return out;
        }
    for (const auto& g : cone.generators)
        if (dot(rho, g) == 0) {
            out.verdict = Positivity::nonneg_only;
            out.witness = g;
            return out;
        }
    for (const auto& l : cone.lineality)
        if (!is_zero(l)) {
            out.verdict = Positivity::nonneg_only;
            out.witness = l;
            return out;
        }
    return out;
}

const char* to_string(Positivity p)
{
    switch (p) {
    case Positivity::strict: return "strict";
    case Positivity::nonneg_only: return "nonneg_only";
    case Positivity::fails: return "fails";
    }
    return "?";
}

bool same_cone(const RationalCone& a, const RationalCone& b)
{
    auto inside = [](const RationalCone& x, const RationalCone& y) {
        for (const auto& g : x.generators)
            if (!cone_member(y, g)) return false;
        for (const auto& l : x.lineality) {
            if (!cone_member(y, l)) return false;
            if (!cone_member(y, scale(Rational(-1), l))) return false;
        }
        return true;
    };
    if (a.ambient_dim != b.ambient_dim) return false;
    return inside(a, b) && inside(b, a);
}

}  // namespace chamberforge
