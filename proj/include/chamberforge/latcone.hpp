#pragma once

#include "chamberforge/numeric.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace chamberforge {

// ---------------------------------------------------------------------------
// Dense exact linear algebra

/// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> rref(RatMatrix& m, std::size_t cols);

std::size_t rank(const RatMatrix& m, std::size_t cols);
std::size_t rank(const IntMatrix& m, std::size_t cols);

/// Basis of {x : m x = 0}, one vector per free column, in RREF order.
std::vector<RatVector> nullspace(const RatMatrix& m, std::size_t cols);

/// Some x with m x = b, or nothing.
std::optional<RatVector> solve(const RatMatrix& m, std::size_t cols, const RatVector& b);

/// Inverse of a square rational matrix; throws DomainError if singular.
RatMatrix inverse(const RatMatrix& m);

RatMatrix transpose(const RatMatrix& m, std::size_t cols);
RatVector mat_vec(const RatMatrix& m, const RatVector& x);

/// True iff the vectors are linearly independent over Q.
bool independent(const std::vector<RatVector>& vs, std::size_t dim);

// ---------------------------------------------------------------------------
// Smith normal form

struct SmithDecomposition {
    IntVector invariant_factors;  // the nonzero diagonal entries, d_1 | d_2 | ...
    std::size_t rank = 0;
    IntMatrix left;      // rows x rows, unimodular
    IntMatrix right;     // cols x cols, unimodular
    IntMatrix diagonal;  // left * input * right
};

/// `cols` is needed to describe matrices with zero rows.
SmithDecomposition smith_normal_form(const IntMatrix& m, std::size_t cols);

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b, std::size_t b_cols);
Integer determinant(const IntMatrix& m);

// ---------------------------------------------------------------------------
// Feasibility LP
//
// Decides whether {x : rows hold, x_j >= 0 for nonneg j} is nonempty.  On
// failure a Farkas vector y is returned with
//   y_i <= 0 on <= rows, y_i >= 0 on >= rows,
//   (y^T A)_j <= 0 for nonneg j, (y^T A)_j = 0 for free j,
//   y^T b > 0,
// which is re-verified before it leaves the solver.

enum class Sense { le, eq, ge };

struct LinearRow {
    RatVector coeffs;
    Sense sense = Sense::eq;
    Rational rhs;
};

struct FeasibilityProblem {
    std::size_t num_vars = 0;
    std::vector<bool> nonneg;  // per variable; missing entries mean free
    std::vector<LinearRow> rows;

    void add(RatVector coeffs, Sense sense, Rational rhs)
    {
        rows.push_back({std::move(coeffs), sense, std::move(rhs)});
    }
};

struct FeasibilityResult {
    bool feasible = false;
    RatVector point;   // when feasible
    RatVector farkas;  // when infeasible, one entry per row
};

FeasibilityResult solve_feasibility(const FeasibilityProblem& problem);

// ---------------------------------------------------------------------------
// Cones

struct RationalCone {
    std::size_t ambient_dim = 0;
    std::vector<RatVector> generators;
    std::vector<RatVector> lineality;

    /// Throws DomainError on a zero generator or a dimension mismatch.
    void check() const;
};

struct ConeMembership {
    bool member = false;
    RatVector generator_coeffs;  // nonnegative, one per generator
    RatVector lineality_coeffs;  // free, one per lineality vector
    RatVector separator;         // f with f.g >= 0, f.l = 0 and f.x < 0

    explicit operator bool() const { return member; }
};

ConeMembership cone_member(const RationalCone& cone, const RatVector& x);

/// Largest ambient dimension accepted by dual_cone.
inline constexpr std::size_t kDualConeMaxDim = 8;

/// {y : g.y >= 0 for every generator, l.y = 0 for every lineality vector}.
/// Rays come back as primitive integer directions orthogonal to the
/// lineality space, sorted; the lineality basis is in integer-scaled RREF.
RationalCone dual_cone(const RationalCone& cone);

enum class Positivity { strict, nonneg_only, fails };

struct PositivityReport {
    Positivity verdict = Positivity::strict;
    RatVector witness;  // a nonzero cone point with rho.x <= 0, empty for strict
};

PositivityReport strict_positive_on_cone(const RationalCone& cone, const RatVector& rho);

const char* to_string(Positivity p);

/// True iff the two cones are equal as sets (generator-wise containment).
bool same_cone(const RationalCone& a, const RationalCone& b);

}  // namespace chamberforge
