#pragma once

#include "chamberforge/latcone.hpp"
#include "chamberforge/numeric.hpp"
#include "chamberforge/rootdata.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace chamberforge {

/// Sorted 0-based ray indices.
using ConeIndex = std::vector<std::size_t>;

/// Ordered ray generators plus simplicial cones.  Cones are kept sorted by
/// (size, lexicographic) and include the zero cone.
struct StackyFan {
    std::size_t rank = 0;
    std::vector<IntVector> rays;
    std::vector<ConeIndex> cones;

    /// Closes the given cones under faces and sorts them.
    static StackyFan from_cones(std::size_t rank, std::vector<IntVector> rays,
                                const std::vector<ConeIndex>& cones);
    /// The face fan of one simplicial cone.
    static StackyFan single_cone(std::size_t rank, std::vector<IntVector> rays);

    std::vector<ConeIndex> maximal_cones() const;
    bool has_cone(const ConeIndex& c) const;
    std::size_t dimension() const;  // largest cone size
    std::vector<IntVector> generators(const ConeIndex& c) const;
    RationalCone as_cone(const ConeIndex& c) const;
    std::vector<std::size_t> cone_count_by_dimension() const;
};

void sort_cones(std::vector<ConeIndex>& cones);

struct FanViolation {
    std::string kind;
    std::string detail;
    std::vector<ConeIndex> cones;
    RatVector witness;
};

struct ValidationReport {
    bool valid = true;
    bool chamber_supported = false;  // only meaningful when a root datum was given
    std::vector<FanViolation> violations;
};

ValidationReport validate(const StackyFan& fan);
ValidationReport validate(const StackyFan& fan, const RootDatum& rd);

bool chamber_supported(const RootDatum& rd, const StackyFan& fan);

/// Throws DomainError("invalid_fan") with the first violation.
void require_valid(const StackyFan& fan);

/// The W-translates of a chamber-supported fan.  New rays are appended per
/// source ray in lexicographic order of the Weyl matrices.
StackyFan weyl_fan(const RootDatum& rd, const StackyFan& fan);

/// Decided by the facet test: each facet of a full-dimensional maximal cone
/// is shared with exactly one other maximal cone or lies in a chamber wall.
bool support_equals_chamber(const RootDatum& rd, const StackyFan& fan);

/// Membership of x in the union of the cones.
bool in_support(const StackyFan& fan, const RatVector& x);

struct ConvexityReport {
    bool convex = false;
    std::string reason;
    RatVector witness;  // a generator on the wrong side of a boundary facet
};

/// Every ray lies on the inner side of every boundary facet of a pure fan.
ConvexityReport support_convexity(const StackyFan& fan);

enum class NormalFanStatus { certified, not_normal, non_convex_support };

struct NormalFanReport {
    NormalFanStatus status = NormalFanStatus::not_normal;
    std::vector<ConeIndex> maximal_cones;
    std::vector<RatVector> functionals;  // one per maximal cone
    std::string detail;

    /// psi(beta_j) for the piecewise-linear function of the certificate.
    Rational value_at_ray(const StackyFan& fan, std::size_t j) const;
};

NormalFanReport is_normal_fan(const StackyFan& fan);

/// Re-evaluates agreement on shared rays and every strict wall inequality.
bool verify_normal_certificate(const StackyFan& fan, const NormalFanReport& report);

const char* to_string(NormalFanStatus s);

/// P_i(x) = x - (alpha_i.x / 2) alpha_i^vee.
RatVector wall_projection(const RootDatum& rd, std::size_t i, const RatVector& x);

struct ProjectionViolation {
    std::size_t wall = 0;
    RatVector point;
    RatVector projection;
};

struct ProjectionReport {
    bool weyl_support_convex = false;
    std::size_t points_checked = 0;
    std::vector<ProjectionViolation> violations;
    bool passed() const { return weyl_support_convex && violations.empty(); }
};

/// Checks every ray generator and `samples` seeded random points of |F|.
ProjectionReport projection_closure_check(const RootDatum& rd, const StackyFan& fan,
                                          std::size_t samples = 100, unsigned seed = 7);

}  // namespace chamberforge
