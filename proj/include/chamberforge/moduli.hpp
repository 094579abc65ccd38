#pragma once

#include "chamberforge/chains.hpp"
#include "chamberforge/fans.hpp"
#include "chamberforge/rootdata.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace chamberforge {

enum class StabilityReason { ok, wrong_order, not_a_cone, mixed_chambers, too_long, ray_mismatch };
const char* to_string(StabilityReason r);

struct StabilityVerdict {
    bool stable = false;
    StabilityReason reason = StabilityReason::ok;
    std::optional<WeylElement> witness;
    ConeIndex cone;                      // sigma, sorted
    std::vector<std::size_t> index_map;  // k -> sigma(k), strictly increasing when stable
};

/// Stable iff some w carries beta' onto the ray generators of a cone, in
/// increasing ray order.  The witness is the first such w in the Weyl order.
StabilityVerdict sigma_stable(const RootDatum& rd, const StackyFan& fan, const SplittingType& beta);

struct OrbitNode {
    ConeIndex cone;
    std::size_t codim = 0;
    Integer stabilizer_order = 1;
    std::optional<std::string> label;
};

struct OrbitPoset {
    std::vector<OrbitNode> nodes;  // in the fan's cone order
    /// (tau, sigma) node indices with tau a facet of sigma: the orbit of
    /// sigma lies in the closure of the orbit of tau.
    std::vector<std::pair<std::size_t, std::size_t>> edges;

    std::vector<std::size_t> codim_histogram() const;
};

OrbitPoset orbit_poset(const RootDatum& rd, const StackyFan& fan);

/// "c_0_2" style identifier; the zero cone is "c".
std::string node_id(const ConeIndex& cone);
std::string to_dot(const OrbitPoset& poset);

/// Face fan of the positive chamber with primitive generators on the
/// fundamental coweight rays.
StackyFan canonical_fan(const RootDatum& rd);

/// The part of the Weyl chamber fan of PGL_{r+1} inside the positive chamber
/// of GL_r.  Rays come in pairs (1^m, 0^{r-m}), (0^{m-1}, (-1)^{r+1-m}) for
/// m = r, ..., 1.
StackyFan kgl_fan(std::size_t r);

bool has_label_scheme(const RootDatum& rd);

/// Multidegree labels of the summands; sorted, joined by " ⊕ ", and wrapped
/// in P(...) for type-A adjoint data.  Throws DomainError("no_label_scheme").
std::string bundle_label(const RootDatum& rd, const SplittingType& beta);
std::vector<std::string> bundle_summands(const RootDatum& rd, const SplittingType& beta);
std::string bundle_label(const RootDatum& rd, const StackyFan& fan, const ConeIndex& cone);

/// Labels 0..r distributed over the components of a chain, listed from p_+.
using LabelDistribution = std::vector<std::vector<std::size_t>>;

/// Node cocharacters in coweight coordinates of the PGL_{r+1} preset, listed
/// from the p_- end so that their dominant representatives increase.
SplittingType losev_manin_type(std::size_t r, const LabelDistribution& blocks);

/// All ordered partitions of {0..n-1} into k nonempty blocks.
std::vector<LabelDistribution> ordered_set_partitions(std::size_t n, std::size_t k);

}  // namespace chamberforge
