#pragma once

#include "chamberforge/fans.hpp"
#include "chamberforge/rootdata.hpp"
#include "chamberforge/vinberg.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace chamberforge {

/// Sorted 0-based ray indices of coordinates allowed to be nonzero.
using RaySet = std::vector<std::size_t>;

struct CoxData {
    StackyFan fan;
    IntMatrix beta_matrix;  // N x r, rows beta_j
    std::size_t kernel_rank = 0;
    IntVector kernel_invariant_factors;  // torsion of K_beta (factors > 1)
    std::vector<RaySet> admissible_sets;

    /// The coordinate orbit with nonzero coordinates H lies in the open set
    /// iff its zero coordinates span a cone.
    bool admissible(const RaySet& H) const;
};

CoxData cox_data(const RootDatum& rd, const StackyFan& fan);

/// Entries alpha_i . beta_j.
IntMatrix base_map_matrix(const RootDatum& rd, const StackyFan& fan);

struct Stratum {
    RaySet H;
    NodeSet I;
    NodeSet J;
    bool valid = false;  // (I, J) essential
};

/// I(H) = {i : alpha_i . beta_j = 0 for all j not in H}.
NodeSet stratum_image(const RootDatum& rd, const StackyFan& fan, const RaySet& H);
Stratum make_stratum(const RootDatum& rd, const StackyFan& fan, const RaySet& H, const NodeSet& J);

struct DestabilizerResult {
    bool found = false;
    RatVector ell;           // -alpha_i^vee = sum ell_j beta_j, ell_j >= 0 on H
    std::string method;      // "projection" or "lp"
    std::size_t pivot_ray = 0;
    RatVector separator;     // Farkas functional when not found
};

DestabilizerResult destabilizer(const RootDatum& rd, const StackyFan& fan, std::size_t i, const RaySet& H);

/// Exact re-check of the identity and the sign constraints.
bool verify_destabilizer(const RootDatum& rd, const StackyFan& fan, std::size_t i, const RaySet& H,
                         const RatVector& ell);

/// Precomputed data for classifying strata of the Cox-Vinberg monoid.
struct CoxVinbergModel {
    RootDatum rd;
    CoxData cox;
    NormalFanReport normal;
    RatVector xi;  // xi_j = psi(beta_j)
};

/// Checks chamber support, the normal-fan certificate and convexity of the
/// Weyl-translated support; throws DomainError("hypothesis_failed").
CoxVinbergModel prepare_cox_vinberg(const RootDatum& rd, const StackyFan& fan);

struct StratumVerdict {
    Stratum stratum;
    GitStatus status = GitStatus::stable;
    RatVector witness;         // a cocharacter of G_beta
    std::string witness_kind;  // "eq_y", "toric", "lp" or empty
    std::size_t witness_node = 0;
};

/// Lexicographic (rho.B ell, xi.ell) sign test over the cocharacters whose
/// limit exists.  rho must be interior dominant; the stratum must be valid.
StratumVerdict sgbeta_git_classify(const CoxVinbergModel& model, const Stratum& stratum, const RatVector& rho);

/// Every (H, J); invalid strata are reported with valid = false and no status.
std::vector<StratumVerdict> classify_all_strata(const CoxVinbergModel& model, const RatVector& rho);

bool verify_stratum_witness(const CoxVinbergModel& model, const StratumVerdict& v, const RatVector& rho);

std::vector<RaySet> all_ray_subsets(std::size_t n);

}  // namespace chamberforge
