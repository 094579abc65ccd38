#pragma once

#include "chamberforge/latcone.hpp"
#include "chamberforge/rootdata.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace chamberforge {

/// Sorted 0-based Dynkin node indices.
using NodeSet = std::vector<std::size_t>;

struct EssentialPair {
    NodeSet I;
    NodeSet J;
    bool essential = false;
};

/// No connected component of Omega \ J lies inside I.
bool is_essential(const RootDatum& rd, const NodeSet& I, const NodeSet& J);

/// All subsets of the node set in lexicographic order of sorted index lists.
std::vector<NodeSet> all_node_subsets(std::size_t n);

/// Every pair (I, J), lexicographic in (I, J).
std::vector<EssentialPair> essential_pairs(const RootDatum& rd);

/// Vectors in V_Q + V_Q are stored as concatenations (mu, nu).
struct VinbergFace {
    EssentialPair pair;
    std::vector<RatVector> generators_DI;  // (alpha_i, 0), i in I
    std::vector<RatVector> generators_CJ;  // (varpi_j, varpi_j), j in J
    std::vector<RatVector> lineality;      // (z, z), z W-invariant
    RationalCone first_factor_cone;        // D_I + C_J + W-invariant line(s), in V_Q

    RationalCone full_cone() const;
};

VinbergFace vinberg_face(const RootDatum& rd, const NodeSet& I, const NodeSet& J);

/// <(alpha_i, 0)> + diagonal.
RationalCone vinberg_cone_K(const RootDatum& rd);
/// The face for (Omega, Omega).
RationalCone vinberg_cone_Kplus(const RootDatum& rd);
/// K intersected with V_Q + V_Q^+, computed by two dual-cone passes.
RationalCone vinberg_cone_K_cap_chamber(const RootDatum& rd);

enum class GitStatus { stable, strictly_semistable, unstable };
const char* to_string(GitStatus s);

struct GitVerdict {
    GitStatus status = GitStatus::stable;
    RatVector witness;         // destabilizing (or rho-neutral) cocharacter, if any
    std::string witness_kind;  // "neg_coroot", "dual_ray", or empty
    std::size_t witness_node = 0;
};

/// F.lambda >= 0: nonnegative on the generators and zero on the lineality.
bool limit_exists(const VinbergFace& face, const RatVector& lambda);

/// Hilbert-Mumford classification of the orbit O_{I,J} for the central
/// torus linearized by rho.  Throws DomainError on non-essential pairs.
GitVerdict orbit_git_status(const RootDatum& rd, const EssentialPair& pair, const RatVector& rho);

/// Generic torus version: stability of a point with the given weight support.
GitVerdict torus_git(const std::vector<RatVector>& weights, const RatVector& rho, std::size_t ambient_dim);

}  // namespace chamberforge
