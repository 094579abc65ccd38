#pragma once

#include "chamberforge/numeric.hpp"
#include "chamberforge/rootdata.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace chamberforge {

/// G_m-equivariant line bundle on the standard chain C_n, given by its
/// weights (b_0 | b_1 | ... | b_{n+1}) at the fixed points, read from p_+
/// to p_-.  Component k (0-based) sits between weights b_k and b_{k+1}.
struct EquivariantLineBundle {
    IntVector weights;

    EquivariantLineBundle() = default;
    explicit EquivariantLineBundle(IntVector w);

    std::size_t nodes() const { return weights.size() - 2; }
};

/// Node cocharacters beta_1..beta_n, beta_1 nearest p_+.
using SplittingType = std::vector<IntVector>;

/// d_k = b_k - b_{k+1}.
IntVector multidegree(const EquivariantLineBundle& L);

/// (-1 | 0 | ... | 0 | 1).
EquivariantLineBundle dualizing_sheaf(std::size_t n);

/// omega tensor L^dual.
EquivariantLineBundle serre_dual(const EquivariantLineBundle& L);

std::size_t invariant_h0(const EquivariantLineBundle& L);
std::size_t invariant_h1(const EquivariantLineBundle& L);

/// (0 | alpha.beta_1 | ... | alpha.beta_n | 0).
EquivariantLineBundle ad_summand(const SplittingType& beta, const IntVector& alpha);

/// Invariant sections of ad E vanishing at p_+ and p_-.
std::size_t t0_dim(const RootDatum& rd, const SplittingType& beta);
std::size_t h0_ad_dim(const RootDatum& rd, const SplittingType& beta);
std::size_t h1_ad_dim(const RootDatum& rd, const SplittingType& beta);
std::size_t t1_dim(const RootDatum& rd, const SplittingType& beta);

struct AutGroupShape {
    std::vector<IntVector> levi_roots;
    std::vector<IntVector> uplus_roots;
    std::vector<IntVector> uminus_roots;
    std::size_t dimension = 0;
};

/// Throws DomainError("no_common_chamber") when the entries of beta do not
/// share a Weyl chamber.
AutGroupShape aut_group_shape(const RootDatum& rd, const SplittingType& beta);

/// Order of ker(G_m^n -> T); nothing when that kernel is positive-dimensional.
std::optional<Integer> stabilizer_order(const SplittingType& beta, std::size_t rank);

}  // namespace chamberforge
