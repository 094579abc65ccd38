#pragma once

#include "chamberforge/numeric.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace chamberforge {

/// A product s_{i1} s_{i2} ... s_{ik} of simple reflections, together with
/// its matrix acting on the cocharacter lattice (column vectors).
struct WeylElement {
    std::vector<std::size_t> word;
    IntMatrix matrix;

    RatVector apply(const RatVector& lambda) const;
    IntVector apply(const IntVector& lambda) const;
    bool is_identity() const;
    std::string word_string() const;  // "e" or "s1 s2 ..." (1-based labels)
};

/// Thrown by Weyl enumeration when the group is larger than the cap.
class WeylCapExceeded : public DomainError {
public:
    WeylCapExceeded(std::size_t cap, std::size_t partial)
        : DomainError("weyl_cap_exceeded", "Weyl group exceeds cap " + std::to_string(cap) +
                                               " (enumerated " + std::to_string(partial) + ")"),
          partial_count(partial) {}
    std::size_t partial_count;
};

/// Reads CHAMBERFORGE_WEYL_CAP, falling back to 2000.
std::size_t default_weyl_cap();

class RootDatum {
public:
    RootDatum();

    std::string name;
    std::size_t rank = 0;
    std::vector<std::string> character_basis_labels;
    std::vector<IntVector> simple_roots;    // in V
    std::vector<IntVector> simple_coroots;  // in Lambda
    std::vector<RatVector> fundamental_weights;
    std::vector<RatVector> fundamental_coweights;
    std::vector<std::pair<std::size_t, std::size_t>> dynkin_edges;
    std::vector<RatVector> weyl_invariant_characters;

    std::size_t num_nodes() const { return simple_roots.size(); }
    bool semisimple() const { return weyl_invariant_characters.empty(); }

    /// a_ij = <alpha_i, alpha_j^vee>.
    IntMatrix cartan_matrix() const;

    /// Checks every structural invariant; throws DomainError("invalid_root_datum").
    void validate() const;

    /// Fills dynkin_edges and weyl_invariant_characters from the roots.
    void derive_secondary_data();

    IntMatrix reflection_matrix(std::size_t i) const;
    RatVector reflect_cocharacter(std::size_t i, const RatVector& lambda) const;
    IntVector reflect_character(std::size_t i, const IntVector& chi) const;

    /// All roots, positive ones first (by height, then lexicographically).
    const std::vector<IntVector>& roots() const;
    std::size_t num_positive_roots() const { return roots().size() / 2; }
    std::size_t group_dimension() const { return rank + roots().size(); }

    /// Enumerated with default_weyl_cap() on first use and cached.
    const std::vector<WeylElement>& weyl_group() const;

    bool is_dominant(const RatVector& lambda) const;
    bool is_dominant(const IntVector& lambda) const;

private:
    struct Cache;
    std::shared_ptr<Cache> cache_;
};

Rational pairing(const RatVector& chi, const RatVector& lambda);
Rational pairing(const IntVector& chi, const RatVector& lambda);
Integer pairing(const IntVector& chi, const IntVector& lambda);

/// Breadth-first closure of the simple reflections; identity first.
std::vector<WeylElement> weyl_group_elements(const RootDatum& rd, std::size_t cap);

/// (w, w lambda) with w lambda dominant.
std::pair<WeylElement, RatVector> dominant_representative(const RootDatum& rd,
                                                          const RatVector& lambda);

/// First w in Weyl-group order making every entry dominant.
std::optional<WeylElement> common_chamber(const RootDatum& rd, const std::vector<RatVector>& beta);
std::optional<WeylElement> common_chamber(const RootDatum& rd, const std::vector<IntVector>& beta);

/// The root-sign test: no root pairs positively with one entry and
/// negatively with another.
bool has_common_chamber_by_roots(const RootDatum& rd, const std::vector<RatVector>& beta);

/// Preset names: A1/A2/A3/B2/B3/C2/C3 with -adjoint or -sc, G2, GL1..GL4,
/// and the aliases PGLn (n<=4), SLn (n<=4).
RootDatum make_preset(const std::string& name);
std::vector<std::string> preset_names();

/// Builds the adjoint or simply-connected datum of a Cartan matrix.
RootDatum from_cartan(const std::string& name, const IntMatrix& cartan, bool adjoint);
RootDatum make_gl(std::size_t r);

IntMatrix cartan_matrix_of_type(char type, std::size_t r);

}  // namespace chamberforge
