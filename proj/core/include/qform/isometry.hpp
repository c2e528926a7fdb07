#pragma once

#include <functional>
#include <optional>

#include "qform/forms.hpp"

namespace qform {

struct IsometryWitness {
  IntMatrix matrix;
};

struct Reduction {
  GramLattice reduced;  // transformᵀ · G · transform
  IntMatrix transform;  // unimodular
};

/// Greedy pairwise size reduction followed by sorting the diagonal. Not LLL,
/// but it shortens the basis enough to keep candidate lists small.
Reduction reduce(const GramLattice& lattice);

struct EmbeddingOptions {
  /// Only report embeddings whose image is a primitive sublattice.
  bool primitive = false;
};

/// Visits every U with Uᵀ G_big U = G_small (columns tried in descending
/// lexicographic order of the reduced problem). visit returns false to stop.
void for_each_embedding(const GramLattice& small, const GramLattice& big,
                        EmbeddingOptions options,
                        const std::function<bool(const IntMatrix&)>& visit);

/// U with Uᵀ G₁ U = G₂ and det U = ±1, if L1 and L2 are isometric.
std::optional<IsometryWitness> is_isometric(const GramLattice& l1, const GramLattice& l2);

/// Rectangular U with Uᵀ G_big U = G_small, if one exists.
std::optional<IsometryWitness> embeds(const GramLattice& small, const GramLattice& big);

}  // namespace qform
