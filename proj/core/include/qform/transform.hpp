#pragma once

#include <optional>
#include <vector>

#include "qform/corpus.hpp"
#include "qform/forms.hpp"

namespace qform {

/// A sublattice given by basis vectors in ambient coordinates (the columns of
/// `basis`), together with its induced Gram matrix.
struct Sublattice {
  GramLattice ambient;
  IntMatrix basis;
  GramLattice gram;

  std::size_t rank() const { return basis.cols(); }
  Vec basis_vector(std::size_t i) const { return basis.column(i); }
  /// [ambient : sublattice] for full-rank sublattices.
  Int index() const;
};

/// Sublattice spanned by `generators`, basis canonicalized to HNF.
Sublattice span(const GramLattice& ambient, const std::vector<Vec>& generators);
/// Sublattice with the given basis vectors, kept in the given order.
Sublattice with_basis(const GramLattice& ambient, const std::vector<Vec>& basis);

/// Λ₂(L) = {x : Q(x) even}, kernel of the linear map x -> Σ Q(x_i) x_i mod 2.
Sublattice lambda2_sublattice(const GramLattice& lattice);
/// Gram of Λ₂(L) divided by the largest power of 2 dividing all its entries.
GramLattice lambda2(const GramLattice& lattice);

/// {x in L : B(x, s) = 0 for all s in S}, basis in HNF.
Sublattice orthogonal_complement(const GramLattice& lattice, const Sublattice& sub);

struct CoreDecomposition {
  Sublattice core;
  Vec complement_generator;
  Int complement_norm = 0;
  /// The core is spanned by the coordinate vectors stated for this form.
  bool stated_basis = false;
};

/// Coordinate indices spanning the core as stated for `record` (e.g. x2, x3,
/// x4 for N9 and N10). Indices are 0-based.
std::vector<std::size_t> stated_core_indices(const FormRecord& record);

/// Locates the labelled core inside gram(record). Throws CoreNotFound if the
/// labelled core has no primitive embedding.
CoreDecomposition core_decomposition(const FormRecord& record,
                                     const Corpus& corpus = embedded_corpus());

}  // namespace qform
