#include "qform/transform.hpp"

#include "qform/hnf.hpp"
#include "qform/isometry.hpp"

namespace qform {

Int Sublattice::index() const {
  if (basis.rows() != basis.cols()) throw DomainError("index of a sublattice of lower rank");
  Wide d = determinant(basis);
  return narrow(d < 0 ? -d : d);
}

Sublattice with_basis(const GramLattice& ambient, const std::vector<Vec>& basis) {
  IntMatrix b = IntMatrix::from_columns(basis);
  if (b.rows() != ambient.rank()) throw InvalidForm("basis vectors have the wrong length");
  GramLattice g(congruence(ambient.gram(), b));
  return {ambient, std::move(b), std::move(g)};
}

Sublattice span(const GramLattice& ambient, const std::vector<Vec>& generators) {
  auto rows = hermite_normal_form(generators);
  if (rows.empty()) throw InvalidForm("span of no nonzero vectors");
  return with_basis(ambient, rows);
}

Sublattice lambda2_sublattice(const GramLattice& lattice) {
  const std::size_t n = lattice.rank();
  std::size_t pivot = n;
  for (std::size_t i = 0; i < n && pivot == n; ++i)
    if (mod(lattice(i, i), 2) == 1) pivot = i;
  std::vector<Vec> gens;
  for (std::size_t j = 0; j < n; ++j) {
    Vec v(n, 0);
    if (j == pivot) {
      v[j] = 2;
    } else {
      v[j] = 1;
      if (pivot != n && mod(lattice(j, j), 2) == 1) v[pivot] = 1;
    }
    gens.push_back(std::move(v));
  }
  return span(lattice, gens);
}

GramLattice lambda2(const GramLattice& lattice) {
  Sublattice sub = lambda2_sublattice(lattice);
  Int content = scale_and_norm(sub.gram).scale;
  Int power = 1;
  while (content % (2 * power) == 0) power *= 2;
  IntMatrix g = sub.gram.gram();
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) g(i, j) /= power;
  return GramLattice(std::move(g));
}

Sublattice orthogonal_complement(const GramLattice& lattice, const Sublattice& sub) {
  // Rows of (basisᵀ G) are the linear conditions B(s_i, ·) = 0.
  IntMatrix conditions = multiply(sub.basis.transpose(), lattice.gram());
  auto kernel = integer_kernel(conditions.to_rows(), lattice.rank());
  if (kernel.empty()) throw DomainError("orthogonal complement is zero");
  return with_basis(lattice, kernel);
}

std::vector<std::size_t> stated_core_indices(const FormRecord& record) {
  if (!record.core) throw DomainError(record.name() + " has no core label");
  switch (*record.core) {
    case CoreLabel::N9:
    case CoreLabel::N10:
    case CoreLabel::UnitComplement: return {1, 2, 3};
    case CoreLabel::N6: return {0, 1, 3};
    case CoreLabel::UnitExtension: return {0, 2, 3};
    default: return {0, 1, 2};
  }
}

namespace {

CoreDecomposition finish(const GramLattice& lattice, Sublattice core, bool stated) {
  Sublattice perp = orthogonal_complement(lattice, core);
  if (perp.rank() != 1) throw CoreNotFound("core complement is not of rank 1");
  Vec g = perp.basis_vector(0);
  Int k = lattice.norm(g);
  return {std::move(core), std::move(g), k, stated};
}

std::vector<Vec> unit_columns(std::size_t rank, const std::vector<std::size_t>& indices) {
  std::vector<Vec> cols;
  for (auto i : indices) {
    Vec v(rank, 0);
    v[i] = 1;
    cols.push_back(std::move(v));
  }
  return cols;
}

}  // namespace

CoreDecomposition core_decomposition(const FormRecord& record, const Corpus& corpus) {
  const GramLattice lattice = record.gram();
  const auto indices = stated_core_indices(record);
  Sublattice stated = with_basis(lattice, unit_columns(lattice.rank(), indices));

  if (*record.core == CoreLabel::UnitComplement) {
    // Complement of the first coordinate vector.
    return finish(lattice, std::move(stated), true);
  }
  const GramLattice& target = corpus.core_gram(*record.core);
  if (is_isometric(stated.gram, target)) return finish(lattice, std::move(stated), true);

  std::optional<IntMatrix> found;
  for_each_embedding(target, lattice, EmbeddingOptions{.primitive = true}, [&](const IntMatrix& u) {
    found = u;
    return false;
  });
  if (!found)
    throw CoreNotFound("no primitive embedding of " + std::string(to_string(*record.core)) +
                       " in " + record.name());
  std::vector<Vec> cols;
  for (std::size_t j = 0; j < found->cols(); ++j) cols.push_back(found->column(j));
  return finish(lattice, with_basis(lattice, cols), false);
}

}  // namespace qform
