#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qform/matrix.hpp"

namespace qform {

/// Positive-definite integral lattice given by its Gram matrix
/// (entries B(x_i, x_j)). Immutable after construction.
class GramLattice {
 public:
  static constexpr std::size_t kMaxRank = 6;

  /// Validates symmetry, rank 1..6 and positive definiteness; throws
  /// InvalidForm otherwise.
  explicit GramLattice(IntMatrix gram);
  GramLattice(std::initializer_list<std::initializer_list<Int>> rows)
      : GramLattice(IntMatrix(rows)) {}

  static GramLattice diagonal(const Vec& entries);

  std::size_t rank() const { return gram_.rows(); }
  const IntMatrix& gram() const { return gram_; }
  Int operator()(std::size_t i, std::size_t j) const { return gram_(i, j); }

  Int norm(const Vec& v) const;
  Int pairing(const Vec& u, const Vec& v) const;

  bool operator==(const GramLattice&) const = default;

 private:
  IntMatrix gram_;
};

/// (a,b,c,d,e,f) encodes x² + a y² + b z² + c w² + d zw + e yw + f yz.
struct Sextuple {
  Int a = 1, b = 1, c = 1, d = 0, e = 0, f = 0;
  bool operator==(const Sextuple&) const = default;
  auto operator<=>(const Sextuple&) const = default;
};

/// Validates evenness of d, e, f and positive definiteness.
Sextuple make_sextuple(Int a, Int b, Int c, Int d, Int e, Int f);
Sextuple parse_sextuple(std::string_view text);
/// "a b c d e f"; parse_sextuple(render(s)) == s.
std::string render(const Sextuple& s);
GramLattice gram_from_sextuple(const Sextuple& s);

Int discriminant(const GramLattice& lattice);

struct ScaleNorm {
  Int scale;
  Int norm;
};
ScaleNorm scale_and_norm(const GramLattice& lattice);

/// A_{u,r} = {u k + r : k >= 0}.
struct ResidueClass {
  Int u;
  Int r;
  ResidueClass(Int modulus, Int residue);
  bool contains(Int n) const { return n >= r && (n - r) % u == 0; }
};

enum class FormStatus { PU_known, PU_type0, PU_type1, PU_type2, APU_type0, APU_type2 };

std::string_view to_string(FormStatus status);
FormStatus parse_status(std::string_view text);
bool is_primitively_universal(FormStatus status);
/// 0, 1 or 2 for the classified records; nullopt for PU_known.
std::optional<int> form_type(FormStatus status);

enum class CoreLabel { N1, N2, N3, N4, N5, N6, N7, N8, N9, N10, UnitExtension, UnitComplement };

std::string_view to_string(CoreLabel label);
CoreLabel parse_core_label(std::string_view text);

/// Q_d^k, rendered "Qd^k".
struct FormId {
  Int d = 0;
  Int k = 0;
  bool operator==(const FormId&) const = default;
  auto operator<=>(const FormId&) const = default;
};

std::string to_string(const FormId& id);
FormId parse_form_id(std::string_view text);

struct FormRecord {
  FormId id;
  Sextuple sextuple;
  FormStatus status = FormStatus::PU_known;
  std::optional<CoreLabel> core;
  std::vector<Int> exceptions;  // ascending

  GramLattice gram() const { return gram_from_sextuple(sextuple); }
  std::string name() const { return to_string(id); }
};

}  // namespace qform
