#include "qform/forms.hpp"

#include <array>
#include <charconv>
#include <cctype>

namespace qform {

GramLattice::GramLattice(IntMatrix gram) : gram_(std::move(gram)) {
  const std::size_t n = gram_.rows();
  if (n == 0 || n > kMaxRank) throw InvalidForm("lattice rank must be between 1 and 6");
  if (gram_.cols() != n) throw InvalidForm("Gram matrix is not square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (gram_(i, j) != gram_(j, i)) throw InvalidForm("Gram matrix is not symmetric");
  std::vector<std::size_t> leading;
  for (std::size_t k = 0; k < n; ++k) {
    leading.push_back(k);
    if (principal_minor(gram_, leading) <= 0)
      throw InvalidForm("Gram matrix is not positive definite");
  }
}

GramLattice GramLattice::diagonal(const Vec& entries) {
  IntMatrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return GramLattice(std::move(m));
}

Int GramLattice::norm(const Vec& v) const { return narrow(evaluate(gram_, v)); }

Int GramLattice::pairing(const Vec& u, const Vec& v) const {
  return narrow(bilinear(gram_, u, v));
}

Sextuple make_sextuple(Int a, Int b, Int c, Int d, Int e, Int f) {
  if (d % 2 != 0 || e % 2 != 0 || f % 2 != 0)
    throw InvalidForm("sextuple cross terms d, e, f must be even");
  if (a <= 0 || b <= 0 || c <= 0 || d < 0 || e < 0 || f < 0)
    throw InvalidForm("sextuple entries out of range");
  Sextuple s{a, b, c, d, e, f};
  (void)gram_from_sextuple(s);  // positive definiteness
  return s;
}

Sextuple parse_sextuple(std::string_view text) {
  std::array<Int, 6> v{};
  std::size_t count = 0;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ','))
      ++i;
  };
  std::size_t start = 0;
  while (start < text.size() && std::isspace(static_cast<unsigned char>(text[start]))) ++start;
  std::size_t end = text.size();
  while (end > start && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  if (end > start && text[start] == '(' && text[end - 1] == ')') text = text.substr(start + 1, end - start - 2);
  skip();
  while (i < text.size()) {
    if (count == 6) throw ParseError("sextuple has more than six entries");
    Int value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), value);
    if (ec != std::errc() || ptr == text.data() + i)
      throw ParseError("malformed sextuple: '" + std::string(text) + "'");
    if (value < 0) throw ParseError("sextuple entries must be nonnegative");
    i = static_cast<std::size_t>(ptr - text.data());
    if (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != ',')
      throw ParseError("malformed sextuple: '" + std::string(text) + "'");
    v[count++] = value;
    skip();
  }
  if (count != 6) throw ParseError("sextuple needs exactly six entries");
  return make_sextuple(v[0], v[1], v[2], v[3], v[4], v[5]);
}

std::string render(const Sextuple& s) {
  return std::to_string(s.a) + " " + std::to_string(s.b) + " " + std::to_string(s.c) + " " +
         std::to_string(s.d) + " " + std::to_string(s.e) + " " + std::to_string(s.f);
}

GramLattice gram_from_sextuple(const Sextuple& s) {
  IntMatrix m(4, 4);
  m(0, 0) = 1;
  m(1, 1) = s.a;
  m(2, 2) = s.b;
  m(3, 3) = s.c;
  m(1, 2) = m(2, 1) = s.f / 2;
  m(1, 3) = m(3, 1) = s.e / 2;
  m(2, 3) = m(3, 2) = s.d / 2;
  return GramLattice(std::move(m));
}

Int discriminant(const GramLattice& lattice) { return narrow(determinant(lattice.gram())); }

ScaleNorm scale_and_norm(const GramLattice& lattice) {
  Int s = 0, diag = 0;
  for (std::size_t i = 0; i < lattice.rank(); ++i) {
    diag = gcd(diag, lattice(i, i));
    for (std::size_t j = 0; j < lattice.rank(); ++j) s = gcd(s, lattice(i, j));
  }
  return {s, gcd(diag, 2 * s)};
}

ResidueClass::ResidueClass(Int modulus, Int residue) : u(modulus), r(residue) {
  if (u < 1 || r < 0 || r >= u) throw DomainError("residue class needs 0 <= r < u");
}

namespace {

constexpr std::array<std::string_view, 6> kStatusNames = {
    "PU_known", "PU_type0", "PU_type1", "PU_type2", "APU_type0", "APU_type2"};

constexpr std::array<std::string_view, 12> kCoreNames = {
    "N1", "N2", "N3", "N4", "N5", "N6", "N7", "N8", "N9", "N10", "unit_extension", "unit_complement"};

}  // namespace

std::string_view to_string(FormStatus status) { return kStatusNames[static_cast<int>(status)]; }

FormStatus parse_status(std::string_view text) {
  for (std::size_t i = 0; i < kStatusNames.size(); ++i)
    if (kStatusNames[i] == text) return static_cast<FormStatus>(i);
  throw ParseError("unknown form status '" + std::string(text) + "'");
}

bool is_primitively_universal(FormStatus status) {
  return status == FormStatus::PU_known || status == FormStatus::PU_type0 ||
         status == FormStatus::PU_type1 || status == FormStatus::PU_type2;
}

std::optional<int> form_type(FormStatus status) {
  switch (status) {
    case FormStatus::PU_known: return std::nullopt;
    case FormStatus::PU_type0:
    case FormStatus::APU_type0: return 0;
    case FormStatus::PU_type1: return 1;
    case FormStatus::PU_type2:
    case FormStatus::APU_type2: return 2;
  }
  return std::nullopt;
}

std::string_view to_string(CoreLabel label) { return kCoreNames[static_cast<int>(label)]; }

CoreLabel parse_core_label(std::string_view text) {
  for (std::size_t i = 0; i < kCoreNames.size(); ++i)
    if (kCoreNames[i] == text) return static_cast<CoreLabel>(i);
  throw ParseError("unknown core label '" + std::string(text) + "'");
}

std::string to_string(const FormId& id) {
  return "Q" + std::to_string(id.d) + "^" + std::to_string(id.k);
}

FormId parse_form_id(std::string_view text) {
  auto fail = [&]() -> FormId { throw ParseError("malformed form id '" + std::string(text) + "'"); };
  if (text.size() < 4 || text[0] != 'Q') return fail();
  auto caret = text.find('^');
  if (caret == std::string_view::npos) return fail();
  FormId id;
  auto d = text.substr(1, caret - 1), k = text.substr(caret + 1);
  auto r1 = std::from_chars(d.data(), d.data() + d.size(), id.d);
  auto r2 = std::from_chars(k.data(), k.data() + k.size(), id.k);
  if (r1.ec != std::errc() || r1.ptr != d.data() + d.size() || r2.ec != std::errc() ||
      r2.ptr != k.data() + k.size() || id.d < 1 || id.k < 1)
    return fail();
  return id;
}

}  // namespace qform
