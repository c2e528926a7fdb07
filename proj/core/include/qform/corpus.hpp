#pragma once

#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qform/forms.hpp"

namespace qform {

/// The form corpus together with the Gram matrices of the named cores.
struct Corpus {
  std::vector<FormRecord> records;  // file order
  std::map<CoreLabel, GramLattice> cores;

  const FormRecord& find(const FormId& id) const;
  const FormRecord* try_find(const FormId& id) const;
  const GramLattice& core_gram(CoreLabel label) const;

  std::size_t count_pu() const;
  std::size_t count_apu() const;
};

struct CorpusOptions {
  /// Enforce the 107 + 45 record totals.
  bool require_full = true;
};

inline constexpr std::size_t kExpectedPu = 107;
inline constexpr std::size_t kExpectedApu = 45;

/// Parses and validates the JSON-lines corpus. Throws CorpusError naming the
/// first offending line.
Corpus load_corpus(std::istream& in, CorpusOptions options = {});
Corpus load_corpus_file(const std::string& path, CorpusOptions options = {});

/// Corpus compiled into the library; parsed once on first use.
const Corpus& embedded_corpus();
std::string_view embedded_corpus_text();

}  // namespace qform
