#include "qform/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace qform {

using nlohmann::json;

const FormRecord* Corpus::try_find(const FormId& id) const {
  for (const auto& r : records)
    if (r.id == id) return &r;
  return nullptr;
}

const FormRecord& Corpus::find(const FormId& id) const {
  if (const auto* r = try_find(id)) return *r;
  throw CorpusError("form " + to_string(id) + " is not in the corpus");
}

const GramLattice& Corpus::core_gram(CoreLabel label) const {
  auto it = cores.find(label);
  if (it == cores.end())
    throw CorpusError("corpus has no Gram matrix for core " + std::string(to_string(label)));
  return it->second;
}

std::size_t Corpus::count_pu() const {
  return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const auto& r) {
    return is_primitively_universal(r.status);
  }));
}

std::size_t Corpus::count_apu() const { return records.size() - count_pu(); }

namespace {

FormRecord parse_record(const json& j) {
  FormRecord rec;
  rec.id = parse_form_id(j.at("id").get<std::string>());
  if (j.at("d").get<Int>() != rec.id.d || j.at("k").get<Int>() != rec.id.k)
    throw CorpusError("d/k fields disagree with the id");
  auto s = j.at("sextuple").get<std::vector<Int>>();
  if (s.size() != 6) throw CorpusError("sextuple must have six entries");
  rec.sextuple = make_sextuple(s[0], s[1], s[2], s[3], s[4], s[5]);
  rec.status = parse_status(j.at("status").get<std::string>());
  if (!j.at("core").is_null()) rec.core = parse_core_label(j.at("core").get<std::string>());
  rec.exceptions = j.at("exceptions").get<std::vector<Int>>();

  if (discriminant(rec.gram()) != rec.id.d)
    throw CorpusError("discriminant " + std::to_string(discriminant(rec.gram())) +
                      " does not match d = " + std::to_string(rec.id.d));
  if (!std::is_sorted(rec.exceptions.begin(), rec.exceptions.end()) ||
      std::adjacent_find(rec.exceptions.begin(), rec.exceptions.end()) != rec.exceptions.end())
    throw CorpusError("exception set must be strictly increasing");
  if (!rec.exceptions.empty() && rec.exceptions.front() < 1)
    throw CorpusError("exception set must contain positive integers");
  const bool pu = is_primitively_universal(rec.status);
  if (pu && !rec.exceptions.empty())
    throw CorpusError("primitively universal record lists exceptions");
  if (!pu && rec.exceptions.empty())
    throw CorpusError("almost universal record has no exceptions");
  auto type = form_type(rec.status);
  const bool needs_core = type && *type != 0;
  if (needs_core != rec.core.has_value())
    throw CorpusError(needs_core ? "type 1/2 record needs a core label"
                                 : "record must not carry a core label");
  return rec;
}

}  // namespace

Corpus load_corpus(std::istream& in, CorpusOptions options) {
  Corpus corpus;
  std::set<FormId> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::string context = "corpus line " + std::to_string(line_no);
    try {
      json j = json::parse(line);
      if (j.contains("kind") && j.at("kind") == "core") {
        auto label = parse_core_label(j.at("label").get<std::string>());
        auto rows = j.at("gram").get<std::vector<Vec>>();
        corpus.cores.insert_or_assign(label, GramLattice(IntMatrix::from_rows(rows)));
        continue;
      }
      if (j.contains("id")) context += " (" + j.at("id").get<std::string>() + ")";
      FormRecord rec = parse_record(j);
      if (!seen.insert(rec.id).second) throw CorpusError("duplicate id");
      corpus.records.push_back(std::move(rec));
    } catch (const CorpusError& e) {
      throw CorpusError(context + ": " + e.what());
    } catch (const Error& e) {
      throw CorpusError(context + ": " + e.what());
    } catch (const json::exception& e) {
      throw CorpusError(context + ": " + e.what());
    }
  }
  for (const auto& rec : corpus.records) {
    if (!rec.core) continue;
    if (*rec.core != CoreLabel::UnitComplement && !corpus.cores.contains(*rec.core))
      throw CorpusError(rec.name() + ": core " + std::string(to_string(*rec.core)) +
                        " has no Gram matrix in the corpus");
  }
  if (options.require_full &&
      (corpus.count_pu() != kExpectedPu || corpus.count_apu() != kExpectedApu))
    throw CorpusError("corpus has " + std::to_string(corpus.count_pu()) + " PU and " +
                      std::to_string(corpus.count_apu()) + " APU records, expected 107 and 45");
  return corpus;
}

Corpus load_corpus_file(const std::string& path, CorpusOptions options) {
  std::ifstream in(path);
  if (!in) throw CorpusError("cannot open corpus file '" + path + "'");
  return load_corpus(in, options);
}

const Corpus& embedded_corpus() {
  static const Corpus corpus = [] {
    std::istringstream in{std::string(embedded_corpus_text())};
    return load_corpus(in);
  }();
  return corpus;
}

}  // namespace qform
