#include "qform/cli.hpp"

#include <cstdlib>
#include <map>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qform/corpus.hpp"
#include "qform/enumerate.hpp"
#include "qform/isometry.hpp"
#include "qform/local.hpp"
#include "qform/transform.hpp"

namespace qform::cli {

namespace {

using nlohmann::ordered_json;

struct UsageError : Error {
  using Error::Error;
};

struct ResolvedForm {
  std::string name;
  GramLattice lattice;
};

ResolvedForm resolve_form(const std::string& text, const Corpus& corpus) {
  if (text.empty()) throw UsageError("missing form");
  if (text[0] == 'Q') {
    const FormId id = parse_form_id(text);
    const FormRecord* record = corpus.try_find(id);
    if (!record) throw UsageError("form " + text + " is not in the corpus");
    return {record->name(), record->gram()};
  }
  if (text[0] == 'N' || text.rfind("unit_", 0) == 0) {
    const CoreLabel label = parse_core_label(text);
    return {std::string(to_string(label)), corpus.core_gram(label)};
  }
  const Sextuple s = parse_sextuple(text);
  return {render(s), gram_from_sextuple(s)};
}

std::pair<Int, Int> parse_window(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("window must be LO:HI");
  try {
    std::size_t used = 0;
    Int lo = std::stoll(text.substr(0, colon), &used);
    if (used != colon) throw UsageError("window must be LO:HI");
    const std::string rest = text.substr(colon + 1);
    Int hi = std::stoll(rest, &used);
    if (used != rest.size()) throw UsageError("window must be LO:HI");
    if (lo < 1 || hi < lo) throw UsageError("window must satisfy 1 <= LO <= HI");
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw UsageError("window must be LO:HI");
  }
}

ordered_json matrix_json(const IntMatrix& m) { return m.to_rows(); }

std::string vec_text(const Vec& v) {
  std::ostringstream out;
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << v[i];
  return out.str();
}

std::string matrix_text(const IntMatrix& m) {
  std::ostringstream out;
  for (std::size_t i = 0; i < m.rows(); ++i) out << (i ? "; " : "") << vec_text(m.row(i));
  return out.str();
}

// Flat key/value output shared by the non-verify commands.
struct Table {
  std::vector<std::pair<std::string, ordered_json>> fields;
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;

  void set(std::string key, ordered_json value) { fields.emplace_back(std::move(key), std::move(value)); }

  void emit(ReportFormat format, std::ostream& out) const {
    switch (format) {
      case ReportFormat::Json: {
        ordered_json j = ordered_json::object();
        for (const auto& [k, v] : fields) j[k] = v;
        out << j.dump(2) << '\n';
        break;
      }
      case ReportFormat::Csv:
        for (std::size_t i = 0; i < csv_header.size(); ++i) out << (i ? "," : "") << csv_header[i];
        out << '\n';
        for (const auto& row : csv_rows) {
          for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
          out << '\n';
        }
        break;
      case ReportFormat::Text:
        for (const auto& [k, v] : fields) {
          if (v.is_string()) out << k << ": " << v.get<std::string>() << '\n';
          else out << k << ": " << v.dump() << '\n';
        }
        break;
    }
  }
};

int cmd_enumerate(const CliConfig& c, const Corpus& corpus, std::ostream& out) {
  const ResolvedForm f = resolve_form(c.form, corpus);
  if (c.n < 0) throw UsageError("--n must be nonnegative");
  const auto witnesses = vectors_with_norm(f.lattice, c.n);
  Table t;
  t.set("form", f.name);
  t.set("n", c.n);
  t.set("count", witnesses.size());
  std::size_t primitive = 0;
  ordered_json list = ordered_json::array();
  t.csv_header = {"coords", "primitive"};
  for (const auto& w : witnesses) {
    primitive += w.primitive ? 1 : 0;
    list.push_back({{"coords", w.coords}, {"primitive", w.primitive}});
    t.csv_rows.push_back({vec_text(w.coords), w.primitive ? "true" : "false"});
  }
  t.set("primitive_count", primitive);
  t.set("witnesses", list);
  t.emit(c.format, out);
  return kOk;
}

int cmd_exceptions(const CliConfig& c, const Corpus& corpus, std::ostream& out) {
  const ResolvedForm f = resolve_form(c.form, corpus);
  const Int bound = c.bound.value_or(kDefaultTableBound);
  const auto scan = exception_scan(f.lattice, bound, {.workers = c.workers});
  Table t;
  t.set("form", f.name);
  t.set("bound", bound);
  t.set("missing", scan.missing);
  t.csv_header = {"missing"};
  for (Int n : scan.missing) t.csv_rows.push_back({std::to_string(n)});
  t.emit(c.format, out);
  return kOk;
}

void isometry_fields(Table& t, const std::optional<IsometryWitness>& w) {
  t.set("isometric", w.has_value());
  t.set("witness", w ? matrix_json(w->matrix) : ordered_json(nullptr));
  t.csv_rows.back().push_back(w ? "true" : "false");
  t.csv_rows.back().push_back(w ? matrix_text(w->matrix) : "");
}

int cmd_lambda2(const CliConfig& c, const Corpus& corpus, std::ostream& out) {
  const ResolvedForm f = resolve_form(c.form, corpus);
  const Sublattice sub = lambda2_sublattice(f.lattice);
  const GramLattice image = lambda2(f.lattice);
  Table t;
  t.set("form", f.name);
  t.set("even_sublattice_basis", matrix_json(sub.basis.transpose()));
  t.set("lambda2", matrix_json(image.gram()));
  t.csv_header = {"form", "lambda2"};
  t.csv_rows.push_back({f.name, matrix_text(image.gram())});
  int code = kOk;
  if (c.check_isometric) {
    const ResolvedForm g = resolve_form(*c.check_isometric, corpus);
    t.set("target", g.name);
    t.csv_header.insert(t.csv_header.end(), {"target", "isometric", "witness"});
    t.csv_rows.back().push_back(g.name);
    const auto w = is_isometric(image, g.lattice);
    isometry_fields(t, w);
    code = w ? kOk : kFailed;
  }
  t.emit(c.format, out);
  return code;
}

int cmd_isometric(const CliConfig& c, const Corpus& corpus, std::ostream& out) {
  const ResolvedForm f = resolve_form(c.form, corpus);
  const ResolvedForm g = resolve_form(c.form2, corpus);
  const auto w = is_isometric(f.lattice, g.lattice);
  Table t;
  t.set("form", f.name);
  t.set("form2", g.name);
  t.csv_header = {"form", "form2", "isometric", "witness"};
  t.csv_rows.push_back({f.name, g.name});
  isometry_fields(t, w);
  t.emit(c.format, out);
  return w ? kOk : kFailed;
}

int cmd_localrep(const CliConfig& c, const Corpus& corpus, std::ostream& out) {
  const ResolvedForm f = resolve_form(c.form, corpus);
  if (c.n < 1) throw UsageError("--n must be positive");
  if (!is_prime(c.p)) throw UsageError("--p must be prime");
  const bool represented = c.primitive ? primitively_represented_over_zp(f.lattice, c.n, c.p)
                                       : represented_over_zp(f.lattice, c.n, c.p);
  Table t;
  t.set("form", f.name);
  t.set("n", c.n);
  t.set("p", c.p);
  t.set("primitive", c.primitive);
  t.set("represented", represented);
  t.csv_header = {"form", "n", "p", "primitive", "represented"};
  t.csv_rows.push_back({f.name, std::to_string(c.n), std::to_string(c.p), c.primitive ? "true" : "false",
                        represented ? "true" : "false"});
  t.emit(c.format, out);
  return kOk;
}

int cmd_verify(const CliConfig& c, const Corpus& corpus, std::ostream& out) {
  SuiteOptions options;
  options.bound = c.bound;
  options.window = c.window;
  options.workers = c.workers;
  const auto reports = run_suite(parse_suite(c.suite), options, corpus);
  out << render_reports(reports, c.format, {.timing = c.timing});
  const bool ok = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed; });
  return ok ? kOk : kFailed;
}

int cmd_corpus(const CliConfig& c, const Corpus& corpus, std::ostream& out) {
  std::map<std::string, std::size_t> by_status, by_core;
  std::size_t exceptions = 0;
  for (const auto& r : corpus.records) {
    ++by_status[std::string(to_string(r.status))];
    if (r.core) ++by_core[std::string(to_string(*r.core))];
    exceptions += r.exceptions.size();
  }
  Table t;
  t.set("forms", corpus.records.size());
  t.set("primitively_universal", corpus.count_pu());
  t.set("almost_universal", corpus.count_apu());
  t.set("claimed_exceptions", exceptions);
  ordered_json status = ordered_json::object(), core = ordered_json::object();
  t.csv_header = {"key", "value"};
  t.csv_rows = {{"forms", std::to_string(corpus.records.size())},
                {"primitively_universal", std::to_string(corpus.count_pu())},
                {"almost_universal", std::to_string(corpus.count_apu())}};
  for (const auto& [k, v] : by_status) {
    status[k] = v;
    t.csv_rows.push_back({"status:" + k, std::to_string(v)});
  }
  for (const auto& [k, v] : by_core) {
    core[k] = v;
    t.csv_rows.push_back({"core:" + k, std::to_string(v)});
  }
  t.set("by_status", status);
  t.set("by_core", core);
  if (!c.stats) {
    ordered_json ids = ordered_json::array();
    for (const auto& r : corpus.records) ids.push_back(r.name());
    t.set("ids", ids);
  }
  t.emit(c.format, out);
  return kOk;
}

}  // namespace

std::optional<CliConfig> parse_args(const std::vector<std::string>& args, std::ostream& out) {
  CliConfig c;
  c.workers = std::max(1u, std::thread::hardware_concurrency());
  std::string format = "json";
  std::string window;
  std::optional<std::string> corpus_path;

  CLI::App app{"Exact toolkit for positive-definite integral quadratic forms", "qform"};
  app.require_subcommand(1);
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--workers", c.workers, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--corpus", corpus_path, "Corpus file (JSON lines); default: embedded");
  app.add_flag("!--no-timing", c.timing, "Omit wall-clock timings from reports");

  auto* enumerate = app.add_subcommand("enumerate", "List all vectors of norm N");
  enumerate->add_option("--form", c.form, "Qd^k, sextuple, or core label")->required();
  enumerate->add_option("--n", c.n, "Norm")->required();

  auto* exceptions = app.add_subcommand("exceptions", "Integers up to B without primitive representation");
  exceptions->add_option("--form", c.form)->required();
  exceptions->add_option("--bound", c.bound)->check(CLI::PositiveNumber);

  auto* lambda2 = app.add_subcommand("lambda2", "Watson lambda_2 transformation");
  lambda2->add_option("--form", c.form)->required();
  lambda2->add_option("--check-isometric", c.check_isometric, "Expected image");

  auto* isometric = app.add_subcommand("isometric", "Isometry test with witness");
  isometric->add_option("--form", c.form)->required();
  isometric->add_option("--form2", c.form2)->required();

  auto* localrep = app.add_subcommand("localrep", "Representation over the p-adic integers");
  localrep->add_option("--form", c.form)->required();
  localrep->add_option("--n", c.n)->required();
  localrep->add_option("--p", c.p)->required();
  localrep->add_flag("--primitive", c.primitive);

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("--suite", c.suite)->required()->check(
      CLI::IsMember({"watson", "lemmas", "recipes", "tables", "all"}));
  verify->add_option("--bound", c.bound)->check(CLI::PositiveNumber);
  verify->add_option("--window", window, "Recipe window LO:HI");

  auto* corpus = app.add_subcommand("corpus", "Corpus summary");
  corpus->add_flag("--stats", c.stats);

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw ParseError(e.what());
  }
  c.command = app.get_subcommands().front()->get_name();
  c.format = parse_report_format(format);
  c.corpus_path = corpus_path;
  if (!window.empty()) c.window = parse_window(window);
  return c;
}

int run(const CliConfig& config, std::ostream& out, std::ostream& err) {
  std::optional<Corpus> loaded;
  if (config.corpus_path) loaded = load_corpus_file(*config.corpus_path);
  const Corpus& corpus = loaded ? *loaded : embedded_corpus();
  try {
    if (config.command == "enumerate") return cmd_enumerate(config, corpus, out);
    if (config.command == "exceptions") return cmd_exceptions(config, corpus, out);
    if (config.command == "lambda2") return cmd_lambda2(config, corpus, out);
    if (config.command == "isometric") return cmd_isometric(config, corpus, out);
    if (config.command == "localrep") return cmd_localrep(config, corpus, out);
    if (config.command == "verify") return cmd_verify(config, corpus, out);
    if (config.command == "corpus") return cmd_corpus(config, corpus, out);
  } catch (const UsageError& e) {
    err << "qform: " << e.what() << '\n';
    return kUsage;
  }
  err << "qform: unknown command '" << config.command << "'\n";
  return kUsage;
}

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    auto config = parse_args(args, out);
    if (!config) return kOk;
    if (!config->corpus_path) {
      if (const char* env = std::getenv("QFORM_CORPUS"); env && *env) config->corpus_path = env;
    }
    return run(*config, out, err);
  } catch (const CorpusError& e) {
    err << "qform: corpus error: " << e.what() << '\n';
    return kCorpus;
  } catch (const OverflowError& e) {
    err << "qform: overflow: " << e.what() << '\n';
    return kOverflow;
  } catch (const UsageError& e) {
    err << "qform: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "qform: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidForm& e) {
    err << "qform: invalid form: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "qform: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "qform: " << e.what() << '\n';
    return kFailed;
  }
}

}  // namespace qform::cli
