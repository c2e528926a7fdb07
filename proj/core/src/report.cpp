#include <algorithm>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qform/verify.hpp"

namespace qform {

namespace {

using nlohmann::ordered_json;

ordered_json finding_json(const Finding& f) {
  ordered_json j;
  j["step"] = f.step;
  j["n"] = f.n;
  j["detail"] = f.detail;
  j["witness"] = f.witness ? ordered_json(*f.witness) : ordered_json(nullptr);
  return j;
}

ordered_json report_json(const VerificationReport& r, const RenderOptions& options) {
  ordered_json j;
  j["check_id"] = r.check_id;
  ordered_json params = ordered_json::object();
  for (const auto& [key, value] : r.params) params[key] = value;
  j["params"] = params;
  j["lo"] = r.lo;
  j["hi"] = r.hi;
  j["passed"] = r.passed;
  j["counterexamples"] = ordered_json::array();
  for (const auto& f : r.counterexamples) j["counterexamples"].push_back(finding_json(f));
  j["notes"] = ordered_json::array();
  for (const auto& f : r.notes) j["notes"].push_back(finding_json(f));
  if (options.timing) j["wall_time_ms"] = r.wall_time_ms;
  return j;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string witness_text(const std::optional<Vec>& w) {
  if (!w) return "";
  std::ostringstream out;
  for (std::size_t i = 0; i < w->size(); ++i) out << (i ? " " : "") << (*w)[i];
  return out.str();
}

}  // namespace

ReportFormat parse_report_format(std::string_view text) {
  if (text == "json") return ReportFormat::Json;
  if (text == "csv") return ReportFormat::Csv;
  if (text == "text") return ReportFormat::Text;
  throw ParseError("unknown format '" + std::string(text) + "'");
}

std::string render_reports(const std::vector<VerificationReport>& reports, ReportFormat format,
                           RenderOptions options) {
  std::ostringstream out;
  switch (format) {
    case ReportFormat::Json: {
      ordered_json j;
      j["passed"] = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed; });
      j["reports"] = ordered_json::array();
      for (const auto& r : reports) j["reports"].push_back(report_json(r, options));
      out << j.dump(2) << '\n';
      break;
    }
    case ReportFormat::Csv: {
      out << "check_id,lo,hi,passed,kind,step,n,detail,witness";
      if (options.timing) out << ",wall_time_ms";
      out << '\n';
      auto row = [&](const VerificationReport& r, const char* kind, const Finding* f) {
        out << csv_field(r.check_id) << ',' << r.lo << ',' << r.hi << ',' << (r.passed ? "true" : "false") << ','
            << kind << ',';
        if (f) out << csv_field(f->step) << ',' << f->n << ',' << csv_field(f->detail) << ',' << witness_text(f->witness);
        else out << ",,,";
        if (options.timing) out << ',' << std::fixed << std::setprecision(1) << r.wall_time_ms;
        out << '\n';
      };
      for (const auto& r : reports) {
        row(r, "summary", nullptr);
        for (const auto& f : r.counterexamples) row(r, "counterexample", &f);
        for (const auto& f : r.notes) row(r, "note", &f);
      }
      break;
    }
    case ReportFormat::Text: {
      std::size_t width = 8;
      for (const auto& r : reports) width = std::max(width, r.check_id.size());
      std::size_t failed = 0;
      for (const auto& r : reports) {
        out << std::left << std::setw(static_cast<int>(width)) << r.check_id << "  " << (r.passed ? "PASS" : "FAIL")
            << "  [" << r.lo << ", " << r.hi << "]";
        if (options.timing) out << "  " << std::fixed << std::setprecision(1) << r.wall_time_ms << " ms";
        out << '\n';
        for (const auto& f : r.counterexamples) {
          out << "    counterexample " << f.step << " n=" << f.n << ": " << f.detail;
          if (f.witness) out << " [" << witness_text(f.witness) << "]";
          out << '\n';
        }
        for (const auto& f : r.notes) out << "    note " << f.step << " n=" << f.n << ": " << f.detail << '\n';
        failed += r.passed ? 0 : 1;
      }
      out << reports.size() - failed << "/" << reports.size() << " checks passed\n";
      break;
    }
  }
  return out.str();
}

}  // namespace qform
