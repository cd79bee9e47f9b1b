#include "prymcheck/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "prymcheck/error.hpp"

#ifndef PRYMCHECK_VERSION
#define PRYMCHECK_VERSION "0.0.0"
#endif

namespace prymcheck {

namespace {

using Json = nlohmann::ordered_json;

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

Json matrix_json(const IntegerMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (const auto& v : m.row(i)) row.push_back(to_string(v));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json witness_json(const Witness& w) {
  return {{"sub", {{"label", w.sub_label}, {"hnf_basis", matrix_json(w.sub_basis)}}},
          {"sup", {{"label", w.sup_label}, {"hnf_basis", matrix_json(w.sup_basis)}}}};
}

Json datum_json(const IsogenyReport& r) {
  return {{"n", r.datum.n},
          {"genus", r.datum.genus},
          {"exponents", r.datum.exponents},
          {"s0", r.counts.s0},
          {"s1", r.counts.s1}};
}

Json config_json(const RunConfig& c) {
  Json j;
  j["mode"] = to_string(c.mode);
  j["n"] = c.n;
  j["genus"] = c.genus;
  j["exponents"] = c.exponents ? Json(*c.exponents) : Json(nullptr);
  j["samples"] = c.samples;
  j["seed"] = c.seed ? Json(*c.seed) : Json(nullptr);
  Json claims = Json::array();
  for (auto id : c.claims) claims.push_back(to_string(id));
  j["claims"] = std::move(claims);
  j["format"] = to_string(c.format);
  j["out"] = c.out;
  return j;
}

Json record_json(const IsogenyReport& r) {
  Json j;
  j["claim"] = to_string(r.claim);
  j["item"] = r.item;
  j["anchor"] = r.anchor;
  j["method"] = r.method;
  j["datum"] = datum_json(r);
  j["formula"] = r.formula;
  j["oracle"] = r.oracle;
  j["verdict"] = to_string(r.verdict);
  j["classification"] = r.classification;
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json cj{{"label", c.label}, {"anchor", c.anchor}, {"role", to_string(c.role)}};
    if (c.role != Check::Role::diagnostic) cj["expected"] = c.expected;
    cj["observed"] = c.observed;
    if (c.role != Check::Role::diagnostic) cj["agrees"] = c.agrees();
    if (c.witness) cj["witness"] = witness_json(*c.witness);
    checks.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks);
  if (r.witness) j["witness"] = witness_json(*r.witness);
  j["assumptions"] = r.assumptions;
  return j;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string md_cell(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

std::string exponents_text(const std::vector<std::int64_t>& k) {
  std::string out;
  for (std::size_t i = 0; i < k.size(); ++i) out += (i ? "," : "") + std::to_string(k[i]);
  return out;
}

std::string failed_checks(const IsogenyReport& r) {
  std::string out;
  for (const auto& c : r.checks) {
    if (c.agrees()) continue;
    if (!out.empty()) out += "; ";
    out += std::string(to_string(c.role)) + " " + c.label + ": expected " + c.expected + ", observed " + c.observed;
  }
  return out;
}

template <class T>
T field(const Json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("config: bad value for \"") + key + "\": " + e.what());
  }
}

}  // namespace

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::verify: return "verify";
    case Mode::sweep: return "sweep";
    case Mode::table: return "table";
    case Mode::selftest: return "selftest";
  }
  return "?";
}

std::string_view to_string(Format f) {
  switch (f) {
    case Format::json: return "json";
    case Format::csv: return "csv";
    case Format::markdown: return "markdown";
  }
  return "?";
}

std::optional<Mode> parse_mode(std::string_view s) {
  for (auto m : {Mode::verify, Mode::sweep, Mode::table, Mode::selftest})
    if (to_string(m) == lower(s)) return m;
  return std::nullopt;
}

std::optional<Format> parse_format(std::string_view s) {
  const auto l = lower(s);
  if (l == "md") return Format::markdown;
  for (auto f : {Format::json, Format::csv, Format::markdown})
    if (to_string(f) == l) return f;
  return std::nullopt;
}

void RunConfig::validate() const {
  if (mode == Mode::selftest) return;
  if (n < 2) throw InputError("n must be >= 2");
  if (genus < 2) throw InputError("genus must be >= 2");
  if (mode == Mode::verify && !exponents && !seed) {
    throw InputError("verify needs --exponents or --seed");
  }
  if (mode == Mode::sweep) {
    if (samples < 1) throw InputError("sweep needs --samples >= 1");
    if (exponents) throw InputError("sweep samples its own data; --exponents is not accepted");
  }
}

const std::vector<ClaimId>& RunConfig::claim_list() const { return claims.empty() ? all_claims() : claims; }

RunConfig parse_config(std::string_view json_text) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw InputError("config: top level must be an object");
  RunConfig c;
  for (const auto& [key, value] : j.items()) {
    if (key == "mode") {
      auto m = parse_mode(field<std::string>(j, "mode"));
      if (!m) throw InputError("config: unknown mode " + value.dump());
      c.mode = *m;
    } else if (key == "n") {
      c.n = field<std::int64_t>(j, "n");
    } else if (key == "genus") {
      c.genus = field<std::int64_t>(j, "genus");
    } else if (key == "exponents") {
      if (!value.is_null()) c.exponents = field<std::vector<std::int64_t>>(j, "exponents");
    } else if (key == "samples") {
      c.samples = field<std::uint64_t>(j, "samples");
    } else if (key == "seed") {
      if (!value.is_null()) c.seed = field<std::uint64_t>(j, "seed");
    } else if (key == "claims") {
      for (const auto& s : field<std::vector<std::string>>(j, "claims")) {
        auto id = parse_claim(s);
        if (!id) throw InputError("config: unknown claim " + s);
        c.claims.push_back(*id);
      }
    } else if (key == "format") {
      auto f = parse_format(field<std::string>(j, "format"));
      if (!f) throw InputError("config: unknown format " + value.dump());
      c.format = *f;
    } else if (key == "out") {
      c.out = field<std::string>(j, "out");
    } else if (key == "threads") {
      c.threads = field<unsigned>(j, "threads");
    } else {
      throw InputError("config: unknown key \"" + key + "\"");
    }
  }
  return c;
}

Summary summarize(const std::vector<IsogenyReport>& records) {
  Summary s;
  for (const auto& r : records) {
    switch (r.verdict) {
      case Verdict::pass: ++s.pass; break;
      case Verdict::skip: ++s.skip; break;
      case Verdict::fail:
        ++s.fail;
        (r.classification.starts_with("fault") ? s.faults : s.findings) += 1;
        break;
    }
  }
  return s;
}

std::string_view tool_version() { return PRYMCHECK_VERSION; }

VerificationReport make_report(const RunConfig& config, std::vector<IsogenyReport> records) {
  VerificationReport r;
  r.version = std::string(tool_version());
  r.config = config;
  r.records = std::move(records);
  r.summary = summarize(r.records);
  std::set<std::string> flags;
  for (const auto& rec : r.records) flags.insert(rec.assumptions.begin(), rec.assumptions.end());
  r.assumptions.assign(flags.begin(), flags.end());
  return r;
}

std::string to_json(const VerificationReport& r) {
  Json j;
  j["version"] = r.version;
  j["config"] = config_json(r.config);
  Json records = Json::array();
  for (const auto& rec : r.records) records.push_back(record_json(rec));
  j["records"] = std::move(records);
  j["summary"] = {{"pass", r.summary.pass},
                  {"fail", r.summary.fail},
                  {"skip", r.summary.skip},
                  {"findings", r.summary.findings},
                  {"faults", r.summary.faults}};
  j["assumptions"] = r.assumptions;
  return j.dump(2) + "\n";
}

std::string to_csv(const VerificationReport& r) {
  std::ostringstream os;
  os << "claim,item,n,genus,exponents,s0,s1,formula,oracle,verdict,classification,anchor,method,failed_checks\n";
  for (const auto& rec : r.records) {
    os << to_string(rec.claim) << ',' << csv_field(rec.item) << ',' << rec.datum.n << ',' << rec.datum.genus << ','
       << csv_field(exponents_text(rec.datum.exponents)) << ',' << rec.counts.s0 << ',' << rec.counts.s1 << ','
       << rec.formula << ',' << rec.oracle << ',' << to_string(rec.verdict) << ',' << csv_field(rec.classification)
       << ',' << csv_field(rec.anchor) << ',' << csv_field(rec.method) << ',' << csv_field(failed_checks(rec))
       << '\n';
  }
  return os.str();
}

std::string to_markdown(const VerificationReport& r) {
  std::ostringstream os;
  os << "# prymcheck report\n\n";
  os << "- version: " << r.version << "\n";
  os << "- config: `" << config_json(r.config).dump() << "`\n";
  os << "- summary: " << r.summary.pass << " pass, " << r.summary.fail << " fail (" << r.summary.findings
     << " findings, " << r.summary.faults << " faults), " << r.summary.skip << " skip\n";
  if (!r.assumptions.empty()) {
    os << "\n## Assumptions\n\n";
    for (const auto& a : r.assumptions) os << "- " << a << "\n";
  }
  os << "\n## Records\n\n";
  os << "| claim | item | datum | s0 | s1 | formula | oracle | verdict | classification |\n";
  os << "|---|---|---|---|---|---|---|---|---|\n";
  for (const auto& rec : r.records) {
    os << "| " << to_string(rec.claim) << " | " << md_cell(rec.item) << " | n=" << rec.datum.n
       << " g=" << rec.datum.genus << " k=(" << exponents_text(rec.datum.exponents) << ") | " << rec.counts.s0
       << " | " << rec.counts.s1 << " | " << rec.formula << " | " << rec.oracle << " | "
       << to_string(rec.verdict) << " | " << md_cell(rec.classification) << " |\n";
  }
  bool header = false;
  for (const auto& rec : r.records) {
    const auto failed = failed_checks(rec);
    if (failed.empty()) continue;
    if (!header) {
      os << "\n## Disagreeing checks\n\n";
      header = true;
    }
    os << "- " << to_string(rec.claim) << " (n=" << rec.datum.n << ", k=(" << exponents_text(rec.datum.exponents)
       << ")): " << md_cell(failed) << "\n";
  }
  return os.str();
}

std::string render(const VerificationReport& r, Format f) {
  switch (f) {
    case Format::json: return to_json(r);
    case Format::csv: return to_csv(r);
    case Format::markdown: return to_markdown(r);
  }
  return {};
}

}  // namespace prymcheck
