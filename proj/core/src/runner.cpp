#include "prymcheck/runner.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <exception>
#include <sstream>
#include <thread>

#include "prymcheck/error.hpp"

namespace prymcheck {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::vector<std::uint64_t> sweep_seeds(std::uint64_t seed, std::uint64_t samples) {
  std::vector<std::uint64_t> out(samples);
  for (std::uint64_t i = 0; i < samples; ++i) out[i] = splitmix64(seed + i);
  return out;
}

std::vector<IsogenyReport> verify_datum(const MonodromyDatum& d, const std::vector<ClaimId>& claims) {
  require_valid(d);
  ClaimVerifier v(d);
  std::vector<IsogenyReport> out;
  for (auto c : claims) {
    auto recs = v.verify(c);
    out.insert(out.end(), std::make_move_iterator(recs.begin()), std::make_move_iterator(recs.end()));
  }
  return out;
}

MonodromyDatum resolve_datum(const RunConfig& c) {
  if (c.exponents) return {c.n, c.genus, *c.exponents};
  if (!c.seed) throw InputError("verify needs --exponents or --seed");
  return sample_datum(c.n, c.genus, *c.seed).datum;
}

VerificationReport run_verify(const RunConfig& c) {
  c.validate();
  return make_report(c, verify_datum(resolve_datum(c), c.claim_list()));
}

VerificationReport run_sweep(const RunConfig& c) {
  c.validate();
  const auto seeds = sweep_seeds(c.seed.value_or(0), c.samples);
  std::vector<std::vector<IsogenyReport>> per(seeds.size());
  std::vector<std::exception_ptr> errors(seeds.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < seeds.size(); i = next++) {
      try {
        per[i] = verify_datum(sample_datum(c.n, c.genus, seeds[i]).datum, c.claim_list());
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  unsigned threads = c.threads != 0 ? c.threads : std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, seeds.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<IsogenyReport> records;
  for (auto& v : per) records.insert(records.end(), std::make_move_iterator(v.begin()), std::make_move_iterator(v.end()));
  return make_report(c, std::move(records));
}

VerificationReport run_selftest(const RunConfig& c) {
  static const std::vector<MonodromyDatum> data{
      {3, 2, {0, 0, 0, 0, 1, 1}}, {4, 2, {0, 0, 0, 0, 1, 1}}, {4, 2, {0, 0, 1, 1, 1, 1}},
      {6, 2, {0, 0, 0, 0, 1, 1}}, {8, 2, {0, 0, 0, 0, 1, 1}}, {8, 2, {0, 0, 1, 1, 3, 3}},
      {12, 2, {0, 0, 0, 0, 1, 1}},
  };
  std::vector<IsogenyReport> records;
  for (const auto& d : data) {
    auto recs = verify_datum(d, c.claim_list());
    records.insert(records.end(), std::make_move_iterator(recs.begin()), std::make_move_iterator(recs.end()));
  }
  return make_report(c, std::move(records));
}

std::vector<TableCell> degree_table(const RunConfig& c) {
  if (c.n < 2 || c.genus < 2) throw InputError("table needs n >= 2 and genus >= 2");
  std::vector<TableCell> out;
  for (std::int64_t n = 2; n <= c.n; ++n) {
    const auto split = two_adic_split(n);
    for (std::int64_t g = 2; g <= c.genus; ++g) {
      TableCell cell{n, g, "", 0};
      // deg a has no s-dependence; any admissible split serves the guards.
      const FormulaParams p{n, g, n % 2 == 0 ? 2 : 2 * g + 2, n % 2 == 0 ? 2 * g : 0, 0};
      if (split.r == 0) {
        cell.regime = "odd";
        cell.degree = degree_closed_form(DegreeFormula::thm21, p);
      } else if (split.r == 1) {
        cell.regime = "2 mod 4";
        cell.degree = degree_closed_form(DegreeFormula::thm21, p);
      } else {
        cell.regime = "r >= 2";
        cell.degree = degree_closed_form(DegreeFormula::thm41, p);
      }
      out.push_back(std::move(cell));
    }
  }
  return out;
}

std::string render_table(const RunConfig& c) {
  const auto cells = degree_table(c);
  std::ostringstream os;
  if (c.format == Format::json) {
    auto j = nlohmann::ordered_json::array();
    for (const auto& cell : cells) {
      j.push_back({{"n", cell.n}, {"genus", cell.genus}, {"regime", cell.regime}, {"degree", to_string(cell.degree)}});
    }
    return j.dump(2) + "\n";
  }
  const bool csv = c.format == Format::csv;
  os << (csv ? "n,regime" : "| n | regime");
  for (std::int64_t g = 2; g <= c.genus; ++g) os << (csv ? ",g=" : " | g=") << g;
  os << (csv ? "\n" : " |\n");
  if (!csv) {
    os << "|---|---";
    for (std::int64_t g = 2; g <= c.genus; ++g) os << "|---";
    os << "|\n";
  }
  const auto width = static_cast<std::size_t>(c.genus - 1);
  for (std::size_t i = 0; i < cells.size(); i += width) {
    os << (csv ? "" : "| ") << cells[i].n << (csv ? "," : " | ") << cells[i].regime;
    for (std::size_t j = i; j < i + width; ++j) os << (csv ? "," : " | ") << to_string(cells[j].degree);
    os << (csv ? "\n" : " |\n");
  }
  return os.str();
}

int exit_code(const VerificationReport& r) {
  if (r.summary.faults != 0) return exit_status::internal;
  if (r.config.mode == Mode::selftest) return exit_status::ok;
  return r.summary.fail != 0 ? exit_status::mismatch : exit_status::ok;
}

}  // namespace prymcheck
