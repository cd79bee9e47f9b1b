#include <CLI11.hpp>

#include <array>
#include <fstream>
#include <iostream>
#include <sstream>

#include "prymcheck/error.hpp"
#include "prymcheck/runner.hpp"

using namespace prymcheck;

namespace {

struct Flags {
  std::int64_t n = 0;
  std::int64_t genus = 0;
  std::vector<std::int64_t> exponents;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> claims;
  std::string format;
  std::string out;
  std::string config;
  unsigned threads = 0;

  CLI::Option* n_opt = nullptr;
  CLI::Option* genus_opt = nullptr;
  CLI::Option* exponents_opt = nullptr;
  CLI::Option* samples_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* claims_opt = nullptr;
  CLI::Option* format_opt = nullptr;
  CLI::Option* out_opt = nullptr;
  CLI::Option* threads_opt = nullptr;
};

void add_flags(CLI::App* sub, Flags& f) {
  f.n_opt = sub->add_option("--n", f.n, "cyclic degree n (table: largest n)");
  f.genus_opt = sub->add_option("--genus", f.genus, "genus of H (table: largest genus)");
  f.exponents_opt = sub->add_option("--exponents", f.exponents, "k_1,...,k_{2g+2}")->delimiter(',');
  f.samples_opt = sub->add_option("--samples", f.samples, "number of sampled data");
  f.seed_opt = sub->add_option("--seed", f.seed, "sampling seed");
  f.claims_opt = sub->add_option("--claims", f.claims, "claim ids, e.g. THM41,PROP32")->delimiter(',');
  f.format_opt = sub->add_option("--format", f.format, "json | csv | markdown");
  f.out_opt = sub->add_option("--out", f.out, "output path (default stdout)");
  f.threads_opt = sub->add_option("--threads", f.threads, "sweep worker threads (0 = all cores)");
  sub->add_option("--config", f.config, "JSON config file; flags override it")->check(CLI::ExistingFile);
}

RunConfig build_config(Mode mode, const Flags& f) {
  RunConfig c;
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    std::stringstream text;
    text << in.rdbuf();
    c = parse_config(text.str());
  }
  c.mode = mode;
  if (f.n_opt->count()) c.n = f.n;
  if (f.genus_opt->count()) c.genus = f.genus;
  if (f.exponents_opt->count()) c.exponents = f.exponents;
  if (f.samples_opt->count()) c.samples = f.samples;
  if (f.seed_opt->count()) c.seed = f.seed;
  if (f.claims_opt->count()) {
    c.claims.clear();
    for (const auto& s : f.claims) {
      auto id = parse_claim(s);
      if (!id) throw InputError("unknown claim id " + s);
      c.claims.push_back(*id);
    }
  }
  if (f.format_opt->count()) {
    auto fmt = parse_format(f.format);
    if (!fmt) throw InputError("unknown format " + f.format);
    c.format = *fmt;
  }
  if (f.out_opt->count()) c.out = f.out;
  if (f.threads_opt->count()) c.threads = f.threads;
  return c;
}

void emit(const RunConfig& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(c.out, std::ios::binary);
  if (!out) throw InputError("cannot write " + c.out);
  out << text;
}

int run(Mode mode, const Flags& f) {
  const auto c = build_config(mode, f);
  if (mode == Mode::table) {
    emit(c, render_table(c));
    return exit_status::ok;
  }
  VerificationReport r;
  switch (mode) {
    case Mode::verify: r = run_verify(c); break;
    case Mode::sweep: r = run_sweep(c); break;
    default: r = run_selftest(c); break;
  }
  emit(c, render(r, c.format));
  std::cerr << to_string(mode) << ": " << r.summary.pass << " pass, " << r.summary.fail << " fail ("
            << r.summary.findings << " findings, " << r.summary.faults << " faults), " << r.summary.skip
            << " skip\n";
  return exit_code(r);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact lattice verification of isogeny degrees for dihedral covers of hyperelliptic curves"};
  app.set_version_flag("--version", std::string(tool_version()));
  app.require_subcommand(1);

  std::array<Flags, 4> flags;
  Mode mode = Mode::verify;
  const std::pair<Mode, const char*> subs[] = {
      {Mode::verify, "verify one monodromy datum"},
      {Mode::sweep, "verify seeded random data"},
      {Mode::table, "closed-form degree table of the addition map"},
      {Mode::selftest, "run built-in data through every claim"},
  };
  for (const auto& [m, help] : subs) {
    auto* sub = app.add_subcommand(std::string(to_string(m)), help);
    add_flags(sub, flags[static_cast<std::size_t>(m)]);
    sub->callback([&mode, m = m] { mode = m; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : exit_status::invalid_input;
  }

  try {
    return run(mode, flags[static_cast<std::size_t>(mode)]);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_status::invalid_input;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return exit_status::internal;
  }
}
