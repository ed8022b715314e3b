// apw: substitutions, fixed points, anti-powers, and the constants pipeline.
// Exit codes: 0 success, 1 domain gate (one-line diagnostic naming the gate),
// 2 usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "apw/anti_power.hpp"
#include "apw/fixed_point.hpp"
#include "apw/recognizability.hpp"
#include "apw/substitution.hpp"
#include "apw/theorem.hpp"

namespace {

apw::FixedPointStream make_stream(const apw::Substitution& sub, const std::string& seed_sym) {
  std::uint8_t seed;
  if (seed_sym.empty()) {
    auto seeds = sub.fixed_point_seeds();
    if (seeds.empty())
      apw::fail(apw::Gate::NoFixedPoint, "no letter begins its own image; no fixed point exists");
    seed = seeds[0];
  } else {
    auto a = sub.letter_of(seed_sym);
    if (!a) apw::fail(apw::Gate::UnknownLetter, "symbol " + seed_sym + " not in alphabet");
    seed = *a;
  }
  return apw::FixedPointStream(sub, seed);
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) apw::fail(apw::Gate::IoError, "cannot open " + path + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) apw::fail(apw::Gate::IoError, "cannot write " + path);
}

std::string format_ratio(double r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", r);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"uniform substitutions, fixed points, and anti-power verification"};
  app.require_subcommand(1);

  std::string spec_path, seed_sym, factor_text, out_path;
  std::uint64_t window = 1ull << 16;
  std::uint64_t pos = 0, n = 0, n0 = 0, n1 = 0;
  std::uint32_t k = 2, k0 = 1, k1 = 8;
  std::uint32_t ell_max = 64, ell_cap = 1024, L_max = 64, l_max = 8, n_max = 64;
  std::uint64_t c_override = 0;
  unsigned jobs = 1;
  bool require_primitive = false, require_aperiodic = false;

  auto add_common = [&](CLI::App* cmd, bool with_seed = true) {
    cmd->add_option("spec", spec_path, "substitution spec file")->required();
    if (with_seed) cmd->add_option("--seed", seed_sym, "seed symbol (default: first fixed-point seed)");
  };

  CLI::App* cmd_check = app.add_subcommand("check", "validate a spec and report its structure");
  add_common(cmd_check);
  cmd_check->add_option("--window", window, "aperiodicity scan window (default 65536)");
  cmd_check->add_option("--nmax", n_max, "aperiodicity check depth (default 64)");
  cmd_check->add_flag("--require-primitive", require_primitive, "exit 1 unless primitive");
  cmd_check->add_flag("--require-aperiodic", require_aperiodic, "exit 1 unless aperiodic up to nmax");

  CLI::App* cmd_expand = app.add_subcommand("expand", "print a prefix of the fixed point");
  add_common(cmd_expand);
  cmd_expand->add_option("-n,--length", n, "prefix length")->required();

  CLI::App* cmd_letter = app.add_subcommand("letter", "print one letter of the fixed point");
  add_common(cmd_letter);
  cmd_letter->add_option("-i,--index", pos, "position")->required();

  CLI::App* cmd_occ = app.add_subcommand("occurrences", "list occurrences of a factor in a prefix window");
  add_common(cmd_occ);
  cmd_occ->add_option("--factor", factor_text, "factor (same token syntax as images)")->required();
  cmd_occ->add_option("--window", window, "prefix window (default 65536)");

  CLI::App* cmd_ap = app.add_subcommand("antipower", "minimal anti-power block length at one position");
  add_common(cmd_ap);
  cmd_ap->add_option("-n,--position", n, "start position")->required();
  cmd_ap->add_option("-k,--blocks", k, "block count")->required();
  cmd_ap->add_option("--ell-max", ell_max, "search cap on block length (default 64)");

  CLI::App* cmd_scan = app.add_subcommand("scan", "anti-power grid; CSV columns n,k,min_ell,ratio");
  add_common(cmd_scan);
  cmd_scan->add_option("--n0", n0, "first position")->required();
  cmd_scan->add_option("--n1", n1, "position limit (exclusive)")->required();
  cmd_scan->add_option("--k0", k0, "first block count")->required();
  cmd_scan->add_option("--k1", k1, "last block count (inclusive)")->required();
  cmd_scan->add_option("--ell-max", ell_max, "search cap on block length (default 64)");
  cmd_scan->add_option("--jobs", jobs, "worker threads (default 1)");
  cmd_scan->add_option("-o,--output", out_path, "output file (default stdout)");

  CLI::App* cmd_recog = app.add_subcommand("recog", "estimate the recognizability constants N and N1");
  add_common(cmd_recog);
  cmd_recog->add_option("--window", window, "evidence window (default 65536)");
  cmd_recog->add_option("--L-max", L_max, "search ceiling for N (default 64)");
  cmd_recog->add_option("--l-max", l_max, "probe depth for N1 (default 8)");

  CLI::App* cmd_const = app.add_subcommand("constants", "derive N, N1, r, p, M, N' and the proof constant");
  add_common(cmd_const);
  cmd_const->add_option("--window", window, "evidence window (default 65536)");
  cmd_const->add_option("--L-max", L_max, "search ceiling for N (default 64)");
  cmd_const->add_option("--l-max", l_max, "probe depth for N1 (default 8)");

  CLI::App* cmd_verify = app.add_subcommand("verify", "verify bound and construction over a grid; CSV");
  add_common(cmd_verify);
  cmd_verify->add_option("--n0", n0, "first position")->required();
  cmd_verify->add_option("--n1", n1, "position limit (exclusive)")->required();
  cmd_verify->add_option("--k0", k0, "first block count")->required();
  cmd_verify->add_option("--k1", k1, "last block count (inclusive)")->required();
  cmd_verify->add_option("--window", window, "evidence window for the constants (default 65536)");
  cmd_verify->add_option("--L-max", L_max, "search ceiling for N (default 64)");
  cmd_verify->add_option("--l-max", l_max, "probe depth for N1 (default 8)");
  cmd_verify->add_option("--c", c_override, "bound constant override (default: derived proof constant)");
  cmd_verify->add_option("--jobs", jobs, "worker threads (default 1)");
  cmd_verify->add_option("-o,--output", out_path, "output file (default stdout)");

  CLI::App* cmd_emp = app.add_subcommand("empirical", "smallest constant compatible with a grid");
  add_common(cmd_emp);
  cmd_emp->add_option("--n0", n0, "first position")->required();
  cmd_emp->add_option("--n1", n1, "position limit (exclusive)")->required();
  cmd_emp->add_option("--k0", k0, "first block count")->required();
  cmd_emp->add_option("--k1", k1, "last block count (inclusive)")->required();
  cmd_emp->add_option("--ell-cap", ell_cap, "per-cell search cap (default 1024)");
  cmd_emp->add_option("--jobs", jobs, "worker threads (default 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    apw::Substitution sub = apw::Substitution::load_file(spec_path);

    if (app.got_subcommand(cmd_check)) {
      std::string line = "uniform m=" + std::to_string(sub.image_length());
      auto pr = sub.is_primitive();
      line += pr.primitive ? "; primitive (n=" + std::to_string(pr.witness) + ")" : "; not primitive";
      auto seeds = sub.fixed_point_seeds();
      if (seeds.empty()) {
        line += "; seeds: none";
      } else {
        line += "; seeds: ";
        for (std::size_t i = 0; i < seeds.size(); ++i)
          line += (i ? "," : "") + sub.symbol(seeds[i]);
      }
      bool periodic = false;
      std::uint32_t periodic_n = 0;
      bool probed = sub.image_length() >= 2 && (!seed_sym.empty() || !seeds.empty());
      if (probed) {
        apw::FixedPointStream stream = make_stream(sub, seed_sym);
        auto verdict = apw::aperiodicity_check(stream, n_max, window);
        periodic = verdict.periodic;
        periodic_n = verdict.n;
        line += periodic
                    ? "; periodic (complexity <= n at n=" + std::to_string(periodic_n) + ")"
                    : "; aperiodic up to " + std::to_string(n_max);
      }
      std::cout << line << "\n";
      if (require_primitive && !pr.primitive)
        apw::fail(apw::Gate::NotPrimitive, "substitution is not primitive");
      if (require_aperiodic && (!probed || periodic))
        apw::fail(apw::Gate::PeriodicInput,
                  probed ? "fixed point is periodic (witness n=" + std::to_string(periodic_n) + ")"
                         : "no fixed point to check");
    } else if (app.got_subcommand(cmd_expand)) {
      apw::FixedPointStream stream = make_stream(sub, seed_sym);
      std::cout << sub.render_word(stream.prefix_view(n)) << "\n";
    } else if (app.got_subcommand(cmd_letter)) {
      apw::FixedPointStream stream = make_stream(sub, seed_sym);
      std::cout << sub.symbol(stream.letter_at(pos)) << "\n";
    } else if (app.got_subcommand(cmd_occ)) {
      apw::FixedPointStream stream = make_stream(sub, seed_sym);
      apw::Word factor = sub.parse_word(factor_text);
      auto list = apw::occurrences(stream, factor, window);
      for (std::size_t i = 0; i < list.positions.size(); ++i)
        std::cout << (i ? " " : "") << list.positions[i];
      std::cout << "\n";
    } else if (app.got_subcommand(cmd_ap)) {
      apw::FixedPointStream stream = make_stream(sub, seed_sym);
      auto res = apw::min_block_length(stream, {n, k, ell_max});
      if (res.min_ell)
        std::cout << "min_ell=" << *res.min_ell << " ratio=" << format_ratio(res.ratio()) << "\n";
      else
        std::cout << "none up to ell_max=" << ell_max << "\n";
    } else if (app.got_subcommand(cmd_scan)) {
      apw::FixedPointStream stream = make_stream(sub, seed_sym);
      auto rows = apw::scan(stream, n0, n1, k0, k1, ell_max, jobs);
      write_output(apw::scan_to_csv(rows), out_path);
    } else if (app.got_subcommand(cmd_recog)) {
      apw::FixedPointStream stream = make_stream(sub, seed_sym);
      auto nc = apw::estimate_recognizability_constant(stream, L_max, window);
      std::uint32_t n1_depth = apw::estimate_N1(stream, l_max, window);
      std::cout << "N=" << nc.N << "\n";
      if (nc.below)
        std::cout << "counterexample: factor=" << sub.render_word(nc.below->factor)
                  << " aligned=" << nc.below->aligned_pos
                  << " nonaligned=" << nc.below->nonaligned_pos << "\n";
      std::cout << "N1=" << n1_depth << "\n";
    } else if (app.got_subcommand(cmd_const)) {
      apw::FixedPointStream stream = make_stream(sub, seed_sym);
      auto rep = apw::derive_N_prime(stream, window, L_max, l_max);
      std::uint64_t C = apw::proof_constant(stream, rep);
      std::cout << rep.to_text();
      std::cout << "C_proof=" << C << "\n";
    } else if (app.got_subcommand(cmd_verify)) {
      apw::FixedPointStream stream = make_stream(sub, seed_sym);
      auto rep = apw::derive_N_prime(stream, window, L_max, l_max);
      std::uint64_t C = c_override ? c_override : apw::proof_constant(stream, rep);
      auto tr = apw::verify_bound(stream, n0, n1, k0, k1, C, rep.N_prime, jobs);
      write_output(tr.to_csv(), out_path);
      std::string summary = "C=" + std::to_string(C) +
                            " violations=" + std::to_string(tr.violations.size()) +
                            " C_empirical=" + std::to_string(tr.C_empirical) + "\n";
      if (out_path.empty())
        std::cerr << summary;
      else
        std::cout << summary;
    } else if (app.got_subcommand(cmd_emp)) {
      apw::FixedPointStream stream = make_stream(sub, seed_sym);
      std::uint64_t c_emp = apw::empirical_constant(stream, n0, n1, k0, k1, ell_cap, jobs);
      std::cout << "C_empirical=" << c_emp << "\n";
    }
  } catch (const apw::Error& e) {
    std::cerr << "apw: error: " << apw::gate_name(e.gate()) << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "apw: internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
