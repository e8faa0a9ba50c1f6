// gfcpd: exact canonical polyadic decomposition of tensors over finite fields.
//
// Exit codes: 0 found/verified, 1 proven nonexistent (or verify false),
// 2 usage or input-format error, 3 internal error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "gfcpd/cost.hpp"
#include "gfcpd/instances.hpp"
#include "gfcpd/io.hpp"
#include "gfcpd/solver.hpp"

namespace {

constexpr int kExitFound = 0;
constexpr int kExitNone = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw gfcpd::FormatError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw gfcpd::FormatError("cannot open " + path + " for writing");
  out << text;
}

std::vector<gfcpd::felt> parse_modulus(const std::string& csv) {
  std::vector<gfcpd::felt> m;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      m.push_back(gfcpd::felt(std::stoul(tok)));
    } catch (...) {
      throw gfcpd::FormatError("bad --modulus coefficient: " + tok);
    }
  }
  if (m.empty()) throw gfcpd::FormatError("--modulus must list coefficients");
  return m;
}

std::array<int, 3> parse_triple(const std::string& csv, const char* what) {
  std::array<int, 3> out{};
  std::stringstream ss(csv);
  std::string tok;
  int n = 0;
  while (std::getline(ss, tok, ',')) {
    if (n >= 3) throw gfcpd::FormatError(std::string(what) + " needs exactly 3 values");
    try {
      out[n++] = std::stoi(tok);
    } catch (...) {
      throw gfcpd::FormatError(std::string("bad value in ") + what + ": " + tok);
    }
  }
  if (n != 3) throw gfcpd::FormatError(std::string(what) + " needs exactly 3 values");
  return out;
}

gfcpd::Strategy parse_strategy(const std::string& s) {
  if (s == "fix_one") return gfcpd::Strategy::fix_one;
  if (s == "fix_two") return gfcpd::Strategy::fix_two;
  if (s == "brute") return gfcpd::Strategy::brute;
  throw gfcpd::FormatError("unknown strategy: " + s);
}

void check_field_flag(const gfcpd::Field& file_field, const std::string& flag) {
  if (flag.empty()) return;
  if (!(gfcpd::Field::parse(flag) == file_field) &&
      gfcpd::Field::parse(flag).q() != file_field.q())
    throw gfcpd::FormatError("--field disagrees with the field in the input file");
}

void print_stats(const gfcpd::SolveStats& st) {
  std::fprintf(stderr, "candidates tried: %llu\n",
               (unsigned long long)st.a_candidates);
  std::fprintf(stderr, "tail-rejected:    %llu\n",
               (unsigned long long)st.rejected_tail);
  std::fprintf(stderr,
               "case candidates:  P0=%llu P1=%llu P2=%llu P>2=%llu\n",
               (unsigned long long)st.case_candidates[0],
               (unsigned long long)st.case_candidates[1],
               (unsigned long long)st.case_candidates[2],
               (unsigned long long)st.case_candidates[3]);
  std::fprintf(stderr, "mode ranks:       %d %d %d\n", st.mode_rank[0],
               st.mode_rank[1], st.mode_rank[2]);
  std::fprintf(stderr, "time:             %.3fs (core %.3fs)\n", st.seconds,
               st.core_seconds);
}

int default_threads() {
  if (const char* env = std::getenv("GFCPD_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return 1;
}

struct CommonOpts {
  std::string field, modulus, in_path, out_path;
  int threads = default_threads();
  bool deterministic = false;
  bool no_symmetry_breaking = false;
  bool stats = false;
  std::string strategy = "fix_one";

  gfcpd::SolveOptions solve_options() const {
    gfcpd::SolveOptions o;
    o.strategy = parse_strategy(strategy);
    o.threads = threads;
    o.deterministic = deterministic;
    o.symmetry_breaking = !no_symmetry_breaking;
    return o;
  }
  std::vector<gfcpd::felt> modulus_vec() const {
    return modulus.empty() ? std::vector<gfcpd::felt>{} : parse_modulus(modulus);
  }
};

void add_common(CLI::App* cmd, CommonOpts& o, bool solving) {
  cmd->add_option("--field", o.field, "field as p or p^k (cross-checked against the file)");
  cmd->add_option("--modulus", o.modulus,
                  "irreducible modulus c0,c1,...,ck for extension fields");
  if (solving) {
    cmd->add_option("--strategy", o.strategy, "fix_one|fix_two|brute")
        ->check(CLI::IsMember({"fix_one", "fix_two", "brute"}));
    cmd->add_option("--threads", o.threads, "worker threads for the search")
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--deterministic", o.deterministic,
                  "return the canonical (first in enumeration order) solution");
    cmd->add_flag("--no-symmetry-breaking", o.no_symmetry_breaking,
                  "disable the nondecreasing-row enumeration order");
    cmd->add_flag("--stats", o.stats, "print search statistics to stderr");
  }
}

int run(int argc, char** argv) {
  CLI::App app{"exact CPD solver over finite fields"};
  app.require_subcommand(1);

  // solve
  CommonOpts so;
  int solve_rank = 0;
  auto* solve_cmd = app.add_subcommand("solve", "decide rank-R decomposability");
  solve_cmd->add_option("--rank", solve_rank, "target rank R")->required();
  solve_cmd->add_option("--in", so.in_path, "input tensor file")->required();
  solve_cmd->add_option("--out", so.out_path, "output decomposition file (- for stdout)");
  add_common(solve_cmd, so, true);

  // minrank
  CommonOpts mo;
  int max_rank = 0;
  auto* min_cmd = app.add_subcommand("minrank", "smallest feasible rank up to --max");
  min_cmd->add_option("--max", max_rank, "largest rank to try")->required();
  min_cmd->add_option("--in", mo.in_path, "input tensor file")->required();
  min_cmd->add_option("--out", mo.out_path, "output decomposition file");
  add_common(min_cmd, mo, true);

  // verify
  std::string v_tensor, v_cpd, v_modulus;
  auto* verify_cmd = app.add_subcommand("verify", "check a decomposition against a tensor");
  verify_cmd->add_option("--tensor", v_tensor)->required();
  verify_cmd->add_option("--cpd", v_cpd)->required();
  verify_cmd->add_option("--modulus", v_modulus);

  // random
  CommonOpts ro;
  std::string r_shape;
  int r_rank = 0;
  std::uint64_t r_seed = 0;
  std::string r_witness;
  auto* rand_cmd = app.add_subcommand("random", "emit a tensor with a known decomposition");
  rand_cmd->add_option("--field", ro.field)->required();
  rand_cmd->add_option("--modulus", ro.modulus);
  rand_cmd->add_option("--shape", r_shape, "n0,n1,n2")->required();
  rand_cmd->add_option("--rank", r_rank)->required();
  rand_cmd->add_option("--seed", r_seed)->required();
  rand_cmd->add_option("--out", ro.out_path, "tensor output (- for stdout)");
  rand_cmd->add_option("--witness", r_witness, "also write the witness decomposition");

  // mmtensor
  std::string m_dims, m_field = "2", m_out;
  auto* mm_cmd = app.add_subcommand("mmtensor", "emit the <a,b,c> matrix-multiplication tensor");
  mm_cmd->add_option("--dims", m_dims, "a,b,c")->required();
  mm_cmd->add_option("--field", m_field, "field for the file header (default 2)");
  mm_cmd->add_option("--out", m_out);

  // cost
  std::string c_field = "2", c_strategy = "fix_one";
  int c_rank = 1;
  bool c_table = false;
  auto* cost_cmd = app.add_subcommand("cost", "closed-form search-cost model");
  cost_cmd->add_option("--field", c_field, "field as p or p^k");
  cost_cmd->add_option("--rank", c_rank);
  cost_cmd->add_option("--strategy", c_strategy)
      ->check(CLI::IsMember({"fix_one", "fix_two"}));
  cost_cmd->add_flag("--table", c_table, "print both grids for R=1..5, q in {2,3}");

  // bench
  CommonOpts bo;
  std::string b_shape;
  int b_rank = 2, b_count = 5;
  std::uint64_t b_seed = 1;
  auto* bench_cmd = app.add_subcommand("bench", "measure strategies on seeded instances");
  bench_cmd->add_option("--field", bo.field)->required();
  bench_cmd->add_option("--modulus", bo.modulus);
  bench_cmd->add_option("--rank", b_rank)->required();
  bench_cmd->add_option("--shape", b_shape, "n0,n1,n2 (default R,R,R)");
  bench_cmd->add_option("--count", b_count, "instances to run");
  bench_cmd->add_option("--seed", b_seed);
  bench_cmd->add_option("--threads", bo.threads)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  if (solve_cmd->parsed()) {
    auto mod = so.modulus_vec();
    auto tf = gfcpd::parse_tensor(read_file(so.in_path), mod.empty() ? nullptr : &mod);
    check_field_flag(tf.field, so.field);
    auto rep = gfcpd::solve(tf.field, tf.tensor, solve_rank, so.solve_options());
    if (so.stats) print_stats(rep.stats);
    if (!rep.found()) {
      std::fprintf(stderr, "no rank-%d decomposition exists\n", solve_rank);
      return kExitNone;
    }
    if (!gfcpd::verify(tf.field, tf.tensor, *rep.cpd)) {
      std::fprintf(stderr, "internal error: produced decomposition failed verification\n");
      return kExitInternal;
    }
    write_output(so.out_path, gfcpd::render_cpd(tf.field, *rep.cpd, tf.tensor.n0,
                                                tf.tensor.n1, tf.tensor.n2));
    return kExitFound;
  }

  if (min_cmd->parsed()) {
    auto mod = mo.modulus_vec();
    auto tf = gfcpd::parse_tensor(read_file(mo.in_path), mod.empty() ? nullptr : &mod);
    check_field_flag(tf.field, mo.field);
    auto got = gfcpd::min_rank(tf.field, tf.tensor, max_rank, mo.solve_options());
    if (!got) {
      std::fprintf(stderr, "no decomposition of rank <= %d exists\n", max_rank);
      return kExitNone;
    }
    if (!gfcpd::verify(tf.field, tf.tensor, got->second)) {
      std::fprintf(stderr, "internal error: produced decomposition failed verification\n");
      return kExitInternal;
    }
    std::printf("%d\n", got->first);
    if (!mo.out_path.empty())
      write_output(mo.out_path, gfcpd::render_cpd(tf.field, got->second, tf.tensor.n0,
                                                  tf.tensor.n1, tf.tensor.n2));
    return kExitFound;
  }

  if (verify_cmd->parsed()) {
    auto mod = v_modulus.empty() ? std::vector<gfcpd::felt>{} : parse_modulus(v_modulus);
    auto tf = gfcpd::parse_tensor(read_file(v_tensor), mod.empty() ? nullptr : &mod);
    auto cf = gfcpd::parse_cpd(read_file(v_cpd), mod.empty() ? nullptr : &mod);
    if (!(tf.field == cf.field))
      throw gfcpd::FormatError("tensor and decomposition use different fields");
    if (cf.shape[0] != tf.tensor.n0 || cf.shape[1] != tf.tensor.n1 ||
        cf.shape[2] != tf.tensor.n2)
      throw gfcpd::FormatError("tensor and decomposition shapes differ");
    const bool ok = gfcpd::verify(tf.field, tf.tensor, cf.cpd);
    std::printf("%s\n", ok ? "ok" : "mismatch");
    return ok ? kExitFound : kExitNone;
  }

  if (rand_cmd->parsed()) {
    auto mod = ro.modulus_vec();
    auto f = gfcpd::Field::parse(ro.field, mod.empty() ? nullptr : &mod);
    auto shape = parse_triple(r_shape, "--shape");
    auto [t, w] = gfcpd::random_instance(f, shape[0], shape[1], shape[2], r_rank, r_seed);
    write_output(ro.out_path, gfcpd::render_tensor(f, t));
    if (!r_witness.empty())
      write_output(r_witness, gfcpd::render_cpd(f, w, shape[0], shape[1], shape[2]));
    return kExitFound;
  }

  if (mm_cmd->parsed()) {
    auto f = gfcpd::Field::parse(m_field);
    auto dims = parse_triple(m_dims, "--dims");
    write_output(m_out, gfcpd::render_tensor(f, gfcpd::mm_tensor(dims[0], dims[1], dims[2])));
    return kExitFound;
  }

  if (cost_cmd->parsed()) {
    namespace cost = gfcpd::cost;
    if (c_table) {
      std::fputs(cost::render_table().c_str(), stdout);
      return kExitFound;
    }
    const long q = long(gfcpd::Field::parse(c_field).q());
    const cost::rational v = c_strategy == "fix_two"
                                 ? cost::fix_two_constant(c_rank, q)
                                 : cost::fix_one_constant(c_rank, q);
    std::printf("%s constant for R=%d over GF(%ld): %s\n", c_strategy.c_str(), c_rank,
                q, cost::format_sig3(v).c_str());
    return kExitFound;
  }

  if (bench_cmd->parsed()) {
    namespace cost = gfcpd::cost;
    auto mod = bo.modulus_vec();
    auto f = gfcpd::Field::parse(bo.field, mod.empty() ? nullptr : &mod);
    std::array<int, 3> shape{b_rank, b_rank, b_rank};
    if (!b_shape.empty()) shape = parse_triple(b_shape, "--shape");
    std::printf("model: fix_one %s, fix_two %s (R=%d, q=%u)\n",
                cost::format_sig3(cost::fix_one_constant(b_rank, f.q())).c_str(),
                cost::format_sig3(cost::fix_two_constant(b_rank, f.q())).c_str(),
                b_rank, f.q());
    for (auto strat : {gfcpd::Strategy::fix_one, gfcpd::Strategy::fix_two}) {
      gfcpd::SolveOptions opt;
      opt.strategy = strat;
      opt.threads = bo.threads;
      std::uint64_t candidates = 0;
      double secs = 0.0;
      int found = 0;
      for (int i = 0; i < b_count; ++i) {
        auto [t, w] =
            gfcpd::random_instance(f, shape[0], shape[1], shape[2], b_rank, b_seed + i);
        auto rep = gfcpd::solve(f, t, b_rank, opt);
        candidates += rep.stats.a_candidates;
        secs += rep.stats.seconds;
        found += rep.found() ? 1 : 0;
      }
      std::printf("%s: %d/%d solved, %llu candidates, %.3fs\n",
                  strat == gfcpd::Strategy::fix_one ? "fix_one" : "fix_two", found,
                  b_count, (unsigned long long)candidates, secs);
    }
    return kExitFound;
  }

  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const gfcpd::FormatError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return kExitInternal;
  }
}
