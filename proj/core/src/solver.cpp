#include "gfcpd/solver.hpp"

#include <atomic>
#include <chrono>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace gfcpd {

void SolveStats::merge(const SolveStats& o) {
  a_candidates += o.a_candidates;
  rejected_tail += o.rejected_tail;
  for (int i = 0; i < 4; ++i) case_candidates[i] += o.case_candidates[i];
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void decode_digits(std::uint64_t idx, std::uint64_t base, int count,
                   std::uint32_t* out) {
  for (int t = count - 1; t >= 0; --t) {
    out[t] = std::uint32_t(idx % base);
    idx /= base;
  }
}

bool nondecreasing(const std::uint32_t* d, int n) {
  for (int t = 1; t < n; ++t)
    if (d[t - 1] > d[t]) return false;
  return true;
}

bool any_duplicate(const std::uint32_t* d, int n) {
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (d[i] == d[j]) return true;
  return false;
}

// Degenerate cores every strategy handles the same way.  Outer nullopt means
// "not handled here"; the inner optional is the final answer.
std::optional<std::optional<Cpd>> trivial_core(const Tensor3& core, int r) {
  if (r == 0) {
    if (core.is_zero())
      return std::optional<Cpd>(Cpd{Matrix(0, core.n0), Matrix(0, core.n1), Matrix(0, core.n2)});
    return std::optional<Cpd>(std::nullopt);
  }
  if (core.is_zero())
    return std::optional<Cpd>(Cpd{Matrix(r, core.n0), Matrix(r, core.n1), Matrix(r, core.n2)});
  return std::nullopt;
}

// Scans [0, total) for the first index whose try_index yields a result.
// Contiguous blocks are handed to workers through an atomic cursor; on a hit
// the search bound shrinks so that in deterministic mode every smaller index
// is still examined (canonical result), while otherwise everyone stops early.
template <typename TryIndex>
std::optional<Cpd> indexed_search(std::uint64_t total, const SolveOptions& opt,
                                  SolveStats* stats, TryIndex&& try_index) {
  const int nthreads = std::max(1, opt.threads);
  if (nthreads == 1 || total < 2) {
    SolveStats local;
    std::optional<Cpd> found;
    for (std::uint64_t i = 0; i < total; ++i) {
      found = try_index(i, local);
      if (found) break;
    }
    if (stats) stats->merge(local);
    return found;
  }

  std::atomic<std::uint64_t> cursor{0};
  std::atomic<std::uint64_t> bound{total};
  std::mutex mu;
  std::uint64_t best_idx = total;
  std::optional<Cpd> best;
  SolveStats merged;
  std::exception_ptr error;
  const std::uint64_t block =
      std::clamp<std::uint64_t>(total / (std::uint64_t(nthreads) * 32), 16, 4096);

  auto worker = [&] {
    SolveStats local;
    try {
      for (;;) {
        const std::uint64_t b = cursor.fetch_add(block);
        if (b >= total || b >= bound.load(std::memory_order_relaxed)) break;
        const std::uint64_t e = std::min(total, b + block);
        for (std::uint64_t i = b; i < e; ++i) {
          if (i >= bound.load(std::memory_order_relaxed)) break;
          auto got = try_index(i, local);
          if (!got) continue;
          std::lock_guard lk(mu);
          if (i < best_idx) {
            best_idx = i;
            best = std::move(got);
          }
          std::uint64_t nb = opt.deterministic ? i : 0;
          std::uint64_t cur = bound.load();
          while (nb < cur && !bound.compare_exchange_weak(cur, nb)) {
          }
          break;
        }
      }
    } catch (...) {
      std::lock_guard lk(mu);
      if (!error) error = std::current_exception();
      bound.store(0);
    }
    std::lock_guard lk(mu);
    merged.merge(local);
  };

  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  if (stats) stats->merge(merged);
  return best;
}

std::vector<Matrix> mode0_slices(const Tensor3& t) {
  std::vector<Matrix> s;
  s.reserve(t.n0);
  for (int i = 0; i < t.n0; ++i) s.push_back(slice0(t, i));
  return s;
}

// D_i = sum_j s(i, j) * slices[j]
Matrix combine_slices(const Field& f, const Matrix& s, int i,
                      const std::vector<Matrix>& slices, int r1, int r2) {
  Matrix d(r1, r2);
  for (std::size_t j = 0; j < slices.size(); ++j) {
    const felt c = s.at(i, int(j));
    if (!c) continue;
    const Matrix& sl = slices[j];
    for (std::size_t t = 0; t < d.a.size(); ++t)
      d.a[t] = f.add(d.a[t], f.mul(c, sl.a[t]));
  }
  return d;
}

// ---------------------------------------------------------------------------
// reduced-system casework

struct RsWork {
  const Field& f;
  const ReducedSystem& sys;
  SolveStats* stats;
  std::vector<Matrix>& out;
};

int chi(const ReducedSystem& sys, int i) { return int(sys.monomial_cols[i].size()); }

bool rs_solve(RsWork& w, const std::vector<Matrix>& d, std::vector<int> unknown) {
  const Field& f = w.f;
  const ReducedSystem& sys = w.sys;
  const int kk = sys.k;

  // necessary condition: rank(D_i) <= chi_i + #{active p : alpha(i,p) != 0}
  std::vector<int> dr(kk), ni(kk);
  for (int i = 0; i < kk; ++i) {
    dr[i] = rank(f, d[i]);
    ni[i] = chi(sys, i);
    for (int p : unknown)
      if (sys.alpha[p][i]) ++ni[i];
    if (dr[i] > ni[i]) return false;
  }

  const int np = int(unknown.size());

  if (np == 0) {
    if (w.stats) ++w.stats->case_candidates[0];
    for (int i = 0; i < kk; ++i)
      if (dr[i] > chi(sys, i)) return false;
    for (int i = 0; i < kk; ++i) {
      auto [c0, f0] = full_rank_factorization(f, d[i]);
      const int rho = c0.cols;
      for (int t = 0; t < chi(sys, i); ++t) {
        const auto [col, coeff] = sys.monomial_cols[i][t];
        if (t < rho)
          w.out[col] = mat_scale(f, f.inv(coeff), outer(f, c0.col(t), f0.row(t)));
        else
          w.out[col] = Matrix(sys.r1, sys.r2);
      }
    }
    return true;
  }

  auto subtract = [&](const std::vector<Matrix>& cur, int p, const Matrix& y) {
    std::vector<Matrix> next = cur;
    for (int j = 0; j < kk; ++j) {
      const felt c = sys.alpha[p][j];
      if (!c) continue;
      next[j] = mat_sub(f, next[j], mat_scale(f, c, y));
    }
    return next;
  };

  if (np == 1) {
    const int p = unknown[0];
    int pick = -1;
    for (int i = 0; i < kk; ++i)
      if (sys.alpha[p][i] && dr[i] == chi(sys, i) + 1) {
        pick = i;
        break;
      }
    if (pick >= 0) {
      FullrankSummandStream cands(f, d[pick]);
      const felt ai = f.inv(sys.alpha[p][pick]);
      for (std::uint64_t ci = 0; ci < cands.size(); ++ci) {
        if (w.stats) ++w.stats->case_candidates[1];
        Matrix y = mat_scale(f, ai, cands.at(ci));
        if (rs_solve(w, subtract(d, p, y), {})) {
          w.out[sys.nonmono_col[p]] = std::move(y);
          return true;
        }
      }
      return false;
    }
    // all ranks already fit the monomial budget: Y may be taken as zero
    w.out[sys.nonmono_col[p]] = Matrix(sys.r1, sys.r2);
    return rs_solve(w, d, {});
  }

  if (np == 2) {
    const int p0 = unknown[0], p1 = unknown[1];
    for (int i = 0; i < kk; ++i) {
      if (dr[i] == ni[i] && ni[i] >= chi(sys, i) + 1) {
        const int p = sys.alpha[p0][i] ? p0 : p1;
        FullrankSummandStream cands(f, d[i]);
        const felt ai = f.inv(sys.alpha[p][i]);
        for (std::uint64_t ci = 0; ci < cands.size(); ++ci) {
          if (w.stats) ++w.stats->case_candidates[2];
          Matrix y = mat_scale(f, ai, cands.at(ci));
          if (rs_solve(w, subtract(d, p, y), {p == p0 ? p1 : p0})) {
            w.out[sys.nonmono_col[p]] = std::move(y);
            return true;
          }
        }
        return false;
      }
    }
    for (int i = 0; i < kk; ++i) {
      if (dr[i] == ni[i] - 1 && ni[i] == chi(sys, i) + 2) {
        Add1rankSummandStream cands(f, d[i], ni[i]);
        const felt ai = f.inv(sys.alpha[p1][i]);
        for (std::uint64_t ci = 0; ci < cands.size(); ++ci) {
          if (w.stats) ++w.stats->case_candidates[2];
          Matrix y = mat_scale(f, ai, cands.at(ci));
          if (rs_solve(w, subtract(d, p1, y), {p0})) {
            w.out[sys.nonmono_col[p1]] = std::move(y);
            return true;
          }
        }
        return false;
      }
    }
    // remaining case: every rank(D_i) <= chi_i, both unknowns may be zero
    w.out[sys.nonmono_col[p0]] = Matrix(sys.r1, sys.r2);
    w.out[sys.nonmono_col[p1]] = Matrix(sys.r1, sys.r2);
    return rs_solve(w, d, {});
  }

  // np > 2: enumerate the last unknown over all rank-<=1 matrices
  const int p = unknown.back();
  std::vector<int> rest(unknown.begin(), unknown.end() - 1);
  RankLe1Stream cands(f, sys.r1, sys.r2);
  for (std::uint64_t ci = 0; ci < cands.size(); ++ci) {
    if (w.stats) ++w.stats->case_candidates[3];
    Matrix y = cands.at(ci);
    if (rs_solve(w, subtract(d, p, y), rest)) {
      w.out[sys.nonmono_col[p]] = std::move(y);
      return true;
    }
  }
  return false;
}

}  // namespace

std::optional<std::vector<Matrix>> solve_reduced(const Field& f,
                                                 const ReducedSystem& sys,
                                                 SolveStats* stats) {
  std::vector<Matrix> out(sys.total_cols);
  std::vector<int> unknown(sys.nonmono_col.size());
  for (std::size_t p = 0; p < unknown.size(); ++p) unknown[p] = int(p);
  RsWork w{f, sys, stats, out};
  if (!rs_solve(w, sys.d, std::move(unknown))) return std::nullopt;
  return out;
}

std::pair<Matrix, Matrix> split_rank1(const Field& f, const std::vector<Matrix>& ms) {
  if (ms.empty()) return {Matrix(0, 0), Matrix(0, 0)};
  const int r1 = ms[0].rows, r2 = ms[0].cols;
  Matrix b(int(ms.size()), r1), c(int(ms.size()), r2);
  for (std::size_t r = 0; r < ms.size(); ++r) {
    if (ms[r].is_zero()) continue;
    auto [c0, f0] = full_rank_factorization(f, ms[r]);
    if (c0.cols > 1) throw std::invalid_argument("split_rank1: input of rank > 1");
    for (int j = 0; j < r1; ++j) b.at(int(r), j) = c0.at(j, 0);
    for (int j = 0; j < r2; ++j) c.at(int(r), j) = f0.at(0, j);
  }
  return {b, c};
}

std::optional<Cpd> solve_core_fix_one(const Field& f, const Tensor3& core, int r,
                                      const SolveOptions& opt, SolveStats* stats) {
  if (auto t = trivial_core(core, r)) return *t;
  const int R0 = core.n0, R1 = core.n1, R2 = core.n2;
  const std::vector<Matrix> slices = mode0_slices(core);
  const VectorStream arows(f, R0, VecMode::normalized);
  const std::uint64_t na = arows.size();
  const std::uint64_t total = checked_pow(na, unsigned(r));
  // When the slices are independent (always true after compression), rank(A)
  // must reach R0, so duplicate rows are skipped before the greedy transform
  // whenever A is square.
  const bool need_full_rank =
      R0 == r && rank(f, flatten_mode(core, 0)) == R0;

  auto try_a = [&](std::uint64_t idx, SolveStats& st) -> std::optional<Cpd> {
    std::vector<std::uint32_t> dig(r);
    decode_digits(idx, na, r, dig.data());
    if (opt.symmetry_breaking && !nondecreasing(dig.data(), r)) return std::nullopt;
    if (need_full_rank && any_duplicate(dig.data(), r)) return std::nullopt;

    Matrix a(r, R0);
    for (int t = 0; t < r; ++t) arows.at(dig[t], a.row(t).data());
    ++st.a_candidates;

    const Matrix at = transpose(a);
    const GreedyMonomial gm = greedy_monomial(f, at);
    const int kk = gm.k;

    // rows >= kk of s*a^T are zero, so the matching D_i must vanish
    for (int i = kk; i < R0; ++i)
      if (!combine_slices(f, gm.s, i, slices, R1, R2).is_zero()) {
        ++st.rejected_tail;
        return std::nullopt;
      }

    const Matrix sat = mat_mul(f, gm.s, at);
    ReducedSystem sys;
    sys.k = kk;
    sys.r1 = R1;
    sys.r2 = R2;
    sys.total_cols = r;
    sys.monomial_cols.resize(kk);
    for (int col = 0; col < r; ++col) {
      int nz = 0, row = -1;
      for (int i = 0; i < kk; ++i)
        if (sat.at(i, col)) {
          ++nz;
          row = i;
        }
      for (int i = kk; i < R0; ++i)
        if (sat.at(i, col))
          throw std::logic_error("greedy transform left support below the live rows");
      if (nz == 0) throw std::logic_error("greedy transform produced a zero column");
      if (nz == 1) {
        sys.monomial_cols[row].push_back({col, sat.at(row, col)});
      } else {
        sys.nonmono_col.push_back(col);
        std::vector<felt> av(kk);
        for (int i = 0; i < kk; ++i) av[i] = sat.at(i, col);
        sys.alpha.push_back(std::move(av));
      }
    }
    for (int i = 0; i < kk; ++i)
      if (sys.monomial_cols[i].empty())
        throw std::logic_error("live equation without a monomial column");
    sys.d.reserve(kk);
    for (int i = 0; i < kk; ++i)
      sys.d.push_back(combine_slices(f, gm.s, i, slices, R1, R2));

    auto ms = solve_reduced(f, sys, &st);
    if (!ms) return std::nullopt;
    auto [b, c] = split_rank1(f, *ms);
    Cpd cpd{std::move(a), std::move(b), std::move(c)};
    if (!(reconstruct(f, cpd, R0, R1, R2) == core))
      throw std::runtime_error("internal error: fix-one solution failed verification");
    return cpd;
  };

  return indexed_search(total, opt, stats, try_a);
}

std::optional<Cpd> solve_core_fix_two(const Field& f, const Tensor3& core, int r,
                                      const SolveOptions& opt, SolveStats* stats) {
  if (auto t = trivial_core(core, r)) return *t;
  const int R0 = core.n0, R1 = core.n1, R2 = core.n2;
  const VectorStream arows(f, R0, VecMode::normalized);
  const VectorStream brows(f, R1, VecMode::normalized);
  const std::uint64_t na = arows.size(), nb = brows.size();
  const std::uint64_t npair = na * nb;
  const std::uint64_t total = checked_pow(npair, unsigned(r));

  // right-hand side: core flattened to (R0*R1) x R2
  Matrix t2(R0 * R1, R2);
  for (int i = 0; i < R0; ++i)
    for (int j = 0; j < R1; ++j)
      for (int k = 0; k < R2; ++k) t2.at(i * R1 + j, k) = core.at(i, j, k);

  auto try_pair = [&](std::uint64_t idx, SolveStats& st) -> std::optional<Cpd> {
    std::vector<std::uint32_t> dig(r);
    decode_digits(idx, npair, r, dig.data());
    // lexicographically nondecreasing (A_r, B_r) pairs
    if (opt.symmetry_breaking && !nondecreasing(dig.data(), r)) return std::nullopt;

    Matrix a(r, R0), b(r, R1);
    for (int t = 0; t < r; ++t) {
      arows.at(dig[t] / nb, a.row(t).data());
      brows.at(dig[t] % nb, b.row(t).data());
    }
    ++st.a_candidates;

    Matrix g(R0 * R1, r);
    for (int i = 0; i < R0; ++i)
      for (int j = 0; j < R1; ++j)
        for (int t = 0; t < r; ++t)
          g.at(i * R1 + j, t) = f.mul(a.at(t, i), b.at(t, j));
    auto c = solve_right(f, g, t2);
    if (!c) return std::nullopt;
    return Cpd{std::move(a), std::move(b), std::move(*c)};
  };

  return indexed_search(total, opt, stats, try_pair);
}

std::optional<Cpd> solve_core_brute(const Field& f, const Tensor3& core, int r,
                                    const SolveOptions& opt, SolveStats* stats) {
  if (auto t = trivial_core(core, r)) return *t;
  const int R0 = core.n0, R1 = core.n1, R2 = core.n2;
  const VectorStream arows(f, R0, VecMode::normalized);
  const VectorStream brows(f, R1, VecMode::normalized);
  const VectorStream crows(f, R2, VecMode::all);
  const std::uint64_t na = arows.size(), nb = brows.size(), nc = crows.size();
  const std::uint64_t atotal = checked_pow(na, unsigned(r));
  const std::uint64_t btotal = checked_pow(nb, unsigned(r));
  const std::uint64_t ctotal = checked_pow(nc, unsigned(r));

  SolveStats local;
  std::vector<std::uint32_t> da(r), db(r), dc(r);
  Matrix a(r, R0), b(r, R1), c(r, R2);
  Matrix g(R0 * R1, r);
  for (std::uint64_t ia = 0; ia < atotal; ++ia) {
    decode_digits(ia, na, r, da.data());
    if (opt.symmetry_breaking && !nondecreasing(da.data(), r)) continue;
    for (int t = 0; t < r; ++t) arows.at(da[t], a.row(t).data());
    for (std::uint64_t ib = 0; ib < btotal; ++ib) {
      decode_digits(ib, nb, r, db.data());
      for (int t = 0; t < r; ++t) brows.at(db[t], b.row(t).data());
      ++local.a_candidates;
      for (int i = 0; i < R0; ++i)
        for (int j = 0; j < R1; ++j)
          for (int t = 0; t < r; ++t)
            g.at(i * R1 + j, t) = f.mul(a.at(t, i), b.at(t, j));
      for (std::uint64_t ic = 0; ic < ctotal; ++ic) {
        decode_digits(ic, nc, r, dc.data());
        for (int t = 0; t < r; ++t) crows.at(dc[t], c.row(t).data());
        bool ok = true;
        for (int i = 0; i < R0 && ok; ++i)
          for (int j = 0; j < R1 && ok; ++j)
            for (int k = 0; k < R2 && ok; ++k) {
              felt v = 0;
              for (int t = 0; t < r; ++t)
                v = f.add(v, f.mul(g.at(i * R1 + j, t), c.at(t, k)));
              if (v != core.at(i, j, k)) ok = false;
            }
        if (ok) {
          if (stats) stats->merge(local);
          return Cpd{a, b, c};
        }
      }
    }
  }
  if (stats) stats->merge(local);
  return std::nullopt;
}

SolveReport solve(const Field& f, const Tensor3& t, int r, const SolveOptions& opt) {
  if (r < 0) throw std::invalid_argument("rank must be >= 0");
  SolveReport rep;
  const auto t0 = Clock::now();
  auto comp = compress(f, t, r);
  if (!comp) {
    rep.stats.seconds = seconds_since(t0);
    return rep;
  }
  rep.stats.mode_rank = comp->rank;

  const auto tc = Clock::now();
  std::optional<Cpd> core_cpd;
  switch (opt.strategy) {
    case Strategy::brute:
      core_cpd = solve_core_brute(f, comp->core, r, opt, &rep.stats);
      break;
    case Strategy::fix_two:
      core_cpd = solve_core_fix_two(f, comp->core, r, opt, &rep.stats);
      break;
    case Strategy::fix_one:
      core_cpd = solve_core_fix_one(f, comp->core, r, opt, &rep.stats);
      break;
  }
  rep.stats.core_seconds = seconds_since(tc);

  if (core_cpd) {
    if (!(reconstruct(f, *core_cpd, comp->core.n0, comp->core.n1, comp->core.n2) ==
          comp->core))
      throw std::runtime_error("internal error: core solution failed verification");
    Cpd lifted = lift(f, *core_cpd, *comp);
    if (!(reconstruct(f, lifted, t.n0, t.n1, t.n2) == t))
      throw std::runtime_error("internal error: lifted solution failed verification");
    rep.cpd = std::move(lifted);
  }
  rep.stats.seconds = seconds_since(t0);
  return rep;
}

std::optional<std::pair<int, Cpd>> min_rank(const Field& f, const Tensor3& t,
                                            int r_max, const SolveOptions& opt) {
  if (r_max < 0) throw std::invalid_argument("r_max must be >= 0");
  int start = 0;
  for (int mode = 0; mode < 3; ++mode)
    start = std::max(start, rank(f, flatten_mode(t, mode)));
  for (int r = start; r <= r_max; ++r) {
    auto rep = solve(f, t, r, opt);
    if (rep.found()) return std::make_pair(r, std::move(*rep.cpd));
  }
  return std::nullopt;
}

}  // namespace gfcpd
