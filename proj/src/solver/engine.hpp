#pragma once

// Search kernels shared by the backends. Templated on the coefficient type
// so small systems run on machine words and large ones on Int.

#include "fqbool/boolsys.hpp"
#include "fqbool/solver.hpp"

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace fqb::detail {

// Linear/multilinear constraints: first num_eq are "= 0", the rest ">= 0".
template <class Num>
struct Compiled {
  struct Term {
    Num c;
    std::uint32_t off, len, cons;
  };
  struct Cons {
    Num constant;
    std::uint32_t t_begin, t_end;
    bool ge;
  };
  std::size_t nvars = 0;
  std::size_t num_eq = 0;
  std::vector<std::uint32_t> term_vars;
  std::vector<Term> terms;
  std::vector<Cons> cons;
  std::vector<std::vector<std::uint32_t>> var_terms;
  std::vector<std::vector<std::uint32_t>> var_cons;
};

// GE rows restricting each symmetric theta expansion to canonical preimages.
std::vector<SparsePoly> canonical_rows(const BooleanSystem& sys);
// True if every row's sum of |coefficients| stays far from int64 overflow.
bool fits_machine_words(const std::vector<SparsePoly>& eqs, const std::vector<SparsePoly>& ge);

template <class Num>
Num to_num(const Int& v) {
  if constexpr (std::is_same_v<Num, Int>)
    return v;
  else
    return static_cast<Num>(v);
}

template <class Num>
Compiled<Num> compile(std::size_t nvars, const std::vector<SparsePoly>& eqs, const std::vector<SparsePoly>& ge) {
  Compiled<Num> C;
  C.nvars = nvars;
  C.num_eq = eqs.size();
  C.var_terms.resize(nvars);
  C.var_cons.resize(nvars);
  auto add = [&](const SparsePoly& f, bool is_ge) {
    const auto ci = static_cast<std::uint32_t>(C.cons.size());
    typename Compiled<Num>::Cons row{Num(0), static_cast<std::uint32_t>(C.terms.size()), 0, is_ge};
    for (const auto& [m, c] : f.terms()) {
      if (m.is_constant()) {
        row.constant = to_num<Num>(c);
        continue;
      }
      const auto ti = static_cast<std::uint32_t>(C.terms.size());
      C.terms.push_back({to_num<Num>(c), static_cast<std::uint32_t>(C.term_vars.size()),
                         static_cast<std::uint32_t>(m.factors().size()), ci});
      for (const auto& [v, e] : m.factors()) {
        C.term_vars.push_back(v);
        C.var_terms[v].push_back(ti);
        if (C.var_cons[v].empty() || C.var_cons[v].back() != ci) C.var_cons[v].push_back(ci);
      }
    }
    row.t_end = static_cast<std::uint32_t>(C.terms.size());
    C.cons.push_back(row);
  };
  for (const auto& f : eqs) add(f, false);
  for (const auto& f : ge) add(f, true);
  return C;
}

class Deadline {
 public:
  explicit Deadline(double seconds)
      : active_(seconds > 0),
        end_(std::chrono::steady_clock::now() + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                                    std::chrono::duration<double>(seconds))) {}
  bool expired() const { return active_ && std::chrono::steady_clock::now() >= end_; }

 private:
  bool active_;
  std::chrono::steady_clock::time_point end_;
};

// Gray-code enumeration over the free variables. Returns the first solution.
template <class Num>
SolveOutcome exhaustive(const Compiled<Num>& C, const std::vector<Literal>& assumptions, const Deadline& dl) {
  SolveOutcome out;
  std::vector<std::int8_t> fixed(C.nvars, -1);
  for (auto [v, b] : assumptions) {
    if (fixed[v] >= 0 && fixed[v] != b) {
      out.status = SolveStatus::Unsat;
      return out;
    }
    fixed[v] = b;
  }
  std::vector<std::uint32_t> free;
  for (std::uint32_t v = 0; v < C.nvars; ++v)
    if (fixed[v] < 0) free.push_back(v);
  if (free.size() >= 63) {
    out.reason = "too many variables";
    return out;
  }
  Assignment a(C.nvars, 0);
  for (std::uint32_t v = 0; v < C.nvars; ++v) a[v] = fixed[v] > 0;
  std::vector<std::uint32_t> ones(C.terms.size(), 0);
  std::vector<Num> value(C.num_eq);
  std::size_t nonzero = 0;
  for (std::size_t c = 0; c < C.num_eq; ++c) value[c] = C.cons[c].constant;
  for (std::size_t t = 0; t < C.terms.size(); ++t) {
    const auto& T = C.terms[t];
    if (T.cons >= C.num_eq) continue;
    for (std::uint32_t k = 0; k < T.len; ++k) ones[t] += a[C.term_vars[T.off + k]];
    if (ones[t] == T.len) value[T.cons] += T.c;
  }
  for (std::size_t c = 0; c < C.num_eq; ++c) nonzero += value[c] != 0;
  const std::uint64_t total = std::uint64_t{1} << free.size();
  for (std::uint64_t i = 0;; ++i) {
    ++out.nodes;
    if (nonzero == 0) {
      out.status = SolveStatus::Sat;
      out.assignment = a;
      return out;
    }
    if (i + 1 == total) break;
    if ((i & 0xffff) == 0 && dl.expired()) {
      out.reason = "timeout";
      return out;
    }
    const std::uint32_t v = free[static_cast<std::size_t>(__builtin_ctzll(i + 1))];
    const bool up = !a[v];
    a[v] = up;
    for (std::uint32_t t : C.var_terms[v]) {
      const auto& T = C.terms[t];
      if (T.cons >= C.num_eq) continue;
      Num& val = value[T.cons];
      const bool was_zero = val == 0;
      if (up) {
        if (++ones[t] == T.len) val += T.c;
      } else {
        if (ones[t]-- == T.len) val -= T.c;
      }
      const bool is_zero = val == 0;
      if (was_zero != is_zero) is_zero ? --nonzero : ++nonzero;
    }
  }
  out.status = SolveStatus::Unsat;
  return out;
}

// DFS with interval-bound propagation. Branches on the tightest equation
// (fewest open terms), most frequent variable first, value 0 before 1.
template <class Num>
class Backtracker {
 public:
  Backtracker(const Compiled<Num>& C, const Deadline& dl) : C_(C), dl_(dl) {
    val_.assign(C.nvars, -1);
    zeros_.assign(C.terms.size(), 0);
    ones_.assign(C.terms.size(), 0);
    lo_.resize(C.cons.size());
    hi_.resize(C.cons.size());
    open_.assign(C.cons.size(), 0);
    queued_.assign(C.cons.size(), 0);
    for (std::size_t c = 0; c < C.cons.size(); ++c) lo_[c] = hi_[c] = C.cons[c].constant;
    for (const auto& T : C.terms) {
      if (T.c < 0)
        lo_[T.cons] += T.c;
      else
        hi_[T.cons] += T.c;
      ++open_[T.cons];
    }
    d0lo_.resize(C.nvars), d0hi_.resize(C.nvars), d1lo_.resize(C.nvars), d1hi_.resize(C.nvars);
    touched_flag_.assign(C.nvars, 0);
  }

  std::uint64_t nodes() const { return nodes_; }

  // on_solution receives a full assignment (unassigned -> 0) and returns
  // true to keep enumerating. Without `project`, stops at the first one.
  SolveStatus run(const std::vector<Literal>& assumptions, const std::vector<VarId>& project,
                  const std::function<bool(const Assignment&)>& on_solution) {
    for (std::uint32_t c = 0; c < C_.cons.size(); ++c) enqueue(c);
    for (auto [v, b] : assumptions) {
      if (val_[v] >= 0) {
        if (val_[v] != b) return SolveStatus::Unsat;
        continue;
      }
      assign(v, b);
    }
    if (!propagate()) return SolveStatus::Unsat;
    project_ = project;
    is_proj_.assign(C_.nvars, 0);
    for (VarId v : project) is_proj_[v] = 1;
    bool found = false;

    for (;;) {
      if ((++nodes_ & 0xfff) == 0 && dl_.expired()) return SolveStatus::Unknown;
      const std::int64_t v = pick();
      if (v < 0) {
        found = true;
        Assignment a(C_.nvars, 0);
        for (std::size_t i = 0; i < C_.nvars; ++i) a[i] = val_[i] > 0;
        if (!on_solution(a) || project_.empty()) return SolveStatus::Sat;
        if (!backtrack(true)) return SolveStatus::Sat;
        continue;
      }
      levels_.push_back({static_cast<std::uint32_t>(trail_.size()), static_cast<std::uint32_t>(v), false});
      assign(static_cast<std::uint32_t>(v), 0);
      while (!propagate()) {
        if (!backtrack(false)) return found ? SolveStatus::Sat : SolveStatus::Unsat;
      }
    }
  }

 private:
  struct Level {
    std::uint32_t trail_start, var;
    bool flipped;
  };

  bool feasible(std::uint32_t c, const Num& lo, const Num& hi) const {
    return C_.cons[c].ge ? hi >= 0 : (lo <= 0 && hi >= 0);
  }

  void enqueue(std::uint32_t c) {
    if (!queued_[c]) {
      queued_[c] = 1;
      queue_.push_back(c);
    }
  }

  // Contribution interval of a term as a function of its counters.
  void contrib(std::uint32_t t, Num& lo, Num& hi) const {
    const auto& T = C_.terms[t];
    if (zeros_[t] > 0) {
      lo = hi = 0;
    } else if (ones_[t] == T.len) {
      lo = hi = T.c;
    } else if (T.c < 0) {
      lo = T.c, hi = 0;
    } else {
      lo = 0, hi = T.c;
    }
  }
  bool is_open(std::uint32_t t) const { return zeros_[t] == 0 && ones_[t] < C_.terms[t].len; }

  void assign(std::uint32_t v, int b) {
    val_[v] = static_cast<std::int8_t>(b);
    trail_.push_back(v);
    for (std::uint32_t t : C_.var_terms[v]) {
      Num olo, ohi, nlo, nhi;
      contrib(t, olo, ohi);
      const bool was_open = is_open(t);
      if (b)
        ++ones_[t];
      else
        ++zeros_[t];
      contrib(t, nlo, nhi);
      const std::uint32_t c = C_.terms[t].cons;
      lo_[c] += nlo - olo;
      hi_[c] += nhi - ohi;
      if (was_open && !is_open(t)) --open_[c];
    }
    for (std::uint32_t c : C_.var_cons[v]) enqueue(c);
  }

  void unassign(std::uint32_t v) {
    const int b = val_[v];
    for (std::uint32_t t : C_.var_terms[v]) {
      Num olo, ohi, nlo, nhi;
      contrib(t, olo, ohi);
      const bool was_open = is_open(t);
      if (b)
        --ones_[t];
      else
        --zeros_[t];
      contrib(t, nlo, nhi);
      const std::uint32_t c = C_.terms[t].cons;
      lo_[c] += nlo - olo;
      hi_[c] += nhi - ohi;
      if (!was_open && is_open(t)) ++open_[c];
    }
    val_[v] = -1;
  }

  void clear_queue() {
    for (std::uint32_t c : queue_) queued_[c] = 0;
    queue_.clear();
  }

  bool propagate() {
    while (!queue_.empty()) {
      const std::uint32_t c = queue_.back();
      queue_.pop_back();
      queued_[c] = 0;
      if (!feasible(c, lo_[c], hi_[c])) {
        clear_queue();
        return false;
      }
      if (open_[c] == 0) continue;
      // Per unassigned variable: the row interval if it were 0 / 1.
      touched_.clear();
      const auto& row = C_.cons[c];
      for (std::uint32_t t = row.t_begin; t < row.t_end; ++t) {
        if (!is_open(t)) continue;
        const auto& T = C_.terms[t];
        const Num clo = T.c < 0 ? T.c : Num(0), chi = T.c < 0 ? Num(0) : T.c;
        const bool unit = ones_[t] + 1 == T.len;
        for (std::uint32_t k = 0; k < T.len; ++k) {
          const std::uint32_t x = C_.term_vars[T.off + k];
          if (val_[x] >= 0) continue;
          if (!touched_flag_[x]) {
            touched_flag_[x] = 1;
            touched_.push_back(x);
            d0lo_[x] = d0hi_[x] = d1lo_[x] = d1hi_[x] = 0;
          }
          d0lo_[x] -= clo;
          d0hi_[x] -= chi;
          if (unit) {
            d1lo_[x] += T.c - clo;
            d1hi_[x] += T.c - chi;
          }
        }
      }
      std::int64_t force_var = -1;
      int force_val = 0;
      bool conflict = false;
      for (std::uint32_t x : touched_) {
        touched_flag_[x] = 0;
        if (force_var >= 0 || conflict) continue;
        const bool f0 = feasible(c, lo_[c] + d0lo_[x], hi_[c] + d0hi_[x]);
        const bool f1 = feasible(c, lo_[c] + d1lo_[x], hi_[c] + d1hi_[x]);
        if (!f0 && !f1)
          conflict = true;
        else if (!f0 || !f1)
          force_var = x, force_val = f0 ? 0 : 1;
      }
      if (conflict) {
        clear_queue();
        return false;
      }
      if (force_var >= 0) {
        assign(static_cast<std::uint32_t>(force_var), force_val);
        enqueue(c);
      }
    }
    return true;
  }

  // Undo the deepest level and try its other branch. With `after_solution`
  // only projected decisions are reopened (deeper levels are discarded).
  bool backtrack(bool after_solution) {
    clear_queue();
    while (!levels_.empty()) {
      Level L = levels_.back();
      levels_.pop_back();
      while (trail_.size() > L.trail_start) {
        unassign(trail_.back());
        trail_.pop_back();
      }
      if (L.flipped) continue;
      if (after_solution && !project_.empty() && !is_proj_[L.var]) continue;
      after_solution = false;
      L.flipped = true;
      levels_.push_back(L);
      assign(L.var, 1);
      if (propagate()) return true;
      clear_queue();
    }
    return false;
  }

  std::int64_t pick() {
    for (VarId v : project_)
      if (val_[v] < 0) return v;
    std::int64_t best_c = -1;
    std::uint32_t best_open = ~0u;
    for (int pass = 0; pass < 2 && best_c < 0; ++pass) {
      const std::size_t begin = pass == 0 ? 0 : C_.num_eq, end = pass == 0 ? C_.num_eq : C_.cons.size();
      for (std::size_t c = begin; c < end; ++c)
        if (open_[c] > 0 && open_[c] < best_open) best_open = open_[c], best_c = static_cast<std::int64_t>(c);
    }
    if (best_c < 0) return -1;
    const auto& row = C_.cons[static_cast<std::size_t>(best_c)];
    std::int64_t best_v = -1;
    std::size_t best_occ = 0;
    for (std::uint32_t t = row.t_begin; t < row.t_end; ++t) {
      if (!is_open(t)) continue;
      const auto& T = C_.terms[t];
      for (std::uint32_t k = 0; k < T.len; ++k) {
        const std::uint32_t x = C_.term_vars[T.off + k];
        if (val_[x] >= 0) continue;
        const std::size_t occ = C_.var_terms[x].size();
        if (best_v < 0 || occ > best_occ || (occ == best_occ && x < best_v)) best_v = x, best_occ = occ;
      }
    }
    return best_v;
  }

  const Compiled<Num>& C_;
  const Deadline& dl_;
  std::vector<std::int8_t> val_;
  std::vector<std::uint32_t> zeros_, ones_, open_;
  std::vector<Num> lo_, hi_;
  std::vector<std::uint8_t> queued_;
  std::vector<std::uint32_t> queue_;
  std::vector<std::uint32_t> trail_;
  std::vector<Level> levels_;
  std::vector<Num> d0lo_, d0hi_, d1lo_, d1hi_;
  std::vector<std::uint8_t> touched_flag_;
  std::vector<std::uint32_t> touched_;
  std::vector<VarId> project_;
  std::vector<std::uint8_t> is_proj_;
  std::uint64_t nodes_ = 0;
};

}  // namespace fqb::detail
