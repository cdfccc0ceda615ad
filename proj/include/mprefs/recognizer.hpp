// Copyright 2026 The mprefs Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Exact decision procedure for 2-dimensional Manhattan embeddability.
//
// Fixing, for every voter i, alternative j and axis k, the sign of
// E(v_i)[k] - E(j)[k] turns every L1 distance into a linear form, and the
// embedding conditions into a linear system. Strict preferences become a
// unit gap between consecutive alternatives of each ranking; the system is
// homogeneous, so any strictly feasible embedding can be rescaled to meet
// it. The search branches on signs depth first. At every node, undecided
// absolute values |V - A| are relaxed to a variable t >= |V - A|; an
// infeasible relaxation prunes the subtree, and a relaxation whose
// coordinates already embed the profile ends the search.
//
// Gauge: all coordinates are nonnegative (translation), and voter 1's
// second-ranked alternative b satisfies 0 <= dy <= dx for
// (dx, dy) = E(b) - E(v_1) (the eight L1 isometries fixing a point).

#pragma once

#include <array>
#include <bitset>
#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mprefs/constructive.hpp"
#include "mprefs/geometry.hpp"
#include "mprefs/lp.hpp"
#include "mprefs/obstructions.hpp"
#include "mprefs/profile.hpp"

namespace mprefs {

// Sign of E(v_i)[k] - E(j)[k].
enum class Sign : std::int8_t { kUndecided, kNonneg, kNonpos };

class SignAssignment {
 public:
  SignAssignment() = default;
  SignAssignment(int num_voters, int num_alternatives)
      : n_(num_voters), m_(num_alternatives), signs_(2 * num_voters * num_alternatives) {}

  int num_voters() const { return n_; }
  int num_alternatives() const { return m_; }

  Sign get(int voter, int alt, int axis) const { return signs_[index(voter, alt, axis)]; }
  void set(int voter, int alt, int axis, Sign s) { signs_[index(voter, alt, axis)] = s; }

  bool fully_decided() const {
    for (Sign s : signs_) {
      if (s == Sign::kUndecided) return false;
    }
    return true;
  }
  int num_undecided() const {
    int count = 0;
    for (Sign s : signs_) count += s == Sign::kUndecided;
    return count;
  }

  // Signs read off a concrete 2D embedding (zero differences count as nonneg).
  static SignAssignment from_embedding(const Embedding& e) {
    if (e.dimension != 2) throw std::invalid_argument("sign patterns need a 2D embedding");
    SignAssignment s(static_cast<int>(e.voters.size()), static_cast<int>(e.alternatives.size()));
    for (int i = 1; i <= s.n_; ++i) {
      for (int j = 1; j <= s.m_; ++j) {
        for (int k = 0; k < 2; ++k) {
          const int d = (e.voter(i)[k] - e.alternative(j)[k]).sign();
          s.set(i, j, k, d >= 0 ? Sign::kNonneg : Sign::kNonpos);
        }
      }
    }
    return s;
  }

 private:
  std::size_t index(int voter, int alt, int axis) const {
    if (voter < 1 || voter > n_ || alt < 1 || alt > m_ || axis < 0 || axis > 1) {
      throw std::out_of_range("sign index out of range");
    }
    return (static_cast<std::size_t>(voter - 1) * m_ + (alt - 1)) * 2 + axis;
  }

  int n_ = 0;
  int m_ = 0;
  std::vector<Sign> signs_;
};

struct LinearizedSystem {
  lp::LinearSystem system;
  int num_voters = 0;
  int num_alternatives = 0;
  // Relaxation variable of each undecided (voter, alt, axis), or -1.
  std::vector<int> relaxed;

  int voter_var(int voter, int axis) const { return 2 * (voter - 1) + axis; }
  int alt_var(int alt, int axis) const { return 2 * num_voters + 2 * (alt - 1) + axis; }
  int relaxed_var(int voter, int alt, int axis) const {
    return relaxed[(static_cast<std::size_t>(voter - 1) * num_alternatives + (alt - 1)) * 2 + axis];
  }

  // Coordinates of a solution as a 2D embedding.
  Embedding embedding(const std::vector<Rational>& x) const {
    Embedding e;
    e.dimension = 2;
    for (int i = 1; i <= num_voters; ++i) e.voters.push_back({x[voter_var(i, 0)], x[voter_var(i, 1)]});
    for (int j = 1; j <= num_alternatives; ++j) {
      e.alternatives.push_back({x[alt_var(j, 0)], x[alt_var(j, 1)]});
    }
    return e;
  }
};

struct SystemOptions {
  bool symmetry_breaking = true;
  // Adds t <= V + A for relaxed |V - A|; valid because coordinates are >= 0.
  bool cap_relaxed = true;
};

namespace detail {

// Second-ranked alternative of voter 1, the symmetry-breaking reference.
inline int gauge_alternative(const PreferenceProfile& p) {
  return p.num_alternatives() >= 2 ? p.at_rank(1, 1) : 0;
}

inline LinearizedSystem linearize(const PreferenceProfile& p, const SignAssignment& s,
                                  const SystemOptions& options, bool allow_undecided) {
  const int n = p.num_voters();
  const int m = p.num_alternatives();
  if (s.num_voters() != n || s.num_alternatives() != m) {
    throw std::invalid_argument("sign assignment does not match profile size");
  }
  LinearizedSystem out;
  out.num_voters = n;
  out.num_alternatives = m;
  auto& sys = out.system;
  sys.add_variables(2 * (n + m));
  out.relaxed.assign(static_cast<std::size_t>(2) * n * m, -1);
  const Rational one(1);
  const Rational minus_one(-1);

  // |V - A| on (i, j, k) as a linear form.
  auto abs_terms = [&](int i, int j, int k) -> std::vector<lp::Term> {
    const int v = out.voter_var(i, k);
    const int a = out.alt_var(j, k);
    switch (s.get(i, j, k)) {
      case Sign::kNonneg: return {{v, one}, {a, minus_one}};
      case Sign::kNonpos: return {{a, one}, {v, minus_one}};
      case Sign::kUndecided: break;
    }
    if (!allow_undecided) {
      throw std::invalid_argument("undecided sign for voter " + std::to_string(i) +
                                  ", alternative " + std::to_string(j) + ", axis " +
                                  std::to_string(k));
    }
    return {{out.relaxed_var(i, j, k), one}};
  };

  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= m; ++j) {
      for (int k = 0; k < 2; ++k) {
        const int v = out.voter_var(i, k);
        const int a = out.alt_var(j, k);
        switch (s.get(i, j, k)) {
          case Sign::kNonneg: sys.add_ge({{v, one}, {a, minus_one}}, 0); break;
          case Sign::kNonpos: sys.add_ge({{a, one}, {v, minus_one}}, 0); break;
          case Sign::kUndecided: {
            if (!allow_undecided) abs_terms(i, j, k);  // throws
            const int t = sys.add_variable();
            out.relaxed[(static_cast<std::size_t>(i - 1) * m + (j - 1)) * 2 + k] = t;
            sys.add_ge({{t, one}, {v, minus_one}, {a, one}}, 0);
            sys.add_ge({{t, one}, {v, one}, {a, minus_one}}, 0);
            if (options.cap_relaxed) sys.add_ge({{v, one}, {a, one}, {t, minus_one}}, 0);
            break;
          }
        }
      }
    }
  }

  // dist(i, worse) - dist(i, better) >= 1 for consecutive alternatives.
  for (int i = 1; i <= n; ++i) {
    for (int r = 0; r + 1 < m; ++r) {
      const int better = p.at_rank(i, r);
      const int worse = p.at_rank(i, r + 1);
      std::vector<lp::Term> terms;
      for (int k = 0; k < 2; ++k) {
        for (auto& t : abs_terms(i, worse, k)) terms.push_back(std::move(t));
        for (auto& t : abs_terms(i, better, k)) terms.push_back({t.var, -t.coeff});
      }
      sys.add_ge(std::move(terms), 1);
    }
  }

  if (options.symmetry_breaking && m >= 2) {
    const int b = gauge_alternative(p);
    const int vx = out.voter_var(1, 0), vy = out.voter_var(1, 1);
    const int bx = out.alt_var(b, 0), by = out.alt_var(b, 1);
    sys.add_ge({{bx, one}, {vx, minus_one}}, 0);
    sys.add_ge({{by, one}, {vy, minus_one}}, 0);
    sys.add_ge({{bx, one}, {vx, minus_one}, {by, minus_one}, {vy, one}}, 0);
  }
  return out;
}

}  // namespace detail

// Linear system of a fully decided sign assignment: feasible iff an
// embedding with exactly these signs exists (up to scaling and the gauge).
inline LinearizedSystem build_system(const PreferenceProfile& p, const SignAssignment& s,
                                     const SystemOptions& options = {}) {
  return detail::linearize(p, s, options, /*allow_undecided=*/false);
}

// Relaxation of a partial assignment; every embedding compatible with the
// decided signs is feasible for it.
inline LinearizedSystem build_relaxation(const PreferenceProfile& p, const SignAssignment& s,
                                         const SystemOptions& options = {}) {
  return detail::linearize(p, s, options, /*allow_undecided=*/true);
}

// Multiplies all coordinates by the least common denominator.
inline Embedding scale_to_integers(const Embedding& e) {
  std::vector<Rational> all;
  for (const auto* group : {&e.voters, &e.alternatives}) {
    for (const auto& pt : *group) all.insert(all.end(), pt.begin(), pt.end());
  }
  const Rational factor(mpq_class(common_denominator(all)));
  Embedding out = e;
  for (auto* group : {&out.voters, &out.alternatives}) {
    for (auto& pt : *group) {
      for (auto& c : pt) c *= factor;
    }
  }
  return out;
}

// Integer 2D embedding from a feasible leaf solution, verified before and
// after scaling. A verification failure means the linearization is wrong and
// is reported as std::logic_error.
inline Embedding extract_witness(const PreferenceProfile& p, const LinearizedSystem& sys,
                                 const std::vector<Rational>& solution) {
  Embedding e = sys.embedding(solution);
  if (!verify_embedding(p, e).consistent()) {
    throw std::logic_error("leaf solution is not a consistent embedding");
  }
  Embedding scaled = scale_to_integers(e);
  if (!verify_embedding(p, scaled).consistent()) {
    throw std::logic_error("scaled witness is not a consistent embedding");
  }
  return scaled;
}

struct RecognizerOptions {
  std::optional<std::uint64_t> node_budget;
  // Answer n >= 3 profiles with an obstructed voter triple without search.
  bool obstruction_fast_path = true;
  // Answer n <= 2 or m <= 3 with the closed-form constructions.
  bool constructive_fast_path = true;
  // Fix signs implied by transitivity along each axis before solving.
  bool propagate = true;
  SystemOptions system;
  lp::SolveOptions lp;
};

enum class RecognitionVerdict { kFeasible, kInfeasible, kUndecided };

inline std::string_view to_string(RecognitionVerdict v) {
  switch (v) {
    case RecognitionVerdict::kFeasible: return "feasible";
    case RecognitionVerdict::kInfeasible: return "infeasible";
    case RecognitionVerdict::kUndecided: return "undecided";
  }
  return "?";
}

struct RecognitionOutcome {
  RecognitionVerdict verdict = RecognitionVerdict::kUndecided;
  std::optional<Embedding> witness;
  std::optional<ThreeVoterVerdict> fast_certificate;
  std::string method;  // "search", "obstruction" or "construction"
  std::uint64_t nodes = 0;
  std::uint64_t prunes = 0;
  std::uint64_t lp_pivots = 0;
  double millis = 0;

  bool feasible() const { return verdict == RecognitionVerdict::kFeasible; }
  bool infeasible() const { return verdict == RecognitionVerdict::kInfeasible; }
};

namespace detail {

// Fixes undecided signs implied by the decided ones: on each axis the signs
// are order relations between voter and alternative coordinates, closed
// under transitivity.
inline void propagate_signs(SignAssignment& s) {
  const int n = s.num_voters();
  const int m = s.num_alternatives();
  const int size = n + m;
  constexpr int kMaxPoints = 128;
  if (size > kMaxPoints) return;
  for (int k = 0; k < 2; ++k) {
    // le[a] has bit b set when coordinate a <= coordinate b is implied.
    std::vector<std::bitset<kMaxPoints>> le(size);
    for (int a = 0; a < size; ++a) le[a].set(a);
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= m; ++j) {
        const int vi = i - 1, aj = n + j - 1;
        switch (s.get(i, j, k)) {
          case Sign::kNonneg: le[aj].set(vi); break;
          case Sign::kNonpos: le[vi].set(aj); break;
          case Sign::kUndecided: break;
        }
      }
    }
    for (int mid = 0; mid < size; ++mid) {
      for (int a = 0; a < size; ++a) {
        if (le[a][mid]) le[a] |= le[mid];
      }
    }
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= m; ++j) {
        if (s.get(i, j, k) != Sign::kUndecided) continue;
        const int vi = i - 1, aj = n + j - 1;
        if (le[aj][vi]) {
          s.set(i, j, k, Sign::kNonneg);
        } else if (le[vi][aj]) {
          s.set(i, j, k, Sign::kNonpos);
        }
      }
    }
  }
}

class SignSearch {
 public:
  SignSearch(const PreferenceProfile& p, const RecognizerOptions& options)
      : p_(p), options_(options) {}

  RecognitionOutcome run() {
    SignAssignment root(p_.num_voters(), p_.num_alternatives());
    if (options_.system.symmetry_breaking && p_.num_alternatives() >= 2) {
      const int b = gauge_alternative(p_);
      root.set(1, b, 0, Sign::kNonpos);
      root.set(1, b, 1, Sign::kNonpos);
    }
    RecognitionOutcome out;
    out.method = "search";
    const bool found = dfs(root);
    out.nodes = nodes_;
    out.prunes = prunes_;
    out.lp_pivots = pivots_;
    if (found) {
      out.verdict = RecognitionVerdict::kFeasible;
      out.witness = std::move(witness_);
    } else {
      out.verdict = budget_hit_ ? RecognitionVerdict::kUndecided : RecognitionVerdict::kInfeasible;
    }
    return out;
  }

 private:
  bool dfs(SignAssignment signs) {
    if (options_.node_budget && nodes_ >= *options_.node_budget) {
      budget_hit_ = true;
      return false;
    }
    ++nodes_;
    if (options_.propagate) propagate_signs(signs);
    const LinearizedSystem sys = build_relaxation(p_, signs, options_.system);
    const lp::FeasibilityResult result = lp::solve_feasibility(sys.system, options_.lp);
    pivots_ += result.pivots;
    if (!result.feasible) {
      ++prunes_;
      return false;
    }
    const auto& x = result.witness;
    Embedding candidate = sys.embedding(x);
    if (verify_embedding(p_, candidate).consistent()) {
      witness_ = extract_witness(p_, sys, x);
      return true;
    }

    // Branch on the relaxed |V - A| with the largest overestimate.
    int bi = 0, bj = 0, bk = 0;
    Rational best_gap;
    for (int i = 1; i <= p_.num_voters(); ++i) {
      for (int j = 1; j <= p_.num_alternatives(); ++j) {
        for (int k = 0; k < 2; ++k) {
          const int t = sys.relaxed_var(i, j, k);
          if (t < 0) continue;
          Rational gap = x[t] - abs(x[sys.voter_var(i, k)] - x[sys.alt_var(j, k)]);
          if (gap.sign() > 0 && (bi == 0 || best_gap < gap)) {
            best_gap = std::move(gap);
            bi = i, bj = j, bk = k;
          }
        }
      }
    }
    if (bi == 0) {
      // Every relaxed term is tight, so the solution is an exact embedding.
      throw std::logic_error("tight relaxation failed embedding verification");
    }
    const int diff = (x[sys.voter_var(bi, bk)] - x[sys.alt_var(bj, bk)]).sign();
    const Sign first = diff >= 0 ? Sign::kNonneg : Sign::kNonpos;
    const Sign second = first == Sign::kNonneg ? Sign::kNonpos : Sign::kNonneg;
    for (Sign choice : {first, second}) {
      SignAssignment child = signs;
      child.set(bi, bj, bk, choice);
      if (dfs(std::move(child))) return true;
      if (budget_hit_) return false;
    }
    return false;
  }

  const PreferenceProfile& p_;
  const RecognizerOptions& options_;
  std::uint64_t nodes_ = 0;
  std::uint64_t prunes_ = 0;
  std::uint64_t pivots_ = 0;
  bool budget_hit_ = false;
  Embedding witness_;
};

inline Embedding pad_to_2d(Embedding e) {
  while (e.dimension < 2) {
    ++e.dimension;
    for (auto* group : {&e.voters, &e.alternatives}) {
      for (auto& pt : *group) pt.emplace_back(0);
    }
  }
  return e;
}

}  // namespace detail

// Decides whether `p` admits a 2-dimensional Manhattan embedding. Feasible
// outcomes carry a verified integer witness; infeasible outcomes mean the
// whole sign tree was refuted (or an obstructed voter triple was found);
// an exhausted node budget yields kUndecided, never a feasibility claim.
inline RecognitionOutcome recognize_2d(const PreferenceProfile& p,
                                       const RecognizerOptions& options = {}) {
  const auto start = std::chrono::steady_clock::now();
  auto finish = [&](RecognitionOutcome out) {
    out.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                     .count();
    return out;
  };
  const int n = p.num_voters();
  const int m = p.num_alternatives();

  if (options.constructive_fast_path && (n <= 2 || m <= 3)) {
    Embedding e;
    if (m == 1) {
      e.dimension = 2;
      e.voters.assign(n, make_point({0, 0}));
      e.alternatives.assign(1, make_point({0, 0}));
    } else {
      e = detail::pad_to_2d(n <= 2 ? embed_n_dim(p) : embed_m_dim(p));
    }
    if (!verify_embedding(p, e).consistent()) {
      throw std::logic_error("closed-form embedding failed verification");
    }
    RecognitionOutcome out;
    out.verdict = RecognitionVerdict::kFeasible;
    out.witness = std::move(e);
    out.method = "construction";
    return finish(std::move(out));
  }

  if (options.obstruction_fast_path && n >= 3) {
    if (auto triple = find_obstructed_triple(p)) {
      RecognitionOutcome out;
      out.verdict = RecognitionVerdict::kInfeasible;
      out.fast_certificate = std::move(triple);
      out.method = "obstruction";
      return finish(std::move(out));
    }
  }

  return finish(detail::SignSearch(p, options).run());
}

}  // namespace mprefs
