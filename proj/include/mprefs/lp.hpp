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

// Exact feasibility of linear systems {A x >= b, C x = d, x >= 0} over the
// rationals. Every answer carries a certificate that is re-checked before it
// is returned: a witness x, or Farkas multipliers whose combination reads
// 0 >= positive.

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mprefs/rational.hpp"

namespace mprefs::lp {

enum class Relation { kGreaterEqual, kEqual };

struct Term {
  int var;
  Rational coeff;
};

struct LinearConstraint {
  std::vector<Term> terms;
  Relation relation = Relation::kGreaterEqual;
  Rational rhs;
};

// Variables are dense indices 0..num_variables()-1, all implicitly >= 0.
class LinearSystem {
 public:
  int add_variable() { return num_vars_++; }
  int add_variables(int count) {
    const int first = num_vars_;
    num_vars_ += count;
    return first;
  }
  int num_variables() const { return num_vars_; }

  // Terms on the same variable are merged; zero coefficients are dropped.
  void add(std::vector<Term> terms, Relation rel, Rational rhs) {
    LinearConstraint c;
    c.relation = rel;
    c.rhs = std::move(rhs);
    for (auto& t : terms) {
      if (t.var < 0 || t.var >= num_vars_) throw std::out_of_range("unknown LP variable");
      bool merged = false;
      for (auto& existing : c.terms) {
        if (existing.var == t.var) {
          existing.coeff += t.coeff;
          merged = true;
          break;
        }
      }
      if (!merged) c.terms.push_back(std::move(t));
    }
    std::erase_if(c.terms, [](const Term& t) { return t.coeff.is_zero(); });
    constraints_.push_back(std::move(c));
  }
  void add_ge(std::vector<Term> terms, Rational rhs) {
    add(std::move(terms), Relation::kGreaterEqual, std::move(rhs));
  }
  void add_eq(std::vector<Term> terms, Rational rhs) {
    add(std::move(terms), Relation::kEqual, std::move(rhs));
  }

  const std::vector<LinearConstraint>& constraints() const { return constraints_; }

 private:
  int num_vars_ = 0;
  std::vector<LinearConstraint> constraints_;
};

// Multipliers y (one per constraint, >= 0 on inequality rows) and z (one per
// variable bound x >= 0, always >= 0) such that
//   sum_r y_r a_r + z = 0   and   sum_r y_r b_r > 0.
struct FarkasCertificate {
  std::vector<Rational> row_multipliers;
  std::vector<Rational> bound_multipliers;
};

struct FeasibilityResult {
  bool feasible = false;
  std::vector<Rational> witness;  // when feasible
  FarkasCertificate certificate;  // when infeasible
  std::size_t pivots = 0;
};

inline bool satisfies(const LinearSystem& sys, const std::vector<Rational>& x) {
  if (static_cast<int>(x.size()) != sys.num_variables()) return false;
  for (const auto& v : x) {
    if (v.sign() < 0) return false;
  }
  for (const auto& c : sys.constraints()) {
    Rational lhs;
    for (const auto& t : c.terms) lhs += t.coeff * x[t.var];
    if (c.relation == Relation::kEqual ? !(lhs == c.rhs) : lhs < c.rhs) return false;
  }
  return true;
}

inline bool certifies_infeasibility(const LinearSystem& sys, const FarkasCertificate& cert) {
  const auto& rows = sys.constraints();
  if (cert.row_multipliers.size() != rows.size() ||
      static_cast<int>(cert.bound_multipliers.size()) != sys.num_variables()) {
    return false;
  }
  std::vector<Rational> combo(sys.num_variables());
  Rational rhs;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const Rational& y = cert.row_multipliers[r];
    if (rows[r].relation == Relation::kGreaterEqual && y.sign() < 0) return false;
    if (y.is_zero()) continue;
    for (const auto& t : rows[r].terms) combo[t.var] += y * t.coeff;
    rhs += y * rows[r].rhs;
  }
  for (int k = 0; k < sys.num_variables(); ++k) {
    const Rational& z = cert.bound_multipliers[k];
    if (z.sign() < 0) return false;
    if (!(combo[k] + z).is_zero()) return false;
  }
  return rhs.sign() > 0;
}

enum class PivotRule {
  kBland,    // smallest-index entering column; never cycles
  kDantzig,  // most negative reduced cost, falling back to Bland on stalls
};

struct SolveOptions {
  PivotRule rule = PivotRule::kDantzig;
  // Consecutive degenerate pivots tolerated before Dantzig hands over to
  // Bland's rule for the rest of the solve.
  std::size_t stall_limit = 50;
};

namespace detail {

// Phase-I simplex on a dense tableau.
class Tableau {
 public:
  explicit Tableau(const LinearSystem& sys) : sys_(sys) {
    const auto& rows = sys.constraints();
    rows_ = rows.size();
    num_x_ = sys.num_variables();
    // Column layout: x | slacks (one per >= row) | artificials.
    std::size_t next = num_x_;
    slack_col_.assign(rows_, npos);
    for (std::size_t r = 0; r < rows_; ++r) {
      if (rows[r].relation == Relation::kGreaterEqual) slack_col_[r] = next++;
    }
    flip_.assign(rows_, false);
    init_col_.assign(rows_, npos);
    std::vector<std::size_t> art_rows;
    for (std::size_t r = 0; r < rows_; ++r) {
      const int rhs_sign = rows[r].rhs.sign();
      // a x - s = b with b <= 0 flips to -a x + s = -b >= 0: slack is basic.
      if (rows[r].relation == Relation::kGreaterEqual && rhs_sign <= 0) {
        flip_[r] = true;
        init_col_[r] = slack_col_[r];
      } else {
        flip_[r] = rhs_sign < 0;
        art_rows.push_back(r);
      }
    }
    for (auto r : art_rows) init_col_[r] = next++;
    first_art_ = num_x_ + (next - num_x_ - art_rows.size());
    cols_ = next;
    width_ = cols_ + 1;  // last column holds the right-hand side
    cell_.assign((rows_ + 1) * width_, Rational());
    basis_.assign(rows_, npos);
    for (std::size_t r = 0; r < rows_; ++r) {
      const Rational sign = flip_[r] ? Rational(-1) : Rational(1);
      for (const auto& t : rows[r].terms) at(r, t.var) = sign * t.coeff;
      if (slack_col_[r] != npos) at(r, slack_col_[r]) = -sign;
      at(r, cols_) = sign * rows[r].rhs;
      if (init_col_[r] >= first_art_) at(r, init_col_[r]) = Rational(1);
      basis_[r] = init_col_[r];
    }
    // Objective row: reduced costs of "minimize sum of artificials".
    for (std::size_t c = first_art_; c < cols_; ++c) obj(c) = Rational(1);
    for (std::size_t r = 0; r < rows_; ++r) {
      if (basis_[r] < first_art_) continue;
      for (std::size_t c = 0; c <= cols_; ++c) {
        if (!at(r, c).is_zero()) obj(c) -= at(r, c);
      }
    }
  }

  void run(const SolveOptions& options) {
    bool bland = options.rule == PivotRule::kBland;
    std::size_t stalls = 0;
    while (true) {
      const std::size_t enter = bland ? entering_bland() : entering_dantzig();
      if (enter == npos) return;
      const std::size_t leave = leaving(enter);
      if (leave == npos) return;  // unbounded ray; impossible in phase I
      if (at(leave, cols_).is_zero()) {
        if (++stalls >= options.stall_limit) bland = true;
      } else {
        stalls = 0;
      }
      pivot(leave, enter);
    }
  }

  bool feasible() const { return obj(cols_).is_zero(); }
  std::size_t pivots() const { return pivots_; }

  std::vector<Rational> witness() const {
    std::vector<Rational> x(num_x_);
    for (std::size_t r = 0; r < rows_; ++r) {
      if (basis_[r] < num_x_) x[basis_[r]] = at(r, cols_);
    }
    return x;
  }

  FarkasCertificate certificate() const {
    // y' = c_B^T B^{-1}; column r of B^{-1} is the current column of the
    // variable that was basic in row r initially.
    FarkasCertificate cert;
    cert.row_multipliers.assign(rows_, Rational());
    for (std::size_t r = 0; r < rows_; ++r) {
      Rational y;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (basis_[i] >= first_art_ && !at(i, init_col_[r]).is_zero()) y += at(i, init_col_[r]);
      }
      if (flip_[r]) y.negate();
      cert.row_multipliers[r] = std::move(y);
    }
    std::vector<Rational> combo(num_x_);
    const auto& rows = sys_.constraints();
    for (std::size_t r = 0; r < rows_; ++r) {
      if (cert.row_multipliers[r].is_zero()) continue;
      for (const auto& t : rows[r].terms) combo[t.var] += cert.row_multipliers[r] * t.coeff;
    }
    cert.bound_multipliers.resize(num_x_);
    for (std::size_t k = 0; k < num_x_; ++k) cert.bound_multipliers[k] = -combo[k];
    return cert;
  }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  Rational& at(std::size_t r, std::size_t c) { return cell_[r * width_ + c]; }
  const Rational& at(std::size_t r, std::size_t c) const { return cell_[r * width_ + c]; }
  Rational& obj(std::size_t c) { return cell_[rows_ * width_ + c]; }
  const Rational& obj(std::size_t c) const { return cell_[rows_ * width_ + c]; }

  std::size_t entering_bland() const {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (obj(c).sign() < 0) return c;
    }
    return npos;
  }

  std::size_t entering_dantzig() const {
    std::size_t best = npos;
    for (std::size_t c = 0; c < cols_; ++c) {
      if (obj(c).sign() < 0 && (best == npos || obj(c) < obj(best))) best = c;
    }
    return best;
  }

  // Minimum ratio test; ties go to the smallest basic variable index.
  std::size_t leaving(std::size_t enter) const {
    std::size_t best = npos;
    Rational best_ratio;
    for (std::size_t r = 0; r < rows_; ++r) {
      const Rational& a = at(r, enter);
      if (a.sign() <= 0) continue;
      Rational ratio = at(r, cols_) / a;
      if (best == npos || ratio < best_ratio ||
          (ratio == best_ratio && basis_[r] < basis_[best])) {
        best = r;
        best_ratio = std::move(ratio);
      }
    }
    return best;
  }

  void pivot(std::size_t pr, std::size_t pc) {
    ++pivots_;
    const Rational inv = Rational(1) / at(pr, pc);
    nonzero_.clear();
    for (std::size_t c = 0; c <= cols_; ++c) {
      if (at(pr, c).is_zero()) continue;
      at(pr, c) *= inv;
      nonzero_.push_back(c);
    }
    for (std::size_t r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      Rational* row = &cell_[r * width_];
      if (row[pc].is_zero()) continue;
      const Rational factor = row[pc];
      const Rational* src = &cell_[pr * width_];
      for (std::size_t c : nonzero_) row[c] -= factor * src[c];
    }
    basis_[pr] = pc;
  }

  const LinearSystem& sys_;
  std::size_t rows_ = 0;
  std::size_t num_x_ = 0;
  std::size_t cols_ = 0;
  std::size_t width_ = 0;
  std::size_t first_art_ = 0;
  std::vector<std::size_t> slack_col_;
  std::vector<std::size_t> init_col_;
  std::vector<bool> flip_;
  std::vector<std::size_t> basis_;
  std::vector<Rational> cell_;
  std::vector<std::size_t> nonzero_;
  std::size_t pivots_ = 0;
};

}  // namespace detail

// Phase-I simplex. The returned witness or certificate has already been
// checked against `sys`; a failed check throws std::logic_error.
inline FeasibilityResult solve_feasibility(const LinearSystem& sys, const SolveOptions& options = {}) {
  detail::Tableau tableau(sys);
  tableau.run(options);
  FeasibilityResult result;
  result.pivots = tableau.pivots();
  result.feasible = tableau.feasible();
  if (result.feasible) {
    result.witness = tableau.witness();
    if (!satisfies(sys, result.witness)) {
      throw std::logic_error("simplex witness fails re-substitution");
    }
  } else {
    result.certificate = tableau.certificate();
    if (!certifies_infeasibility(sys, result.certificate)) {
      throw std::logic_error("simplex Farkas certificate fails verification");
    }
  }
  return result;
}

}  // namespace mprefs::lp
