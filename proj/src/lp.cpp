#include "ivtest/lp.hpp"

#include "ivtest/errors.hpp"

namespace ivtest::lp {
namespace {

// Revised simplex for min sum(artificials) s.t. [A | I] (x, a) = b, b >= 0, with an explicit
// basis inverse. Structural columns are kept sparse; they are the only candidates to enter.
class Phase1 {
 public:
  Phase1(const std::vector<RationalVector>& columns, const RationalVector& b)
      : rows_(b.size()), n_struct_(columns.size()) {
    row_sign_.assign(rows_, 1);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (b[i] < 0) row_sign_[i] = -1;
    }
    sparse_.resize(n_struct_);
    for (std::size_t j = 0; j < n_struct_; ++j) {
      if (columns[j].size() != rows_) throw ShapeError("LP column length mismatch");
      for (std::size_t i = 0; i < rows_; ++i) {
        if (columns[j][i] != 0) {
          sparse_[j].push_back({i, row_sign_[i] < 0 ? Rational(-columns[j][i]) : columns[j][i]});
        }
      }
    }
    binv_.assign(rows_, RationalVector(rows_, 0));
    xb_.resize(rows_);
    basis_.resize(rows_);
    y_.assign(rows_, 1);
    for (std::size_t i = 0; i < rows_; ++i) {
      binv_[i][i] = 1;
      xb_[i] = row_sign_[i] < 0 ? Rational(-b[i]) : b[i];
      basis_[i] = n_struct_ + i;
    }
    w_.resize(rows_);
  }

  FeasibilityOutcome run() {
    FeasibilityOutcome out;
    while (true) {
      const std::size_t entering = choose_entering();
      if (entering == npos) break;
      const std::size_t leaving = choose_leaving(entering);
      if (leaving == npos) {
        // The phase-1 objective is bounded below by zero, so some row must block.
        throw ConsistencyError("phase-1 simplex found an unbounded direction");
      }
      pivot(leaving);
      basis_[leaving] = entering;
      ++out.pivots;
    }
    out.feasible = true;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] >= n_struct_ && sgn(xb_[i]) != 0) out.feasible = false;
    }
    if (out.feasible) {
      out.x.assign(n_struct_, 0);
      for (std::size_t i = 0; i < rows_; ++i) {
        if (basis_[i] < n_struct_) out.x[basis_[i]] = xb_[i];
      }
    } else {
      out.y = y_;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (row_sign_[i] < 0) out.y[i] = -out.y[i];
      }
    }
    return out;
  }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  struct Entry {
    std::size_t row;
    Rational value;
  };

  // Bland: the lowest-indexed structural column with negative reduced cost -y'A_j.
  std::size_t choose_entering() {
    for (std::size_t j = 0; j < n_struct_; ++j) {
      dot_ = 0;
      for (const auto& e : sparse_[j]) {
        mpq_mul(tmp_.get_mpq_t(), y_[e.row].get_mpq_t(), e.value.get_mpq_t());
        mpq_add(dot_.get_mpq_t(), dot_.get_mpq_t(), tmp_.get_mpq_t());
      }
      if (sgn(dot_) > 0) {
        mpq_neg(reduced_.get_mpq_t(), dot_.get_mpq_t());
        return j;
      }
    }
    return npos;
  }

  std::size_t choose_leaving(std::size_t entering) {
    for (std::size_t i = 0; i < rows_; ++i) {
      w_[i] = 0;
      for (const auto& e : sparse_[entering]) {
        if (sgn(binv_[i][e.row]) == 0) continue;
        mpq_mul(tmp_.get_mpq_t(), binv_[i][e.row].get_mpq_t(), e.value.get_mpq_t());
        mpq_add(w_[i].get_mpq_t(), w_[i].get_mpq_t(), tmp_.get_mpq_t());
      }
    }
    std::size_t best = npos;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (sgn(w_[i]) <= 0) continue;
      if (best == npos) {
        best = i;
        ratio_ = xb_[i] / w_[i];
        continue;
      }
      tmp_ = xb_[i] / w_[i];
      const int c = cmp(tmp_, ratio_);
      if (c < 0 || (c == 0 && basis_[i] < basis_[best])) {
        best = i;
        mpq_swap(ratio_.get_mpq_t(), tmp_.get_mpq_t());
      }
    }
    return best;
  }

  void pivot(std::size_t r) {
    RationalVector& prow = binv_[r];
    const Rational inv = 1 / w_[r];
    nonzero_.clear();
    for (std::size_t k = 0; k < rows_; ++k) {
      if (sgn(prow[k]) != 0) {
        prow[k] *= inv;
        nonzero_.push_back(k);
      }
    }
    xb_[r] *= inv;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r || sgn(w_[i]) == 0) continue;
      for (auto k : nonzero_) {
        mpq_mul(tmp_.get_mpq_t(), w_[i].get_mpq_t(), prow[k].get_mpq_t());
        mpq_sub(binv_[i][k].get_mpq_t(), binv_[i][k].get_mpq_t(), tmp_.get_mpq_t());
      }
      if (sgn(xb_[r]) != 0) {
        mpq_mul(tmp_.get_mpq_t(), w_[i].get_mpq_t(), xb_[r].get_mpq_t());
        mpq_sub(xb_[i].get_mpq_t(), xb_[i].get_mpq_t(), tmp_.get_mpq_t());
      }
    }
    // Keeps the entering column's reduced cost at zero: y += d_e * (new row r of B^-1).
    for (auto k : nonzero_) {
      mpq_mul(tmp_.get_mpq_t(), reduced_.get_mpq_t(), prow[k].get_mpq_t());
      mpq_add(y_[k].get_mpq_t(), y_[k].get_mpq_t(), tmp_.get_mpq_t());
    }
  }

  std::size_t rows_;
  std::size_t n_struct_;
  std::vector<int> row_sign_;
  std::vector<std::vector<Entry>> sparse_;
  std::vector<RationalVector> binv_;
  RationalVector xb_;
  RationalVector y_;  // simplex multipliers c_B' B^-1
  RationalVector w_;  // B^-1 times the entering column
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> nonzero_;
  Rational ratio_, tmp_, dot_, reduced_;
};

}  // namespace

FeasibilityOutcome solve_feasibility(const std::vector<RationalVector>& columns,
                                     const RationalVector& b) {
  if (b.empty()) {
    FeasibilityOutcome out;
    out.feasible = true;
    out.x.assign(columns.size(), 0);
    return out;
  }
  return Phase1(columns, b).run();
}

}  // namespace ivtest::lp
