#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "scalar.hpp"

namespace lipfree::detail {

/// Column of the equality system A w = c. Pair columns are e_p - e_q (row -1
/// stands for the base point and is omitted); general columns are sparse.
template <Scalar S>
struct LpColumn {
    int plus = -1, minus = -1;                  // pair column rows, -1 = absent
    std::vector<std::pair<int, S>> entries;     // general column (used when general = true)
    bool general = false;
    bool artificial = false;
};

enum class SimplexOutcome { optimal, unbounded, infeasible };

/// Revised simplex for  min b·w  s.t.  A w = c, w >= 0  with a dense basis
/// inverse. The starting basis is supplied by the caller (each row either a
/// signed unit column or an artificial). Pricing is Dantzig with lowest-index
/// ties, switching permanently to Bland's rule after a run of degenerate
/// pivots; ratio ties go to the lowest column index. Deterministic.
template <Scalar S>
class RevisedSimplex {
public:
    RevisedSimplex(int rows, std::vector<LpColumn<S>> cols, std::vector<S> cost, std::vector<S> rhs, S tol)
        : r_(rows), cols_(std::move(cols)), cost_(std::move(cost)), rhs_(std::move(rhs)), tol_(std::move(tol)) {}

    /// Basis column per row; the column must be ±e_row.
    void set_initial_basis(const std::vector<int>& basis) {
        basis_ = basis;
        in_basis_.assign(cols_.size(), 0);
        binv_.assign(static_cast<std::size_t>(r_) * r_, S(0));
        xb_.assign(r_, S(0));
        for (int i = 0; i < r_; ++i) {
            const S sign = unit_sign(basis_[i], i);
            at(i, i) = sign;
            xb_[i] = sign * rhs_[i];
            in_basis_[basis_[i]] = 1;
        }
    }

    SimplexOutcome solve() {
        bool need_phase1 = false;
        for (int j : basis_)
            if (cols_[j].artificial) need_phase1 = true;
        if (need_phase1) {
            std::vector<S> c1(cols_.size(), S(0));
            for (std::size_t j = 0; j < cols_.size(); ++j)
                if (cols_[j].artificial) c1[j] = S(1);
            if (iterate(c1, true) != SimplexOutcome::optimal) throw std::logic_error("phase 1 cannot be unbounded");
            S infeas(0);
            for (int i = 0; i < r_; ++i)
                if (cols_[basis_[i]].artificial) infeas += xb_[i];
            if (infeas > tol_) return SimplexOutcome::infeasible;
            drive_out_artificials();
        }
        std::vector<S> c2 = cost_;
        for (std::size_t j = 0; j < cols_.size(); ++j)
            if (cols_[j].artificial) c2[j] = S(0);
        return iterate(c2, false);
    }

    const std::vector<int>& basis() const { return basis_; }
    const std::vector<S>& basic_values() const { return xb_; }
    const std::vector<S>& duals() const { return y_; }
    const std::vector<std::pair<int, S>>& ray() const { return ray_; }
    std::size_t pivots() const { return pivots_; }

    S objective() const {
        S out(0);
        for (int i = 0; i < r_; ++i)
            if (!cols_[basis_[i]].artificial) out += cost_[basis_[i]] * xb_[i];
        return out;
    }

private:
    S& at(int i, int k) { return binv_[static_cast<std::size_t>(i) * r_ + k]; }
    const S& at(int i, int k) const { return binv_[static_cast<std::size_t>(i) * r_ + k]; }

    S unit_sign(int j, int row) const {
        const auto& c = cols_[j];
        if (!c.general) {
            if (c.plus == row && c.minus < 0) return S(1);
            if (c.minus == row && c.plus < 0) return S(-1);
        } else if (c.entries.size() == 1 && c.entries[0].first == row) {
            return c.entries[0].second;  // only ±1 is used by callers
        }
        throw std::logic_error("initial basis column is not a unit vector");
    }

    // y = c_B B^{-1}
    void compute_duals(const std::vector<S>& c) {
        y_.assign(r_, S(0));
        S tmp;
        for (int i = 0; i < r_; ++i) {
            const S& cb = c[basis_[i]];
            if (cb == S(0)) continue;
            for (int k = 0; k < r_; ++k) {
                const S& b = at(i, k);
                if (b == S(0)) continue;
                tmp = cb;
                tmp *= b;
                y_[k] += tmp;
            }
        }
    }

    S reduced_cost(const std::vector<S>& c, int j) const {
        const auto& col = cols_[j];
        S out = c[j];
        if (!col.general) {
            if (col.plus >= 0) out -= y_[col.plus];
            if (col.minus >= 0) out += y_[col.minus];
        } else {
            for (const auto& [row, v] : col.entries) out -= y_[row] * v;
        }
        return out;
    }

    // alpha = B^{-1} A_j
    void compute_alpha(int j, std::vector<S>& alpha) const {
        alpha.assign(r_, S(0));
        const auto& col = cols_[j];
        if (!col.general) {
            for (int i = 0; i < r_; ++i) {
                if (col.plus >= 0) alpha[i] += at(i, col.plus);
                if (col.minus >= 0) alpha[i] -= at(i, col.minus);
            }
        } else {
            for (const auto& [row, v] : col.entries)
                for (int i = 0; i < r_; ++i) alpha[i] += at(i, row) * v;
        }
    }

    void pivot(int leave, int enter, const std::vector<S>& alpha) {
        const S piv = alpha[leave];
        for (int k = 0; k < r_; ++k) at(leave, k) /= piv;
        xb_[leave] /= piv;
        S tmp;
        for (int i = 0; i < r_; ++i) {
            if (i == leave || alpha[i] == S(0)) continue;
            const S& a = alpha[i];
            for (int k = 0; k < r_; ++k) {
                const S& bl = at(leave, k);
                if (bl == S(0)) continue;
                tmp = a;
                tmp *= bl;
                at(i, k) -= tmp;
            }
            tmp = a;
            tmp *= xb_[leave];
            xb_[i] -= tmp;
        }
        in_basis_[basis_[leave]] = 0;
        basis_[leave] = enter;
        in_basis_[enter] = 1;
        ++pivots_;
    }

    SimplexOutcome iterate(const std::vector<S>& c, bool allow_artificial) {
        constexpr int kDegenerateLimit = 50;
        constexpr std::size_t kPivotLimit = 200000;
        bool bland = false;
        int degenerate = 0;
        std::vector<S> alpha;
        for (;;) {
            if (pivots_ > kPivotLimit) throw std::runtime_error("simplex pivot limit exceeded");
            compute_duals(c);
            int enter = -1;
            S best(0);
            for (int j = 0; j < static_cast<int>(cols_.size()); ++j) {
                if (in_basis_[j] || (cols_[j].artificial && !allow_artificial)) continue;
                S dj = reduced_cost(c, j);
                if (!(dj < -tol_)) continue;
                if (bland) {
                    enter = j;
                    break;
                }
                if (enter < 0 || dj < best) {
                    enter = j;
                    best = std::move(dj);
                }
            }
            if (enter < 0) return SimplexOutcome::optimal;
            compute_alpha(enter, alpha);
            int leave = -1;
            S theta;
            for (int i = 0; i < r_; ++i) {
                if (!(alpha[i] > tol_)) continue;
                S ratio = xb_[i] / alpha[i];
                if (leave < 0 || ratio < theta || (ratio == theta && basis_[i] < basis_[leave])) {
                    leave = i;
                    theta = std::move(ratio);
                }
            }
            if (leave < 0) {
                ray_.clear();
                ray_.emplace_back(enter, S(1));
                for (int i = 0; i < r_; ++i)
                    if (alpha[i] != S(0)) ray_.emplace_back(basis_[i], S(-alpha[i]));
                return SimplexOutcome::unbounded;
            }
            if (theta <= tol_) {
                if (++degenerate > kDegenerateLimit) bland = true;
            } else {
                degenerate = 0;
            }
            pivot(leave, enter, alpha);
        }
    }

    // Replaces artificial basic columns (all at level zero) by real columns
    // wherever the row allows it; the remaining ones sit on redundant rows.
    void drive_out_artificials() {
        std::vector<S> alpha;
        for (int i = 0; i < r_; ++i) {
            if (!cols_[basis_[i]].artificial) continue;
            for (int j = 0; j < static_cast<int>(cols_.size()); ++j) {
                if (in_basis_[j] || cols_[j].artificial) continue;
                compute_alpha(j, alpha);
                if (alpha[i] > tol_ || alpha[i] < -tol_) {
                    pivot(i, j, alpha);
                    break;
                }
            }
        }
    }

    int r_;
    std::vector<LpColumn<S>> cols_;
    std::vector<S> cost_;
    std::vector<S> rhs_;
    S tol_;
    std::vector<int> basis_;
    std::vector<char> in_basis_;
    std::vector<S> binv_;
    std::vector<S> xb_;
    std::vector<S> y_;
    std::vector<std::pair<int, S>> ray_;
    std::size_t pivots_ = 0;
};

}  // namespace lipfree::detail
