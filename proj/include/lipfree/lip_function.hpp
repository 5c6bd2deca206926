#pragma once

#include <utility>
#include <vector>

#include "free_element.hpp"

namespace lipfree {

/// A real function on the points of a space with f(base) = 0, carrying its
/// exact Lipschitz constant and a pair attaining it.
template <Scalar S>
class LipFunction {
public:
    LipFunction(SpacePtr<S> space, std::vector<S> values) : space_(std::move(space)), values_(std::move(values)) {
        if (static_cast<int>(values_.size()) != space_->size())
            throw StructuralError("function has " + std::to_string(values_.size()) + " values for a space of " +
                                  std::to_string(space_->size()) + " points");
        if (!space_->tol().is_zero(values_[space_->base()]))
            throw ArgumentError("function must vanish at the base point");
        values_[space_->base()] = S(0);
        compute_norm();
    }

    /// Subtracts f(base) first, which changes no molecule value.
    static LipFunction shifted(SpacePtr<S> space, std::vector<S> values) {
        if (static_cast<int>(values.size()) != space->size())
            throw StructuralError("function value count does not match the space");
        const S b = values[space->base()];
        for (auto& x : values) x -= b;
        return LipFunction(std::move(space), std::move(values));
    }

    static LipFunction zero(SpacePtr<S> space) {
        std::vector<S> v(space->size(), S(0));
        return LipFunction(std::move(space), std::move(v));
    }

    /// p -> d(base, p).
    static LipFunction distance_to_base(SpacePtr<S> space) {
        std::vector<S> v;
        for (int p = 0; p < space->size(); ++p) v.push_back(space->d(space->base(), p));
        return LipFunction(std::move(space), std::move(v));
    }

    const SpacePtr<S>& space() const { return space_; }
    const std::vector<S>& values() const { return values_; }
    const S& operator()(int p) const { return values_.at(static_cast<std::size_t>(p)); }
    const S& norm() const { return norm_; }
    /// Ordered pair (p,q) with (f(p)-f(q))/d(p,q) = norm; (-1,-1) on a 1-point space.
    std::pair<int, int> norm_pair() const { return norm_pair_; }

    /// (f(u) - f(v)) / d(u,v).
    S eval(const Molecule& m) const {
        space_->require_point(m.u);
        space_->require_point(m.v);
        if (m.u == m.v) throw ArgumentError("molecule requires distinct points");
        return (values_[m.u] - values_[m.v]) / space_->d(m.u, m.v);
    }

    /// The duality pairing <mu, f>.
    S apply(const FreeElement<S>& mu) const {
        require_same_space(space_, mu.space());
        S out(0);
        for (const auto& [p, w] : mu.weights()) out += w * values_[p];
        return out;
    }

    LipFunction scaled(const S& c) const {
        auto v = values_;
        for (auto& x : v) x *= c;
        return LipFunction(space_, std::move(v));
    }

    /// f / ||f||; requires a non-constant function.
    LipFunction normalized() const {
        if (norm_ == S(0)) throw ArgumentError("cannot normalize a constant function");
        return scaled(S(1) / norm_);
    }

    friend LipFunction operator-(const LipFunction& a, const LipFunction& b) {
        require_same_space(a.space_, b.space_);
        auto v = a.values_;
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= b.values_[i];
        return LipFunction(a.space_, std::move(v));
    }

    friend LipFunction operator+(const LipFunction& a, const LipFunction& b) {
        require_same_space(a.space_, b.space_);
        auto v = a.values_;
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += b.values_[i];
        return LipFunction(a.space_, std::move(v));
    }

    LipFunction operator-() const { return scaled(S(-1)); }

    friend bool operator==(const LipFunction& a, const LipFunction& b) {
        return (a.space_ == b.space_ || a.space_->same_as(*b.space_)) && a.values_ == b.values_;
    }

private:
    void compute_norm() {
        norm_ = S(0);
        norm_pair_ = {-1, -1};
        const int n = space_->size();
        bool first = true;
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) {
                if (p == q) continue;
                S r = (values_[p] - values_[q]) / space_->d(p, q);
                if (first || r > norm_) {
                    norm_ = r;
                    norm_pair_ = {p, q};
                    first = false;
                }
            }
    }

    SpacePtr<S> space_;
    std::vector<S> values_;
    S norm_{};
    std::pair<int, int> norm_pair_{-1, -1};
};

template <Scalar S>
S lip_norm(const LipFunction<S>& f) {
    return f.norm();
}

template <Scalar S>
S eval_molecule(const LipFunction<S>& f, const Molecule& m) {
    return f.eval(m);
}

/// ||f - g|| in Lip_0.
template <Scalar S>
S lip_dist(const LipFunction<S>& f, const LipFunction<S>& g) {
    return (f - g).norm();
}

}  // namespace lipfree
