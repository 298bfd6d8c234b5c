#pragma once

#include <algorithm>
#include <vector>

namespace crdme {

/// Fenwick (binary indexed) tree over nonnegative propensities: point update,
/// running total, and inverse-CDF sampling in O(log n).
class FenwickTree {
public:
    explicit FenwickTree(int n) : n_(n), raw_(n, 0.0), tree_(n + 1, 0.0)
    {
        top_ = 1;
        while (top_ * 2 <= n_)
            top_ *= 2;
    }

    int size() const { return n_; }
    double value(int i) const { return raw_[i]; }
    double total() const { return total_; }

    /// Largest running total the tree has carried; the natural scale for
    /// judging floating-point drift of the incremental total.
    double peak_total() const { return peak_; }

    void set(int i, double v)
    {
        const double delta = v - raw_[i];
        if (delta == 0.0)
            return;
        raw_[i] = v;
        total_ += delta;
        peak_ = std::max(peak_, total_);
        for (int k = i + 1; k <= n_; k += k & -k)
            tree_[k] += delta;
    }

    /// Index of the cell that a cumulative target in [0, total()) falls in.
    int sample(double target) const
    {
        int pos = 0;
        for (int mask = top_; mask > 0; mask >>= 1) {
            const int next = pos + mask;
            if (next <= n_ && tree_[next] <= target) {
                target -= tree_[next];
                pos = next;
            }
        }
        return pos < n_ ? pos : n_ - 1;
    }

    /// Recompute the internal sums exactly from the raw values and return the
    /// fresh total. Clears accumulated floating-point drift.
    double rebuild()
    {
        std::fill(tree_.begin(), tree_.end(), 0.0);
        double t = 0.0;
        for (int i = 0; i < n_; ++i) {
            t += raw_[i];
            for (int k = i + 1; k <= n_; k += k & -k)
                tree_[k] += raw_[i];
        }
        total_ = t;
        peak_ = std::max(peak_, t);
        return t;
    }

private:
    int n_;
    int top_;
    double total_ = 0.0;
    double peak_ = 0.0;
    std::vector<double> raw_;
    std::vector<double> tree_;
};

}  // namespace crdme
