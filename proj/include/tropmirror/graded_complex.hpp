#pragma once

#include <map>
#include <vector>

#include "tropmirror/matrix.hpp"

namespace tropmirror {

/// A finite cochain complex over an exact field: dimensions per degree in
/// [d_min, d_max] and differentials d_k : C^k -> C^{k+1}. Composability
/// d_{k+1} o d_k = 0 is checked on construction.
class GradedComplex {
  public:
    GradedComplex(int d_min, std::vector<std::size_t> dims, std::vector<Matrix> diffs)
        : d_min_(d_min), dims_(std::move(dims)), diffs_(std::move(diffs)) {
        if (dims_.empty()) throw DomainError("bad_shape", "complex needs at least one degree");
        if (diffs_.size() + 1 != dims_.size())
            throw DomainError("bad_shape", "need one differential per adjacent degree pair");
        for (std::size_t k = 0; k < diffs_.size(); ++k) {
            if (diffs_[k].cols() != dims_[k] || diffs_[k].rows() != dims_[k + 1])
                throw DomainError("bad_shape", "differential shape inconsistent with dims");
        }
        for (std::size_t k = 0; k + 1 < diffs_.size(); ++k) {
            if (dims_[k] == 0 || dims_[k + 1] == 0 || dims_[k + 2] == 0) continue;
            if (!(diffs_[k + 1] * diffs_[k]).is_zero())
                throw DomainError("not_a_complex", "d o d != 0");
        }
    }

    int d_min() const { return d_min_; }
    int d_max() const { return d_min_ + static_cast<int>(dims_.size()) - 1; }
    std::size_t dim(int degree) const { return dims_[static_cast<std::size_t>(degree - d_min_)]; }
    const Matrix& diff(int degree) const {
        return diffs_[static_cast<std::size_t>(degree - d_min_)];
    }

    /// Cohomology rank per degree: dim - rank(d_out) - rank(d_in).
    std::map<int, std::size_t> cohomology_ranks() const {
        std::map<int, std::size_t> out;
        for (int d = d_min(); d <= d_max(); ++d) {
            std::size_t r = dims_[static_cast<std::size_t>(d - d_min_)];
            if (d < d_max()) r -= rank(diff(d));
            if (d > d_min()) r -= rank(diff(d - 1));
            out[d] = r;
        }
        return out;
    }

  private:
    int d_min_;
    std::vector<std::size_t> dims_;
    std::vector<Matrix> diffs_;
};

} // namespace tropmirror
