#ifndef GPDE_SYM_MATRIX_HPP
#define GPDE_SYM_MATRIX_HPP

#include <cstddef>
#include <vector>

#include "gpde/errors.hpp"

namespace gpde {

/// Small dense symmetric matrix. Only the upper triangle is stored, so
/// (i,j) and (j,i) read the same memory and symmetry is exact by
/// construction, never up to rounding.
class SymMatrix {
public:
    SymMatrix() : dim_(0) {}

    explicit SymMatrix(int dim) : dim_(dim), upper_(static_cast<size_t>(dim) * (dim + 1) / 2, 0.0) {
        if (dim <= 0) throw DimensionError("SymMatrix: dim must be positive");
    }

    /// 1x1 convenience.
    static SymMatrix scalar(double a) {
        SymMatrix m(1);
        m.set(0, 0, a);
        return m;
    }

    int dim() const { return dim_; }

    double operator()(int i, int j) const { return upper_[index(i, j)]; }

    void set(int i, int j, double v) { upper_[index(i, j)] = v; }

    void add(int i, int j, double v) { upper_[index(i, j)] += v; }

    double trace() const {
        double t = 0.0;
        for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
        return t;
    }

    SymMatrix operator+(const SymMatrix& rhs) const {
        if (rhs.dim_ != dim_) throw DimensionError("SymMatrix: dimension mismatch in +");
        SymMatrix out(dim_);
        for (size_t k = 0; k < upper_.size(); ++k) out.upper_[k] = upper_[k] + rhs.upper_[k];
        return out;
    }

    SymMatrix operator*(double s) const {
        SymMatrix out(dim_);
        for (size_t k = 0; k < upper_.size(); ++k) out.upper_[k] = upper_[k] * s;
        return out;
    }

private:
    size_t index(int i, int j) const {
        if (i < 0 || j < 0 || i >= dim_ || j >= dim_)
            throw DimensionError("SymMatrix: index out of range");
        if (i > j) std::swap(i, j);
        // row-major upper triangle
        return static_cast<size_t>(i) * dim_ - static_cast<size_t>(i) * (i - 1) / 2 + (j - i);
    }

    int dim_;
    std::vector<double> upper_;
};

}  // namespace gpde

#endif  // GPDE_SYM_MATRIX_HPP
