#pragma once

#include <vector>

#include "qalg/matrix.hpp"

namespace qalg {

/* Affine linear system in several unknown matrix blocks. Equations have the
   shape  sum_t  L_t * X_{b_t} * R_t  =  C  entrywise; solving returns one
   particular assignment plus a basis of the homogeneous solution space, both
   unpacked back into blocks. */
template <class K>
class LinSystem {
public:
  explicit LinSystem(const K& proto) : proto_(f_zero(proto)) {}

  struct Term {
    Matrix<K> left;
    int block;
    Matrix<K> right;
  };

  int add_block(int rows, int cols) {
    blocks_.push_back({rows, cols, nvars_});
    nvars_ += rows * cols;
    return static_cast<int>(blocks_.size()) - 1;
  }

  int block_rows(int h) const { return blocks_[h].r; }
  int block_cols(int h) const { return blocks_[h].c; }

  void add_equation(const std::vector<Term>& terms, const Matrix<K>& constant) {
    int er = constant.rows(), ec = constant.cols();
    for (const Term& t : terms) {
      check_internal(0 <= t.block && t.block < static_cast<int>(blocks_.size()),
                     "LinSystem: bad block handle");
      check_internal(t.left.rows() == er && t.right.cols() == ec &&
                         t.left.cols() == blocks_[t.block].r &&
                         t.right.rows() == blocks_[t.block].c,
                     "LinSystem: term shape mismatch");
    }
    for (int a = 0; a < er; ++a)
      for (int b = 0; b < ec; ++b) {
        std::vector<K> row(nvars_, f_zero(proto_));
        for (const Term& t : terms) {
          const Block& blk = blocks_[t.block];
          for (int i = 0; i < blk.r; ++i) {
            if (f_is_zero(t.left.at(a, i))) continue;
            for (int j = 0; j < blk.c; ++j)
              row[blk.off + i * blk.c + j] =
                  row[blk.off + i * blk.c + j] + t.left.at(a, i) * t.right.at(j, b);
          }
        }
        rows_.push_back(std::move(row));
        rhs_.push_back(constant.at(a, b));
      }
  }

  struct Solution {
    bool solvable = false;
    std::vector<Matrix<K>> particular;                 // one Matrix per block
    std::vector<std::vector<Matrix<K>>> homogeneous;   // basis of the kernel, unpacked
  };

  Solution solve_all() const {
    Matrix<K> a(static_cast<int>(rows_.size()), nvars_, proto_);
    Matrix<K> b(static_cast<int>(rows_.size()), 1, proto_);
    for (size_t i = 0; i < rows_.size(); ++i) {
      for (int j = 0; j < nvars_; ++j) a.at(static_cast<int>(i), j) = rows_[i][j];
      b.at(static_cast<int>(i), 0) = rhs_[i];
    }
    SolveResult<K> s = solve(a, b);
    Solution out;
    out.solvable = s.x.has_value();
    if (out.solvable) out.particular = unpack(*s.x, 0);
    for (int k = 0; k < s.kernel.cols(); ++k) out.homogeneous.push_back(unpack(s.kernel, k));
    return out;
  }

private:
  struct Block {
    int r, c, off;
  };

  std::vector<Matrix<K>> unpack(const Matrix<K>& flat, int col) const {
    std::vector<Matrix<K>> out;
    for (const Block& blk : blocks_) {
      Matrix<K> m(blk.r, blk.c, proto_);
      for (int i = 0; i < blk.r; ++i)
        for (int j = 0; j < blk.c; ++j) m.at(i, j) = flat.at(blk.off + i * blk.c + j, col);
      out.push_back(std::move(m));
    }
    return out;
  }

  K proto_;
  int nvars_ = 0;
  std::vector<Block> blocks_;
  std::vector<std::vector<K>> rows_;
  std::vector<K> rhs_;
};

}  // namespace qalg
