#pragma once

// Hadamard matrices (natural and sequency orderings), the sign blocks of the
// Hadamard-to-Haar decomposition, and row-subsampled versions of both.  The
// irrational scale factors are carried separately: each type exposes
//   base()  — the +-1 (or 0) rational skeleton, kernel- and row-span-exact,
//   gram()  — the exact rational Gram matrix A^T A of the true scaled matrix,
//   to_real() — the true matrix with exact radical entries.

#include <cstddef>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "linalg.hpp"
#include "problem.hpp"
#include "real.hpp"

namespace exlab {

enum class HadamardOrdering { Natural, Sequency };

using SignRow = std::vector<int>;
using SignRows = std::vector<SignRow>;

struct SignMatrix {
  long n = 0;
  HadamardOrdering ordering = HadamardOrdering::Natural;
  SignRows rows;

  std::size_t size() const { return rows.size(); }
};

inline long sign_changes(const SignRow& r) {
  long c = 0;
  for (std::size_t i = 1; i < r.size(); ++i)
    if (r[i] != r[i - 1]) ++c;
  return c;
}

inline SignMatrix hadamard(long n, HadamardOrdering ordering = HadamardOrdering::Natural) {
  if (n < 0 || n > 20) throw std::invalid_argument("hadamard: order out of range");
  SignMatrix h;
  h.n = n;
  h.ordering = ordering;
  h.rows = {{1}};
  for (long j = 1; j <= n; ++j) {
    SignRows next(h.rows.size() * 2, SignRow(h.rows[0].size() * 2));
    for (std::size_t r = 0; r < h.rows.size(); ++r)
      for (std::size_t c = 0; c < h.rows[r].size(); ++c) {
        int v = h.rows[r][c];
        std::size_t half_r = h.rows.size(), half_c = h.rows[r].size();
        next[r][c] = v;
        next[r][c + half_c] = v;
        next[r + half_r][c] = v;
        next[r + half_r][c + half_c] = -v;
      }
    h.rows = std::move(next);
  }
  if (ordering == HadamardOrdering::Sequency) {
    // sign-change counts of the natural rows are a permutation of 0..2^n-1
    SignRows sorted(h.rows.size());
    for (const SignRow& r : h.rows) sorted[static_cast<std::size_t>(sign_changes(r))] = r;
    h.rows = std::move(sorted);
  }
  return h;
}

// Sign skeleton of the i-th Hadamard-to-Haar block: the unitary block X^i of
// H W^{-1} equals 2^{-i/2} B_i where B_i is the +-1 matrix computed here by
// pairing the sequency rows 2^i..2^{i+1}-1 of H_{i+1} with the finest-level
// Haar differences.  B_i B_i^T = 2^i I.
inline SignRows haar_sign_block(long i) {
  if (i < 0 || i > 16) throw std::invalid_argument("haar_sign_block: order out of range");
  if (i == 0) return {{1}};
  SignMatrix h = hadamard(i + 1, HadamardOrdering::Sequency);
  std::size_t s = std::size_t{1} << i;
  SignRows b(s, SignRow(s));
  for (std::size_t j = 0; j < s; ++j)
    for (std::size_t k = 0; k < s; ++k)
      b[j][k] = (h.rows[s + j][2 * k] - h.rows[s + j][2 * k + 1]) / 2;
  return b;
}

// ---------------------------------------------------------------------------

// A = sqrt(scale2) * (selected sign rows of H_n).
struct SubsampledHadamard {
  long n = 0;
  HadamardOrdering ordering = HadamardOrdering::Natural;
  std::vector<std::size_t> kept;
  Rat scale2{1};
  SignRows rows;  // the kept sign rows

  std::size_t m() const { return rows.size(); }
  std::size_t N() const { return std::size_t{1} << n; }

  RatMat base() const {
    RatMat b(m(), N());
    for (std::size_t i = 0; i < m(); ++i)
      for (std::size_t j = 0; j < N(); ++j) b(i, j) = rows[i][j];
    return b;
  }

  RatMat gram() const {
    RatMat b = base();
    RatMat g = b.transpose() * b;
    return scale2 * g;
  }

  RealMat to_real() const {
    Real sc = Real::sqrt_of(scale2);
    RealMat a(m(), RealVec(N()));
    for (std::size_t i = 0; i < m(); ++i)
      for (std::size_t j = 0; j < N(); ++j) a[i][j] = Rat(rows[i][j]) * sc;
    return a;
  }
};

inline SubsampledHadamard subsample_hadamard(long n, const std::vector<std::size_t>& kept,
                                             const Rat& scale2,
                                             HadamardOrdering ordering = HadamardOrdering::Natural) {
  if (scale2 <= 0) throw std::invalid_argument("subsample_hadamard: scale2 must be positive");
  SignMatrix h = hadamard(n, ordering);
  SubsampledHadamard a;
  a.n = n;
  a.ordering = ordering;
  a.kept = kept;
  a.scale2 = scale2;
  for (std::size_t r : kept) {
    if (r >= h.size()) throw std::out_of_range("subsample_hadamard: row index");
    a.rows.push_back(h.rows[r]);
  }
  return a;
}

// ---------------------------------------------------------------------------

// A = (1) + sum of blocks c_i P_{S_i} X^i with c_i = sqrt(2^i/|S_i|), so each
// surviving block row is (+-1 skeleton row)/sqrt(|S_i|).  Empty S_i drop out
// (c_i = 0).
struct HadamardToHaar {
  long n = 0;
  std::vector<std::vector<std::size_t>> sets;  // S_i, 0-based rows of X^i
  std::vector<SignRows> blocks;                // B_i for i = 0..n-1

  std::size_t N() const { return std::size_t{1} << n; }
  std::size_t m() const {
    std::size_t r = 1;
    for (const auto& s : sets) r += s.size();
    return r;
  }

  RatMat base() const {
    RatMat b(m(), N());
    b(0, 0) = 1;
    std::size_t row = 1, col = 1;
    for (long i = 0; i < n; ++i) {
      std::size_t bs = std::size_t{1} << i;
      for (std::size_t r : sets[i]) {
        for (std::size_t k = 0; k < bs; ++k) b(row, col + k) = blocks[i][r][k];
        ++row;
      }
      col += bs;
    }
    return b;
  }

  RatMat gram() const {
    RatMat g(N(), N());
    g(0, 0) = 1;
    std::size_t col = 1;
    for (long i = 0; i < n; ++i) {
      std::size_t bs = std::size_t{1} << i;
      if (!sets[i].empty()) {
        Rat inv = Rat(1) / Rat(static_cast<long>(sets[i].size()));
        for (std::size_t a = 0; a < bs; ++a)
          for (std::size_t b = 0; b < bs; ++b) {
            Rat s(0);
            for (std::size_t r : sets[i])
              s += Rat(blocks[i][r][a]) * Rat(blocks[i][r][b]);
            g(col + a, col + b) = inv * s;
          }
      }
      col += bs;
    }
    return g;
  }

  RealMat to_real() const {
    RealMat a(m(), RealVec(N()));
    a[0][0] = Rat(1);
    std::size_t row = 1, col = 1;
    for (long i = 0; i < n; ++i) {
      std::size_t bs = std::size_t{1} << i;
      if (!sets[i].empty()) {
        Real sc = Real::sqrt_of(Rat(1) / Rat(static_cast<long>(sets[i].size())));
        for (std::size_t r : sets[i]) {
          for (std::size_t k = 0; k < bs; ++k) a[row][col + k] = Rat(blocks[i][r][k]) * sc;
          ++row;
        }
      }
      col += bs;
    }
    return a;
  }

  // v = (1) + sum of sqrt(2^i) (X^i row j_i): a row-span vector with every
  // entry +-1.  Requires all S_i nonempty.
  RatVec row_span_unit() const {
    RatVec v(N(), Rat(0));
    v[0] = 1;
    std::size_t col = 1;
    for (long i = 0; i < n; ++i) {
      std::size_t bs = std::size_t{1} << i;
      if (sets[i].empty())
        throw std::domain_error("row_span_unit: requires nonempty subsample sets");
      std::size_t j = sets[i].front();
      for (std::size_t k = 0; k < bs; ++k) v[col + k] = blocks[i][j][k];
      col += bs;
    }
    return v;
  }
};

inline HadamardToHaar hadamard_to_haar(long n, std::vector<std::vector<std::size_t>> sets) {
  if (n < 1 || n > 16) throw std::invalid_argument("hadamard_to_haar: order out of range");
  if (sets.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("hadamard_to_haar: need one subsample set per block");
  HadamardToHaar a;
  a.n = n;
  a.sets = std::move(sets);
  for (long i = 0; i < n; ++i) {
    a.blocks.push_back(haar_sign_block(i));
    for (std::size_t r : a.sets[i])
      if (r >= (std::size_t{1} << i)) throw std::out_of_range("hadamard_to_haar: row index");
  }
  return a;
}

// ---------------------------------------------------------------------------
// Exact text form: "m N" header, then row-major num/den entries.

inline void write_matrix(std::ostream& os, const RatMat& a) {
  os << a.rows() << ' ' << a.cols() << '\n';
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (j) os << ' ';
      os << a(i, j).get_num() << '/' << a(i, j).get_den();
    }
    os << '\n';
  }
}

inline RatMat read_matrix(std::istream& is) {
  std::size_t m = 0, n = 0;
  if (!(is >> m >> n)) throw std::invalid_argument("read_matrix: bad header");
  RatMat a(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::string tok;
      if (!(is >> tok)) throw std::invalid_argument("read_matrix: truncated");
      a(i, j) = Rat(tok);
      a(i, j).canonicalize();
    }
  return a;
}

}  // namespace exlab
