#include "harmvol/linalg.hpp"

namespace harmvol {

std::vector<mpz_class> smith_invariants(Matrix<mpz_class> m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<mpz_class> diag;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // Bring the smallest nonzero entry of the trailing block to (t, t) and
    // clear its row and column; repeat until nothing is left to clear.
    for (;;) {
      std::size_t pr = rows, pc = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (sgn(m(i, j)) != 0 && (pr == rows || abs(m(i, j)) < abs(m(pr, pc)))) {
            pr = i;
            pc = j;
          }
      if (pr == rows) return diag;
      m.swap_rows(pr, t);
      if (pc != t)
        for (std::size_t i = 0; i < rows; ++i) std::swap(m(i, pc), m(i, t));
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (sgn(m(i, t)) == 0) continue;
        const mpz_class q = m(i, t) / m(t, t);
        for (std::size_t j = t; j < cols; ++j) m(i, j) -= q * m(t, j);
        if (sgn(m(i, t)) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (sgn(m(t, j)) == 0) continue;
        const mpz_class q = m(t, j) / m(t, t);
        for (std::size_t i = t; i < rows; ++i) m(i, j) -= q * m(i, t);
        if (sgn(m(t, j)) != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility: if d_t does not divide the block, fold an offending row in.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (m(i, j) % m(t, t) != 0) {
            for (std::size_t k = t; k < cols; ++k) m(t, k) += m(i, k);
            divides = false;
            break;
          }
      if (divides) break;
    }
    diag.push_back(abs(m(t, t)));
  }
  return diag;
}

std::size_t rank_mod2(std::vector<std::vector<std::uint8_t>> rows) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t p = rank;
    while (p < rows.size() && (rows[p][c] & 1u) == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != rank && (rows[i][c] & 1u))
        for (std::size_t k = 0; k < cols; ++k) rows[i][k] ^= rows[rank][k] & 1u;
    ++rank;
  }
  return rank;
}

}  // namespace harmvol
