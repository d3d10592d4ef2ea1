#include "modunits/zlinalg.hpp"

#include <algorithm>
#include <utility>

namespace modunits {

namespace {

void require_square(std::size_t r, std::size_t c, const char* what) {
  if (r != c) throw std::invalid_argument(std::string(what) + ": matrix is not square");
}

// row_dst -= q * row_src
void row_submul(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& q) {
  if (q == 0) return;
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (m(src, j) != 0) m(dst, j) -= q * m(src, j);
}

void col_submul(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& q) {
  if (q == 0) return;
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (m(i, src) != 0) m(i, dst) -= q * m(i, src);
}

void negate_row(IntMatrix& m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Quotient rounding to nearest, so the remainder lies in [-|b|/2, |b|/2).
Integer round_div(const Integer& a, const Integer& b) {
  Integer ab = abs(b);
  Integer num = 2 * (b < 0 ? -a : a) + ab;
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), Integer(2 * ab).get_mpz_t());
  return q;
}

// Symmetric residue in (-D/2, D/2].
void reduce_sym(Integer& x, const Integer& d) {
  x %= d;  // truncating, result has sign of x
  if (x < 0) x += d;
  if (2 * x > d) x -= d;
}

}  // namespace

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

Integer det(const IntMatrix& input) {
  require_square(input.rows(), input.cols(), "det");
  const std::size_t n = input.rows();
  if (n == 0) return 1;
  IntMatrix m = input;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && m(r, k) == 0) ++r;
      if (r == n) return 0;
      m.swap_rows(k, r);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), prev.get_mpz_t());
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

Rational det(const RatMatrix& m) {
  require_square(m.rows(), m.cols(), "det");
  IntMatrix im(m.rows(), m.cols());
  Integer scale = 1;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) l = lcm(l, Integer(m(i, j).get_den()));
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Rational v = m(i, j) * l;
      im(i, j) = v.get_num();
    }
    scale *= l;
  }
  Rational r(det(im), scale);
  r.canonicalize();
  return r;
}

std::vector<Integer> HermiteForm::pivots() const {
  std::vector<Integer> out;
  for (std::size_t i = 0; i < pivot_cols.size(); ++i) out.push_back(h(i, pivot_cols[i]));
  return out;
}

HermiteForm hnf(const IntMatrix& m) {
  HermiteForm res{m, IntMatrix::identity(m.rows()), {}};
  IntMatrix& h = res.h;
  IntMatrix& u = res.u;
  std::size_t r = 0;
  for (std::size_t c = 0; c < h.cols() && r < h.rows(); ++c) {
    // Euclid on column c among rows r..end until a single nonzero remains.
    for (;;) {
      std::size_t best = h.rows();
      for (std::size_t i = r; i < h.rows(); ++i)
        if (h(i, c) != 0 && (best == h.rows() || abs(h(i, c)) < abs(h(best, c)))) best = i;
      if (best == h.rows()) break;
      h.swap_rows(r, best);
      u.swap_rows(r, best);
      bool done = true;
      for (std::size_t i = r + 1; i < h.rows(); ++i) {
        if (h(i, c) == 0) continue;
        Integer q = floor_div(h(i, c), h(r, c));
        row_submul(h, i, r, q);
        row_submul(u, i, r, q);
        if (h(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (h(r, c) == 0) continue;
    if (h(r, c) < 0) {
      negate_row(h, r);
      negate_row(u, r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Integer q = floor_div(h(i, c), h(r, c));
      row_submul(h, i, r, q);
      row_submul(u, i, r, q);
    }
    res.pivot_cols.push_back(c);
    ++r;
  }
  return res;
}

std::vector<Integer> SmithForm::nontrivial() const {
  std::vector<Integer> out;
  for (const auto& d : diagonal)
    if (d != 1) out.push_back(d);
  return out;
}

SmithForm snf(const IntMatrix& input) {
  IntMatrix m = input;
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<Integer> diag;
  for (std::size_t k = 0; k < std::min(rows, cols); ++k) {
    for (;;) {
      // smallest nonzero entry in the trailing block
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = k; i < rows; ++i)
        for (std::size_t j = k; j < cols; ++j)
          if (m(i, j) != 0 && (pi == rows || abs(m(i, j)) < abs(m(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == rows) goto finished;
      m.swap_rows(k, pi);
      m.swap_cols(k, pj);
      bool clean = true;
      for (std::size_t i = k + 1; i < rows; ++i) {
        if (m(i, k) == 0) continue;
        row_submul(m, i, k, round_div(m(i, k), m(k, k)));
        if (m(i, k) != 0) clean = false;
      }
      for (std::size_t j = k + 1; j < cols; ++j) {
        if (m(k, j) == 0) continue;
        col_submul(m, j, k, round_div(m(k, j), m(k, k)));
        if (m(k, j) != 0) clean = false;
      }
      if (!clean) continue;
      // pivot must divide the whole trailing block
      std::size_t bad = rows;
      for (std::size_t i = k + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = k + 1; j < cols; ++j)
          if (!mpz_divisible_p(m(i, j).get_mpz_t(), m(k, k).get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      for (std::size_t j = k; j < cols; ++j) m(k, j) += m(bad, j);
    }
    diag.push_back(abs(m(k, k)));
  }
finished:
  return SmithForm{diag};
}

ModularSmithForm snf_modular(const IntMatrix& a, const Integer& abs_det, bool with_generators) {
  require_square(a.rows(), a.cols(), "snf_modular");
  if (abs_det <= 0) throw std::invalid_argument("snf_modular: determinant must be nonzero");
  const std::size_t n = a.rows();
  const Integer& d = abs_det;
  IntMatrix m = a;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) reduce_sym(m(i, j), d);
  // qinv tracks the inverse of the accumulated column transform: every column
  // op on m is mirrored by the inverse row op on qinv.
  IntMatrix qinv = with_generators ? IntMatrix::identity(n) : IntMatrix(0, 0);

  Integer g, s, t, ag, bg, x, y;
  // Clears m(i, k) against the pivot m(k, k) with a unimodular 2x2 row op.
  // Rows k and i are zero left of column k.
  auto clear_row = [&](std::size_t k, std::size_t i) -> void {
    const Integer& pa = m(k, k);
    if (mpz_divisible_p(m(i, k).get_mpz_t(), pa.get_mpz_t())) {
      mpz_divexact(x.get_mpz_t(), m(i, k).get_mpz_t(), pa.get_mpz_t());
      for (std::size_t j = k; j < n; ++j) {
        if (m(k, j) == 0) continue;
        m(i, j) -= x * m(k, j);
        reduce_sym(m(i, j), d);
      }
      return;
    }
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), pa.get_mpz_t(), m(i, k).get_mpz_t());
    mpz_divexact(ag.get_mpz_t(), pa.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(bg.get_mpz_t(), m(i, k).get_mpz_t(), g.get_mpz_t());
    for (std::size_t j = k; j < n; ++j) {
      x = s * m(k, j) + t * m(i, j);
      y = ag * m(i, j) - bg * m(k, j);
      reduce_sym(x, d);
      reduce_sym(y, d);
      m(k, j).swap(x);
      m(i, j).swap(y);
    }
  };
  // Same for m(k, j) with a column op, mirrored on qinv.
  auto clear_col = [&](std::size_t k, std::size_t j) -> void {
    const Integer& pa = m(k, k);
    if (mpz_divisible_p(m(k, j).get_mpz_t(), pa.get_mpz_t())) {
      mpz_divexact(x.get_mpz_t(), m(k, j).get_mpz_t(), pa.get_mpz_t());
      for (std::size_t i = k; i < n; ++i) {
        if (m(i, k) == 0) continue;
        m(i, j) -= x * m(i, k);
        reduce_sym(m(i, j), d);
      }
      if (with_generators) {
        // col_j -= x col_k  <=>  E^{-1} adds x * row_j to row_k
        for (std::size_t c = 0; c < n; ++c) {
          if (qinv(j, c) == 0) continue;
          qinv(k, c) += x * qinv(j, c);
          reduce_sym(qinv(k, c), d);
        }
      }
      return;
    }
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), pa.get_mpz_t(), m(k, j).get_mpz_t());
    mpz_divexact(ag.get_mpz_t(), pa.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(bg.get_mpz_t(), m(k, j).get_mpz_t(), g.get_mpz_t());
    for (std::size_t i = k; i < n; ++i) {
      x = s * m(i, k) + t * m(i, j);
      y = ag * m(i, j) - bg * m(i, k);
      reduce_sym(x, d);
      reduce_sym(y, d);
      m(i, k).swap(x);
      m(i, j).swap(y);
    }
    if (with_generators) {
      // E = [[s, -b/g], [t, a/g]] on columns (k, j); E^{-1} = [[a/g, b/g], [-t, s]].
      for (std::size_t c = 0; c < n; ++c) {
        x = ag * qinv(k, c) + bg * qinv(j, c);
        y = s * qinv(j, c) - t * qinv(k, c);
        reduce_sym(x, d);
        reduce_sym(y, d);
        qinv(k, c).swap(x);
        qinv(j, c).swap(y);
      }
    }
  };

  ModularSmithForm out;
  std::size_t k = 0;
  for (; k < n; ++k) {
    bool any = false;
    for (;;) {
      std::size_t pi = n, pj = n;
      for (std::size_t i = k; i < n; ++i)
        for (std::size_t j = k; j < n; ++j)
          if (m(i, j) != 0 && (pi == n || mpz_cmpabs(m(i, j).get_mpz_t(), m(pi, pj).get_mpz_t()) < 0)) {
            pi = i;
            pj = j;
          }
      if (pi == n) break;
      any = true;
      m.swap_rows(k, pi);
      m.swap_cols(k, pj);
      if (with_generators) qinv.swap_rows(k, pj);
      bool clean;
      do {
        for (std::size_t i = k + 1; i < n; ++i)
          if (m(i, k) != 0) clear_row(k, i);
        for (std::size_t j = k + 1; j < n; ++j)
          if (m(k, j) != 0) clear_col(k, j);
        // Column ops that changed the pivot may have refilled column k.
        clean = true;
        for (std::size_t i = k + 1; i < n && clean; ++i)
          if (m(i, k) != 0) clean = false;
      } while (!clean);
      Integer gk = gcd(m(k, k), d);
      if (gk == 1) break;
      std::size_t bad = n;
      for (std::size_t i = k + 1; i < n && bad == n; ++i)
        for (std::size_t j = k + 1; j < n; ++j)
          if (!mpz_divisible_p(m(i, j).get_mpz_t(), gk.get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == n) break;
      for (std::size_t j = k; j < n; ++j) {
        m(k, j) += m(bad, j);
        reduce_sym(m(k, j), d);
      }
    }
    if (!any) break;
    out.diagonal.push_back(gcd(m(k, k), d));
  }
  for (; k < n; ++k) out.diagonal.push_back(d);

  if (with_generators) {
    out.generators = std::move(qinv);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Integer& v = out.generators(i, j);
        v %= d;
        if (v < 0) v += d;
      }
  }
  return out;
}

std::vector<Rational> solve_left(const IntMatrix& a, std::span<const Integer> x) {
  require_square(a.rows(), a.cols(), "solve_left");
  const std::size_t n = a.rows();
  if (x.size() != n) throw std::invalid_argument("solve_left: vector length mismatch");
  // y a = x  <=>  a^T y^T = x^T; eliminate on the augmented transpose.
  RatMatrix m(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = Rational(a(j, i));
    m(i, n) = Rational(x[i]);
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m(p, k) == 0) ++p;
    if (p == n) throw std::invalid_argument("solve_left: matrix is singular");
    m.swap_rows(k, p);
    Rational inv = 1 / m(k, k);
    for (std::size_t j = k; j <= n; ++j) m(k, j) *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || m(i, k) == 0) continue;
      Rational f = m(i, k);
      for (std::size_t j = k; j <= n; ++j)
        if (m(k, j) != 0) m(i, j) -= f * m(k, j);
    }
  }
  std::vector<Rational> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = m(i, n);
  return y;
}

Integer class_order(const IntMatrix& a, std::span<const Integer> x) {
  Integer l = 1;
  for (const auto& v : solve_left(a, x)) l = lcm(l, Integer(v.get_den()));
  return l;
}

bool in_row_lattice(const IntMatrix& a, std::span<const Integer> x) {
  return class_order(a, x) == 1;
}

IntMatrix bordered(const IntMatrix& rows) {
  IntMatrix out = rows;
  std::vector<Integer> e1(rows.cols());
  if (!e1.empty()) e1[0] = 1;
  out.append_row(e1);
  return out;
}

Rational lattice_index(const IntMatrix& rows) {
  if (rows.rows() + 1 != rows.cols())
    throw std::invalid_argument("lattice_index: expected n-1 rows of length n");
  for (std::size_t i = 0; i < rows.rows(); ++i) {
    Integer s = 0;
    for (const auto& v : rows.row(i)) s += v;
    if (s != 0) throw std::invalid_argument("lattice_index: row " + std::to_string(i) + " does not sum to zero");
  }
  return Rational(abs(det(bordered(rows))));
}

}  // namespace modunits
