#include "fedo/symplectic/symplectic.hpp"

#include "fedo/core/random.hpp"

namespace fedo {

namespace {

Matrix<Rational> to_matrix(const Tensor<Rational>& t) {
  Matrix<Rational> m(t.dim(), t.dim());
  for (int i = 0; i < t.dim(); ++i)
    for (int j = 0; j < t.dim(); ++j) m(i, j) = t.at({i, j});
  return m;
}

}  // namespace

SymplecticForm::SymplecticForm(Tensor<Rational> omega) : omega_(std::move(omega)) {
  if (omega_.order() != 2) throw ShapeError("symplectic form must have order 2");
  if (omega_.dim() % 2 != 0 || omega_.dim() == 0) throw ShapeError("symplectic form needs positive even dimension");
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j)
      if (omega_.at({i, j}) != -omega_.at({j, i})) throw ShapeError("symplectic form is not antisymmetric");
  const auto inv = inverse(to_matrix(omega_));
  if (!inv) throw ShapeError("symplectic form is singular");
  inverse_ = Tensor<Rational>(dim(), 2);
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j) inverse_.at({i, j}) = (*inv)(i, j);
}

Matrix<Rational> SymplecticForm::matrix() const { return to_matrix(omega_); }

SymplecticForm SymplecticForm::scaled(const Rational& c) const { return SymplecticForm(omega_ * c); }

SymplecticForm standard_form(int n) {
  if (n < 1) throw ShapeError("standard_form needs n >= 1");
  Tensor<Rational> w(2 * n, 2);
  for (int i = 0; i < n; ++i) {
    w.at({i, n + i}) = Rational(1);
    w.at({n + i, i}) = Rational(-1);
  }
  return SymplecticForm(std::move(w));
}

bool is_symplectic(const Matrix<Rational>& a, const SymplecticForm& w) {
  if (a.rows() != w.dim() || a.cols() != w.dim()) return false;
  const auto om = w.matrix();
  return a.transpose() * om * a == om;
}

std::optional<Matrix<Rational>> cayley(const Matrix<Rational>& m) {
  const auto id = Matrix<Rational>::identity(m.rows());
  const auto inv = inverse(id - m);
  if (!inv) return std::nullopt;
  return *inv * (id + m);
}

Matrix<Rational> random_symplectic(int n, std::uint64_t seed) {
  const auto w = standard_form(n);
  Matrix<Rational> winv(2 * n, 2 * n);
  for (int i = 0; i < 2 * n; ++i)
    for (int j = 0; j < 2 * n; ++j) winv(i, j) = w.upper().at({i, j});
  for (std::uint64_t attempt = 0;; ++attempt) {
    Rng rng = make_rng({seed, 0x5350ULL, attempt});
    Matrix<Rational> s(2 * n, 2 * n);
    for (int i = 0; i < 2 * n; ++i)
      for (int j = i; j < 2 * n; ++j) {
        const Rational v(uniform_int(rng, -3, 3), 2);
        s(i, j) = v;
        s(j, i) = v;
      }
    if (auto a = cayley(winv * s)) return *a;
  }
}

}  // namespace fedo
