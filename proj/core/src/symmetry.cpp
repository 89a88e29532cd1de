#include "fedo/symmetry/symmetry.hpp"

#include <map>
#include <mutex>

#include "fedo/core/linalg.hpp"

namespace fedo {

SymmetryClass::SymmetryClass(std::string name, int order, std::vector<SlotSymmetry> symmetries,
                             std::vector<SlotRelation> relations)
    : name_(std::move(name)), order_(order), symmetries_(std::move(symmetries)), relations_(std::move(relations)) {
  auto check = [&](const Permutation& p) {
    if (static_cast<int>(p.size()) != order_) throw ShapeError("slot permutation has wrong length");
    auto sorted = p;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != identity_permutation(order_)) throw ShapeError("slot list is not a permutation");
  };
  for (const auto& s : symmetries_) {
    check(s.perm);
    if (s.sign != 1 && s.sign != -1) throw ShapeError("symmetry sign must be +1 or -1");
  }
  for (const auto& r : relations_)
    for (const auto& [c, p] : r.terms) check(p);
}

namespace {

Permutation transposition(int order, int a, int b) {
  Permutation p = identity_permutation(order);
  std::swap(p[static_cast<size_t>(a)], p[static_cast<size_t>(b)]);
  return p;
}

}  // namespace

SymmetryClass SymmetryClass::curvature() {
  SlotRelation bianchi{{{Rational(1), {0, 1, 2, 3}}, {Rational(1), {0, 2, 3, 1}}, {Rational(1), {0, 3, 1, 2}}}};
  return SymmetryClass("curvature", 4, {{transposition(4, 0, 1), 1}, {transposition(4, 2, 3), -1}}, {bianchi});
}

SymmetryClass SymmetryClass::normal(int m) {
  if (m < 0) throw ShapeError("normal tensor order must be non-negative");
  const int order = m + 3;
  std::vector<SlotSymmetry> syms{{transposition(order, 1, 2), 1}};
  for (int s = 3; s + 1 < order; ++s) syms.push_back({transposition(order, s, s + 1), 1});

  std::vector<SlotRelation> rels;
  // Full symmetrization over slots 1..order-1 vanishes.
  SlotRelation total;
  std::vector<int> tail(static_cast<size_t>(order - 1));
  std::iota(tail.begin(), tail.end(), 1);
  for (const auto& sigma : all_permutations(order - 1)) {
    Permutation p = identity_permutation(order);
    for (int k = 0; k < order - 1; ++k) p[static_cast<size_t>(k + 1)] = 1 + sigma[static_cast<size_t>(k)];
    total.terms.emplace_back(Rational(1), std::move(p));
  }
  rels.push_back(std::move(total));

  if (m >= 1) {
    // T(i,k,j,a,..) - T(j,k,i,a,..) is symmetric in (k, a).
    auto with_prefix = [&](std::initializer_list<int> head) {
      Permutation p = identity_permutation(order);
      std::copy(head.begin(), head.end(), p.begin());
      return p;
    };
    rels.push_back(SlotRelation{{{Rational(1), with_prefix({0, 1, 2, 3})},
                                 {Rational(-1), with_prefix({2, 1, 0, 3})},
                                 {Rational(-1), with_prefix({0, 3, 2, 1})},
                                 {Rational(1), with_prefix({2, 3, 0, 1})}}});
  }
  return SymmetryClass("normal" + std::to_string(m), order, std::move(syms), std::move(rels));
}

namespace {

using Element = std::vector<std::pair<Permutation, Rational>>;

/// Solves the constraints on the regular block (index tuples that are
/// arrangements of 0..N-1), where tensors correspond to group-algebra
/// elements. The orthogonal projector onto the solution space commutes with
/// relabeling of values, so its row at the identity arrangement is the
/// group-algebra element e.
Element compute_element(const SymmetryClass& cls) {
  const int n = cls.order();
  const auto perms = all_permutations(n);
  const std::size_t total = perms.size();

  // Orbits of arrangements under the signed symmetries: T(π∘g) = s·T(π).
  std::vector<int> orbit(total, -1);
  std::vector<int> orbit_sign(total, 0);
  std::vector<char> orbit_dead;
  std::vector<std::size_t> orbit_size;
  for (std::size_t start = 0; start < total; ++start) {
    if (orbit[start] >= 0) continue;
    const int id = static_cast<int>(orbit_dead.size());
    orbit_dead.push_back(0);
    orbit_size.push_back(0);
    std::vector<std::size_t> stack{start};
    orbit[start] = id;
    orbit_sign[start] = 1;
    while (!stack.empty()) {
      const std::size_t cur = stack.back();
      stack.pop_back();
      ++orbit_size[static_cast<size_t>(id)];
      for (const auto& s : cls.symmetries()) {
        const auto next = compose(perms[cur], s.perm);
        const std::size_t r = permutation_rank(next);
        const int sign = orbit_sign[cur] * s.sign;
        if (orbit[r] < 0) {
          orbit[r] = id;
          orbit_sign[r] = sign;
          stack.push_back(r);
        } else if (orbit_sign[r] != sign) {
          orbit_dead[static_cast<size_t>(id)] = 1;
        }
      }
    }
  }
  std::vector<int> var(orbit_dead.size(), -1);
  int nvars = 0;
  for (size_t o = 0; o < orbit_dead.size(); ++o)
    if (!orbit_dead[o]) var[o] = nvars++;
  if (nvars == 0) return {};

  // Relation rows in orbit variables.
  std::vector<std::vector<Rational>> rows;
  for (const auto& rel : cls.relations())
    for (std::size_t a = 0; a < total; ++a) {
      std::vector<Rational> row(static_cast<size_t>(nvars));
      bool any = false;
      for (const auto& [c, p] : rel.terms) {
        const std::size_t r = permutation_rank(compose(perms[a], p));
        const int v = var[static_cast<size_t>(orbit[r])];
        if (v < 0) continue;
        row[static_cast<size_t>(v)] += orbit_sign[r] > 0 ? c : -c;
        any = true;
      }
      if (any) rows.push_back(std::move(row));
    }
  std::vector<std::vector<Rational>> basis;
  if (rows.empty()) {
    for (int v = 0; v < nvars; ++v) {
      std::vector<Rational> b(static_cast<size_t>(nvars));
      b[static_cast<size_t>(v)] = Rational(1);
      basis.push_back(std::move(b));
    }
  } else {
    Matrix<Rational> m(static_cast<int>(rows.size()), nvars);
    for (size_t i = 0; i < rows.size(); ++i)
      for (int j = 0; j < nvars; ++j) m(static_cast<int>(i), j) = rows[i][static_cast<size_t>(j)];
    basis = nullspace(std::move(m));
  }
  const int r = static_cast<int>(basis.size());
  if (r == 0) return {};

  // Gram matrix of the lifted basis: Σ_orbits |orbit| b_o b_oᵀ.
  Matrix<Rational> gram(r, r);
  for (size_t o = 0; o < orbit_dead.size(); ++o) {
    const int v = var[o];
    if (v < 0) continue;
    const Rational w(static_cast<long>(orbit_size[o]));
    for (int i = 0; i < r; ++i) {
      const Rational& bi = basis[static_cast<size_t>(i)][static_cast<size_t>(v)];
      if (bi.is_zero()) continue;
      for (int j = 0; j < r; ++j) gram(i, j) += w * bi * basis[static_cast<size_t>(j)][static_cast<size_t>(v)];
    }
  }
  const auto ginv = inverse(gram);
  if (!ginv) throw std::logic_error("projector: singular Gram matrix");

  auto lifted = [&](std::size_t arrangement) {
    std::vector<Rational> b(static_cast<size_t>(r));
    const int v = var[static_cast<size_t>(orbit[arrangement])];
    if (v < 0) return b;
    for (int i = 0; i < r; ++i) {
      const Rational& x = basis[static_cast<size_t>(i)][static_cast<size_t>(v)];
      b[static_cast<size_t>(i)] = orbit_sign[arrangement] > 0 ? x : -x;
    }
    return b;
  };
  const auto b_id = lifted(0);
  std::vector<Rational> left(static_cast<size_t>(r));
  for (int j = 0; j < r; ++j)
    for (int i = 0; i < r; ++i) left[static_cast<size_t>(j)] += b_id[static_cast<size_t>(i)] * (*ginv)(i, j);

  Element e;
  for (std::size_t a = 0; a < total; ++a) {
    const auto b = lifted(a);
    Rational c;
    for (int j = 0; j < r; ++j) c += left[static_cast<size_t>(j)] * b[static_cast<size_t>(j)];
    if (!c.is_zero()) e.emplace_back(perms[a], c);
  }
  return e;
}

}  // namespace

std::shared_ptr<const Element> projector_element(const SymmetryClass& cls) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const Element>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(cls.name());
    if (it != cache.end()) return it->second;
  }
  auto e = std::make_shared<const Element>(compute_element(cls));
  std::lock_guard<std::mutex> lock(mu);
  return cache.try_emplace(cls.name(), std::move(e)).first->second;
}

SubspaceProjector::SubspaceProjector(std::shared_ptr<const SymmetryClass> cls, int dim)
    : cls_(std::move(cls)), dim_(dim), element_(projector_element(*cls_)) {
  if (dim < 1) throw ShapeError("projector dimension must be positive");
}

long SubspaceProjector::rank() const {
  Rational tr;
  for (const auto& [p, c] : *element_) {
    Rational pw(1);
    for (int i = 0; i < cycle_count(p); ++i) pw *= Rational(dim_);
    tr += c * pw;
  }
  if (!tr.is_integer()) throw std::logic_error("projector trace is not an integer");
  return tr.numerator().get_si();
}

SubspaceProjector curvature_projector(int n) {
  if (n < 1) throw ShapeError("curvature_projector needs n >= 1");
  if (2 * n > kMaxProjectorDim) throw ShapeError("curvature_projector: dimension above cap");
  static const auto cls = std::make_shared<const SymmetryClass>(SymmetryClass::curvature());
  return SubspaceProjector(cls, 2 * n);
}

SubspaceProjector normal_projector(int m, int n) {
  if (n < 1) throw ShapeError("normal_projector needs n >= 1");
  if (m < 0 || m > kMaxNormalOrder) throw ShapeError("normal_projector: m above cap");
  if (2 * n > kMaxProjectorDim) throw ShapeError("normal_projector: dimension above cap");
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const SymmetryClass>> classes;
  std::shared_ptr<const SymmetryClass> cls;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = classes[m];
    if (!slot) slot = std::make_shared<const SymmetryClass>(SymmetryClass::normal(m));
    cls = slot;
  }
  return SubspaceProjector(cls, 2 * n);
}

}  // namespace fedo
