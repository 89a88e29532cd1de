#include "fedo/invariants/matchings.hpp"

#include <regex>
#include <sstream>

namespace fedo {

Matching Matching::from_pairs(std::vector<std::pair<int, int>> pairs, int sign) {
  Matching m;
  m.sign_ = sign;
  std::vector<char> seen(pairs.size() * 2, 0);
  for (auto& [a, b] : pairs) {
    if (a == b) throw std::invalid_argument("matching pairs a slot with itself");
    if (a > b) {
      std::swap(a, b);
      m.sign_ = -m.sign_;
    }
    for (int s : {a, b}) {
      if (s < 0 || s >= static_cast<int>(seen.size())) throw std::invalid_argument("matching slot out of range");
      if (seen[static_cast<size_t>(s)]) throw std::invalid_argument("matching uses a slot twice");
      seen[static_cast<size_t>(s)] = 1;
    }
  }
  std::sort(pairs.begin(), pairs.end());
  m.pairs_ = std::move(pairs);
  return m;
}

Matching Matching::relabeled(std::span<const int> perm) const {
  std::vector<std::pair<int, int>> out;
  for (auto [a, b] : pairs_) out.emplace_back(perm[static_cast<size_t>(a)], perm[static_cast<size_t>(b)]);
  return from_pairs(std::move(out), sign_);
}

std::string Matching::str() const {
  std::ostringstream os;
  for (auto [a, b] : pairs_) os << '(' << a + 1 << ' ' << b + 1 << ')';
  return os.str();
}

Matching Matching::parse(const std::string& text) {
  static const std::regex pair_re(R"(\(\s*(\d+)\s+(\d+)\s*\))");
  std::vector<std::pair<int, int>> pairs;
  std::size_t consumed = 0;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), pair_re); it != std::sregex_iterator(); ++it) {
    const auto& mt = *it;
    if (text.find_first_not_of(" \t", consumed) != static_cast<std::size_t>(mt.position()))
      throw std::invalid_argument("malformed matching: " + text);
    pairs.emplace_back(std::stoi(mt[1]) - 1, std::stoi(mt[2]) - 1);
    consumed = static_cast<std::size_t>(mt.position() + mt.length());
  }
  if (text.find_first_not_of(" \t", consumed) != std::string::npos) throw std::invalid_argument("malformed matching: " + text);
  return from_pairs(std::move(pairs));
}

namespace {

void enumerate_rec(std::vector<int>& free_slots, std::vector<std::pair<int, int>>& cur, std::vector<Matching>& out) {
  if (free_slots.empty()) {
    out.push_back(Matching::from_pairs(cur));
    return;
  }
  const int first = free_slots.front();
  for (size_t i = 1; i < free_slots.size(); ++i) {
    const int partner = free_slots[i];
    std::vector<int> rest;
    for (size_t j = 1; j < free_slots.size(); ++j)
      if (j != i) rest.push_back(free_slots[j]);
    cur.emplace_back(first, partner);
    enumerate_rec(rest, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Matching> enumerate_matchings(int n) {
  if (n < 0 || n % 2 != 0) return {};
  std::vector<int> slots(static_cast<size_t>(n));
  std::iota(slots.begin(), slots.end(), 0);
  std::vector<std::pair<int, int>> cur;
  std::vector<Matching> out;
  enumerate_rec(slots, cur, out);
  return out;
}

std::map<Matching, Rational> sft_alternation(int p, std::span<const int> slots) {
  if (p < 0 || p % 2 != 0) throw std::invalid_argument("sft_alternation needs even p");
  for (int s : slots)
    if (s < 0 || s >= p) throw std::invalid_argument("sft_alternation: slot out of range");
  std::vector<std::pair<int, int>> base;
  for (int i = 0; i < p; i += 2) base.emplace_back(i, i + 1);
  const Matching base_m = Matching::from_pairs(base);
  std::map<Matching, Rational> combo;
  const int k = static_cast<int>(slots.size());
  for (const auto& sigma : all_permutations(k)) {
    Permutation full = identity_permutation(p);
    for (int a = 0; a < k; ++a) full[static_cast<size_t>(slots[static_cast<size_t>(a)])] = slots[static_cast<size_t>(sigma[static_cast<size_t>(a)])];
    const Matching m = base_m.relabeled(full);
    const int s = permutation_sign(sigma) * m.sign();
    auto& c = combo[m.unsigned_form()];
    c += Rational(s);
  }
  for (auto it = combo.begin(); it != combo.end();) {
    if (it->second.is_zero())
      it = combo.erase(it);
    else
      ++it;
  }
  return combo;
}

}  // namespace fedo
