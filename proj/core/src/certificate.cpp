#include <sstream>

#include "fedo/invariants/space_dim.hpp"

namespace fedo {

std::string IdentityCertificate::serialize() const {
  std::ostringstream os;
  os << "# fedocheck identity certificate\n";
  os << "p " << spec.p << '\n';
  os << "weight " << spec.delta << '\n';
  os << "n " << spec.n << '\n';
  os << "tuple";
  for (int d : tuple) os << ' ' << d;
  os << '\n';
  os << "witness_seed " << witness_seed << '\n';
  os << "witness_value " << witness_value << '\n';
  for (const auto& [m, c] : terms) os << m.str() << '\t' << c << '\n';
  return os.str();
}

IdentityCertificate IdentityCertificate::parse(const std::string& text) {
  IdentityCertificate cert;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool have_p = false, have_w = false, have_n = false;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("certificate line " + std::to_string(line_no) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    if (line[0] == '(') {
      const auto tab = line.find('\t');
      if (tab == std::string::npos) fail("expected matching TAB coefficient");
      cert.terms.emplace_back(Matching::parse(line.substr(0, tab)), Rational::parse(line.substr(tab + 1)));
      continue;
    }
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "p") {
      ls >> cert.spec.p;
      have_p = true;
    } else if (key == "weight") {
      ls >> cert.spec.delta;
      have_w = true;
    } else if (key == "n") {
      ls >> cert.spec.n;
      have_n = true;
    } else if (key == "tuple") {
      int d;
      while (ls >> d) cert.tuple.push_back(d);
    } else if (key == "witness_seed") {
      ls >> cert.witness_seed;
    } else if (key == "witness_value") {
      std::string v;
      ls >> v;
      cert.witness_value = Rational::parse(v);
    } else {
      fail("unknown key '" + key + "'");
    }
    if (ls.fail() && !ls.eof()) fail("malformed value");
  }
  if (!have_p || !have_w || !have_n) throw std::invalid_argument("certificate header incomplete");
  return cert;
}

}  // namespace fedo
