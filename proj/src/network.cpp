#include "macrokin/network.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <map>
#include <numeric>
#include <sstream>

namespace macrokin {

int ReactionNetwork::species_index(const std::string& name) const {
  for (std::size_t i = 0; i < species.size(); ++i)
    if (species[i] == name) return static_cast<int>(i);
  return -1;
}

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

struct SideTerm {
  Count coeff;
  std::string name;
};

// side := '0' | term ('+' term)* ; term := [int] ident
std::vector<SideTerm> parse_side(const std::string& text, int line) {
  std::vector<SideTerm> terms;
  std::size_t i = 0;
  auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
  skip_ws();
  if (i >= text.size()) throw ParseError(line, "empty reaction side");
  if (text[i] == '0' && (i + 1 == text.size() || !is_ident_char(text[i + 1]))) {
    ++i;
    skip_ws();
    if (i != text.size()) throw ParseError(line, "unexpected text after '0' side");
    return terms;
  }
  while (true) {
    skip_ws();
    Count coeff = 1;
    if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      std::size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      coeff = std::strtoll(text.substr(start, i - start).c_str(), nullptr, 10);
      if (coeff <= 0) throw ParseError(line, "stoichiometric coefficient must be positive");
      skip_ws();
    }
    if (i >= text.size() || !is_ident_start(text[i]))
      throw ParseError(line, "expected species identifier");
    std::size_t start = i;
    while (i < text.size() && is_ident_char(text[i])) ++i;
    terms.push_back({coeff, text.substr(start, i - start)});
    skip_ws();
    if (i >= text.size()) break;
    if (text[i] != '+') throw ParseError(line, "expected '+' between terms");
    ++i;
  }
  return terms;
}

}  // namespace

ReactionNetwork parse_network(const std::string& text) {
  ReactionNetwork net;
  bool declared = false;
  std::map<std::string, int> index;

  auto intern = [&](const std::string& name, int line) -> int {
    auto it = index.find(name);
    if (it != index.end()) return it->second;
    if (declared) throw ParseError(line, "unknown species '" + name + "'");
    int id = static_cast<int>(net.species.size());
    net.species.push_back(name);
    index[name] = id;
    return id;
  };

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw.substr(0, raw.find('#'));
    // trim
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    auto e = line.find_last_not_of(" \t\r");
    line = line.substr(b, e - b + 1);

    if (line.rfind("species:", 0) == 0) {
      if (declared) throw ParseError(lineno, "duplicate species declaration");
      if (!net.reactions.empty())
        throw ParseError(lineno, "species declaration must precede reactions");
      std::istringstream names(line.substr(8));
      std::string name;
      while (names >> name) {
        if (!is_ident_start(name[0]) ||
            !std::all_of(name.begin(), name.end(), is_ident_char))
          throw ParseError(lineno, "bad species name '" + name + "'");
        if (index.count(name)) throw ParseError(lineno, "duplicate species '" + name + "'");
        index[name] = static_cast<int>(net.species.size());
        net.species.push_back(name);
      }
      if (net.species.empty()) throw ParseError(lineno, "empty species declaration");
      declared = true;
      continue;
    }

    auto arrow = line.find("->");
    if (arrow == std::string::npos) throw ParseError(lineno, "missing '->'");
    auto at = line.find('@', arrow + 2);
    if (at == std::string::npos) throw ParseError(lineno, "missing '@ rate'");

    auto lhs = parse_side(line.substr(0, arrow), lineno);
    auto rhs = parse_side(line.substr(arrow + 2, at - arrow - 2), lineno);

    std::string rate_text = line.substr(at + 1);
    double rate = 0.0;
    {
      auto rb = rate_text.find_first_not_of(" \t");
      if (rb == std::string::npos) throw ParseError(lineno, "missing rate value");
      auto re = rate_text.find_last_not_of(" \t");
      rate_text = rate_text.substr(rb, re - rb + 1);
      auto [p, ec] = std::from_chars(rate_text.data(), rate_text.data() + rate_text.size(), rate);
      if (ec != std::errc{} || p != rate_text.data() + rate_text.size())
        throw ParseError(lineno, "bad rate '" + rate_text + "'");
    }
    if (!(rate > 0.0)) throw ParseError(lineno, "rate must be positive");

    // intern species from both sides before building dense vectors
    for (const auto& t : lhs) intern(t.name, lineno);
    for (const auto& t : rhs) intern(t.name, lineno);

    Reaction r;
    r.alpha.assign(net.species.size(), 0);
    r.beta.assign(net.species.size(), 0);
    for (const auto& t : lhs) r.alpha[intern(t.name, lineno)] += t.coeff;
    for (const auto& t : rhs) r.beta[intern(t.name, lineno)] += t.coeff;
    r.rate = rate;
    if (r.alpha == r.beta) throw ParseError(lineno, "reaction changes nothing (alpha == beta)");
    net.reactions.push_back(std::move(r));
  }

  // earlier reactions may predate later species; pad to final width
  for (auto& r : net.reactions) {
    r.alpha.resize(net.species.size(), 0);
    r.beta.resize(net.species.size(), 0);
  }
  if (net.species.empty()) throw ParseError(lineno == 0 ? 1 : lineno, "no species");
  validate_network(net);
  return net;
}

namespace {

std::string format_rate(double v) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, p);
}

std::string format_side(const std::vector<Count>& side,
                        const std::vector<std::string>& species) {
  std::string out;
  for (std::size_t i = 0; i < side.size(); ++i) {
    if (side[i] == 0) continue;
    if (!out.empty()) out += " + ";
    if (side[i] != 1) out += std::to_string(side[i]) + " ";
    out += species[i];
  }
  return out.empty() ? "0" : out;
}

}  // namespace

std::string format_network(const ReactionNetwork& net) {
  validate_network(net);
  // does first-appearance order over reactions reproduce the species order?
  std::vector<bool> seen(net.species.size(), false);
  std::vector<int> appearance;
  for (const auto& r : net.reactions) {
    // a re-parse interns the reactant side before the product side
    for (std::size_t i = 0; i < net.species.size(); ++i)
      if (r.alpha[i] != 0 && !seen[i]) {
        seen[i] = true;
        appearance.push_back(static_cast<int>(i));
      }
    for (std::size_t i = 0; i < net.species.size(); ++i)
      if (r.beta[i] != 0 && !seen[i]) {
        seen[i] = true;
        appearance.push_back(static_cast<int>(i));
      }
  }
  bool order_implied = appearance.size() == net.species.size();
  for (std::size_t i = 0; i < appearance.size() && order_implied; ++i)
    order_implied = appearance[i] == static_cast<int>(i);

  std::string out;
  if (!order_implied) {
    out += "species:";
    for (const auto& s : net.species) out += " " + s;
    out += "\n";
  }
  for (const auto& r : net.reactions) {
    out += format_side(r.alpha, net.species);
    out += " -> ";
    out += format_side(r.beta, net.species);
    out += " @ ";
    out += format_rate(r.rate);
    out += "\n";
  }
  return out;
}

void validate_network(const ReactionNetwork& net) {
  if (net.species.empty()) throw std::invalid_argument("network has no species");
  if (net.reactions.empty()) throw std::invalid_argument("network has no reactions");
  for (std::size_t k = 0; k < net.reactions.size(); ++k) {
    const auto& r = net.reactions[k];
    auto ctx = "reaction " + std::to_string(k) + ": ";
    if (r.alpha.size() != net.species.size() || r.beta.size() != net.species.size())
      throw std::invalid_argument(ctx + "stoichiometry width mismatch");
    for (auto v : r.alpha)
      if (v < 0) throw std::invalid_argument(ctx + "negative alpha");
    for (auto v : r.beta)
      if (v < 0) throw std::invalid_argument(ctx + "negative beta");
    if (!(r.rate > 0.0)) throw std::invalid_argument(ctx + "rate must be positive");
    if (r.alpha == r.beta) throw std::invalid_argument(ctx + "alpha == beta");
  }
}

namespace {

// Minimal exact rational for the elimination; stoichiometric coefficients are
// tiny so long long never gets anywhere near overflow — normalized anyway.
struct Frac {
  long long num = 0, den = 1;

  static long long gcd(long long a, long long b) {
    while (b) {
      long long t = a % b;
      a = b;
      b = t;
    }
    return a < 0 ? -a : a;
  }
  void normalize() {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    long long g = gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    if (num == 0) den = 1;
  }
  Frac operator-(const Frac& o) const {
    Frac r{num * o.den - o.num * den, den * o.den};
    r.normalize();
    return r;
  }
  Frac operator*(const Frac& o) const {
    Frac r{num * o.num, den * o.den};
    r.normalize();
    return r;
  }
  Frac operator/(const Frac& o) const {
    Frac r{num * o.den, den * o.num};
    r.normalize();
    return r;
  }
  bool zero() const { return num == 0; }
};

}  // namespace

ConservationBasis conservation_laws(const ReactionNetwork& net) {
  validate_network(net);
  const std::size_t m = net.species.size();
  const std::size_t rows_n = net.reactions.size();

  // RREF of the stoichiometric matrix (rows beta - alpha), exact rationals.
  std::vector<std::vector<Frac>> a(rows_n, std::vector<Frac>(m));
  for (std::size_t r = 0; r < rows_n; ++r)
    for (std::size_t j = 0; j < m; ++j)
      a[r][j] = Frac{net.reactions[r].beta[j] - net.reactions[r].alpha[j], 1};

  std::vector<int> pivot_col;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m && row < rows_n; ++col) {
    std::size_t sel = row;
    while (sel < rows_n && a[sel][col].zero()) ++sel;
    if (sel == rows_n) continue;
    std::swap(a[sel], a[row]);
    Frac inv = Frac{1, 1} / a[row][col];
    for (std::size_t j = col; j < m; ++j) a[row][j] = a[row][j] * inv;
    for (std::size_t r = 0; r < rows_n; ++r) {
      if (r == row || a[r][col].zero()) continue;
      Frac f = a[r][col];
      for (std::size_t j = col; j < m; ++j) a[r][j] = a[r][j] - f * a[row][j];
    }
    pivot_col.push_back(static_cast<int>(col));
    ++row;
  }

  // null-space vector per free column, then clear denominators
  std::vector<bool> is_pivot(m, false);
  for (int c : pivot_col) is_pivot[c] = true;

  ConservationBasis basis;
  for (std::size_t free_col = 0; free_col < m; ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<Frac> v(m, Frac{0, 1});
    v[free_col] = Frac{1, 1};
    for (std::size_t p = 0; p < pivot_col.size(); ++p)
      v[pivot_col[p]] = Frac{0, 1} - a[p][free_col];

    long long lcm = 1;
    for (const auto& f : v) lcm = lcm / Frac::gcd(lcm, f.den) * f.den;
    std::vector<Count> iv(m);
    for (std::size_t j = 0; j < m; ++j) iv[j] = v[j].num * (lcm / v[j].den);
    long long g = 0;
    for (auto x : iv) g = Frac::gcd(g, x);
    if (g > 1)
      for (auto& x : iv) x /= g;
    for (auto x : iv) {
      if (x == 0) continue;
      if (x < 0)
        for (auto& y : iv) y = -y;
      break;
    }
    basis.vectors.push_back(std::move(iv));
  }
  return basis;
}

std::vector<Count> invariant_values(const ConservationBasis& basis,
                                    const std::vector<Count>& n) {
  std::vector<Count> out;
  out.reserve(basis.vectors.size());
  for (const auto& mu : basis.vectors) {
    if (mu.size() != n.size())
      throw std::invalid_argument("invariant_values: dimension mismatch");
    Count acc = 0;
    for (std::size_t i = 0; i < mu.size(); ++i) acc += mu[i] * n[i];
    out.push_back(acc);
  }
  return out;
}

}  // namespace macrokin
