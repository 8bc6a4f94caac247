#include "qgroup/polynomial.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace qgroup {

Rational parse_rational(const std::string& raw) {
  std::string text;
  for (char ch : raw)
    if (ch != ' ') text.push_back(ch);
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  const auto dot = text.find('.');
  const auto exp = text.find_first_of("eE");
  if (exp != std::string::npos) throw std::invalid_argument("exponent notation not accepted: " + raw);
  if (dot != std::string::npos) {
    if (text.find('/') != std::string::npos) throw std::invalid_argument("bad rational literal: " + raw);
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    const auto frac_len = text.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits == "+") throw std::invalid_argument("bad rational literal: " + raw);
    if (digits[0] == '+') digits.erase(0, 1);
    mpz_class num;
    if (num.set_str(digits, 10) != 0) throw std::invalid_argument("bad rational literal: " + raw);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  Rational q;
  std::string s = text;
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + raw);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + raw);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& value) { return value.get_str(); }

Rational random_rational(std::mt19937_64& rng, int num_bound, int den_bound) {
  std::uniform_int_distribution<int> num(-num_bound, num_bound);
  std::uniform_int_distribution<int> den(1, den_bound);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

namespace {

struct SymbolTable {
  std::mutex mutex;
  std::unordered_map<std::string, Var> ids;
  std::vector<std::string> names;
};

SymbolTable& symbols() {
  static SymbolTable table;
  return table;
}

}  // namespace

Var symbol(const std::string& name) {
  auto& t = symbols();
  std::lock_guard lock(t.mutex);
  if (auto it = t.ids.find(name); it != t.ids.end()) return it->second;
  const Var id = kSymbolBase + static_cast<Var>(t.names.size());
  t.ids.emplace(name, id);
  t.names.push_back(name);
  return id;
}

std::string symbol_name(Var v) {
  auto& t = symbols();
  std::lock_guard lock(t.mutex);
  const auto k = v - kSymbolBase;
  if (v < kSymbolBase || k >= t.names.size()) return "?";
  return t.names[k];
}

std::string default_var_name(Var v) {
  if (is_symbol(v)) return symbol_name(v);
  return "c" + std::to_string(v);
}

Polynomial::Polynomial(const Rational& c) {
  if (c != 0) terms_.emplace(Exponents{}, c);
}

Polynomial::Polynomial(long c) {
  if (c != 0) terms_.emplace(Exponents{}, Rational(c));
}

Polynomial Polynomial::variable(Var v) {
  Polynomial p;
  p.terms_.emplace(Exponents{{v, 1u}}, Rational(1));
  return p;
}

Polynomial Polynomial::monomial(const Exponents& e, const Rational& c) {
  Polynomial p;
  p.add_term(e, c);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational Polynomial::constant_term() const {
  auto it = terms_.find(Exponents{});
  return it == terms_.end() ? Rational(0) : it->second;
}

unsigned Polynomial::degree() const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) {
    unsigned k = 0;
    for (const auto& [v, m] : e) k += m;
    d = std::max(d, k);
  }
  return d;
}

std::set<Var> Polynomial::variables() const {
  std::set<Var> out;
  for (const auto& [e, c] : terms_)
    for (const auto& [v, m] : e) out.insert(v);
  return out;
}

void Polynomial::add_term(const Exponents& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

namespace {

Polynomial::Exponents merge(const Polynomial::Exponents& a, const Polynomial::Exponents& b) {
  Polynomial::Exponents out;
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() || j != b.end()) {
    if (j == b.end() || (i != a.end() && i->first < j->first)) {
      out.push_back(*i++);
    } else if (i == a.end() || j->first < i->first) {
      out.push_back(*j++);
    } else {
      out.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) out.add_term(merge(ea, eb), ca * cb);
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  *this = *this * o;
  return *this;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial out(1L);
  Polynomial base = *this;
  while (e) {
    if (e & 1u) out *= base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return out;
}

Polynomial Polynomial::derivative(Var v) const {
  Polynomial out;
  for (const auto& [e, c] : terms_) {
    auto it = std::find_if(e.begin(), e.end(), [v](const auto& p) { return p.first == v; });
    if (it == e.end()) continue;
    Exponents d = e;
    auto& slot = d[static_cast<std::size_t>(it - e.begin())];
    const unsigned m = slot.second;
    if (m == 1)
      d.erase(d.begin() + (it - e.begin()));
    else
      --slot.second;
    out.add_term(d, c * m);
  }
  return out;
}

Polynomial Polynomial::substitute(const std::unordered_map<Var, Polynomial>& subs) const {
  std::map<std::pair<Var, unsigned>, Polynomial> powers;
  auto power = [&](Var v, unsigned e) -> const Polynomial& {
    auto key = std::make_pair(v, e);
    auto it = powers.find(key);
    if (it != powers.end()) return it->second;
    return powers.emplace(key, subs.at(v).pow(e)).first->second;
  };
  Polynomial out;
  for (const auto& [e, c] : terms_) {
    Exponents kept;
    Polynomial factor(c);
    for (const auto& [v, m] : e) {
      if (subs.count(v))
        factor = factor * power(v, m);
      else
        kept.emplace_back(v, m);
    }
    if (!kept.empty()) factor = factor * monomial(kept, Rational(1));
    out += factor;
  }
  return out;
}

Polynomial Polynomial::rename(const std::function<Var(Var)>& rename) const {
  Polynomial out;
  for (const auto& [e, c] : terms_) {
    Exponents ne;
    for (const auto& [v, m] : e) ne.emplace_back(rename(v), m);
    std::sort(ne.begin(), ne.end());
    Exponents merged;
    for (const auto& vm : ne) {
      if (!merged.empty() && merged.back().first == vm.first)
        merged.back().second += vm.second;
      else
        merged.push_back(vm);
    }
    out.add_term(merged, c);
  }
  return out;
}

Rational Polynomial::evaluate_exact(const std::function<Rational(Var)>& value) const {
  Rational total = 0;
  for (const auto& [exps, coeff] : terms_) {
    Rational term = coeff;
    for (const auto& [v, e] : exps) {
      const Rational x = value(v);
      for (unsigned k = 0; k < e; ++k) term *= x;
    }
    total += term;
  }
  return total;
}

std::string Polynomial::to_string(const std::function<std::string(Var)>& namer) const {
  if (terms_.empty()) return "0";
  const auto name = namer ? namer : default_var_name;
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Rational mag = abs(c);
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    const bool unit = (mag == 1) && !e.empty();
    if (!unit) os << mag.get_str();
    bool need_star = !unit;
    for (const auto& [v, m] : e) {
      if (need_star) os << "*";
      os << name(v);
      if (m > 1) os << "^" << m;
      need_star = true;
    }
  }
  return os.str();
}

}  // namespace qgroup
