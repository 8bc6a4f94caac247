#include "qgroup/skew_matrix.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace qgroup {

SkewMatrix::SkewMatrix(const std::vector<std::vector<Rational>>& entries, bool allow_degenerate) {
  const int n = static_cast<int>(entries.size());
  if (n < 1) throw std::invalid_argument("J must have at least one row");
  if (n < 2 && !allow_degenerate) throw std::invalid_argument("n must be >= 2 (got n = 1)");
  j_ = Skew<Rational>(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(entries[i].size()) != n)
      throw std::invalid_argument("J is not square: row " + std::to_string(i) + " has " +
                                  std::to_string(entries[i].size()) + " entries, expected " +
                                  std::to_string(n));
    for (int k = 0; k < n; ++k) j_(i, k) = entries[i][k];
  }
  for (int i = 0; i < n; ++i) {
    if (j_(i, i) != 0)
      throw std::invalid_argument("J is not skew: diagonal entry J[" + std::to_string(i) + "][" +
                                  std::to_string(i) + "] = " + j_(i, i).get_str());
    for (int k = i + 1; k < n; ++k)
      if (j_(k, i) != -j_(i, k))
        throw std::invalid_argument("J is not skew: J[" + std::to_string(k) + "][" + std::to_string(i) +
                                    "] = " + j_(k, i).get_str() + " but J[" + std::to_string(i) + "][" +
                                    std::to_string(k) + "] = " + j_(i, k).get_str());
  }
}

SkewMatrix SkewMatrix::zero(int n) {
  return SkewMatrix(std::vector<std::vector<Rational>>(n, std::vector<Rational>(n, Rational(0))), n == 1);
}

SkewMatrix SkewMatrix::standard() {
  return SkewMatrix({{Rational(0), Rational(1)}, {Rational(-1), Rational(0)}});
}

SkewMatrix SkewMatrix::random(int n, std::mt19937_64& rng, int num_bound, int den_bound) {
  std::vector<std::vector<Rational>> e(n, std::vector<Rational>(n, Rational(0)));
  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k < n; ++k) {
      e[i][k] = random_rational(rng, num_bound, den_bound);
      e[k][i] = -e[i][k];
    }
  return SkewMatrix(e);
}

bool SkewMatrix::is_zero() const {
  for (int i = 0; i < n(); ++i)
    for (int k = 0; k < n(); ++k)
      if (j_(i, k) != 0) return false;
  return true;
}

Skew<Polynomial> SkewMatrix::as_polynomial() const {
  Skew<Polynomial> out(n());
  for (int i = 0; i < n(); ++i)
    for (int k = 0; k < n(); ++k) out(i, k) = Polynomial(j_(i, k));
  return out;
}

Skew<double> SkewMatrix::as_double() const {
  Skew<double> out(n());
  for (int i = 0; i < n(); ++i)
    for (int k = 0; k < n(); ++k) out(i, k) = j_(i, k).get_d();
  return out;
}

Eigen::MatrixXd SkewMatrix::to_eigen() const {
  Eigen::MatrixXd m(n(), n());
  for (int i = 0; i < n(); ++i)
    for (int k = 0; k < n(); ++k) m(i, k) = j_(i, k).get_d();
  return m;
}

std::vector<std::vector<std::string>> SkewMatrix::to_strings() const {
  std::vector<std::vector<std::string>> out(n(), std::vector<std::string>(n()));
  for (int i = 0; i < n(); ++i)
    for (int k = 0; k < n(); ++k) out[i][k] = j_(i, k).get_str();
  return out;
}

Skew<Polynomial> symbolic_skew(int n) {
  Skew<Polynomial> out(n);
  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k < n; ++k) {
      const auto v = Polynomial::variable(symbol("J" + std::to_string(i + 1) + std::to_string(k + 1)));
      out(i, k) = v;
      out(k, i) = -v;
    }
  return out;
}

namespace {

Rational entry_from_json(const nlohmann::json& v, int i, int k) {
  const std::string where = "J[" + std::to_string(i) + "][" + std::to_string(k) + "]";
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(where + ": " + e.what());
    }
  }
  if (v.is_number_float()) {
    // go through the shortest decimal text so 0.25 becomes 1/4 exactly
    std::ostringstream os;
    os.precision(17);
    os << v.get<double>();
    try {
      return parse_rational(os.str());
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument(where + ": use a \"p/q\" string for this value");
    }
  }
  throw std::invalid_argument(where + ": expected a number or a \"p/q\" string");
}

}  // namespace

SkewMatrix parse_skew_matrix_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("J file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("J"))
    throw std::invalid_argument("J file must be an object with keys \"n\" and \"J\"");
  if (!doc["n"].is_number_integer()) throw std::invalid_argument("\"n\" must be an integer");
  const int n = doc["n"].get<int>();
  const auto& rows = doc["J"];
  if (!rows.is_array() || static_cast<int>(rows.size()) != n)
    throw std::invalid_argument("\"J\" must be an array of n = " + std::to_string(n) + " rows");
  std::vector<std::vector<Rational>> e(n);
  for (int i = 0; i < n; ++i) {
    if (!rows[i].is_array()) throw std::invalid_argument("row " + std::to_string(i) + " of J is not an array");
    for (int k = 0; k < static_cast<int>(rows[i].size()); ++k) e[i].push_back(entry_from_json(rows[i][k], i, k));
  }
  const bool debug = doc.value("allow_degenerate_n1", false);
  SkewMatrix j(e, debug);
  if (n == 1 && !j.is_zero()) throw std::invalid_argument("n = 1 forces J = 0");
  return j;
}

SkewMatrix load_skew_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open J file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_skew_matrix_json(buf.str());
}

}  // namespace qgroup
