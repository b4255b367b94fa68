#include "gf2sym/io.hpp"

#include <cctype>

#include "gf2sym/errors.hpp"

namespace gf2sym {

namespace {

std::vector<std::size_t> index_list(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) throw ParseError(std::string("missing array '") + key + "'");
  std::vector<std::size_t> out;
  for (const auto& x : j[key]) {
    if (!x.is_number_unsigned()) throw ParseError(std::string("'") + key + "' must hold non-negative integers");
    out.push_back(x.get<std::size_t>());
  }
  return out;
}

Gf2Matrix matrix_field(const Json& j, const char* key, std::size_t rows, std::size_t cols) {
  if (!j.contains(key) || !j[key].is_array()) throw ParseError(std::string("missing row-string array '") + key + "'");
  std::vector<std::string> lines;
  for (const auto& x : j[key]) {
    if (!x.is_string()) throw ParseError(std::string("'") + key + "' rows must be strings");
    lines.push_back(x.get<std::string>());
  }
  if (lines.size() != rows) throw ParseError(std::string("'") + key + "' has the wrong number of rows");
  if (rows == 0) return Gf2Matrix(0, cols);
  auto m = Gf2Matrix::from_rows(lines);
  if (m.cols() != cols) throw ParseError(std::string("'") + key + "' has the wrong number of columns");
  return m;
}

std::size_t size_field(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_unsigned()) throw ParseError(std::string("missing count '") + key + "'");
  return j[key].get<std::size_t>();
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto bad = [&] { return ParseError("not a rational number: '" + std::string(text) + "'"); };
  if (text.empty()) throw bad();
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational q;
    try {
      q = Rational(mpz_class(std::string(text.substr(0, slash))), mpz_class(std::string(text.substr(slash + 1))));
    } catch (const std::invalid_argument&) {
      throw bad();
    }
    if (q.get_den() == 0) throw bad();
    q.canonicalize();
    return q;
  }
  std::string digits;
  std::size_t scale = 0;
  bool seen_point = false;
  std::size_t i = 0;
  if (text[0] == '-' || text[0] == '+') {
    if (text[0] == '-') digits.push_back('-');
    i = 1;
  }
  bool any_digit = false;
  for (; i < text.size(); ++i) {
    char ch = text[i];
    if (ch == '.' && !seen_point) {
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits.push_back(ch);
      any_digit = true;
      if (seen_point) ++scale;
    } else {
      throw bad();
    }
  }
  if (!any_digit) throw bad();
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, scale);
  Rational q(mpz_class(digits), den);
  q.canonicalize();
  return q;
}

std::string rational_to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Json quintuple_to_json(const Quintuple& q) {
  const auto& p = q.profile;
  Json j;
  j["mode"] = to_string(p.mode);
  j["m"] = p.rows;
  j["n2"] = p.cols;
  j["r"] = p.rank();
  std::vector<std::size_t> alpha = p.alpha;
  if (p.mode == Mode::Symplectic) {
    alpha.clear();
    for (std::size_t k = 0; k < p.rank(); ++k) alpha.push_back(k);
  }
  j["alpha"] = alpha;
  j["beta"] = p.beta;
  j["L"] = q.L.to_row_strings();
  j["R"] = q.R.to_row_strings();
  return j;
}

Quintuple quintuple_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("quintuple must be a JSON object");
  if (!j.contains("mode") || !j["mode"].is_string()) throw ParseError("missing string 'mode'");
  Quintuple q;
  auto& p = q.profile;
  try {
    p.mode = mode_from_string(j["mode"].get<std::string>());
  } catch (const std::exception& e) {
    throw ParseError(e.what());
  }
  p.rows = size_field(j, "m");
  p.cols = size_field(j, "n2");
  p.alpha = index_list(j, "alpha");
  p.beta = index_list(j, "beta");
  if (j.contains("r") && size_field(j, "r") != p.beta.size()) throw ParseError("'r' disagrees with the length of 'beta'");
  if (p.mode == Mode::Symplectic) {
    for (std::size_t k = 0; k < p.alpha.size(); ++k) {
      if (p.alpha[k] != k) throw ParseError("symplectic 'alpha' must be 0..n-1");
    }
    p.alpha.clear();
  }
  q.L = matrix_field(j, "L", p.rows, p.rows);
  q.R = matrix_field(j, "R", p.cols, p.cols);
  return q;
}

Json gates_to_json(const GateList& gates) {
  Json arr = Json::array();
  for (const auto& g : gates) arr.push_back({{"gate", to_string(g.kind)}, {"qubits", g.qubits}});
  return arr;
}

GateList gates_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("gate list must be a JSON array");
  GateList out;
  for (const auto& g : j) {
    if (!g.is_object() || !g.contains("gate") || !g["gate"].is_string()) throw ParseError("gate entry needs 'gate'");
    Gate gate{GateKind::CNOT, index_list(g, "qubits")};
    try {
      gate.kind = gate_kind_from_string(g["gate"].get<std::string>());
    } catch (const std::exception& e) {
      throw ParseError(e.what());
    }
    out.push_back(std::move(gate));
  }
  return out;
}

Json dist_table_to_json(const DistTable& d) {
  Json j;
  j["n"] = d.n;
  Json entries = Json::array();
  for (const auto& e : d.entries) {
    entries.push_back({{"u", e.u.to_string()}, {"v", e.v}, {"p", rational_to_string(e.p)}});
  }
  j["entries"] = std::move(entries);
  return j;
}

DistTable dist_table_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("distribution must be a JSON object");
  DistTable d;
  d.n = size_field(j, "n");
  if (!j.contains("entries") || !j["entries"].is_array()) throw ParseError("missing array 'entries'");
  for (const auto& e : j["entries"]) {
    if (!e.is_object() || !e.contains("u") || !e["u"].is_string()) throw ParseError("entry needs string 'u'");
    if (!e.contains("p")) throw ParseError("entry needs 'p'");
    DistEntry entry;
    try {
      entry.u = Gf2Vector::from_string(e["u"].get<std::string>());
    } catch (const std::exception& ex) {
      throw ParseError(ex.what());
    }
    if (e.contains("v")) {
      const auto& v = e["v"];
      entry.v = v.is_string() ? v.get<std::string>() : v.dump();
    }
    const auto& p = e["p"];
    if (p.is_string()) {
      entry.p = parse_rational(p.get<std::string>());
    } else if (p.is_number_integer()) {
      entry.p = Rational(p.get<long>());
    } else {
      throw ParseError("'p' must be a \"num/den\" string");
    }
    d.entries.push_back(std::move(entry));
  }
  return d;
}

Json bound_to_json(const BoundResult& b) {
  Json j;
  j["n"] = b.n;
  j["m"] = b.m;
  j["rate"] = b.rate();
  if (b.exact) {
    j["p_conv"] = rational_to_string(b.p_conv_exact);
    j["p_ach"] = rational_to_string(b.p_ach_exact);
    j["p_conv_value"] = b.p_conv;
    j["p_ach_value"] = b.p_ach;
  } else {
    j["p_conv"] = b.p_conv;
    j["p_ach"] = b.p_ach;
  }
  j["exact"] = b.exact;
  return j;
}

Json rate_to_json(const RateResult& r) {
  Json j;
  j["n"] = r.n;
  j["epsilon"] = r.epsilon;
  j["r_ach"] = r.r_ach;
  j["m_ach"] = r.ach_found ? Json(r.m_ach) : Json(nullptr);
  j["ach_found"] = r.ach_found;
  j["r_conv"] = r.r_conv;
  j["m_conv"] = r.conv_found ? Json(r.m_conv) : Json(nullptr);
  j["conv_found"] = r.conv_found;
  return j;
}

Json mc_to_json(const McResult& r) {
  Json j;
  j["trials"] = r.trials;
  j["failures"] = r.failures;
  j["unresolved"] = r.unresolved;
  j["p_hat"] = r.p_hat;
  j["sigma"] = r.sigma;
  j["ci95"] = {r.ci_low, r.ci_high};
  return j;
}

}  // namespace gf2sym
