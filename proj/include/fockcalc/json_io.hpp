#pragma once

#include <nlohmann/json.hpp>

#include <algorithm>
#include <complex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fockcalc/jets.hpp"
#include "fockcalc/kernel.hpp"
#include "fockcalc/toeplitz.hpp"

namespace fockcalc {

using nlohmann::json;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParseError("malformed integer list '" + s + "'");
    }
  }
  return out;
}

inline std::string join_ints(const MultiIndex& a, const MultiIndex& b) {
  std::string s = index_to_string(a);
  if (!b.empty()) s += (s.empty() ? "" : ",") + index_to_string(b);
  return s;
}

inline MultiIndex int_array(const json& j, int n, const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    throw ParseError(std::string(what) + " must be an array of " + std::to_string(n) + " integers");
  MultiIndex m;
  for (const auto& v : j) {
    if (!v.is_number_integer() || v.get<int>() < 0) throw ParseError(std::string(what) + " entries must be >= 0");
    m.push_back(v.get<int>());
  }
  return m;
}

}  // namespace detail

// --- jets and tensors as strings -------------------------------------------

inline std::string jet_to_string(const JetSymbol& s) {
  return base_name(s.base) + ":" + detail::join_ints(s.dz, s.dzbar);
}

inline JetSymbol jet_from_string(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ParseError("jet '" + text + "' lacks ':'");
  const std::string b = text.substr(0, colon);
  JetBase base;
  if (b == "f") {
    base = JetBase::F;
  } else if (b == "g") {
    base = JetBase::G;
  } else if (b == "fg") {
    base = JetBase::FG;
  } else if (b == "gf") {
    base = JetBase::GF;
  } else {
    throw ParseError("unknown jet base '" + b + "'");
  }
  const auto v = detail::parse_int_list(text.substr(colon + 1));
  if (v.empty() || v.size() % 2 != 0) throw ParseError("jet '" + text + "' needs 2n indices");
  const std::size_t n = v.size() / 2;
  return jet(base, MultiIndex(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n)),
             MultiIndex(v.begin() + static_cast<std::ptrdiff_t>(n), v.end()));
}

inline std::string tensor_to_string(const TensorSymbol& t) {
  return std::string(t.kind == TensorKind::A ? "A" : "B") + ":" + std::to_string(t.i) + "," + std::to_string(t.l) +
         "," + std::to_string(t.m);
}

inline TensorSymbol tensor_from_string(const std::string& text) {
  if (text.size() < 3 || (text[0] != 'A' && text[0] != 'B') || text[1] != ':')
    throw ParseError("malformed tensor '" + text + "'");
  const auto v = detail::parse_int_list(text.substr(2));
  if (v.size() != 3) throw ParseError("tensor '" + text + "' needs three indices");
  return {text[0] == 'A' ? TensorKind::A : TensorKind::B, v[0], v[1], v[2]};
}

// --- NCPoly ------------------------------------------------------------------

inline json ncpoly_to_json(const NCPoly& p) {
  json terms = json::array();
  for (const auto& [m, c] : p.terms()) {
    json word = json::array();
    for (const auto& s : m.word) word.push_back(jet_to_string(s));
    json tensors = json::array();
    for (const auto& t : m.tensors) tensors.push_back(tensor_to_string(t));
    for (const auto& [k, g] : c.terms()) {
      terms.push_back({{"coeff", {{"re", rational_to_string(g.re)}, {"im", rational_to_string(g.im)}, {"pi", k}}},
                       {"word", word},
                       {"tensors", tensors}});
    }
  }
  return {{"terms", terms}};
}

inline NCPoly ncpoly_from_json(const json& j) {
  if (j.is_number_integer()) return NCPoly(j.get<int>());
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array()) throw ParseError("NCPoly needs a terms array");
  NCPoly out;
  for (const auto& t : j["terms"]) {
    NCMonomial m;
    for (const auto& w : t.value("word", json::array())) m.word.push_back(jet_from_string(w.get<std::string>()));
    for (const auto& s : t.value("tensors", json::array())) m.tensors.push_back(tensor_from_string(s.get<std::string>()));
    std::sort(m.tensors.begin(), m.tensors.end());
    const json c = t.value("coeff", json::object());
    auto rat = [&c](const char* key) -> Rational {
      if (!c.contains(key)) return 0;
      const json& v = c[key];
      if (v.is_number_integer()) return Rational(v.get<long long>());
      if (v.is_string()) return parse_rational(v.get<std::string>());
      throw ParseError(std::string("coefficient field '") + key + "' must be a rational string");
    };
    try {
      out.add(m, Scalar(GaussianRational(rat("re"), rat("im")), c.value("pi", 0)));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
  }
  return out;
}

// --- ExtEnd ------------------------------------------------------------------

inline json extend_to_json(const ExtEnd& e) {
  json entries = json::array();
  for (const auto& [k, v] : e.entries())
    entries.push_back({{"row", k.first}, {"col", k.second}, {"poly", ncpoly_to_json(v)}});
  return {{"n", e.dim()}, {"entries", entries}};
}

/// Accepts the entry form, or the strings "ID" (degree-0 projection) and "1"/"Id" (identity).
inline ExtEnd extend_from_json(const json& j, int n) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "ID") return id_projection(n);
    if (s == "1" || s == "Id") return ExtEnd::identity(n);
    throw ParseError("unknown endomorphism shorthand '" + s + "'");
  }
  if (!j.is_object() || !j.contains("entries")) throw ParseError("endomorphism needs an entries array");
  if (j.contains("n") && j["n"].get<int>() != n) throw ParseError("endomorphism dimension mismatch");
  ExtEnd e(n);
  for (const auto& x : j["entries"]) {
    const int row = x.at("row").get<int>();
    const int col = x.at("col").get<int>();
    if (row < 0 || col < 0 || row >= (1 << n) || col >= (1 << n)) throw ParseError("endomorphism index out of range");
    e.add(static_cast<Subset>(row), static_cast<Subset>(col), ncpoly_from_json(x.at("poly")));
  }
  return e;
}

// --- KernelPoly --------------------------------------------------------------

inline json kernel_to_json(const KernelPoly& k) {
  json terms = json::array();
  for (const auto& [m, v] : k.terms())
    terms.push_back({{"z", m.z}, {"zbar", m.zbar}, {"zp", m.zp}, {"zbarp", m.zbarp}, {"value", extend_to_json(v)}});
  return {{"n", k.dim()}, {"terms", terms}};
}

inline KernelPoly kernel_from_json(const json& j) {
  try {
    if (!j.is_object() || !j.contains("n") || !j.contains("terms")) throw ParseError("kernel needs n and terms");
    const int n = j["n"].get<int>();
    if (n < 1 || n > kMaxExteriorDim) throw ParseError("kernel dimension out of range");
    KernelPoly out(n);
    for (const auto& t : j["terms"]) {
      auto idx = [&t, n](const char* key) {
        return t.contains(key) ? detail::int_array(t[key], n, key) : zero_index(n);
      };
      out.add(KernelMonomial{idx("z"), idx("zbar"), idx("zp"), idx("zbarp")}, extend_from_json(t.at("value"), n));
    }
    return out;
  } catch (const json::exception& e) {
    throw ParseError(std::string("kernel JSON: ") + e.what());
  }
}

// --- Jet2 --------------------------------------------------------------------

namespace detail {

inline std::complex<double> complex_from_json(const json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw ParseError("complex entries are numbers or [re, im] pairs");
}

/// "sym" keeps the symbol, 0 pins it to zero, a number or matrix gives a numeric value.
inline void assign_jet(Jet2& jets, const JetSymbol& s, const json& v) {
  if (v.is_string()) {
    if (v.get<std::string>() != "sym") throw ParseError("jet entries are \"sym\", 0, or a complex matrix");
    return;
  }
  if (v.is_number() && v.get<double>() == 0.0) {
    jets.set_zero(s);
    return;
  }
  if (v.is_number() || (v.is_array() && v.size() == 2 && v[0].is_number())) {
    Eigen::MatrixXcd m(1, 1);
    m(0, 0) = complex_from_json(v);
    jets.set_numeric(s, m);
    return;
  }
  if (!v.is_array() || v.empty() || !v[0].is_array()) throw ParseError("malformed jet matrix for " + jet_name(s));
  const auto rows = static_cast<Eigen::Index>(v.size());
  const auto cols = static_cast<Eigen::Index>(v[0].size());
  if (rows != cols) throw ParseError("jet matrix for " + jet_name(s) + " must be square");
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (static_cast<Eigen::Index>(v[static_cast<std::size_t>(r)].size()) != cols)
      throw ParseError("ragged jet matrix for " + jet_name(s));
    for (Eigen::Index c = 0; c < cols; ++c)
      m(r, c) = complex_from_json(v[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
  }
  jets.set_numeric(s, m);
}

inline void read_function_jets(Jet2& jets, JetBase base, const json& spec) {
  const int n = jets.dim();
  if (spec.is_string()) {
    if (spec.get<std::string>() != "sym") throw ParseError("function jets are \"sym\" or an object");
    return;
  }
  if (!spec.is_object()) throw ParseError("function jets must be an object");
  if (spec.contains("val")) assign_jet(jets, jet_value(base, n), spec["val"]);
  auto vec = [&](const char* key, bool holo) {
    if (!spec.contains(key)) return;
    const json& a = spec[key];
    if (a.is_string()) {
      if (a.get<std::string>() != "sym") throw ParseError(std::string(key) + " is \"sym\" or an array");
      return;
    }
    if (!a.is_array() || static_cast<int>(a.size()) != n) throw ParseError(std::string(key) + " needs n entries");
    for (int j = 1; j <= n; ++j)
      assign_jet(jets, holo ? jet_dz(base, n, j) : jet_dzbar(base, n, j), a[static_cast<std::size_t>(j - 1)]);
  };
  vec("dz", true);
  vec("dzbar", false);
  if (!spec.contains("d2")) return;
  const json& d2 = spec["d2"];
  if (d2.is_string()) {
    if (d2.get<std::string>() != "sym") throw ParseError("d2 is \"sym\" or an object");
    return;
  }
  struct Block {
    const char* key;
    int holo_count;  // number of z-derivatives: 2 (zz), 1 (zzbar), 0 (zbarzbar)
    bool symmetric;
  };
  for (const Block b : {Block{"zz", 2, true}, Block{"zzbar", 1, false}, Block{"zbarzbar", 0, true}}) {
    if (!d2.contains(b.key)) continue;
    const json& m = d2[b.key];
    if (m.is_string() && m.get<std::string>() == "sym") continue;
    if (!m.is_array() || static_cast<int>(m.size()) != n) throw ParseError(std::string(b.key) + " needs n rows");
    for (int j = 1; j <= n; ++j) {
      for (int k = 1; k <= n; ++k) {
        const json& e = m[static_cast<std::size_t>(j - 1)].at(static_cast<std::size_t>(k - 1));
        if (b.symmetric && e != m[static_cast<std::size_t>(k - 1)].at(static_cast<std::size_t>(j - 1)))
          throw ParseError(std::string(b.key) + " must be symmetric");
        if (b.symmetric && k < j) continue;
        MultiIndex a = zero_index(n), c = zero_index(n);
        if (b.holo_count == 2) {
          a = unit_index(n, j) + unit_index(n, k);
        } else if (b.holo_count == 1) {
          a = unit_index(n, j);
          c = unit_index(n, k);
        } else {
          c = unit_index(n, j) + unit_index(n, k);
        }
        assign_jet(jets, jet(base, a, c), e);
      }
    }
  }
}

}  // namespace detail

inline Jet2 jet2_from_json(const json& j) {
  try {
    if (!j.is_object() || !j.contains("n")) throw ParseError("jets need a dimension n");
    const int n = j["n"].get<int>();
    if (n < 1 || n > kMaxExteriorDim) throw ParseError("jet dimension out of range");
    Jet2 jets(n);
    detail::read_function_jets(jets, JetBase::F, j.value("f", json("sym")));
    detail::read_function_jets(jets, JetBase::G, j.value("g", json("sym")));
    int rank = -1;
    for (const auto& [s, m] : jets.numeric()) {
      if (rank < 0) rank = static_cast<int>(m.rows());
      if (m.rows() != rank) throw ParseError("numeric jets must share one matrix size");
    }
    return jets;
  } catch (const json::exception& e) {
    throw ParseError(std::string("jets JSON: ") + e.what());
  }
}

// --- Fock reports ------------------------------------------------------------

inline json convergence_to_json(const std::string& f, const std::string& g, const ConvergencePoint& q) {
  json j = {{"f", f}, {"g", g}, {"p", q.p}, {"max_abs_E", q.max_abs_E}};
  j["order_estimate"] = q.order_estimate ? json(*q.order_estimate) : json(nullptr);
  j["ratio"] = q.ratio ? json(*q.ratio) : json(nullptr);
  return j;
}

inline std::string convergence_csv(const std::vector<json>& rows) {
  std::ostringstream os;
  os.precision(17);
  os << "f,g,p,max_abs_E,order_estimate,ratio\n";
  for (const auto& r : rows) {
    os << '"' << r["f"].get<std::string>() << "\",\"" << r["g"].get<std::string>() << "\"," << r["p"].get<int>() << ','
       << r["max_abs_E"].get<double>() << ',';
    if (!r["order_estimate"].is_null()) os << r["order_estimate"].get<double>();
    os << ',';
    if (!r["ratio"].is_null()) os << r["ratio"].get<double>();
    os << '\n';
  }
  return os.str();
}

}  // namespace fockcalc
