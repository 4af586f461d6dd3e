#pragma once

// JSON encoding of all payload types. Keys are sorted (nlohmann::json uses an
// ordered std::map), so identical values always encode to identical bytes.
//
//   HalfInt        3/2 -> "3/2", 2 -> 2
//   Rational       {"den": 4, "num": 1}
//   SignVector     [-1, 1]
//   UnityRoot8     {"exp": 5}
//
// decode_* functions throw DecodeError carrying a JSON-pointer-style path to
// the offending field.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "mpendo/endodata.hpp"
#include "mpendo/exactalg.hpp"
#include "mpendo/realspectral.hpp"
#include "mpendo/realtori.hpp"

namespace mpendo {

using Json = nlohmann::json;

class DecodeError : public InputError {
 public:
  DecodeError(const std::string& path, const std::string& what)
      : InputError((path.empty() ? std::string("/") : path) + ": " + what), path_(path.empty() ? "/" : path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// ---------------------------------------------------------------------------
// CLI payloads

struct Check {
  std::string name;
  std::string detail;
  std::uint64_t passed = 0;
  std::uint64_t total = 0;

  bool ok() const { return passed == total; }
  bool operator==(const Check&) const = default;
};

struct Report {
  std::vector<Check> checks;
  Json data = Json::object();

  bool ok() const {
    for (const auto& c : checks)
      if (!c.ok()) return false;
    return true;
  }
  bool operator==(const Report&) const = default;
};

struct Command {
  std::string verb;  // enumerate | correspond | packet | transfer-matrix | verify
  std::map<std::string, std::string> parameters;
  bool operator==(const Command&) const = default;
};

// ---------------------------------------------------------------------------
// encode

inline Json encode(const HalfInt& x) {
  if (x.is_integer()) return x.twice() / 2;
  return x.to_string();
}
inline Json encode(const Rational& x) { return {{"num", x.num()}, {"den", x.den()}}; }
inline Json encode(const SignVector& v) { return v.signs(); }
inline Json encode(const UnityRoot8& z) { return {{"exp", z.exponent()}}; }
inline Json encode(const EndoDatum& d) { return {{"n_prime", d.n_prime}, {"n_dprime", d.n_dprime}}; }
inline Json encode(const LeviDatum& l) { return {{"gl_blocks", l.gl_blocks}, {"flat_rank", l.flat_rank}}; }
inline Json encode(const EmbeddingParam& s) { return {{"i_prime", s.i_prime}, {"i_dprime", s.i_dprime}}; }
inline Json encode(const Embedding& e) { return {{"s", encode(e.s)}, {"attached", encode(e.attached)}}; }
inline Json encode(const TorusType& t) { return {{"m", t.m}, {"r", t.r}, {"s", t.s}}; }

template <class T>
Json encode_list(const std::vector<T>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(encode(x));
  return out;
}

template <class Tag>
Json encode(const StableClass<Tag>& c) {
  return encode_list(c.eigen());
}
inline Json encode(const InfChar& l) { return encode_list(l.entries()); }
inline Json encode(const HCParam& p) { return {{"lambda", encode(p.base)}, {"signed", encode_list(p.signed_entries)}}; }
inline Json encode(const EllipticParam& phi) {
  return {{"datum", encode(phi.datum)},
          {"pile_prime", encode_list(phi.pile_prime)},
          {"pile_dprime", encode_list(phi.pile_dprime)}};
}
inline Json encode(const Packet& pk) {
  Json members = Json::array();
  for (const auto& m : pk.members) members.push_back(encode_list(m.signed_entries));
  return {{"lambda", encode(pk.lambda)}, {"members", members}};
}
inline Json encode(const Check& c) {
  return {{"name", c.name}, {"detail", c.detail}, {"counts", {{"passed", c.passed}, {"total", c.total}}}};
}
inline Json encode(const Report& r) {
  return {{"status", r.ok() ? "pass" : "fail"}, {"checks", encode_list(r.checks)}, {"data", r.data}};
}
inline Json encode(const Command& c) { return {{"verb", c.verb}, {"parameters", c.parameters}}; }

/// Canonical text form: two-space indented, sorted keys, trailing newline.
inline std::string to_bytes(const Json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// decode

namespace detail {

inline const Json& field(const Json& j, const std::string& path, const char* key) {
  if (!j.is_object()) throw DecodeError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw DecodeError(path + "/" + key, "missing field");
  return *it;
}

inline std::int64_t as_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw DecodeError(path, "expected an integer");
  return j.get<std::int64_t>();
}

inline std::size_t as_size(const Json& j, const std::string& path) {
  const auto v = as_int(j, path);
  if (v < 0) throw DecodeError(path, "expected a non-negative integer");
  return static_cast<std::size_t>(v);
}

inline const Json& as_array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw DecodeError(path, "expected an array");
  return j;
}

template <class F>
auto decode_list(const Json& j, const std::string& path, F&& item) {
  using T = decltype(item(j, path));
  std::vector<T> out;
  const auto& a = as_array(j, path);
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(item(a[i], path + "/" + std::to_string(i)));
  return out;
}

template <class F>
auto rethrow_at(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const DecodeError&) {
    throw;
  } catch (const std::exception& e) {
    throw DecodeError(path, e.what());
  }
}

}  // namespace detail

inline HalfInt decode_halfint(const Json& j, const std::string& path = "") {
  if (j.is_number_integer()) return HalfInt::from_int(j.get<std::int64_t>());
  if (!j.is_string()) throw DecodeError(path, "expected a half-integer");
  return detail::rethrow_at(path, [&] { return HalfInt::parse(j.get<std::string>()); });
}

inline Rational decode_rational(const Json& j, const std::string& path = "") {
  const auto num = detail::as_int(detail::field(j, path, "num"), path + "/num");
  const auto den = detail::as_int(detail::field(j, path, "den"), path + "/den");
  if (den <= 0) throw DecodeError(path + "/den", "denominator must be positive");
  Rational r(num, den);
  if (r.num() != num || r.den() != den) throw DecodeError(path, "rational is not in lowest terms");
  return r;
}

inline SignVector decode_sign_vector(const Json& j, const std::string& path = "") {
  const auto signs = detail::decode_list(j, path, [](const Json& x, const std::string& p) {
    const auto v = detail::as_int(x, p);
    if (v != 1 && v != -1) throw DecodeError(p, "sign must be 1 or -1");
    return static_cast<int>(v);
  });
  if (signs.size() > SignVector::kMaxLength) throw DecodeError(path, "sign vector too long");
  return SignVector::from_signs(signs);
}

inline UnityRoot8 decode_root8(const Json& j, const std::string& path = "") {
  const auto k = detail::as_int(detail::field(j, path, "exp"), path + "/exp");
  if (k < 0 || k >= 8) throw DecodeError(path + "/exp", "exponent must be in [0, 8)");
  return UnityRoot8(k);
}

inline EndoDatum decode_endo_datum(const Json& j, const std::string& path = "") {
  return {detail::as_size(detail::field(j, path, "n_prime"), path + "/n_prime"),
          detail::as_size(detail::field(j, path, "n_dprime"), path + "/n_dprime")};
}

inline LeviDatum decode_levi(const Json& j, const std::string& path = "") {
  auto blocks = detail::decode_list(detail::field(j, path, "gl_blocks"), path + "/gl_blocks", detail::as_size);
  const auto flat = detail::as_size(detail::field(j, path, "flat_rank"), path + "/flat_rank");
  return detail::rethrow_at(path, [&] { return LeviDatum(blocks, flat); });
}

inline EmbeddingParam decode_embedding_param(const Json& j, const std::string& path = "") {
  EmbeddingParam s;
  s.i_prime = detail::decode_list(detail::field(j, path, "i_prime"), path + "/i_prime", detail::as_size);
  s.i_dprime = detail::decode_list(detail::field(j, path, "i_dprime"), path + "/i_dprime", detail::as_size);
  detail::rethrow_at(path, [&] {
    validate(s, s.index_count());
    return 0;
  });
  return s;
}

template <class Tag>
StableClass<Tag> decode_stable_class(const Json& j, const std::string& path = "") {
  auto eigen = detail::decode_list(j, path, decode_rational);
  StableClass<Tag> c = detail::rethrow_at(path, [&] { return StableClass<Tag>(eigen); });
  if (c.eigen() != eigen) throw DecodeError(path, "stable class is not in canonical form");
  return c;
}

inline InfChar decode_infchar(const Json& j, const std::string& path = "") {
  auto raw = detail::decode_list(j, path, decode_halfint);
  InfChar l = detail::rethrow_at(path, [&] { return normal_form(raw, true); });
  if (l.entries() != raw) throw DecodeError(path, "infinitesimal character is not in normal form");
  return l;
}

inline HCParam decode_hcparam(const Json& j, const std::string& path = "") {
  auto lambda = decode_infchar(detail::field(j, path, "lambda"), path + "/lambda");
  auto sig = detail::decode_list(detail::field(j, path, "signed"), path + "/signed", decode_halfint);
  return detail::rethrow_at(path + "/signed", [&] { return HCParam(sig, lambda); });
}

inline EllipticParam decode_elliptic_param(const Json& j, const std::string& path = "") {
  const auto datum = decode_endo_datum(detail::field(j, path, "datum"), path + "/datum");
  auto p = detail::decode_list(detail::field(j, path, "pile_prime"), path + "/pile_prime", decode_halfint);
  auto d = detail::decode_list(detail::field(j, path, "pile_dprime"), path + "/pile_dprime", decode_halfint);
  EllipticParam phi = detail::rethrow_at(path, [&] { return EllipticParam(p, d); });
  if (!(phi.datum == datum)) throw DecodeError(path + "/datum", "datum does not match pile sizes");
  return phi;
}

inline Packet decode_packet(const Json& j, const std::string& path = "") {
  Packet pk;
  pk.lambda = decode_infchar(detail::field(j, path, "lambda"), path + "/lambda");
  const std::string mp = path + "/members";
  const auto& members = detail::as_array(detail::field(j, path, "members"), mp);
  for (std::size_t i = 0; i < members.size(); ++i) {
    const std::string ip = mp + "/" + std::to_string(i);
    auto sig = detail::decode_list(members[i], ip, decode_halfint);
    pk.members.push_back(detail::rethrow_at(ip, [&] { return HCParam(sig, pk.lambda); }));
  }
  return pk;
}

inline Check decode_check(const Json& j, const std::string& path = "") {
  Check c;
  const auto& name = detail::field(j, path, "name");
  const auto& detail_field = detail::field(j, path, "detail");
  if (!name.is_string()) throw DecodeError(path + "/name", "expected a string");
  if (!detail_field.is_string()) throw DecodeError(path + "/detail", "expected a string");
  c.name = name.get<std::string>();
  c.detail = detail_field.get<std::string>();
  const auto& counts = detail::field(j, path, "counts");
  c.passed = detail::as_size(detail::field(counts, path + "/counts", "passed"), path + "/counts/passed");
  c.total = detail::as_size(detail::field(counts, path + "/counts", "total"), path + "/counts/total");
  return c;
}

inline Report decode_report(const Json& j, const std::string& path = "") {
  Report r;
  r.checks = detail::decode_list(detail::field(j, path, "checks"), path + "/checks", decode_check);
  r.data = detail::field(j, path, "data");
  const auto& status = detail::field(j, path, "status");
  if (!status.is_string() || (status != "pass" && status != "fail"))
    throw DecodeError(path + "/status", "status must be \"pass\" or \"fail\"");
  if ((status == "pass") != r.ok()) throw DecodeError(path + "/status", "status disagrees with the checks");
  return r;
}

inline Command decode_command(const Json& j, const std::string& path = "") {
  Command c;
  const auto& verb = detail::field(j, path, "verb");
  if (!verb.is_string()) throw DecodeError(path + "/verb", "expected a string");
  c.verb = verb.get<std::string>();
  if (c.verb != "enumerate" && c.verb != "correspond" && c.verb != "packet" && c.verb != "transfer-matrix" &&
      c.verb != "verify")
    throw DecodeError(path + "/verb", "unknown verb '" + c.verb + "'");
  const auto& params = detail::field(j, path, "parameters");
  if (!params.is_object()) throw DecodeError(path + "/parameters", "expected an object");
  for (const auto& [k, v] : params.items()) {
    if (!v.is_string()) throw DecodeError(path + "/parameters/" + k, "expected a string");
    c.parameters[k] = v.get<std::string>();
  }
  return c;
}

}  // namespace mpendo
