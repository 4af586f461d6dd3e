#pragma once

// Command-line front end. Every verb prints one JSON report on stdout.
// Exit codes: 0 success/pass, 1 verification failure, 2 usage or input error.
//
//   enumerate --kind {elliptic|levi|embeddings|tori} --n N [--levi "1,1;flat=2"] [--m-prime M]
//   correspond --gamma-prime "2,3" --gamma-dprime "5"
//   packet --lambda "3/2,3/2,1/2"
//   transfer-matrix --lambda "3/2,3/2,1/2"
//   verify --suite NAME [--max-n N] [--seed S] [--trials K]

#include <iostream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "CLI11.hpp"
#include "mpendo/endodata.hpp"
#include "mpendo/realspectral.hpp"
#include "mpendo/realtori.hpp"
#include "mpendo/serialize.hpp"
#include "mpendo/suites.hpp"

namespace mpendo::cli {

namespace detail {

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

inline std::optional<std::string> get(const Command& c, const std::string& key) {
  auto it = c.parameters.find(key);
  if (it == c.parameters.end()) return std::nullopt;
  return it->second;
}

inline std::string require(const Command& c, const std::string& key) {
  auto v = get(c, key);
  if (!v) throw InputError("missing required parameter --" + key);
  return *v;
}

inline std::uint64_t parse_unsigned(const std::string& s, const std::string& what) {
  const auto v = mpendo::detail::parse_int(trim(s), what);
  if (v < 0) throw InputError(what + " must be non-negative");
  return static_cast<std::uint64_t>(v);
}

inline InfChar parse_lambda(const std::string& s) {
  std::vector<HalfInt> raw;
  for (const auto& tok : split(s, ',')) raw.push_back(HalfInt::parse(trim(tok)));
  return normal_form(raw, true);
}

inline StableClassSO parse_so_class(const std::string& s) {
  std::vector<Rational> eigen;
  for (const auto& tok : split(s, ',')) eigen.push_back(Rational::parse(trim(tok)));
  return StableClassSO(eigen);
}

/// "1,1;flat=2" or "2,1" (flat rank 0) or ";flat=3" / "flat=3" (no blocks).
inline LeviDatum parse_levi(const std::string& s) {
  std::string blocks_part = s;
  std::size_t flat = 0;
  const auto pos = s.find("flat=");
  if (pos != std::string::npos) {
    flat = parse_unsigned(s.substr(pos + 5), "flat rank");
    blocks_part = s.substr(0, pos);
    if (!blocks_part.empty() && blocks_part.back() == ';') blocks_part.pop_back();
  }
  std::vector<std::size_t> blocks;
  for (const auto& tok : split(trim(blocks_part), ',')) blocks.push_back(parse_unsigned(tok, "GL block size"));
  return LeviDatum(blocks, flat);
}

inline Json members_json(const Packet& pk) {
  Json out = Json::array();
  for (const auto& m : pk.members)
    out.push_back({{"signed", encode_list(m.signed_entries)},
                   {"index", encode(*packet_index(m))},
                   {"nonzero", is_nonzero_limit(m)}});
  return out;
}

inline Json fiber_json(const InfChar& lambda) {
  Json out = Json::array();
  for (const auto& phi : fiber(lambda))
    out.push_back({{"phi", encode(phi)}, {"kappa", encode(split_bijection_inverse(phi).kappa)}});
  return out;
}

inline Report do_enumerate(const Command& c) {
  const auto kind = require(c, "kind");
  const auto n_opt = get(c, "n");
  Report r;
  Json items = Json::array();
  if (kind == "elliptic" || kind == "levi" || kind == "tori") {
    if (!n_opt) throw InputError("--n is required for --kind " + kind);
    const auto n = parse_unsigned(*n_opt, "n");
    if (n > 64) throw InputError("n is too large");
    if (kind == "elliptic")
      for (const auto& d : enumerate_elliptic(n)) items.push_back({{"datum", encode(d)}, {"iota", encode(iota(d))}});
    else if (kind == "levi")
      for (const auto& l : enumerate_levi(n)) items.push_back(encode(l));
    else
      for (const auto& t : torus_types(n)) items.push_back({{"type", encode(t)}, {"h1_order", h1(t).order}});
    r.data = {{"kind", kind}, {"n", n}, {"items", items}};
    return r;
  }
  if (kind == "embeddings") {
    const auto levi = parse_levi(require(c, "levi"));
    if (n_opt && parse_unsigned(*n_opt, "n") != levi.rank())
      throw InputError("--n does not match the rank of the Levi datum");
    std::vector<std::size_t> mps;
    if (auto mp = get(c, "m-prime")) {
      mps.push_back(parse_unsigned(*mp, "m-prime"));
      if (mps.front() > levi.flat_rank) throw InputError("m' exceeds the flat rank");
    } else {
      for (std::size_t mp = 0; mp <= levi.flat_rank; ++mp) mps.push_back(mp);
    }
    for (auto mp : mps)
      for (const auto& e : enumerate_embeddings(levi, mp, levi.flat_rank - mp))
        items.push_back({{"m_prime", mp},
                         {"m_dprime", levi.flat_rank - mp},
                         {"s", encode(e.s)},
                         {"attached", encode(e.attached)},
                         {"z", encode(central_twist(e.s))}});
    r.data = {{"kind", kind}, {"n", levi.rank()}, {"levi", encode(levi)}, {"items", items}};
    return r;
  }
  throw InputError("unknown --kind '" + kind + "'");
}

inline Report do_correspond(const Command& c) {
  const auto gp_s = get(c, "gamma-prime");
  const auto gd_s = get(c, "gamma-dprime");
  if (!gp_s && !gd_s) throw InputError("correspond needs --gamma-prime and/or --gamma-dprime");
  const auto gp = parse_so_class(gp_s.value_or(""));
  const auto gd = parse_so_class(gd_s.value_or(""));
  const EndoDatum d{gp.rank(), gd.rank()};
  const auto w = symmetry_swap(gp, gd, d);
  Report r;
  r.checks.push_back({"symmetry", "-delta equals the swapped correspondence", w.pass ? 1u : 0u, 1});
  r.data = {{"datum", encode(d)},
            {"gamma_prime", encode(gp)},
            {"gamma_dprime", encode(gd)},
            {"delta", encode(w.delta)},
            {"swapped", encode(w.swapped)},
            {"g_regular", is_G_regular(gp, gd, d)},
            {"iota", encode(iota(d))}};
  return r;
}

inline Report do_packet(const Command& c) {
  const auto lambda = parse_lambda(require(c, "lambda"));
  const auto pk = packet(lambda);
  const auto sp = singletons_and_pairs(lambda);
  const auto fib = fiber(lambda);
  Report r;
  r.checks.push_back({"fiber-cardinality", "|fiber| = |packet|", fib.size() == pk.members.size() ? 1u : 0u, 1});
  r.data = {{"lambda", encode(lambda)},
            {"singletons", encode_list(sp.singletons)},
            {"pairs", encode_list(sp.pairs)},
            {"size", pk.members.size()},
            {"members", members_json(pk)},
            {"fiber", fiber_json(lambda)}};
  return r;
}

inline Report do_transfer_matrix(const Command& c) {
  const auto lambda = parse_lambda(require(c, "lambda"));
  const auto m = transfer_matrices(lambda);
  Json delta = Json::array();
  for (std::size_t a = 0; a < m.phis.size(); ++a) {
    Json row = Json::array();
    for (std::size_t b = 0; b < m.members.size(); ++b) row.push_back(m.delta(a, b).num());
    delta.push_back(row);
  }
  Json adjoint = Json::array();
  for (std::size_t b = 0; b < m.members.size(); ++b) {
    Json row = Json::array();
    for (std::size_t a = 0; a < m.phis.size(); ++a) row.push_back(encode(m.adjoint(b, a)));
    adjoint.push_back(row);
  }
  Json rows = Json::array();
  for (const auto& phi : m.phis) rows.push_back(encode(phi));
  Json cols = Json::array();
  for (const auto& p : m.members) cols.push_back(encode_list(p.signed_entries));
  Report r;
  const bool left = (m.adjoint * m.delta).is_identity();
  const bool right = (m.delta * m.adjoint).is_identity();
  r.checks.push_back({"sum-over-phi", "sum_phi Delta(pi,phi) Delta(phi,pi1) = [pi = pi1]", left ? 1u : 0u, 1});
  r.checks.push_back({"sum-over-pi", "sum_pi Delta(phi,pi) Delta(pi,phi1) = [phi = phi1]", right ? 1u : 0u, 1});
  r.data = {{"lambda", encode(lambda)},
            {"phis", rows},
            {"members", cols},
            {"delta", delta},
            {"adjoint", adjoint}};
  return r;
}

inline Report do_verify(const Command& c) {
  SuiteOptions opt;
  const auto suite = require(c, "suite");
  if (suite != "all") {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), suite) == names.end()) throw InputError("unknown suite '" + suite + "'");
  }
  if (auto v = get(c, "max-n")) opt.max_n = parse_unsigned(*v, "max-n");
  if (opt.max_n && *opt.max_n > 12) throw InputError("--max-n must be at most 12");
  if (auto v = get(c, "seed")) opt.seed = parse_unsigned(*v, "seed");
  if (auto v = get(c, "trials")) opt.trials = parse_unsigned(*v, "trials");
  if (auto v = get(c, "inject-sign-error")) opt.inject_sign_error = (*v == "true" || *v == "1");
  return verify_report(suite, opt);
}

}  // namespace detail

/// Runs a decoded command; the JSON report goes to out.
inline int execute(const Command& c, std::ostream& out, std::ostream& err) {
  try {
    Report r;
    if (c.verb == "enumerate")
      r = detail::do_enumerate(c);
    else if (c.verb == "correspond")
      r = detail::do_correspond(c);
    else if (c.verb == "packet")
      r = detail::do_packet(c);
    else if (c.verb == "transfer-matrix")
      r = detail::do_transfer_matrix(c);
    else if (c.verb == "verify")
      r = detail::do_verify(c);
    else
      throw InputError("unknown verb '" + c.verb + "'");
    Json j = encode(r);
    j["command"] = encode(c);
    out << to_bytes(j);
    return r.ok() ? 0 : 1;
  } catch (const std::logic_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::overflow_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

/// Parses argv (argv[0] is the program name) into a Command and executes it.
inline int run(const std::vector<std::string>& argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Exact endoscopy combinatorics for the metaplectic group"};
  app.require_subcommand(1);
  std::map<std::string, std::string> values;

  const auto opt = [&values](CLI::App* sub, const std::string& name, const std::string& help) {
    return sub->add_option_function<std::string>(
        "--" + name, [&values, name](const std::string& v) { values[name] = v; }, help);
  };

  auto* en = app.add_subcommand("enumerate", "Enumerate elliptic data, Levi data, embeddings or tori");
  opt(en, "kind", "elliptic | levi | embeddings | tori")->required();
  opt(en, "n", "ambient rank n");
  opt(en, "levi", "Levi datum, e.g. \"1,1;flat=2\"");
  opt(en, "m-prime", "m' for embeddings (default: every split of the flat rank)");

  auto* co = app.add_subcommand("correspond", "Image of (gamma', gamma'') in Sp(2n)");
  opt(co, "gamma-prime", "eigenvalues of gamma', e.g. \"2,3\"");
  opt(co, "gamma-dprime", "eigenvalues of gamma'', e.g. \"5\"");

  auto* pk = app.add_subcommand("packet", "Packet members and fiber of elliptic parameters over lambda");
  opt(pk, "lambda", "infinitesimal character, e.g. \"3/2,3/2,1/2\"")->required();

  auto* tm = app.add_subcommand("transfer-matrix", "Spectral transfer matrix and its adjoint over lambda");
  opt(tm, "lambda", "infinitesimal character")->required();

  auto* ve = app.add_subcommand("verify", "Run verification suites");
  opt(ve, "suite", "suite name or \"all\"")->required();
  opt(ve, "max-n", "rank bound applied to every suite");
  opt(ve, "seed", "seed for randomized suites (default 0)");
  opt(ve, "trials", "trials per configuration (default 100)");
  ve->add_flag_callback("--inject-sign-error", [&values] { values["inject-sign-error"] = "true"; },
                        "test hook: corrupt one transfer-matrix entry");

  std::vector<const char*> cargv;
  cargv.reserve(argv.size());
  for (const auto& a : argv) cargv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return 2;
  }

  Command c;
  c.verb = app.get_subcommands().front()->get_name();
  c.parameters = values;
  return execute(c, out, err);
}

}  // namespace mpendo::cli
