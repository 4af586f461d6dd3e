#include <gtest/gtest.h>

#include "mpendo/random.hpp"
#include "mpendo/realspectral.hpp"
#include "mpendo/realtori.hpp"
#include "mpendo/serialize.hpp"

using namespace mpendo;

namespace {

std::string path_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const DecodeError& e) {
    return e.path();
  }
  return "<no error>";
}

template <class T, class D>
void expect_round_trip(const T& x, D decode) {
  const auto j = Json::parse(to_bytes(encode(x)));
  EXPECT_EQ(decode(j, ""), x);
}

}  // namespace

TEST(Encode, Examples) {
  EXPECT_EQ(encode(HalfInt::parse("3/2")), Json("3/2"));
  EXPECT_EQ(encode(HalfInt::parse("2")), Json(2));
  EXPECT_EQ(encode(SignVector::from_signs({-1, 1})).dump(), "[-1,1]");
  EXPECT_EQ(encode(Rational(1, 4)).dump(), R"({"den":4,"num":1})");
  EXPECT_EQ(encode(UnityRoot8(5)).dump(), R"({"exp":5})");
  EXPECT_EQ(to_bytes(Json::object()), "{}\n");
}

TEST(Decode, Errors) {
  EXPECT_EQ(path_of([] { decode_halfint(Json("5/3"), "/lambda/0"); }), "/lambda/0");
  EXPECT_EQ(path_of([] { decode_infchar(Json::parse(R"(["3/2", "5/3"])"), ""); }), "/1");
  EXPECT_EQ(path_of([] { decode_rational(Json::parse(R"({"num": 2, "den": 4})"), "/x"); }), "/x");
  EXPECT_EQ(path_of([] { decode_rational(Json::parse(R"({"num": 2})"), "/x"); }), "/x/den");
  EXPECT_EQ(path_of([] { decode_sign_vector(Json::parse("[1, 0]"), ""); }), "/1");
  EXPECT_EQ(path_of([] { decode_root8(Json::parse(R"({"exp": 8})"), ""); }), "/exp");
  EXPECT_EQ(path_of([] { decode_infchar(Json::parse(R"(["1/2", "3/2"])"), "/l"); }), "/l");
  EXPECT_EQ(path_of([] { decode_command(Json::parse(R"({"verb": "nope", "parameters": {}})"), ""); }), "/verb");
  EXPECT_EQ(path_of([] { decode_command(Json::parse(R"({"verb": "packet", "parameters": {"lambda": 3}})"), ""); }),
            "/parameters/lambda");
  EXPECT_EQ(path_of([] {
              decode_packet(Json::parse(R"({"lambda": ["3/2", "1/2"], "members": [["3/2", "1/2"], ["5/2", "1/2"]]})"),
                            "");
            }),
            "/members/1");
  EXPECT_EQ(path_of([] {
              decode_elliptic_param(
                  Json::parse(R"({"datum": {"n_prime": 2, "n_dprime": 0}, "pile_prime": ["1/2"], "pile_dprime": []})"),
                  "");
            }),
            "/datum");
  EXPECT_EQ(path_of([] {
              decode_report(Json::parse(R"({"status": "pass", "data": {},
                 "checks": [{"name": "a", "detail": "", "counts": {"passed": 0, "total": 1}}]})"),
                            "");
            }),
            "/status");
}

TEST(RoundTrip, ScalarsAndVectors) {
  Rng rng(41);
  for (int t = 0; t < 200; ++t) {
    expect_round_trip(HalfInt::from_twice(rng.range(-40, 40)), decode_halfint);
    expect_round_trip(rng.nonzero_rational(), decode_rational);
    expect_round_trip(rng.sign_vector(static_cast<std::size_t>(rng.range(0, 12))), decode_sign_vector);
    expect_round_trip(rng.root8(), decode_root8);
    expect_round_trip(StableClassSO(rng.rationals(static_cast<std::size_t>(rng.range(0, 5)))),
                      decode_stable_class<SOTag>);
    expect_round_trip(StableClassSp(rng.rationals(static_cast<std::size_t>(rng.range(0, 5)))),
                      decode_stable_class<SpTag>);
  }
}

TEST(RoundTrip, EndoscopicData) {
  for (std::size_t n = 0; n <= 5; ++n) {
    for (const auto& d : enumerate_elliptic(n)) expect_round_trip(d, decode_endo_datum);
    for (const auto& l : enumerate_levi(n)) {
      expect_round_trip(l, decode_levi);
      for (const auto& e : enumerate_embeddings(l, 0, l.flat_rank)) expect_round_trip(e.s, decode_embedding_param);
    }
  }
}

TEST(RoundTrip, SpectralPayloads) {
  for (const auto& l : enumerate_admissible(5, 7)) {
    expect_round_trip(l, decode_infchar);
    const auto pk = packet(l);
    const auto back = decode_packet(Json::parse(to_bytes(encode(pk))), "");
    EXPECT_EQ(back.lambda, pk.lambda);
    EXPECT_EQ(back.members, pk.members);
    for (const auto& m : pk.members) expect_round_trip(m, decode_hcparam);
    for (const auto& phi : fiber(l)) expect_round_trip(phi, decode_elliptic_param);
  }
}

TEST(RoundTrip, ReportsAndCommands) {
  Report r;
  r.checks.push_back({"x/a", "first", 3, 3});
  r.checks.push_back({"x/b", "second", 1, 2});
  r.data = {{"seed", 4}, {"list", {1, 2}}};
  expect_round_trip(r, decode_report);
  EXPECT_EQ(encode(r)["status"], "fail");
  const Command c{"verify", {{"suite", "all"}, {"seed", "3"}}};
  expect_round_trip(c, decode_command);
}

TEST(Encode, KeysAreSorted) {
  const auto text = to_bytes(encode(EllipticParam({HalfInt::parse("3/2")}, {})));
  EXPECT_LT(text.find("datum"), text.find("pile_dprime"));
  EXPECT_LT(text.find("pile_dprime"), text.find("pile_prime"));
}
