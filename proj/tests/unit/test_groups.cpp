#include <doctest.h>

#include "symgrowth/errors.hpp"
#include "symgrowth/groups.hpp"

#include <cmath>
#include <map>
#include <random>
#include <set>
#include <utility>

using namespace symgrowth;

namespace {

// Faithful affine model of BS(2,1): a = x + 1, b = 2x. An element is
// x -> 2^k x + t with t = num / 2^kDen exact.
constexpr int kDen = 24;
using Affine = std::pair<int, long long>;  // (k, num)

Affine apply_letter(Affine f, char c) {
  auto [k, num] = f;
  switch (c) {
    case 'a': num += 1LL << (k + kDen); break;
    case 'A': num -= 1LL << (k + kDen); break;
    case 'b': ++k; break;
    default: --k; break;
  }
  return {k, num};
}

Affine affine_of(const GroupWord& w) {
  Affine f{0, 0};
  for (const auto& blk : w.blocks()) {
    const long e = static_cast<long>(blk.exp);
    const char c = blk.gen == Generator::a ? (e > 0 ? 'a' : 'A') : (e > 0 ? 'b' : 'B');
    for (long i = 0; i < std::labs(e); ++i) f = apply_letter(f, c);
  }
  return f;
}

// Breadth-first word lengths in the affine model.
std::map<Affine, int> affine_ball(int radius) {
  std::map<Affine, int> dist{{{0, 0}, 0}};
  std::vector<Affine> frontier{{0, 0}};
  for (int r = 1; r <= radius; ++r) {
    std::vector<Affine> next;
    for (const auto& f : frontier)
      for (char c : {'a', 'A', 'b', 'B'}) {
        const auto g = apply_letter(f, c);
        if (dist.emplace(g, r).second) next.push_back(g);
      }
    frontier = std::move(next);
  }
  return dist;
}

GroupWord random_word(std::mt19937_64& rng, int blocks, int max_exp) {
  std::uniform_int_distribution<int> e(-max_exp, max_exp);
  std::bernoulli_distribution coin;
  GroupWord w;
  for (int i = 0; i < blocks; ++i) w.append(coin(rng) ? Generator::a : Generator::b, e(rng));
  return w;
}

// No b a^{pk} b^-1 or b^-1 a^{qk} b subword and no adjacent b^e b^-e.
bool pinch_free(const GroupWord& w, const Presentation& P) {
  const auto& bl = w.blocks();
  for (std::size_t i = 0; i + 2 < bl.size(); ++i) {
    if (bl[i].gen != Generator::b || bl[i + 1].gen != Generator::a) continue;
    const bool up = bl[i].exp > 0;
    if ((bl[i + 2].exp > 0) == up) continue;
    if (bl[i + 1].exp % (up ? P.p : P.q) == 0) return false;
  }
  for (std::size_t i = 0; i + 1 < bl.size(); ++i)
    if (bl[i].gen == bl[i + 1].gen) return false;
  return true;
}

}  // namespace

TEST_CASE("presentations and words") {
  CHECK_THROWS_AS(Presentation::bs(0, 1), PreconditionError);
  CHECK_THROWS_AS(Presentation::bs(2, 0), PreconditionError);
  const auto w = GroupWord::parse("b a^4 b^-1");
  CHECK(w.blocks().size() == 3);
  CHECK(w.to_string() == "b a^4 b^-1");
  CHECK(GroupWord::parse("aaBB a^-2") == GroupWord::parse("a^2 b^-2 a^-2"));
  CHECK(GroupWord::parse("a A").empty());
  CHECK(GroupWord::parse("1").empty());
  CHECK(GroupWord().to_string() == "1");
  CHECK(w.length() == 6);
  CHECK((w * w.inverse()).empty());
  CHECK_THROWS_AS(GroupWord::parse("a c"), PreconditionError);
  CHECK_THROWS_AS(GroupWord::parse("a^"), PreconditionError);
}

TEST_CASE("Britton reduction examples") {
  CHECK(britton_reduce(GroupWord::parse("b a^2 b^-1 a^-4"), Presentation::bs(4, 2)).empty());
  CHECK(britton_reduce(GroupWord::parse("a^3 a^-3"), Presentation::bs(2, 1)).empty());
  const auto P32 = Presentation::bs(3, 2);
  const auto w = GroupWord::parse("b a b^-1");
  CHECK(britton_reduce(w, P32) == w);
  CHECK(pinch_free(w, P32));
  CHECK(britton_reduce(GroupWord::parse("b^-1 a^6 b"), P32) == GroupWord::parse("a^4"));
  // Nested pinches: b^2 a b^-2 = a^4 in BS(2,1).
  CHECK(britton_reduce(GroupWord::parse("b^2 a b^-2"), Presentation::bs(2, 1)) == GroupWord::parse("a^4"));
  // Exponents beyond 64 bits.
  const auto big = GroupWord::parse("b^70 a b^-70");
  const auto r = britton_reduce(big, Presentation::bs(2, 1));
  REQUIRE(r.blocks().size() == 1);
  CHECK(r.blocks()[0].exp == BigInt(1) << 70);
}

TEST_CASE("reduction: idempotence, soundness, pinch-freeness") {
  std::mt19937_64 rng(17);
  for (const auto& P : {Presentation::bs(2, 1), Presentation::bs(3, 2), Presentation::bs(4, 2),
                        Presentation::bs(-3, 2), Presentation::bs(1, 1)}) {
    CAPTURE(P.name());
    for (int trial = 0; trial < 1000; ++trial) {
      const auto w = random_word(rng, 8, 4);
      const auto r = britton_reduce(w, P);
      CHECK(britton_reduce(r, P) == r);
      CHECK(britton_reduce(w * w.inverse(), P).empty());
      CHECK(pinch_free(r, P));
      CHECK(normal_form(normal_form(w, P), P) == normal_form(w, P));
    }
  }
}

TEST_CASE("normal forms decide equality") {
  std::mt19937_64 rng(5);
  // Inserting a conjugate of the relator leaves the normal form unchanged.
  for (const auto& P : {Presentation::bs(2, 1), Presentation::bs(3, 2), Presentation::bs(-2, 3)}) {
    CAPTURE(P.name());
    GroupWord rel;
    rel.append(Generator::a, P.q).append(Generator::b, 1).append(Generator::a, -P.p).append(Generator::b, -1);
    for (int trial = 0; trial < 300; ++trial) {
      const auto u = random_word(rng, 5, 3);
      const auto v = random_word(rng, 5, 3);
      const auto c = random_word(rng, 3, 2);
      const auto w2 = u * c * rel * c.inverse() * v;
      CHECK(normal_form(u * v, P) == normal_form(w2, P));
      CHECK(equal_in_group(u * v, w2, P));
    }
  }
  // BS(2,1): normal forms agree iff the affine maps agree.
  const auto P = Presentation::bs(2, 1);
  int equal_pairs = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    const auto u = random_word(rng, 4, 2);
    const auto v = random_word(rng, 4, 2);
    const bool same = affine_of(u) == affine_of(v);
    equal_pairs += same;
    CHECK((normal_form(u, P) == normal_form(v, P)) == same);
    CHECK(equal_in_group(u, v, P) == same);
  }
  CHECK(equal_pairs > 0);
}

TEST_CASE("word length by breadth-first search") {
  const auto P = Presentation::bs(2, 1);
  const auto r8 = word_length_bfs(P, GroupWord::parse("a^8"), 8);
  CHECK(r8.found);
  CHECK(r8.length == 6);
  CHECK(r8.witness.length() == 6);
  CHECK(equal_in_group(r8.witness, GroupWord::parse("a^8"), P));
  CHECK(word_length_bfs(P, GroupWord::parse("b a^4 b^-1"), 8).length == 6);
  CHECK(word_length_bfs(P, GroupWord(), 0).length == 0);
  CHECK(word_length_bfs(P, GroupWord::parse("a"), 1).length == 1);
  const auto far = word_length_bfs(P, GroupWord::parse("a^63"), 12);
  CHECK_FALSE(far.found);
  CHECK(far.radius == 12);
  CHECK(far.ball_size > 0);

  // Memory cap: growth stops at the last complete level.
  const CayleyBall capped(P, 12, 1000);
  CHECK(capped.truncated());
  CHECK(capped.radius() < 12);
  CHECK(capped.size() <= 1000);
  CHECK_THROWS_AS(capped.witness(GroupWord::parse("a^63")), PreconditionError);
}

TEST_CASE("Cayley ball matches the affine model") {
  const int R = 10;
  const auto P = Presentation::bs(2, 1);
  const CayleyBall ball(P, R);
  const auto oracle = affine_ball(R);
  CHECK(ball.size() == oracle.size());
  for (long n = 1; n <= 64; ++n) {
    const auto it = oracle.find(affine_of(GroupWord::power(Generator::a, n)));
    const auto len = ball.power_length(n);
    CHECK(len.has_value() == (it != oracle.end()));
    if (len && it != oracle.end()) CHECK(*len == it->second);
  }
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 500; ++trial) {
    const auto w = random_word(rng, 4, 2);
    const auto it = oracle.find(affine_of(w));
    const auto len = ball.length(w);
    REQUIRE(len.has_value() == (it != oracle.end()));
    if (len) {
      CHECK(*len == it->second);
      const auto wit = ball.witness(w);
      CHECK(wit.length() == *len);
      CHECK(affine_of(wit) == affine_of(w));
    }
  }
}

TEST_CASE("triangle inequality inside the ball") {
  std::mt19937_64 rng(23);
  for (const auto& P : {Presentation::bs(2, 1), Presentation::bs(3, 2)}) {
    const CayleyBall ball(P, 10);
    int checked = 0;
    for (int trial = 0; trial < 2000; ++trial) {
      const auto g = random_word(rng, 3, 2);
      const auto h = random_word(rng, 3, 2);
      const auto lg = ball.length(g), lh = ball.length(h), lgh = ball.length(g * h);
      if (!lg || !lh || !lgh) continue;
      ++checked;
      CHECK(*lgh <= *lg + *lh);
    }
    CHECK(checked > 500);
  }
}

TEST_CASE("logarithmic construction") {
  const auto P32 = Presentation::bs(3, 2);
  CHECK(phi(P32, 5) == 3);
  for (long k = 0; k < 200; ++k) {
    const double x = 2.0 * static_cast<double>(k) / 3.0;
    const auto f = static_cast<double>(phi(P32, k));
    CHECK(f > x - 1.0);
    CHECK(f <= x);
  }
  const auto P = Presentation::bs(2, 1);
  CHECK(log_word_construct(P, 1).to_string() == "a");
  const auto w = log_word_construct(P, 1024);
  CHECK(britton_reduce(w * GroupWord::power(Generator::a, -1024), P).empty());
  CHECK(w.length() <= 3 * 10 + 5);
  for (int k = 1; k <= 20; ++k) {
    const BigInt n = BigInt(1) << k;
    const auto wk = log_word_construct(P, n);
    CHECK(equal_in_group(wk, GroupWord::power(Generator::a, n), P));
    CHECK(wk.length() == 2 * k + 1);
  }
  for (const auto& Q : {P, P32, Presentation::bs(5, 2), Presentation::bs(-3, -1)}) {
    CAPTURE(Q.name());
    for (long n = 1; n <= 600; ++n) {
      const auto wn = log_word_construct(Q, n);
      CHECK(equal_in_group(wn, GroupWord::power(Generator::a, n), Q));
      CHECK(wn.length() == construction_length(Q, n));
      CHECK(static_cast<double>(construction_length(Q, n)) <= construction_length_bound(Q, n));
    }
  }
  // Arbitrary precision: n = 3^60.
  const BigInt huge = boost::multiprecision::pow(BigInt(3), 60);
  CHECK(equal_in_group(log_word_construct(P32, huge), GroupWord::power(Generator::a, huge), P32));

  CHECK_THROWS_AS(log_word_construct(Presentation::bs(2, 3), 5), PreconditionError);
  CHECK_THROWS_AS(log_word_construct(Presentation::bs(3, -2), 5), PreconditionError);
  CHECK_THROWS_AS(log_word_construct(P, 0), PreconditionError);
}

TEST_CASE("distortion profile") {
  const auto P = Presentation::bs(2, 1);
  const auto full = distortion_profile(P, 64, 14);
  REQUIRE(full.entries.size() == 64);
  for (const auto& e : full.entries) {
    CAPTURE(e.n);
    CHECK(e.exact);
    CHECK(static_cast<double>(e.length) <= 2.0 * std::log2(static_cast<double>(e.n)) + 3.0);
    CHECK(e.length <= construction_length(P, e.n));
    CHECK(equal_in_group(GroupWord::parse(e.witness), GroupWord::power(Generator::a, e.n), P));
    CHECK(GroupWord::parse(e.witness).length() == e.length);
  }

  const auto r12 = distortion_profile(P, 64, 12);
  std::size_t exact = 0;
  for (std::size_t i = 0; i < r12.entries.size(); ++i) {
    const auto& e = r12.entries[i];
    exact += e.exact;
    CHECK(e.length >= full.entries[i].length);
    if (e.exact) CHECK(e.length == full.entries[i].length);
    if (i + 1 < r12.entries.size()) {
      CHECK(r12.entries[i + 1].length <= e.length + 1);
      CHECK(e.length <= r12.entries[i + 1].length + 1);
    }
  }
  CHECK(exact == 51);

  // Bounds only, n <= 2^20. The minimum ratio sits at n = 2^20 with length 2*20 + 1.
  const auto bounds = distortion_profile(P, 1L << 20, 0);
  CHECK(bounds.liminf_at == (1L << 20));
  CHECK(bounds.liminf_estimate == doctest::Approx(std::log(41.0) / std::log(1048576.0)).epsilon(1e-12));
  const auto shorter = distortion_profile(P, 1L << 10, 0);
  CHECK(bounds.liminf_estimate < shorter.liminf_estimate);
}
