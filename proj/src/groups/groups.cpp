#include "symgrowth/groups.hpp"

#include "symgrowth/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <unordered_map>

namespace symgrowth {

namespace {

BigInt abs_big(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

// Floor division and the matching remainder in [0, |m|).
void floor_divmod(const BigInt& x, const BigInt& m, BigInt& quot, BigInt& rem) {
  const BigInt am = abs_big(m);
  rem = x % am;
  if (rem < 0) rem += am;
  quot = (x - rem) / am;
  if (m < 0) quot = -quot;
}

// Reduces (q, p) with both negative to (-q, -p); the relation is unchanged.
Presentation positive_form(const Presentation& P) {
  if (P.q < 0 && P.p < 0) return {-P.q, -P.p};
  return P;
}

void require_log_case(const Presentation& P) {
  const auto Q = positive_form(P);
  if (!(Q.q > Q.p && Q.p > 0))
    throw PreconditionError(fmt::format("logarithmic construction needs q > p > 0, got {}", P.name()));
}

}  // namespace

Presentation Presentation::bs(long q, long p) {
  if (q == 0 || p == 0) throw PreconditionError(fmt::format("BS({}, {}): q and p must be nonzero", q, p));
  return {q, p};
}

std::string Presentation::name() const { return fmt::format("BS({},{})", q, p); }

// ---- words --------------------------------------------------------------------

GroupWord GroupWord::power(Generator g, const BigInt& e) {
  GroupWord w;
  w.append(g, e);
  return w;
}

GroupWord& GroupWord::append(Generator g, const BigInt& e) {
  if (e == 0) return *this;
  if (!blocks_.empty() && blocks_.back().gen == g) {
    blocks_.back().exp += e;
    if (blocks_.back().exp == 0) blocks_.pop_back();
  } else {
    blocks_.push_back({g, e});
  }
  return *this;
}

GroupWord& GroupWord::append(const GroupWord& w) {
  for (const auto& blk : w.blocks_) append(blk.gen, blk.exp);
  return *this;
}

GroupWord GroupWord::operator*(const GroupWord& w) const {
  GroupWord r = *this;
  r.append(w);
  return r;
}

GroupWord GroupWord::inverse() const {
  GroupWord r;
  for (auto it = blocks_.rbegin(); it != blocks_.rend(); ++it) r.blocks_.push_back({it->gen, -it->exp});
  return r;
}

BigInt GroupWord::length() const {
  BigInt n = 0;
  for (const auto& blk : blocks_) n += abs_big(blk.exp);
  return n;
}

std::string GroupWord::to_string() const {
  if (blocks_.empty()) return "1";
  std::string out;
  for (const auto& blk : blocks_) {
    if (!out.empty()) out += ' ';
    out += static_cast<char>(blk.gen);
    if (blk.exp != 1) out += "^" + blk.exp.str();
  }
  return out;
}

GroupWord GroupWord::parse(const std::string& text) {
  GroupWord w;
  std::size_t i = 0;
  const auto bad = [&](const std::string& why) {
    return PreconditionError(fmt::format("cannot parse word '{}' at {}: {}", text, i, why));
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == '*' || c == '.') {
      ++i;
      continue;
    }
    if (c == '1' && w.empty() && text.find_first_not_of(" 1", i) == std::string::npos) break;
    Generator g;
    BigInt e = 1;
    switch (c) {
      case 'a': g = Generator::a; break;
      case 'b': g = Generator::b; break;
      case 'A': g = Generator::a; e = -1; break;
      case 'B': g = Generator::b; e = -1; break;
      default: throw bad("expected a, b, A or B");
    }
    ++i;
    if (i < text.size() && text[i] == '^') {
      ++i;
      bool neg = false;
      if (i < text.size() && (text[i] == '-' || text[i] == '+')) neg = text[i++] == '-';
      const std::size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (i == start) throw bad("expected an exponent");
      BigInt k(text.substr(start, i - start));
      e *= neg ? BigInt(-k) : k;
    }
    w.append(g, e);
  }
  return w;
}

// ---- reduction ----------------------------------------------------------------

namespace {

void append_block(std::vector<Block>& bl, Generator g, const BigInt& e) {
  if (e == 0) return;
  if (!bl.empty() && bl.back().gen == g) {
    bl.back().exp += e;
    if (bl.back().exp == 0) bl.pop_back();
  } else {
    bl.push_back({g, e});
  }
}

// Pushes a single b^eps onto a pinch-free stack, pinching if possible.
void push_b(std::vector<Block>& bl, int eps, const Presentation& P) {
  const bool has_a = !bl.empty() && bl.back().gen == Generator::a;
  const std::ptrdiff_t bi = static_cast<std::ptrdiff_t>(bl.size()) - (has_a ? 2 : 1);
  if (bi >= 0 && (bl[static_cast<std::size_t>(bi)].exp > 0) == (eps < 0)) {
    const BigInt m = has_a ? bl.back().exp : BigInt(0);
    // b a^m b^-1 needs p | m; b^-1 a^m b needs q | m.
    const long divisor = eps < 0 ? P.p : P.q;
    if (m % divisor == 0) {
      const BigInt replacement = eps < 0 ? BigInt(m / P.p * P.q) : BigInt(m / P.q * P.p);
      if (has_a) bl.pop_back();
      append_block(bl, Generator::b, BigInt(eps));
      append_block(bl, Generator::a, replacement);
      return;
    }
  }
  append_block(bl, Generator::b, BigInt(eps));
}

}  // namespace

GroupWord britton_reduce(const GroupWord& w, const Presentation& P) {
  std::vector<Block> stack;
  for (const auto& blk : w.blocks()) {
    if (blk.gen == Generator::a) {
      append_block(stack, Generator::a, blk.exp);
      continue;
    }
    const int eps = blk.exp > 0 ? 1 : -1;
    for (BigInt k = abs_big(blk.exp); k > 0; --k) push_b(stack, eps, P);
  }
  GroupWord out;
  for (const auto& blk : stack) out.append(blk.gen, blk.exp);
  return out;
}

GroupWord normal_form(const GroupWord& w, const Presentation& P) {
  const GroupWord r = britton_reduce(w, P);
  // k0 b^e1 k1 ... b^en kn
  std::vector<int> eps;
  std::vector<BigInt> ks(1, BigInt(0));
  for (const auto& blk : r.blocks()) {
    if (blk.gen == Generator::a) {
      ks.back() += blk.exp;
      continue;
    }
    const int e = blk.exp > 0 ? 1 : -1;
    for (BigInt k = abs_big(blk.exp); k > 0; --k) {
      eps.push_back(e);
      ks.emplace_back(0);
    }
  }
  BigInt quot, rem;
  for (std::size_t i = eps.size(); i >= 1; --i) {
    const bool up = eps[i - 1] > 0;
    floor_divmod(ks[i], BigInt(up ? P.p : P.q), quot, rem);
    ks[i] = rem;
    ks[i - 1] += quot * (up ? P.q : P.p);
  }
  GroupWord out;
  out.append(Generator::a, ks[0]);
  for (std::size_t i = 0; i < eps.size(); ++i) {
    out.append(Generator::b, eps[i]);
    out.append(Generator::a, ks[i + 1]);
  }
  return out;
}

bool equal_in_group(const GroupWord& u, const GroupWord& v, const Presentation& P) {
  return britton_reduce(u * v.inverse(), P).empty();
}

// ---- Cayley ball ----------------------------------------------------------------

namespace {

// Normal form as machine integers: [k0, e1, k1, ..., en, kn].
using State = std::vector<std::int64_t>;

std::int64_t checked_mul_add(std::int64_t acc, std::int64_t a, std::int64_t b) {
  std::int64_t prod, sum;
  if (__builtin_mul_overflow(a, b, &prod) || __builtin_add_overflow(acc, prod, &sum))
    throw RangeError("Cayley ball exponent overflow");
  return sum;
}

// Restores the exponent ranges right to left after the last exponent changed.
void carry(State& s, const Presentation& P) {
  for (std::size_t i = s.size() - 1; i >= 2; i -= 2) {
    const bool up = s[i - 1] > 0;
    const std::int64_t m = std::abs(up ? P.p : P.q);
    std::int64_t r = s[i] % m;
    if (r < 0) r += m;
    if (r == s[i]) return;
    std::int64_t j = (s[i] - r) / m;
    if ((up ? P.p : P.q) < 0) j = -j;
    s[i] = r;
    s[i - 2] = checked_mul_add(s[i - 2], j, up ? P.q : P.p);
  }
}

void multiply_a(State& s, int sign, const Presentation& P) {
  s.back() += sign;
  if (s.size() > 1) carry(s, P);
}

void multiply_b(State& s, int eps) {
  const std::size_t n = s.size();
  if (n >= 3 && s[n - 2] == -eps && s[n - 1] == 0) {
    s.resize(n - 2);
    return;
  }
  s.push_back(eps);
  s.push_back(0);
}

std::string encode(const State& s) {
  std::string key;
  key.reserve(s.size() * 2);
  for (const std::int64_t v : s) {
    auto z = (static_cast<std::uint64_t>(v) << 1) ^ static_cast<std::uint64_t>(v >> 63);
    do {
      const auto byte = static_cast<unsigned char>(z & 0x7f);
      z >>= 7;
      key.push_back(static_cast<char>(z ? byte | 0x80 : byte));
    } while (z);
  }
  return key;
}

std::optional<State> to_state(const GroupWord& w, const Presentation& P) {
  const GroupWord nf = normal_form(w, P);
  State s(1, 0);
  const BigInt lim = std::numeric_limits<std::int64_t>::max();
  for (const auto& blk : nf.blocks()) {
    if (blk.gen == Generator::a) {
      if (abs_big(blk.exp) > lim) return std::nullopt;
      s.back() = static_cast<std::int64_t>(blk.exp);
      continue;
    }
    const int e = blk.exp > 0 ? 1 : -1;
    for (BigInt k = abs_big(blk.exp); k > 0; --k) {
      s.push_back(e);
      s.push_back(0);
    }
  }
  return s;
}

// Generator moves: a, a^-1, b, b^-1.
constexpr char kMoves[4] = {'a', 'A', 'b', 'B'};

}  // namespace

struct CayleyBall::Impl {
  Presentation P;
  int requested = 0;
  int covered = 0;
  bool truncated = false;
  std::unordered_map<std::string, std::uint32_t> index;
  std::vector<std::uint32_t> parent;
  std::vector<char> move;
  std::vector<std::uint8_t> depth;

  std::optional<std::uint32_t> find(const GroupWord& g) const {
    const auto s = to_state(g, P);
    if (!s) return std::nullopt;
    const auto it = index.find(encode(*s));
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
};

CayleyBall::CayleyBall(const Presentation& P, int radius, std::size_t max_nodes) : impl_(std::make_unique<Impl>()) {
  if (radius < 0 || radius > 255) throw PreconditionError("Cayley ball radius must lie in [0, 255]");
  auto& d = *impl_;
  d.P = Presentation::bs(P.q, P.p);
  d.requested = radius;
  std::vector<std::pair<std::uint32_t, State>> frontier{{0, State(1, 0)}};
  d.index.emplace(encode(frontier[0].second), 0);
  d.parent.push_back(0);
  d.move.push_back(0);
  d.depth.push_back(0);
  for (int level = 1; level <= radius; ++level) {
    // Each new node has at most 3 fresh neighbours; stop before the level if it could overflow the cap.
    if (d.parent.size() + 3 * frontier.size() > max_nodes) {
      d.truncated = true;
      break;
    }
    std::vector<std::pair<std::uint32_t, State>> next;
    next.reserve(frontier.size() * 3);
    for (const auto& [id, state] : frontier) {
      for (const char m : kMoves) {
        State s = state;
        switch (m) {
          case 'a': multiply_a(s, 1, d.P); break;
          case 'A': multiply_a(s, -1, d.P); break;
          case 'b': multiply_b(s, 1); break;
          default: multiply_b(s, -1); break;
        }
        const auto [it, fresh] = d.index.emplace(encode(s), static_cast<std::uint32_t>(d.parent.size()));
        if (!fresh) continue;
        d.parent.push_back(id);
        d.move.push_back(m);
        d.depth.push_back(static_cast<std::uint8_t>(level));
        next.emplace_back(it->second, std::move(s));
      }
    }
    frontier = std::move(next);
    d.covered = level;
  }
}

CayleyBall::~CayleyBall() = default;
CayleyBall::CayleyBall(CayleyBall&&) noexcept = default;
CayleyBall& CayleyBall::operator=(CayleyBall&&) noexcept = default;

const Presentation& CayleyBall::presentation() const { return impl_->P; }
int CayleyBall::requested_radius() const { return impl_->requested; }
int CayleyBall::radius() const { return impl_->covered; }
bool CayleyBall::truncated() const { return impl_->truncated; }
std::size_t CayleyBall::size() const { return impl_->parent.size(); }

std::optional<int> CayleyBall::length(const GroupWord& g) const {
  const auto id = impl_->find(g);
  if (!id) return std::nullopt;
  return impl_->depth[*id];
}

std::optional<int> CayleyBall::power_length(long n) const {
  const auto it = impl_->index.find(encode(State(1, n)));
  if (it == impl_->index.end()) return std::nullopt;
  return impl_->depth[it->second];
}

GroupWord CayleyBall::witness(const GroupWord& g) const {
  const auto id = impl_->find(g);
  if (!id) throw PreconditionError(fmt::format("{} lies outside the radius-{} ball", g.to_string(), radius()));
  std::string moves;
  for (std::uint32_t v = *id; v != 0; v = impl_->parent[v]) moves.push_back(impl_->move[v]);
  std::reverse(moves.begin(), moves.end());
  return GroupWord::parse(moves);
}

WordLengthResult word_length_bfs(const Presentation& P, const GroupWord& target, int radius, std::size_t max_nodes) {
  WordLengthResult res;
  const CayleyBall ball(P, radius, max_nodes);
  res.radius = ball.radius();
  res.truncated = ball.truncated();
  res.ball_size = ball.size();
  if (const auto len = ball.length(target)) {
    res.found = true;
    res.length = *len;
    res.witness = ball.witness(target);
  }
  return res;
}

// ---- construction -----------------------------------------------------------------

BigInt phi(const Presentation& P, const BigInt& k) {
  const auto Q = positive_form(P);
  if (Q.q <= 0) throw PreconditionError("phi needs q > 0");
  BigInt quot, rem;
  floor_divmod(BigInt(Q.p) * k, BigInt(Q.q), quot, rem);
  return quot;
}

GroupWord log_word_construct(const Presentation& P, const BigInt& n) {
  require_log_case(P);
  if (n < 1) throw PreconditionError("log_word_construct needs n >= 1");
  const auto Q = positive_form(P);
  // Unrolled recursion: prefix b^d, then the innermost a^m, then the tails b^-1 a^j.
  std::vector<BigInt> tails;
  BigInt m = n;
  while (m >= Q.q) {
    const BigInt k = m / Q.q;
    tails.push_back(m % Q.q);
    // a^{qk} = b a^{pk} b^-1, and p k = q phi(k) + i_k.
    m = BigInt(Q.p) * k;
  }
  GroupWord w;
  w.append(Generator::b, BigInt(tails.size()));
  w.append(Generator::a, m);
  for (auto it = tails.rbegin(); it != tails.rend(); ++it) {
    w.append(Generator::b, -1);
    w.append(Generator::a, *it);
  }
  return w;
}

long construction_length(const Presentation& P, long n) {
  require_log_case(P);
  if (n < 1) throw PreconditionError("construction_length needs n >= 1");
  const auto Q = positive_form(P);
  long len = 0;
  long m = n;
  while (m >= Q.q) {
    len += 2 + m % Q.q;
    m = Q.p * (m / Q.q);
  }
  return len + m;
}

double construction_length_bound(const Presentation& P, long n) {
  require_log_case(P);
  const auto Q = positive_form(P);
  const double levels = std::log(static_cast<double>(n) + 1.0) / std::log(static_cast<double>(Q.q) / Q.p) + 1.0;
  return static_cast<double>(Q.q + 1) * levels + static_cast<double>(Q.q - 1);
}

// ---- distortion -------------------------------------------------------------------

DistortionProfile distortion_profile(const Presentation& P, long n_max, int bfs_radius, std::size_t max_nodes) {
  if (n_max < 1) throw PreconditionError("distortion_profile needs n_max >= 1");
  DistortionProfile prof;
  prof.presentation = Presentation::bs(P.q, P.p);
  std::optional<CayleyBall> ball;
  if (bfs_radius > 0) {
    ball.emplace(P, bfs_radius, max_nodes);
    prof.bfs_radius = ball->radius();
    prof.ball_size = ball->size();
    prof.truncated = ball->truncated();
  }
  const auto Q = positive_form(P);
  const bool constructible = Q.q > Q.p && Q.p > 0;
  prof.entries.resize(static_cast<std::size_t>(n_max));
  for (long n = 1; n <= n_max; ++n) {
    auto& e = prof.entries[static_cast<std::size_t>(n - 1)];
    e.n = n;
    if (ball) {
      if (const auto len = ball->power_length(n)) {
        e.length = *len;
        e.exact = true;
        e.witness = ball->witness(GroupWord::power(Generator::a, n)).to_string();
        continue;
      }
    }
    e.length = constructible ? std::min(n, construction_length(P, n)) : n;
  }
  // |len(n + 1) - len(n)| <= 1 tightens bounds from their neighbours.
  auto& es = prof.entries;
  for (std::size_t i = 1; i < es.size(); ++i)
    if (!es[i].exact) es[i].length = std::min(es[i].length, es[i - 1].length + 1);
  for (std::size_t i = es.size() - 1; i-- > 0;)
    if (!es[i].exact) es[i].length = std::min(es[i].length, es[i + 1].length + 1);

  prof.liminf_estimate = std::numeric_limits<double>::infinity();
  for (const auto& e : es) {
    if (e.n < 16) continue;
    const double ratio = std::log(static_cast<double>(e.length)) / std::log(static_cast<double>(e.n));
    if (ratio < prof.liminf_estimate) {
      prof.liminf_estimate = ratio;
      prof.liminf_at = e.n;
    }
  }
  if (prof.liminf_at == 0) prof.liminf_estimate = std::nan("");
  return prof;
}

}  // namespace symgrowth
