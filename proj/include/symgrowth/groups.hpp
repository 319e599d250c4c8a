#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace symgrowth {

using BigInt = boost::multiprecision::cpp_int;

/// BS(q, p) = <a, b | a^q = b a^p b^-1>, q and p nonzero.
struct Presentation {
  long q = 2;
  long p = 1;

  /// Throws PreconditionError for q == 0 or p == 0.
  static Presentation bs(long q, long p);
  std::string name() const;
};

enum class Generator : char { a = 'a', b = 'b' };

struct Block {
  Generator gen;
  BigInt exp;
  bool operator==(const Block&) const = default;
};

/// Run-length word over {a, b}: exponents nonzero, adjacent generators distinct.
class GroupWord {
 public:
  GroupWord() = default;
  static GroupWord power(Generator g, const BigInt& e);
  /// Tokens `a`, `b`, `A` (= a^-1), `B`, `a^k`, `b^k`, separated by optional
  /// spaces; "1" or "" is the empty word. PreconditionError on bad input.
  static GroupWord parse(const std::string& text);

  /// Appends g^e, merging with the last block and dropping it at zero.
  GroupWord& append(Generator g, const BigInt& e);
  GroupWord& append(const GroupWord& w);
  GroupWord operator*(const GroupWord& w) const;
  GroupWord inverse() const;

  const std::vector<Block>& blocks() const { return blocks_; }
  bool empty() const { return blocks_.empty(); }
  /// Number of letters, sum of |exponents|.
  BigInt length() const;
  std::string to_string() const;
  bool operator==(const GroupWord&) const = default;

 private:
  std::vector<Block> blocks_;
};

/// Pinch-free form: fixpoint of free cancellation and the rewrites
/// b a^{pk} b^-1 -> a^{qk}, b^-1 a^{qk} b -> a^{pk}.
/// By Britton's lemma, w is trivial iff its reduction is empty.
GroupWord britton_reduce(const GroupWord& w, const Presentation& P);

/// Unique representative: the reduction with every a-exponent after a b
/// taken in [0, |p|) and after a b^-1 in [0, |q|), surplus pushed left via
/// b a^{pj} = a^{qj} b and b^-1 a^{qj} = a^{pj} b^-1.
GroupWord normal_form(const GroupWord& w, const Presentation& P);

bool equal_in_group(const GroupWord& u, const GroupWord& v, const Presentation& P);

// ---- Cayley balls -----------------------------------------------------------

/// Breadth-first ball around the identity, states deduplicated by normal form.
/// Levels are expanded whole, so lengths do not depend on visiting order.
/// Growth stops at the last complete level once `max_nodes` would be exceeded.
class CayleyBall {
 public:
  CayleyBall(const Presentation& P, int radius, std::size_t max_nodes = 20'000'000);
  ~CayleyBall();
  CayleyBall(CayleyBall&&) noexcept;
  CayleyBall& operator=(CayleyBall&&) noexcept;

  const Presentation& presentation() const;
  int requested_radius() const;
  /// Radius actually covered (< requested only when truncated).
  int radius() const;
  bool truncated() const;
  std::size_t size() const;

  /// Exact word length if the element lies in the ball.
  std::optional<int> length(const GroupWord& g) const;
  std::optional<int> power_length(long n) const;  // ||a^n||
  /// A shortest word for g; PreconditionError if g is outside the ball.
  GroupWord witness(const GroupWord& g) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct WordLengthResult {
  bool found = false;  // false: the length exceeds `radius`
  int length = -1;
  int radius = 0;      // radius searched
  bool truncated = false;
  std::size_t ball_size = 0;
  GroupWord witness;
};

/// Exact length of `target`, or found = false ("exceeds R").
WordLengthResult word_length_bfs(const Presentation& P, const GroupWord& target, int radius,
                                 std::size_t max_nodes = 20'000'000);

// ---- logarithmic construction -----------------------------------------------

/// The integer in (p k / q - 1, p k / q].
BigInt phi(const Presentation& P, const BigInt& k);

/// Word for a^n: a^n for n < q, otherwise n = q k + j and
/// a^n = b W(p k) b^-1 a^j with p k = q phi(k) + i_k recursing.
/// Requires q > p > 0 after the sign change (q, p) -> (-q, -p) (same group),
/// and n >= 1; PreconditionError otherwise.
GroupWord log_word_construct(const Presentation& P, const BigInt& n);

/// Length of log_word_construct(P, n) without building the word.
long construction_length(const Presentation& P, long n);

/// (q + 1) (log(n + 1) / log(q / p) + 1) + q - 1: each recursion level adds at
/// most q + 1 letters and shrinks n by p / q; the tail a^m, m < q, adds q - 1.
double construction_length_bound(const Presentation& P, long n);

// ---- distortion ---------------------------------------------------------------

struct DistortionEntry {
  long n = 0;
  long length = 0;
  bool exact = false;    // BFS length; otherwise an upper bound
  std::string witness;   // shortest word, exact entries only
};

struct DistortionProfile {
  Presentation presentation;
  int bfs_radius = 0;
  std::size_t ball_size = 0;
  bool truncated = false;
  std::vector<DistortionEntry> entries;  // n = 1 .. n_max
  /// Estimate of liminf log||a^n|| / log n: min over n >= 16 of the ratio.
  double liminf_estimate = 0.0;
  long liminf_at = 0;
};

/// ||a^n|| for n <= n_max: exact inside the Cayley ball, otherwise the best of
/// the construction, the plain word a^n and neighbours (||a^{n +- 1}|| + 1).
/// bfs_radius = 0 gives bounds only.
DistortionProfile distortion_profile(const Presentation& P, long n_max, int bfs_radius,
                                     std::size_t max_nodes = 20'000'000);

}  // namespace symgrowth
