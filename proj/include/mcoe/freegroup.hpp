#pragma once

// Reduced words in the free group F_r = <s1, ..., sr>.
//
// Words are stored LEFTMOST LETTER FIRST. Configurations are indexed by group
// elements and the shift acts by (g.x)_f = x_{fg}, so the relevant tree is the
// left-Cayley graph with edges (g, s g). The parent of g in that tree (the next
// vertex on the geodesic to e) is g with its leftmost letter removed.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mcoe {

/// One element of S u S^{-1}: generator s_{index+1} raised to +1 or -1.
struct Letter {
  std::uint16_t generator = 0;
  std::int8_t sign = 1;

  /// Dense index 2*generator + (sign < 0); orders s1 < s1^-1 < s2 < ...
  constexpr std::size_t code() const { return 2u * generator + (sign < 0 ? 1u : 0u); }
  static constexpr Letter from_code(std::size_t code) {
    return Letter{static_cast<std::uint16_t>(code / 2), static_cast<std::int8_t>(code % 2 ? -1 : 1)};
  }
  constexpr Letter inverse() const { return Letter{generator, static_cast<std::int8_t>(-sign)}; }

  friend constexpr bool operator==(Letter a, Letter b) = default;
  friend constexpr auto operator<=>(Letter a, Letter b) { return a.code() <=> b.code(); }
};

constexpr Letter gen(std::size_t index) { return Letter{static_cast<std::uint16_t>(index), 1}; }
constexpr Letter gen_inv(std::size_t index) { return Letter{static_cast<std::uint16_t>(index), -1}; }

/// All 2r letters in code order.
std::vector<Letter> letters(std::size_t rank);

/// A reduced word. Immutable value type; carries no reference to the rank.
class Word {
 public:
  Word() = default;

  static Word identity() { return {}; }
  static Word letter(Letter l) { return Word(std::vector<Letter>{l}, Trusted{}); }
  /// s^n for a generator index (negative n gives inverse powers).
  static Word power(std::size_t generator, long exponent);

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool is_identity() const { return letters_.empty(); }
  Letter leftmost() const { return letters_.front(); }
  Letter rightmost() const { return letters_.back(); }

  /// l * this, reduced.
  Word left_multiply(Letter l) const;
  /// this * l, reduced.
  Word right_multiply(Letter l) const;

  /// Shortlex order (length first, then letter codes left to right).
  friend std::strong_ordering operator<=>(const Word& a, const Word& b);
  friend bool operator==(const Word& a, const Word& b) = default;

 private:
  struct Trusted {};
  Word(std::vector<Letter> letters, Trusted) : letters_(std::move(letters)) {}
  friend Word reduce(std::span<const Letter> sequence);
  friend Word multiply(const Word& lhs, const Word& rhs);
  friend Word inverse(const Word& w);
  friend Word parent(const Word& g);

  std::vector<Letter> letters_;
};

/// Free reduction of an arbitrary letter sequence.
Word reduce(std::span<const Letter> sequence);
Word multiply(const Word& lhs, const Word& rhs);
inline Word operator*(const Word& lhs, const Word& rhs) { return multiply(lhs, rhs); }
Word inverse(const Word& w);

/// sigma(g): the neighbour of g on the left-Cayley geodesic to e, i.e. g with
/// its leftmost letter removed. Throws PreconditionFailed for g = e.
Word parent(const Word& g);

/// g in past(s): the reduced word g ends in s.
bool in_past(const Word& g, Letter s);

/// Suffixes of g from e up to g itself (the left-Cayley path e -> g).
std::vector<Word> path_from_identity(const Word& g);

/// "s2.s1^-1" style text; "e" for the identity.
std::string to_string(Letter l);
std::string to_string(const Word& w);
Letter parse_letter(std::string_view token);
Word parse_word(std::string_view text);

/// Finite set of words containing e whose induced subgraph in the
/// left-Cayley graph is connected.
class LeftConnectedSet {
 public:
  /// Throws PreconditionFailed unless e is present and the set is connected.
  explicit LeftConnectedSet(std::set<Word> elements);

  const std::set<Word>& elements() const { return elements_; }
  bool contains(const Word& g) const { return elements_.contains(g); }
  std::size_t size() const { return elements_.size(); }
  /// Elements in shortlex order; every element appears after its parent.
  std::vector<Word> ordered() const { return {elements_.begin(), elements_.end()}; }

 private:
  std::set<Word> elements_;
};

inline constexpr std::size_t kDefaultBallBudget = 2'000'000;

/// Closed ball of the given radius around e. Throws BudgetExceeded when it
/// would hold more than `budget` elements.
LeftConnectedSet ball(std::size_t rank, std::size_t radius, std::size_t budget = kDefaultBallBudget);

/// Same elements as `ball` in shortlex order.
std::vector<Word> ball_words(std::size_t rank, std::size_t radius, std::size_t budget = kDefaultBallBudget);

/// 1 + 2r((2r-1)^radius - 1)/(2r - 2).
std::size_t ball_size(std::size_t rank, std::size_t radius);

/// Connectivity under g ~ s g for s in S u S^{-1}.
bool is_left_connected(const std::set<Word>& elements);

/// Smallest left-connected set containing e and every given word: the union
/// of all their suffixes.
LeftConnectedSet left_connected_hull(std::span<const Word> words);

}  // namespace mcoe

template <>
struct std::hash<mcoe::Word> {
  std::size_t operator()(const mcoe::Word& w) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (auto l : w.letters()) h = (h ^ l.code()) * 0x100000001b3ull;
    return h ^ w.length();
  }
};
