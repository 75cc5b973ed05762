#include "mcoe/freegroup.hpp"

#include <algorithm>
#include <charconv>
#include <deque>

#include "mcoe/error.hpp"

namespace mcoe {

std::vector<Letter> letters(std::size_t rank) {
  std::vector<Letter> out;
  out.reserve(2 * rank);
  for (std::size_t c = 0; c < 2 * rank; ++c) out.push_back(Letter::from_code(c));
  return out;
}

Word Word::power(std::size_t generator, long exponent) {
  const Letter l = exponent >= 0 ? gen(generator) : gen_inv(generator);
  const auto count = static_cast<std::size_t>(exponent >= 0 ? exponent : -exponent);
  return Word(std::vector<Letter>(count, l), Trusted{});
}

Word Word::left_multiply(Letter l) const {
  if (!letters_.empty() && letters_.front() == l.inverse()) {
    return Word(std::vector<Letter>(letters_.begin() + 1, letters_.end()), Trusted{});
  }
  std::vector<Letter> out;
  out.reserve(letters_.size() + 1);
  out.push_back(l);
  out.insert(out.end(), letters_.begin(), letters_.end());
  return Word(std::move(out), Trusted{});
}

Word Word::right_multiply(Letter l) const {
  if (!letters_.empty() && letters_.back() == l.inverse()) {
    return Word(std::vector<Letter>(letters_.begin(), letters_.end() - 1), Trusted{});
  }
  auto out = letters_;
  out.push_back(l);
  return Word(std::move(out), Trusted{});
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
  if (auto c = a.length() <=> b.length(); c != 0) return c;
  for (std::size_t i = 0; i < a.length(); ++i) {
    if (auto c = a.letters_[i].code() <=> b.letters_[i].code(); c != 0) return c;
  }
  return std::strong_ordering::equal;
}

Word reduce(std::span<const Letter> sequence) {
  std::vector<Letter> stack;
  stack.reserve(sequence.size());
  for (auto l : sequence) {
    if (!stack.empty() && stack.back() == l.inverse()) {
      stack.pop_back();
    } else {
      stack.push_back(l);
    }
  }
  return Word(std::move(stack), Word::Trusted{});
}

Word multiply(const Word& lhs, const Word& rhs) {
  const auto& a = lhs.letters_;
  const auto& b = rhs.letters_;
  std::size_t cancel = 0;
  while (cancel < a.size() && cancel < b.size() && a[a.size() - 1 - cancel] == b[cancel].inverse()) {
    ++cancel;
  }
  std::vector<Letter> out;
  out.reserve(a.size() + b.size() - 2 * cancel);
  out.insert(out.end(), a.begin(), a.end() - static_cast<std::ptrdiff_t>(cancel));
  out.insert(out.end(), b.begin() + static_cast<std::ptrdiff_t>(cancel), b.end());
  return Word(std::move(out), Word::Trusted{});
}

Word inverse(const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.length());
  for (auto it = w.letters_.rbegin(); it != w.letters_.rend(); ++it) out.push_back(it->inverse());
  return Word(std::move(out), Word::Trusted{});
}

Word parent(const Word& g) {
  if (g.is_identity()) throw PreconditionFailed("parent of the identity is undefined");
  return Word(std::vector<Letter>(g.letters_.begin() + 1, g.letters_.end()), Word::Trusted{});
}

bool in_past(const Word& g, Letter s) { return !g.is_identity() && g.rightmost() == s; }

std::vector<Word> path_from_identity(const Word& g) {
  std::vector<Word> path;
  path.reserve(g.length() + 1);
  const auto& ls = g.letters();
  for (std::size_t k = 0; k <= ls.size(); ++k) {
    path.push_back(reduce(std::span(ls).subspan(ls.size() - k)));
  }
  return path;
}

std::string to_string(Letter l) {
  std::string out = "s" + std::to_string(l.generator + 1);
  if (l.sign < 0) out += "^-1";
  return out;
}

std::string to_string(const Word& w) {
  if (w.is_identity()) return "e";
  std::string out;
  for (std::size_t i = 0; i < w.length(); ++i) {
    if (i) out += '.';
    out += to_string(w.letters()[i]);
  }
  return out;
}

Letter parse_letter(std::string_view token) {
  auto fail = [&] { return InvalidInput("malformed word token '" + std::string(token) + "'"); };
  if (token.size() < 2 || token[0] != 's') throw fail();
  std::int8_t sign = 1;
  auto digits = token.substr(1);
  if (digits.ends_with("^-1")) {
    sign = -1;
    digits.remove_suffix(3);
  }
  if (digits.empty() || digits[0] == '0') throw fail();
  unsigned value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc{} || ptr != digits.data() + digits.size() || value == 0 || value > 65535) throw fail();
  return Letter{static_cast<std::uint16_t>(value - 1), sign};
}

Word parse_word(std::string_view text) {
  if (text == "e") return Word::identity();
  std::vector<Letter> seq;
  std::size_t start = 0;
  while (true) {
    const auto dot = text.find('.', start);
    seq.push_back(parse_letter(text.substr(start, dot == std::string_view::npos ? dot : dot - start)));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  Word w = reduce(seq);
  if (w.length() != seq.size()) throw InvalidInput("word '" + std::string(text) + "' is not reduced");
  return w;
}

LeftConnectedSet::LeftConnectedSet(std::set<Word> elements) : elements_(std::move(elements)) {
  if (!elements_.contains(Word::identity())) throw PreconditionFailed("left-connected set must contain e");
  if (!is_left_connected(elements_)) throw PreconditionFailed("set is not left-connected");
}

std::size_t ball_size(std::size_t rank, std::size_t radius) {
  // 1 + 2r * sum_{k<radius} (2r-1)^k
  std::size_t total = 1, layer = 2 * rank;
  for (std::size_t k = 0; k < radius; ++k) {
    total += layer;
    layer *= (2 * rank - 1);
  }
  return total;
}

std::vector<Word> ball_words(std::size_t rank, std::size_t radius, std::size_t budget) {
  if (rank == 0) throw InvalidInput("rank must be positive");
  if (ball_size(rank, radius) > budget) {
    throw BudgetExceeded("ball of radius " + std::to_string(radius) + " exceeds element budget");
  }
  std::vector<Word> out{Word::identity()};
  std::size_t layer_begin = 0;
  const auto all = letters(rank);
  for (std::size_t k = 0; k < radius; ++k) {
    const std::size_t layer_end = out.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      for (auto l : all) {
        // Extend on the right so each layer comes out in shortlex order.
        const Word& w = out[i];
        if (!w.is_identity() && w.rightmost() == l.inverse()) continue;
        out.push_back(w.right_multiply(l));
      }
    }
    layer_begin = layer_end;
  }
  std::sort(out.begin(), out.end());
  return out;
}

LeftConnectedSet ball(std::size_t rank, std::size_t radius, std::size_t budget) {
  auto words = ball_words(rank, radius, budget);
  return LeftConnectedSet(std::set<Word>(words.begin(), words.end()));
}

bool is_left_connected(const std::set<Word>& elements) {
  if (elements.empty()) return true;
  std::uint16_t max_gen = 0;
  for (const auto& w : elements) {
    for (auto l : w.letters()) max_gen = std::max(max_gen, l.generator);
  }
  const auto all = letters(max_gen + 1u);
  std::set<Word> seen{*elements.begin()};
  std::deque<Word> queue{*elements.begin()};
  while (!queue.empty()) {
    Word g = std::move(queue.front());
    queue.pop_front();
    // Neighbours s g: drop the leftmost letter, or prepend one.
    std::vector<Word> neighbours;
    if (!g.is_identity()) neighbours.push_back(parent(g));
    for (auto l : all) {
      if (!g.is_identity() && g.leftmost() == l.inverse()) continue;
      neighbours.push_back(g.left_multiply(l));
    }
    for (auto& n : neighbours) {
      if (elements.contains(n) && seen.insert(n).second) queue.push_back(std::move(n));
    }
  }
  return seen.size() == elements.size();
}

LeftConnectedSet left_connected_hull(std::span<const Word> words) {
  std::set<Word> out{Word::identity()};
  for (const auto& w : words) {
    for (auto& p : path_from_identity(w)) out.insert(std::move(p));
  }
  return LeftConnectedSet(std::move(out));
}

}  // namespace mcoe
