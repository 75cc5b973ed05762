#include "mcoe/chainspec.hpp"

#include <algorithm>
#include <set>

#include "mcoe/error.hpp"

namespace mcoe {

Matrix::Matrix(std::initializer_list<std::initializer_list<Rational>> rows) : n_(rows.size()) {
  data_.reserve(n_ * n_);
  for (const auto& row : rows) {
    if (row.size() != n_) throw InvalidInput("matrix literal is not square");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

std::vector<Rational> left_multiply(const std::vector<Rational>& row, const Matrix& m) {
  if (row.size() != m.size()) throw InvalidInput("vector/matrix size mismatch");
  std::vector<Rational> out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (row[i] == 0) continue;
    for (std::size_t j = 0; j < m.size(); ++j) out[j] += row[i] * m(i, j);
  }
  return out;
}

Symbol MarkovSpec::symbol(const std::string& name) const {
  auto it = std::find(alphabet.begin(), alphabet.end(), name);
  if (it == alphabet.end()) throw InvalidInput("unknown symbol '" + name + "'");
  return static_cast<Symbol>(it - alphabet.begin());
}

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::rank_too_small: return "rank_too_small";
    case ViolationKind::empty_alphabet: return "empty_alphabet";
    case ViolationKind::duplicate_symbol: return "duplicate_symbol";
    case ViolationKind::dimension_mismatch: return "dimension_mismatch";
    case ViolationKind::negative_entry: return "negative_entry";
    case ViolationKind::zero_mass: return "zero_mass";
    case ViolationKind::pi_not_normalized: return "pi_not_normalized";
    case ViolationKind::row_not_stochastic: return "row_not_stochastic";
    case ViolationKind::not_stationary: return "not_stationary";
  }
  return "unknown";
}

ValidationReport validate(const MarkovSpec& spec) {
  ValidationReport report;
  auto add = [&](ViolationKind kind, std::optional<std::size_t> gen, std::optional<std::size_t> row,
                 std::string detail) {
    report.violations.push_back({kind, gen, row, std::move(detail)});
  };

  const std::size_t n = spec.alphabet.size();
  if (spec.rank() < 2) add(ViolationKind::rank_too_small, {}, {}, "need at least two generators");
  if (n == 0) add(ViolationKind::empty_alphabet, {}, {}, "alphabet is empty");
  std::set<std::string> names(spec.alphabet.begin(), spec.alphabet.end());
  if (names.size() != n) add(ViolationKind::duplicate_symbol, {}, {}, "alphabet has repeated symbols");
  if (spec.pi.size() != n) {
    add(ViolationKind::dimension_mismatch, {}, {}, "pi has wrong length");
    return report;
  }

  Rational total = 0;
  for (std::size_t a = 0; a < n; ++a) {
    if (spec.pi[a] <= 0) add(ViolationKind::zero_mass, {}, a, "pi(" + spec.alphabet[a] + ") = " + to_string(spec.pi[a]));
    total += spec.pi[a];
  }
  if (total != 1) add(ViolationKind::pi_not_normalized, {}, {}, "sum of pi = " + to_string(total));

  for (std::size_t s = 0; s < spec.rank(); ++s) {
    const Matrix& p = spec.kernels[s];
    if (p.size() != n) {
      add(ViolationKind::dimension_mismatch, s, {}, "kernel has wrong size");
      continue;
    }
    for (std::size_t a = 0; a < n; ++a) {
      Rational row = 0;
      for (std::size_t b = 0; b < n; ++b) {
        if (p(a, b) < 0) add(ViolationKind::negative_entry, s, a, "entry (" + std::to_string(a) + "," + std::to_string(b) + ") is negative");
        row += p(a, b);
      }
      if (row != 1) add(ViolationKind::row_not_stochastic, s, a, "row sums to " + to_string(row));
    }
    const auto image = left_multiply(spec.pi, p);
    for (std::size_t b = 0; b < n; ++b) {
      if (image[b] != spec.pi[b]) {
        add(ViolationKind::not_stationary, s, {}, "(pi P)(" + spec.alphabet[b] + ") = " + to_string(image[b]) +
                                                      " != " + to_string(spec.pi[b]));
        break;
      }
    }
  }
  return report;
}

void require_valid(const MarkovSpec& spec) {
  const auto report = validate(spec);
  if (!report.ok()) {
    const auto& v = report.violations.front();
    throw PreconditionFailed("invalid chain spec: " + to_string(v.kind) + ": " + v.detail);
  }
}

Matrix reverse_kernel(const MarkovSpec& spec, std::size_t generator) {
  if (generator >= spec.rank()) throw InvalidInput("unknown generator");
  const Matrix& p = spec.kernels[generator];
  const std::size_t n = spec.alphabet_size();
  Matrix r(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) r(a, b) = spec.pi[b] * p(b, a) / spec.pi[a];
  }
  return r;
}

LetterKernels::LetterKernels(const MarkovSpec& spec) : pi_(spec.pi) {
  kernels_.reserve(2 * spec.rank());
  for (std::size_t s = 0; s < spec.rank(); ++s) {
    kernels_.push_back(spec.kernels[s]);
    kernels_.push_back(reverse_kernel(spec, s));
  }
}

Symbol Configuration::at(const Word& g) const {
  auto it = values_.find(g);
  if (it == values_.end()) throw InsufficientDomain("configuration is undefined at " + to_string(g));
  return it->second;
}

std::set<Word> Configuration::domain() const {
  std::set<Word> out;
  for (const auto& [g, a] : values_) out.insert(g);
  return out;
}

CoordinateReader Configuration::reader() const {
  return [this](const Word& g) { return at(g); };
}

Rational cylinder_measure(const LetterKernels& kernels, const Configuration& phi) {
  if (!phi.contains(Word::identity())) throw PreconditionFailed("cylinder domain must contain e");
  if (!is_left_connected(phi.domain())) throw PreconditionFailed("cylinder domain is not left-connected");
  Rational measure = 0;
  for (const auto& [g, a] : phi.values()) {
    if (a >= kernels.alphabet_size()) throw InvalidInput("symbol index out of range");
    if (g.is_identity()) {
      measure = kernels.pi()[a];
    } else {
      measure *= kernels[g.leftmost()](phi.at(parent(g)), a);
    }
    if (measure == 0) return measure;
  }
  return measure;
}

Rational cylinder_measure(const MarkovSpec& spec, const Configuration& phi) {
  return cylinder_measure(LetterKernels(spec), phi);
}

ZKernel restriction(const MarkovSpec& spec, std::size_t generator) {
  if (generator >= spec.rank()) throw InvalidInput("unknown generator s" + std::to_string(generator + 1));
  return ZKernel{spec.pi, spec.kernels[generator]};
}

MarkovSpec assemble(std::vector<std::string> alphabet, const std::vector<ZKernel>& restrictions) {
  if (restrictions.empty()) throw PreconditionFailed("no restrictions to assemble");
  MarkovSpec spec{std::move(alphabet), restrictions.front().pi, {}};
  for (const auto& nu : restrictions) {
    if (nu.pi.size() != spec.alphabet.size() || nu.transition.size() != spec.alphabet.size()) {
      throw PreconditionFailed("restriction alphabet size mismatch");
    }
    if (nu.pi != spec.pi) throw PreconditionFailed("restrictions have different stationary distributions");
    spec.kernels.push_back(nu.transition);
  }
  return spec;
}

Matrix bernoulli_kernel(const std::vector<Rational>& pi) {
  Matrix m(pi.size());
  for (std::size_t a = 0; a < pi.size(); ++a) {
    for (std::size_t b = 0; b < pi.size(); ++b) m(a, b) = pi[b];
  }
  return m;
}

MarkovSpec bernoulli_spec(std::vector<std::string> alphabet, std::vector<Rational> pi, std::size_t rank) {
  Rational total = 0;
  for (const auto& p : pi) {
    if (p <= 0) throw PreconditionFailed("bernoulli marginal has a zero-mass symbol");
    total += p;
  }
  if (total != 1) throw PreconditionFailed("bernoulli marginal does not sum to 1");
  if (alphabet.size() != pi.size()) throw PreconditionFailed("alphabet and marginal sizes differ");
  MarkovSpec spec{std::move(alphabet), std::move(pi), {}};
  spec.kernels.assign(rank, bernoulli_kernel(spec.pi));
  return spec;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

double unit_interval(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

void build_cumulative(const std::vector<Rational>& row, std::vector<double>& cumulative, std::vector<Symbol>& support) {
  double acc = 0;
  for (std::size_t b = 0; b < row.size(); ++b) {
    if (row[b] <= 0) continue;
    acc += to_double(row[b]);
    cumulative.push_back(acc);
    support.push_back(static_cast<Symbol>(b));
  }
}

}  // namespace

std::uint64_t keyed_random(std::uint64_t seed, const Word& g) {
  std::uint64_t h = splitmix64(seed ^ 0x6a09e667f3bcc909ull);
  for (auto l : g.letters()) h = splitmix64(h ^ (l.code() + 1));
  return splitmix64(h ^ (g.length() << 32));
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x3c6ef372fe94f82bull));
}

LazySample::LazySample(const MarkovSpec& spec, std::uint64_t seed) : seed_(seed) {
  require_valid(spec);
  const LetterKernels kernels(spec);
  build_cumulative(spec.pi, pi_cumulative_, pi_support_);
  const std::size_t n = spec.alphabet_size();
  cumulative_.resize(2 * spec.rank());
  support_.resize(2 * spec.rank());
  for (std::size_t code = 0; code < 2 * spec.rank(); ++code) {
    const Matrix& k = kernels[Letter::from_code(code)];
    cumulative_[code].resize(n);
    support_[code].resize(n);
    for (std::size_t a = 0; a < n; ++a) {
      std::vector<Rational> row(n);
      for (std::size_t b = 0; b < n; ++b) row[b] = k(a, b);
      build_cumulative(row, cumulative_[code][a], support_[code][a]);
    }
  }
}

Symbol LazySample::draw(const std::vector<double>& cumulative, const std::vector<Symbol>& support,
                        const Word& g) const {
  const double u = unit_interval(keyed_random(seed_, g)) * cumulative.back();
  for (std::size_t i = 0; i + 1 < cumulative.size(); ++i) {
    if (u < cumulative[i]) return support[i];
  }
  return support.back();
}

Symbol LazySample::at(const Word& g) const {
  if (auto it = memo_.find(g); it != memo_.end()) return it->second;
  Symbol value;
  if (g.is_identity()) {
    value = draw(pi_cumulative_, pi_support_, g);
  } else {
    const Symbol up = at(parent(g));
    const auto code = g.leftmost().code();
    if (code >= cumulative_.size()) throw InvalidInput("word uses a generator outside the spec");
    value = draw(cumulative_[code][up], support_[code][up], g);
  }
  memo_.emplace(g, value);
  return value;
}

CoordinateReader LazySample::reader() const {
  return [this](const Word& g) { return at(g); };
}

Configuration sample_ball(const MarkovSpec& spec, std::size_t radius, std::uint64_t seed, std::size_t budget) {
  const auto words = ball_words(spec.rank(), radius, budget);
  LazySample sample(spec, seed);
  std::map<Word, Symbol> values;
  for (const auto& g : words) values.emplace(g, sample.at(g));
  return Configuration(std::move(values));
}

double empirical_cylinder(const std::vector<Configuration>& samples, const Configuration& phi) {
  if (samples.empty()) throw PreconditionFailed("no samples");
  std::size_t hits = 0;
  for (const auto& x : samples) {
    bool match = true;
    for (const auto& [g, a] : phi.values()) match = (x.at(g) == a) && match;
    hits += match;
  }
  return static_cast<double>(hits) / static_cast<double>(samples.size());
}

}  // namespace mcoe
