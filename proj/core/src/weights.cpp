#include "sparsecol/weights.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace sparsecol {

FixedColours::FixedColours(std::initializer_list<std::pair<const Vertex, Colour>> init) {
  for (const auto& [v, c] : init) set(v, c);
}

void FixedColours::set(Vertex v, Colour c) {
  if (c == kNoColour) throw std::invalid_argument("FixedColours: colour 0 is not a colour");
  auto [it, inserted] = map_.emplace(v, c);
  if (!inserted && it->second != c)
    throw std::invalid_argument("FixedColours: vertex " + std::to_string(v) + " assigned twice");
}

std::optional<Colour> FixedColours::get(Vertex v) const {
  auto it = map_.find(v);
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

void FixedColours::validate(std::size_t n, std::size_t colours) const {
  for (const auto& [v, c] : map_) {
    if (v >= n) throw std::invalid_argument("fixed vertex " + std::to_string(v) + " out of range");
    if (c < 1 || c > colours)
      throw std::invalid_argument("fixed colour " + std::to_string(c) + " outside 1.." + std::to_string(colours));
  }
}

FixedColours FixedColours::parse(const std::string& text) {
  FixedColours out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("fixed colours: expected v:c, got \"" + item + "\"");
    try {
      const unsigned long v = std::stoul(item.substr(0, colon));
      const unsigned long c = std::stoul(item.substr(colon + 1));
      out.set(static_cast<Vertex>(v), static_cast<Colour>(c));
    } catch (const std::logic_error&) {
      throw std::invalid_argument("fixed colours: malformed entry \"" + item + "\"");
    }
  }
  return out;
}

std::string FixedColours::to_string() const {
  std::string s;
  for (const auto& [v, c] : map_) {
    if (!s.empty()) s += ',';
    s += std::to_string(v) + ":" + std::to_string(c);
  }
  return s;
}

double log_of(const BigInt& x) {
  if (x <= 0) return -std::numeric_limits<double>::infinity();
  const std::size_t bits = boost::multiprecision::msb(x) + 1;
  if (bits <= 60) return std::log(x.convert_to<double>());
  const std::size_t shift = bits - 60;
  const BigInt top = x >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

// ---------------------------------------------------------------------------

WeightVector WeightVector::exact(std::vector<BigInt> counts) {
  WeightVector w;
  w.mode_ = Mode::Exact;
  w.total_ = 0;
  for (const BigInt& c : counts) {
    if (c < 0) throw std::invalid_argument("WeightVector: negative count");
    w.total_ += c;
  }
  w.counts_ = std::move(counts);
  w.log_norm_ = log_of(w.total_);
  return w;
}

WeightVector WeightVector::floating(std::vector<double> weights, double log_scale) {
  WeightVector w;
  w.mode_ = Mode::Float;
  double sum = 0.0;
  for (double x : weights) {
    if (!(x >= 0.0)) throw std::invalid_argument("WeightVector: negative or NaN weight");
    sum += x;
  }
  if (sum > 0.0) {
    for (double& x : weights) x /= sum;
    w.log_norm_ = log_scale + std::log(sum);
  } else {
    w.log_norm_ = -std::numeric_limits<double>::infinity();
  }
  w.probs_ = std::move(weights);
  return w;
}

WeightVector WeightVector::uniform(std::size_t colours) {
  return floating(std::vector<double>(colours, 1.0));
}

bool WeightVector::is_zero() const {
  if (mode_ == Mode::Exact) return total_ == 0;
  return std::isinf(log_norm_) && log_norm_ < 0;
}

const std::vector<BigInt>& WeightVector::counts() const {
  if (mode_ != Mode::Exact) throw std::logic_error("WeightVector: counts() needs Exact mode");
  return counts_;
}

const BigInt& WeightVector::total() const {
  if (mode_ != Mode::Exact) throw std::logic_error("WeightVector: total() needs Exact mode");
  return total_;
}

Rational WeightVector::probability_exact(std::size_t i) const {
  if (mode_ != Mode::Exact) throw std::logic_error("WeightVector: exact probability needs Exact mode");
  if (total_ == 0) return Rational(0);
  return Rational(counts_.at(i), total_);
}

std::vector<Rational> WeightVector::probabilities_exact() const {
  std::vector<Rational> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(probability_exact(i));
  return out;
}

double WeightVector::probability(std::size_t i) const {
  if (mode_ == Mode::Float) return probs_.at(i);
  return probability_exact(i).convert_to<double>();
}

std::vector<double> WeightVector::probabilities() const {
  if (mode_ == Mode::Float) return probs_;
  std::vector<double> out;
  out.reserve(counts_.size());
  for (std::size_t i = 0; i < counts_.size(); ++i) out.push_back(probability(i));
  return out;
}

double WeightVector::log_normalizer() const { return log_norm_; }

WeightVector WeightVector::to_float() const {
  if (mode_ == Mode::Float) return *this;
  WeightVector w;
  w.mode_ = Mode::Float;
  w.probs_ = probabilities();
  w.log_norm_ = log_norm_;
  return w;
}

// ---------------------------------------------------------------------------

CountValue CountValue::exact(BigInt value) {
  if (value < 0) throw std::invalid_argument("CountValue: negative count");
  CountValue c;
  c.zero_ = value == 0;
  c.log_ = log_of(value);
  c.exact_ = std::move(value);
  return c;
}

CountValue CountValue::from_log(double log_value) {
  CountValue c;
  c.log_ = log_value;
  c.zero_ = std::isinf(log_value) && log_value < 0;
  return c;
}

CountValue CountValue::zero_float() { return from_log(-std::numeric_limits<double>::infinity()); }

bool CountValue::is_zero() const { return zero_; }

const BigInt& CountValue::exact_value() const {
  if (!exact_) throw std::logic_error("CountValue: not exact");
  return *exact_;
}

double CountValue::log_value() const { return log_; }

std::string CountValue::to_string() const {
  if (exact_) return exact_->str();
  if (zero_) return "0";
  std::ostringstream os;
  os.precision(17);
  os << "exp(" << log_ << ")";
  return os.str();
}

}  // namespace sparsecol
