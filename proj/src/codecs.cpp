#include "msz/codecs.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "msz/errors.hpp"

namespace msz {

std::vector<std::uint64_t> quantize_pmf(std::span<const double> weights, std::uint64_t precision) {
  const std::size_t n = weights.size();
  if (n == 0) {
    throw ContractError("quantize_pmf: no weights");
  }
  if (n > precision) {
    throw CapacityError("quantize_pmf: " + std::to_string(n) + " symbols exceed precision " +
                        std::to_string(precision));
  }
  double sum = 0.0;
  for (const double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw ContractError("quantize_pmf: weights must be finite and nonnegative");
    }
    sum += w;
  }
  if (!(sum > 0.0)) {
    throw ContractError("quantize_pmf: no strictly positive weight");
  }

  std::vector<double> ideal(n);
  std::vector<std::uint64_t> mass(n);
  std::int64_t assigned = 0;
  for (std::size_t i = 0; i < n; ++i) {
    ideal[i] = weights[i] / sum * static_cast<double>(precision);
    mass[i] = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::floor(ideal[i])));
    assigned += static_cast<std::int64_t>(mass[i]);
  }
  std::int64_t deficit = static_cast<std::int64_t>(precision) - assigned;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (deficit > 0) {
    // Largest shortfall first; fewer than n units are missing.
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return ideal[a] - static_cast<double>(mass[a]) > ideal[b] - static_cast<double>(mass[b]);
    });
    for (std::size_t k = 0; deficit > 0; k = (k + 1) % n, --deficit) {
      ++mass[order[k]];
    }
  } else if (deficit < 0) {
    // Largest excess first, never below one.
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return static_cast<double>(mass[a]) - ideal[a] > static_cast<double>(mass[b]) - ideal[b];
    });
    while (deficit < 0) {
      for (const std::size_t i : order) {
        if (deficit == 0) break;
        if (mass[i] > 1) {
          --mass[i];
          ++deficit;
        }
      }
    }
  }
  return mass;
}

unsigned default_precision_bits(std::size_t alphabet_size) {
  const unsigned width = alphabet_size <= 1 ? 0 : std::bit_width(alphabet_size - 1);
  return std::clamp(width + 4, 16u, 24u);
}

QuantizedCategorical::QuantizedCategorical(std::vector<symbol_type> alphabet,
                                           std::vector<std::uint64_t> masses,
                                           unsigned precision_bits)
    : alphabet_(std::move(alphabet)), masses_(std::move(masses)), precision_bits_(precision_bits) {
  if (precision_bits_ > 31) {
    throw ContractError("precision bits must be at most 31");
  }
  if (alphabet_.empty() || alphabet_.size() != masses_.size()) {
    throw ContractError("alphabet and masses must be non-empty and of equal length");
  }
  cdf_.resize(masses_.size() + 1, 0);
  for (std::size_t i = 0; i < masses_.size(); ++i) {
    if (masses_[i] == 0) {
      throw ContractError("every alphabet symbol needs a nonzero mass");
    }
    if (i > 0 && alphabet_[i - 1] >= alphabet_[i]) {
      throw ContractError("alphabet must be strictly increasing");
    }
    cdf_[i + 1] = cdf_[i] + masses_[i];
  }
  if (cdf_.back() != precision()) {
    throw ContractError("masses sum to " + std::to_string(cdf_.back()) + ", expected " +
                        std::to_string(precision()));
  }
  contiguous_ = alphabet_.back() - alphabet_.front() + 1 == alphabet_.size();

  const unsigned guide_bits =
      std::min<unsigned>(precision_bits_, std::bit_width(alphabet_.size() - 1));
  guide_shift_ = precision_bits_ - guide_bits;
  const std::size_t buckets = std::size_t{1} << guide_bits;
  guide_.resize(buckets + 1);
  std::size_t i = 0;
  for (std::size_t b = 0; b < buckets; ++b) {
    const std::uint64_t first = std::uint64_t{b} << guide_shift_;
    while (cdf_[i + 1] <= first) ++i;
    guide_[b] = static_cast<std::uint32_t>(i);
  }
  guide_[buckets] = static_cast<std::uint32_t>(alphabet_.size() - 1);
}

QuantizedCategorical QuantizedCategorical::from_weights(std::vector<symbol_type> alphabet,
                                                        std::span<const double> weights,
                                                        unsigned precision_bits) {
  if (precision_bits > 31) {
    throw ContractError("precision bits must be at most 31");
  }
  auto masses = quantize_pmf(weights, std::uint64_t{1} << precision_bits);
  return QuantizedCategorical(std::move(alphabet), std::move(masses), precision_bits);
}

std::size_t QuantizedCategorical::index_of(symbol_type x) const {
  if (contiguous_) {
    if (x >= alphabet_.front() && x <= alphabet_.back()) {
      return x - alphabet_.front();
    }
  } else {
    const auto it = std::lower_bound(alphabet_.begin(), alphabet_.end(), x);
    if (it != alphabet_.end() && *it == x) {
      return static_cast<std::size_t>(it - alphabet_.begin());
    }
  }
  throw NotFoundError("symbol " + std::to_string(x) + " not in alphabet");
}

CodeTriple QuantizedCategorical::forward_lookup(symbol_type x) const {
  const std::size_t i = index_of(x);
  return {cdf_[i], masses_[i], precision()};
}

QuantizedCategorical::Slot QuantizedCategorical::reverse_lookup(std::uint64_t index) const {
  if (index >= precision()) {
    throw ContractError("index out of range");
  }
  const std::size_t bucket = index >> guide_shift_;
  const auto lo = cdf_.begin() + guide_[bucket] + 1;
  const auto hi = cdf_.begin() + guide_[bucket + 1] + 1;
  const auto it = std::upper_bound(lo, hi, index);
  const auto i = static_cast<std::size_t>(it - cdf_.begin()) - 1;
  return {alphabet_[i], {cdf_[i], masses_[i], precision()}};
}

void QuantizedCategorical::encode(AnsState& state, symbol_type x) const {
  state.encode(forward_lookup(x));
}

QuantizedCategorical::symbol_type QuantizedCategorical::decode(AnsState& state) const {
  const Slot slot = reverse_lookup(state.peek(precision()));
  state.decode(slot.triple);
  return slot.symbol;
}

double QuantizedCategorical::code_length(symbol_type x) const {
  return static_cast<double>(precision_bits_) - std::log2(static_cast<double>(masses_[index_of(x)]));
}

double QuantizedCategorical::probability(symbol_type x) const {
  return static_cast<double>(masses_[index_of(x)]) / static_cast<double>(precision());
}

ByteStringCodec::ByteStringCodec(std::uint64_t max_len) : max_len_(max_len) {
  if (max_len_ >= kMaxPrecision) {
    throw CapacityError("max_len must be below 2^31");
  }
}

void ByteStringCodec::encode(AnsState& state, const std::string& payload) const {
  if (payload.size() > max_len_) {
    throw CapacityError("payload of " + std::to_string(payload.size()) +
                        " bytes exceeds max_len " + std::to_string(max_len_));
  }
  for (auto it = payload.rbegin(); it != payload.rend(); ++it) {
    state.encode({static_cast<unsigned char>(*it), 1, 256});
  }
  state.encode({payload.size(), 1, max_len_ + 1});
}

std::string ByteStringCodec::decode(AnsState& state) const {
  const std::uint64_t len = state.peek(max_len_ + 1);
  state.decode({len, 1, max_len_ + 1});
  std::string payload(len, '\0');
  for (auto& ch : payload) {
    const std::uint64_t b = state.peek(256);
    state.decode({b, 1, 256});
    ch = static_cast<char>(b);
  }
  return payload;
}

double ByteStringCodec::code_length(const std::string& payload) const {
  return 8.0 * static_cast<double>(payload.size()) +
         std::log2(static_cast<double>(max_len_ + 1));
}

}  // namespace msz
