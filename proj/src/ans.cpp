#include "msz/ans.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "msz/errors.hpp"

namespace msz {

namespace {

constexpr std::uint64_t kWordMask = (std::uint64_t{1} << kWordBits) - 1;

// Renormalization is done around the interval [k*N, B*k*N) with
// k = ceil(L / N). k*N is a multiple of N, which is what makes the coder
// exactly invertible for arbitrary N; the head is moved back into [L, B*L)
// after every operation.
constexpr std::uint64_t interval_scale(std::uint64_t precision) {
  return (kHeadMin + precision - 1) / precision;
}

}  // namespace

void validate(const CodeTriple& t) {
  if (t.precision == 0 || t.precision > kMaxPrecision || t.freq == 0 ||
      t.start > t.precision || t.freq > t.precision - t.start) {
    throw ContractError("invalid code triple (c=" + std::to_string(t.start) +
                        ", p=" + std::to_string(t.freq) +
                        ", N=" + std::to_string(t.precision) + ")");
  }
}

AnsState::AnsState(std::uint64_t head, std::vector<std::uint32_t> words)
    : head_(head), words_(std::move(words)) {
  if (head_ < kHeadMin || head_ >= kHeadMax) {
    throw FormatError("ANS head out of range");
  }
}

void AnsState::push_word() {
  words_.push_back(static_cast<std::uint32_t>(head_ & kWordMask));
  head_ >>= kWordBits;
}

std::uint32_t AnsState::pop_word() {
  if (words_.empty()) {
    return 0;
  }
  const std::uint32_t w = words_.back();
  words_.pop_back();
  return w;
}

std::uint32_t AnsState::top_word() const noexcept {
  return words_.empty() ? 0 : words_.back();
}

void AnsState::encode(const CodeTriple& t) {
  validate(t);
  if (t.freq == t.precision) {
    return;
  }
  const std::uint64_t k = interval_scale(t.precision);
  const std::uint64_t lower = k * t.freq;  // pre-image interval [lower, B*lower)
  if (lower <= kHeadMin) {
    if (head_ >= (lower << kWordBits)) {
      push_word();
    }
  } else if (head_ < lower) {
    head_ = (head_ << kWordBits) | pop_word();
  }
  head_ = t.precision * (head_ / t.freq) + t.start + head_ % t.freq;
  if (head_ >= kHeadMax) {
    push_word();
  }
}

std::uint64_t AnsState::peek(std::uint64_t precision) const {
  if (precision == 0 || precision > kMaxPrecision) {
    throw ContractError("invalid precision " + std::to_string(precision));
  }
  const std::uint64_t k = interval_scale(precision);
  const std::uint64_t x =
      head_ < k * precision ? (head_ << kWordBits) | top_word() : head_;
  return x % precision;
}

void AnsState::decode(const CodeTriple& t) {
  validate(t);
  const std::uint64_t index = peek(t.precision);
  if (index < t.start || index >= t.start + t.freq) {
    throw ContractError("peeked index " + std::to_string(index) +
                        " outside [" + std::to_string(t.start) + ", " +
                        std::to_string(t.start + t.freq) + ")");
  }
  if (t.freq == t.precision) {
    return;
  }
  const std::uint64_t k = interval_scale(t.precision);
  if (head_ < k * t.precision) {
    head_ = (head_ << kWordBits) | pop_word();
  }
  std::uint64_t x = t.freq * (head_ / t.precision) + index - t.start;
  const std::uint64_t lower = k * t.freq;
  if (lower <= kHeadMin) {
    if (x < kHeadMin) {
      x = (x << kWordBits) | pop_word();
    }
  } else if (x >= kHeadMax) {
    words_.push_back(static_cast<std::uint32_t>(x & kWordMask));
    x >>= kWordBits;
  }
  head_ = x;
}

double AnsState::content_bits() const noexcept {
  return std::log2(static_cast<double>(head_)) +
         static_cast<double>(kWordBits * words_.size());
}

std::vector<std::uint8_t> AnsState::serialize() const {
  std::vector<std::uint8_t> out;
  out.reserve(words_.size() * 4 + 8);
  for (const std::uint32_t w : words_) {
    for (int shift = 24; shift >= 0; shift -= 8) {
      out.push_back(static_cast<std::uint8_t>(w >> shift));
    }
  }
  for (int shift = 56; shift >= 0; shift -= 8) {
    out.push_back(static_cast<std::uint8_t>(head_ >> shift));
  }
  return out;
}

AnsState AnsState::deserialize(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 8 || bytes.size() % 4 != 0) {
    throw FormatError("serialized ANS state has invalid length " +
                      std::to_string(bytes.size()));
  }
  const std::size_t n_words = (bytes.size() - 8) / 4;
  std::vector<std::uint32_t> words(n_words);
  for (std::size_t i = 0; i < n_words; ++i) {
    std::uint32_t w = 0;
    for (std::size_t j = 0; j < 4; ++j) {
      w = (w << 8) | bytes[4 * i + j];
    }
    words[i] = w;
  }
  std::uint64_t head = 0;
  for (std::size_t j = 0; j < 8; ++j) {
    head = (head << 8) | bytes[4 * n_words + j];
  }
  return AnsState(head, std::move(words));
}

bool equivalent(const AnsState& a, const AnsState& b) {
  if (a.head() != b.head()) {
    return false;
  }
  auto significant = [](const std::vector<std::uint32_t>& w) {
    const auto first = std::find_if(w.begin(), w.end(), [](std::uint32_t x) { return x != 0; });
    return std::span<const std::uint32_t>(first, w.end());
  };
  const auto sa = significant(a.words());
  const auto sb = significant(b.words());
  return std::equal(sa.begin(), sa.end(), sb.begin(), sb.end());
}

double added_bits(const AnsState& s) {
  return s.content_bits() - AnsState{}.content_bits();
}

}  // namespace msz
