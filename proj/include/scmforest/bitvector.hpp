#pragma once

#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace scmforest {

// Fixed-length packed bit vector. Bits past size() are kept at zero, so
// word-wise popcounts never need a tail mask.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t n) : n_(n), words_(word_count(n), 0) {}

  static BitVector ones(std::size_t n) {
    BitVector v(n);
    for (auto& w : v.words_) w = ~std::uint64_t{0};
    v.mask_tail();
    return v;
  }

  std::size_t size() const { return n_; }

  bool test(std::size_t i) const {
    assert(i < n_);
    return (words_[i >> 6] >> (i & 63)) & 1;
  }

  void set(std::size_t i) {
    assert(i < n_);
    words_[i >> 6] |= std::uint64_t{1} << (i & 63);
  }

  void reset(std::size_t i) {
    assert(i < n_);
    words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }

  bool none() const {
    for (auto w : words_) {
      if (w != 0) return false;
    }
    return true;
  }

  BitVector complement() const {
    BitVector v(n_);
    for (std::size_t k = 0; k < words_.size(); ++k) v.words_[k] = ~words_[k];
    v.mask_tail();
    return v;
  }

  BitVector& operator&=(const BitVector& o) {
    assert(n_ == o.n_);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
    return *this;
  }

  friend BitVector operator&(BitVector a, const BitVector& b) { return a &= b; }

  std::vector<std::size_t> to_indices() const {
    std::vector<std::size_t> out;
    out.reserve(count());
    for (std::size_t i = 0; i < n_; ++i) {
      if (test(i)) out.push_back(i);
    }
    return out;
  }

  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> mutable_words() { return words_; }

  bool operator==(const BitVector&) const = default;

  static std::size_t word_count(std::size_t n) { return (n + 63) / 64; }

 private:
  void mask_tail() {
    if (n_ & 63) words_.back() &= (~std::uint64_t{0}) >> (64 - (n_ & 63));
  }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

// popcount(a & ~b); both spans must stem from vectors of equal bit length.
inline std::size_t count_and_not(std::span<const std::uint64_t> a,
                                 std::span<const std::uint64_t> b) {
  assert(a.size() == b.size());
  std::size_t c = 0;
  for (std::size_t k = 0; k < a.size(); ++k) c += std::popcount(a[k] & ~b[k]);
  return c;
}

// a &= b, word-wise.
inline void and_assign(std::span<std::uint64_t> a, std::span<const std::uint64_t> b) {
  assert(a.size() == b.size());
  for (std::size_t k = 0; k < a.size(); ++k) a[k] &= b[k];
}

}  // namespace scmforest
