#include "opp/bitset.hpp"

namespace opp {

Bitset::Bitset(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

Bitset Bitset::full(std::size_t size) {
  Bitset b(size);
  for (auto& w : b.words_) w = ~std::uint64_t{0};
  b.trim();
  return b;
}

Bitset Bitset::from_members(std::size_t size, std::span<const int> members) {
  Bitset b(size);
  for (int v : members) b.set(static_cast<std::size_t>(v));
  return b;
}

void Bitset::trim() {
  if (size_ % 64 != 0 && !words_.empty()) {
    words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
  }
}

std::size_t Bitset::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool Bitset::any() const {
  for (auto w : words_)
    if (w) return true;
  return false;
}

std::size_t Bitset::count_and(const Bitset& other) const {
  std::size_t c = 0;
  for (std::size_t i = 0; i < words_.size(); ++i)
    c += static_cast<std::size_t>(std::popcount(words_[i] & other.words_[i]));
  return c;
}

bool Bitset::intersects(const Bitset& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & other.words_[i]) return true;
  return false;
}

bool Bitset::is_subset_of(const Bitset& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~other.words_[i]) return false;
  return true;
}

Bitset& Bitset::operator&=(const Bitset& other) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

Bitset& Bitset::operator|=(const Bitset& other) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

Bitset& Bitset::operator-=(const Bitset& other) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
  return *this;
}

void Bitset::flip_all() {
  for (auto& w : words_) w = ~w;
  trim();
}

void Bitset::clear_through(std::size_t i) {
  if (i >= size_) {
    for (auto& w : words_) w = 0;
    return;
  }
  const std::size_t word = i >> 6;
  for (std::size_t k = 0; k < word; ++k) words_[k] = 0;
  const unsigned bit = static_cast<unsigned>(i & 63);
  if (bit == 63)
    words_[word] = 0;
  else
    words_[word] &= ~((std::uint64_t{1} << (bit + 1)) - 1);
}

int Bitset::first() const {
  for (std::size_t w = 0; w < words_.size(); ++w)
    if (words_[w]) return static_cast<int>(w * 64 + std::countr_zero(words_[w]));
  return -1;
}

int Bitset::next(int after) const {
  std::size_t start = static_cast<std::size_t>(after + 1);
  if (start >= size_) return -1;
  std::size_t w = start >> 6;
  std::uint64_t bits = words_[w] & (~std::uint64_t{0} << (start & 63));
  while (true) {
    if (bits) return static_cast<int>(w * 64 + std::countr_zero(bits));
    if (++w >= words_.size()) return -1;
    bits = words_[w];
  }
}

std::vector<int> Bitset::members() const {
  std::vector<int> out;
  out.reserve(count());
  for_each([&](int v) { out.push_back(v); });
  return out;
}

}  // namespace opp
