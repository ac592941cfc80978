#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "capset/space.hpp"

namespace capset {

/// Dense membership mask over the 3^n points of AG(n,3).
///
/// Masks are totally ordered: A < B iff the lowest index at which they differ
/// belongs to A.  For sets of equal size this is the lexicographic order of
/// their ascending index lists, which is the order canonical forms minimise.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(int dim);
  PointSet(int dim, std::initializer_list<PointIndex> pts);
  PointSet(int dim, const std::vector<PointIndex>& pts);

  static PointSet full(int dim);

  int dim() const { return dim_; }
  std::uint32_t universe() const { return universe_; }
  const Space& space() const { return Space::get(dim_); }

  bool contains(PointIndex p) const { return (words_[p >> 6] >> (p & 63)) & 1u; }
  void insert(PointIndex p) { words_[p >> 6] |= std::uint64_t{1} << (p & 63); }
  void erase(PointIndex p) { words_[p >> 6] &= ~(std::uint64_t{1} << (p & 63)); }

  std::size_t size() const;
  bool empty() const;
  std::vector<PointIndex> to_vector() const;
  /// Lowest member, or universe() when empty.
  PointIndex first() const;

  PointSet& operator|=(const PointSet& o);
  PointSet& operator&=(const PointSet& o);
  PointSet& operator-=(const PointSet& o);
  friend PointSet operator|(PointSet a, const PointSet& b) { return a |= b; }
  friend PointSet operator&(PointSet a, const PointSet& b) { return a &= b; }
  friend PointSet operator-(PointSet a, const PointSet& b) { return a -= b; }
  PointSet complement() const;

  bool operator==(const PointSet& o) const = default;
  std::strong_ordering operator<=>(const PointSet& o) const;
  bool is_subset_of(const PointSet& o) const;

  /// Hex digits of the integer sum of 2^p over members, most significant first.
  std::string to_hex() const;
  static PointSet from_hex(int dim, const std::string& hex);

  const std::vector<std::uint64_t>& words() const { return words_; }

  class Iterator {
   public:
    using value_type = PointIndex;
    using difference_type = std::ptrdiff_t;
    Iterator(const PointSet* s, std::size_t w, std::uint64_t bits) : set_(s), word_(w), bits_(bits) { advance(); }
    PointIndex operator*() const { return static_cast<PointIndex>(word_ * 64 + std::countr_zero(bits_)); }
    Iterator& operator++() {
      bits_ &= bits_ - 1;
      advance();
      return *this;
    }
    bool operator==(const Iterator& o) const { return word_ == o.word_ && bits_ == o.bits_; }

   private:
    void advance() {
      while (bits_ == 0 && word_ + 1 < set_->words_.size()) bits_ = set_->words_[++word_];
      if (bits_ == 0) word_ = set_->words_.size();
    }
    const PointSet* set_;
    std::size_t word_;
    std::uint64_t bits_;
  };
  Iterator begin() const { return words_.empty() ? end() : Iterator(this, 0, words_[0]); }
  Iterator end() const { return Iterator(this, words_.size(), 0); }

 private:
  int dim_ = 0;
  std::uint32_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace capset
